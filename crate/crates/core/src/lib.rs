pub mod artinian;
pub mod grassmann;
pub mod ratpoly;
pub mod sampling;
pub mod surface;
pub mod transform;
