//! Exact rational arithmetic, sparse multivariate polynomials over ℚ, and the
//! linear-algebra primitives the rest of the crate is built on.
//!
//! Monomials are ordered graded-lexicographically over the variable order of
//! the owning [`VarContext`]. Nothing in here touches floating point.

mod matrix;
mod poly;
mod ratfunc;
mod system;

pub use matrix::{matrix_reduce, RatMatrix, Reduction};
pub use poly::{Monomial, Poly, VarContext};
pub use ratfunc::RatFunc;
pub use system::{eliminate_linear, jacobian_rank_at, PolySystem, Substitution};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// The base field, realized as arbitrary-precision rationals in lowest terms.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den` as a rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}` in context")]
    DuplicateVariable(String),
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("no exact quotient exists")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("point has {got} coordinates, context has {expected} variables")]
    PointLength { expected: usize, got: usize },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Serde helpers writing rationals as `"num/den"` strings.
pub mod rat_serde {
    use super::Rational;
    use serde::Serializer;

    pub fn one<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn seq<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(ToString::to_string))
    }

    pub fn pair<S: Serializer>(p: &(Rational, Rational), s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq([p.0.to_string(), p.1.to_string()])
    }
}
