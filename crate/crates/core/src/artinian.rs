//! The square-zero algebra R_d = k[x₀,…,x_d]/(x₀,…,x_d)² and subspaces of
//! R_d² closed under multiplication by the xᵢ.
//!
//! The ambient space R_d² is coordinatized in the fixed order
//! (1,0), (x₀,0), …, (x_d,0), (0,1), (0,x₀), …, (0,x_d). Vectors are rows and
//! xᵢ acts by right multiplication with its action matrix.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::ratpoly::{matrix_reduce, rat_serde, Poly, RatFunc, RatMatrix, Rational, VarContext};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArtinError {
    #[error("element has {got} coordinates, algebra needs {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("element with zero unit part is not invertible")]
    NotInvertible,
    #[error("neither e nor h is invertible, so (e,h) does not generate R_d")]
    NotSurjective,
    #[error("projective data must have a nonzero coordinate")]
    ZeroProjective,
    #[error("chart map undefined at a₁ = 0")]
    OffChart,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ArtinAlgebra {
    d: usize,
}

impl ArtinAlgebra {
    pub fn new(d: usize) -> Self {
        Self { d }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// k-dimension of R_d.
    pub fn dim(&self) -> usize {
        self.d + 2
    }

    /// k-dimension of R_d².
    pub fn ambient_dim(&self) -> usize {
        2 * (self.d + 2)
    }

    pub fn basis_labels(&self) -> Vec<String> {
        std::iter::once("1".to_string())
            .chain((0..=self.d).map(|i| format!("x{i}")))
            .collect()
    }

    pub fn ambient_labels(&self) -> Vec<String> {
        let b = self.basis_labels();
        b.iter()
            .map(|l| format!("({l},0)"))
            .chain(b.iter().map(|l| format!("(0,{l})")))
            .collect()
    }

    pub fn left_one(&self) -> usize {
        0
    }

    pub fn left_x(&self, i: usize) -> usize {
        1 + i
    }

    pub fn right_one(&self) -> usize {
        self.d + 2
    }

    pub fn right_x(&self, i: usize) -> usize {
        self.d + 3 + i
    }

    pub fn one(&self) -> ArtinElement {
        let mut c = vec![Rational::zero(); self.dim()];
        c[0] = Rational::one();
        ArtinElement { coords: c }
    }

    pub fn zero(&self) -> ArtinElement {
        ArtinElement {
            coords: vec![Rational::zero(); self.dim()],
        }
    }

    pub fn x(&self, i: usize) -> ArtinElement {
        let mut c = vec![Rational::zero(); self.dim()];
        c[1 + i] = Rational::one();
        ArtinElement { coords: c }
    }

    pub fn element(&self, coords: Vec<Rational>) -> Result<ArtinElement, ArtinError> {
        if coords.len() != self.dim() {
            return Err(ArtinError::DimensionMismatch {
                expected: self.dim(),
                got: coords.len(),
            });
        }
        Ok(ArtinElement { coords })
    }

    /// `a + Σ bᵢxᵢ`.
    pub fn from_parts(&self, a: Rational, b: &[Rational]) -> Result<ArtinElement, ArtinError> {
        let mut c = vec![a];
        c.extend_from_slice(b);
        self.element(c)
    }

    /// Action matrices X₀..X_d on R_d²: xᵢ sends (1,0) to (xᵢ,0), (0,1) to
    /// (0,xᵢ) and kills the rest.
    pub fn actions(&self) -> Vec<RatMatrix> {
        let n = self.ambient_dim();
        (0..=self.d)
            .map(|i| {
                let mut m = RatMatrix::zeros(n, n);
                m.set(self.left_one(), self.left_x(i), Rational::one());
                m.set(self.right_one(), self.right_x(i), Rational::one());
                m
            })
            .collect()
    }

    /// The vector (p, q) ∈ R_d².
    pub fn pair(&self, p: &ArtinElement, q: &ArtinElement) -> Vec<Rational> {
        p.coords.iter().chain(&q.coords).cloned().collect()
    }

    fn check(&self, e: &ArtinElement) -> Result<(), ArtinError> {
        if e.coords.len() != self.dim() {
            return Err(ArtinError::DimensionMismatch {
                expected: self.dim(),
                got: e.coords.len(),
            });
        }
        Ok(())
    }
}

/// `(a; b₀,…,b_d)` standing for `a + Σ bᵢxᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArtinElement {
    coords: Vec<Rational>,
}

impl ArtinElement {
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn unit_part(&self) -> &Rational {
        &self.coords[0]
    }

    pub fn nil_part(&self) -> &[Rational] {
        &self.coords[1..]
    }

    pub fn is_invertible(&self) -> bool {
        !self.coords[0].is_zero()
    }

    pub fn scale(&self, c: &Rational) -> ArtinElement {
        ArtinElement {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, o: &ArtinElement) -> Result<ArtinElement, ArtinError> {
        if self.coords.len() != o.coords.len() {
            return Err(ArtinError::DimensionMismatch {
                expected: self.coords.len(),
                got: o.coords.len(),
            });
        }
        Ok(ArtinElement {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn neg(&self) -> ArtinElement {
        self.scale(&-Rational::one())
    }
}

/// `(a₁; b⃗)·(a₂; c⃗) = (a₁a₂; a₁c⃗ + a₂b⃗)`.
pub fn mul(e1: &ArtinElement, e2: &ArtinElement) -> Result<ArtinElement, ArtinError> {
    if e1.coords.len() != e2.coords.len() {
        return Err(ArtinError::DimensionMismatch {
            expected: e1.coords.len(),
            got: e2.coords.len(),
        });
    }
    let (a1, a2) = (&e1.coords[0], &e2.coords[0]);
    let mut out = vec![a1 * a2];
    out.extend(
        e1.coords[1..]
            .iter()
            .zip(&e2.coords[1..])
            .map(|(b, c)| a1 * c + a2 * b),
    );
    Ok(ArtinElement { coords: out })
}

/// `(a; b⃗)⁻¹ = (1/a; −b⃗/a²)`.
pub fn inverse(e: &ArtinElement) -> Result<ArtinElement, ArtinError> {
    if !e.is_invertible() {
        return Err(ArtinError::NotInvertible);
    }
    let a = &e.coords[0];
    let a2 = a * a;
    let mut out = vec![a.recip()];
    out.extend(e.coords[1..].iter().map(|b| -b / &a2));
    Ok(ArtinElement { coords: out })
}

/// A k-subspace of R_d², stored as its reduced row-echelon basis. Two
/// submodules are equal exactly when their bases are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Submodule {
    algebra: ArtinAlgebra,
    basis: RatMatrix,
}

#[derive(Serialize)]
struct SubmoduleRecord<'a> {
    d: usize,
    dim: usize,
    ambient: Vec<String>,
    basis: &'a RatMatrix,
}

impl Serialize for Submodule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SubmoduleRecord {
            d: self.algebra.d,
            dim: self.dim(),
            ambient: self.algebra.ambient_labels(),
            basis: &self.basis,
        }
        .serialize(s)
    }
}

impl Submodule {
    /// Row span of `rows`, without closing under the action.
    pub fn span(algebra: &ArtinAlgebra, rows: Vec<Vec<Rational>>) -> Self {
        let n = algebra.ambient_dim();
        let red = matrix_reduce(&RatMatrix::from_rows(rows, n));
        let basis = RatMatrix::from_rows(
            (0..red.rank).map(|r| red.rref.row(r).to_vec()).collect(),
            n,
        );
        Self {
            algebra: *algebra,
            basis,
        }
    }

    pub fn algebra(&self) -> &ArtinAlgebra {
        &self.algebra
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn quotient_dim(&self) -> usize {
        self.algebra.ambient_dim() - self.dim()
    }

    /// Pivot columns of the echelon basis.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| {
                self.basis
                    .row(r)
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("basis rows are nonzero")
            })
            .collect()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut rows = self.basis.row_vecs();
        rows.push(v.to_vec());
        matrix_reduce(&RatMatrix::from_rows(rows, self.algebra.ambient_dim())).rank == self.dim()
    }

    pub fn contains_submodule(&self, other: &Submodule) -> bool {
        (0..other.dim()).all(|r| self.contains(other.basis.row(r)))
    }

    /// Exact check that every basis row stays inside under every xᵢ.
    pub fn is_closed(&self) -> bool {
        let acts = self.algebra.actions();
        (0..self.dim()).all(|r| {
            acts.iter()
                .all(|x| self.contains(&x.left_apply(self.basis.row(r))))
        })
    }
}

/// Smallest subspace containing `gens` and stable under every xᵢ.
pub fn rmodule_closure(gens: &[Vec<Rational>], algebra: &ArtinAlgebra) -> Submodule {
    let acts = algebra.actions();
    let mut current = Submodule::span(algebra, gens.to_vec());
    loop {
        let mut rows = current.basis.row_vecs();
        for r in 0..current.dim() {
            for x in &acts {
                rows.push(x.left_apply(current.basis.row(r)));
            }
        }
        let next = Submodule::span(algebra, rows);
        if next.dim() == current.dim() {
            return next;
        }
        current = next;
    }
}

/// Chart coordinates `(a₁, b⃗)` of a quotient, read from `e⁻¹h = a₁ + Σbᵢxᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairChart {
    #[serde(serialize_with = "rat_serde::one")]
    pub a1: Rational,
    #[serde(serialize_with = "rat_serde::seq")]
    pub b: Vec<Rational>,
}

/// Kernel of `R_d² → R_d, (p, q) ↦ p·e + q·h`, which is generated by
/// `(−h, e)`. The chart is reported when `e` is a unit.
pub fn kernel_of_pair(
    e: &ArtinElement,
    h: &ArtinElement,
    algebra: &ArtinAlgebra,
) -> Result<(Submodule, Option<PairChart>), ArtinError> {
    algebra.check(e)?;
    algebra.check(h)?;
    if !e.is_invertible() && !h.is_invertible() {
        return Err(ArtinError::NotSurjective);
    }
    let gen = algebra.pair(&h.neg(), e);
    let kernel = rmodule_closure(&[gen], algebra);
    let chart = if e.is_invertible() {
        let q = mul(&inverse(e)?, h)?;
        Some(PairChart {
            a1: q.coords[0].clone(),
            b: q.coords[1..].to_vec(),
        })
    } else {
        None
    };
    Ok((kernel, chart))
}

/// Normalize a projective vector so its first nonzero entry is 1.
pub fn normalize_projective(v: &[Rational]) -> Result<Vec<Rational>, ArtinError> {
    let lead = v
        .iter()
        .find(|x| !x.is_zero())
        .ok_or(ArtinError::ZeroProjective)?
        .clone();
    Ok(v.iter().map(|x| x / &lead).collect())
}

/// A point `((a₀:…:a_d), (u:v))` of the boundary locus Γ ≅ ℙᵈ × ℙ¹.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaPoint {
    #[serde(serialize_with = "rat_serde::seq")]
    direction: Vec<Rational>,
    #[serde(serialize_with = "rat_serde::pair")]
    slope: (Rational, Rational),
}

impl GammaPoint {
    pub fn new(direction: &[Rational], slope: (Rational, Rational)) -> Result<Self, ArtinError> {
        let direction = normalize_projective(direction)?;
        let s = normalize_projective(&[slope.0, slope.1])?;
        Ok(Self {
            direction,
            slope: (s[0].clone(), s[1].clone()),
        })
    }

    pub fn direction(&self) -> &[Rational] {
        &self.direction
    }

    pub fn slope(&self) -> (&Rational, &Rational) {
        (&self.slope.0, &self.slope.1)
    }
}

/// Span of `(Σaᵢxᵢ, 0)`, `(0, Σaᵢxᵢ)` and `(v·xᵢ, −u·xᵢ)` for all i.
pub fn gamma_kernel(g: &GammaPoint, algebra: &ArtinAlgebra) -> Result<Submodule, ArtinError> {
    let n = algebra.ambient_dim();
    if g.direction.len() != algebra.d + 1 {
        return Err(ArtinError::DimensionMismatch {
            expected: algebra.d + 1,
            got: g.direction.len(),
        });
    }
    let (u, v) = (&g.slope.0, &g.slope.1);
    let mut rows = Vec::new();
    let mut left = vec![Rational::zero(); n];
    let mut right = vec![Rational::zero(); n];
    for (i, a) in g.direction.iter().enumerate() {
        left[algebra.left_x(i)] = a.clone();
        right[algebra.right_x(i)] = a.clone();
    }
    rows.push(left);
    rows.push(right);
    for i in 0..=algebra.d {
        let mut r = vec![Rational::zero(); n];
        r[algebra.left_x(i)] = v.clone();
        r[algebra.right_x(i)] = -u.clone();
        rows.push(r);
    }
    Ok(Submodule::span(algebra, rows))
}

/// Finite Laurent polynomial in t with vector coefficients.
type LaurentVec = BTreeMap<i32, Vec<Rational>>;

fn laurent_clean(v: &mut LaurentVec) {
    v.retain(|_, c| c.iter().any(|x| !x.is_zero()));
}

/// Limit at t = 0 of the row span of a family of Laurent vectors that are
/// linearly independent over k(t). Each row is shifted to valuation zero; while
/// the t⁰ coefficients are dependent, a row is replaced by the combination
/// killing its t⁰ part, which raises its valuation.
fn laurent_limit(mut rows: Vec<LaurentVec>, n: usize) -> Vec<Vec<Rational>> {
    for r in rows.iter_mut() {
        laurent_clean(r);
    }
    // Each pass strictly raises a valuation; the cap only guards bad input.
    for _ in 0..10_000 {
        for r in rows.iter_mut() {
            if let Some(&v) = r.keys().next() {
                if v != 0 {
                    *r = std::mem::take(r).into_iter().map(|(k, c)| (k - v, c)).collect();
                }
            }
        }
        let lead: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.get(&0).cloned().unwrap_or_else(|| vec![Rational::zero(); n]))
            .collect();
        // Dependencies among rows: kernel of the transpose.
        let red = matrix_reduce(&RatMatrix::from_rows(lead.clone(), n).transpose());
        let Some(dep) = red.kernel_basis.first() else {
            return lead;
        };
        let j = dep.iter().rposition(|c| !c.is_zero()).expect("nonzero dependency");
        let mut combo = LaurentVec::new();
        for (i, c) in dep.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (&k, vec) in &rows[i] {
                let slot = combo.entry(k).or_insert_with(|| vec![Rational::zero(); n]);
                for (s, x) in slot.iter_mut().zip(vec) {
                    *s += c * x;
                }
            }
        }
        laurent_clean(&mut combo);
        assert!(!combo.is_empty(), "rows dependent over k(t)");
        rows[j] = combo;
    }
    panic!("t-limit did not stabilize");
}

/// Limit as t → 0 of the kernel of the quotient with `e = 1`,
/// `h = a₁ + Σ(uᵢ/t)xᵢ`.
pub fn gamma_limit(
    u: &[Rational],
    a1: &Rational,
    algebra: &ArtinAlgebra,
) -> Result<Submodule, ArtinError> {
    if u.len() != algebra.d + 1 {
        return Err(ArtinError::DimensionMismatch {
            expected: algebra.d + 1,
            got: u.len(),
        });
    }
    if u.iter().all(Zero::is_zero) {
        return Err(ArtinError::ZeroProjective);
    }
    let n = algebra.ambient_dim();
    // (−h, e) as a Laurent vector.
    let mut g = LaurentVec::new();
    let mut c0 = vec![Rational::zero(); n];
    c0[algebra.left_one()] = -a1.clone();
    c0[algebra.right_one()] = Rational::one();
    g.insert(0, c0);
    let mut cm1 = vec![Rational::zero(); n];
    for (i, ui) in u.iter().enumerate() {
        cm1[algebra.left_x(i)] = -ui.clone();
    }
    g.insert(-1, cm1);
    let mut rows = vec![g.clone()];
    for x in algebra.actions() {
        rows.push(g.iter().map(|(&k, v)| (k, x.left_apply(v))).collect());
    }
    Ok(Submodule::span(algebra, laurent_limit(rows, n)))
}

/// `(a₁, b⃗) ↦ (1/a₁, −b⃗/a₁²)` on the overlap a₁ ≠ 0.
pub fn chart_transition(a1: &Rational, b: &[Rational]) -> Result<PairChart, ArtinError> {
    if a1.is_zero() {
        return Err(ArtinError::OffChart);
    }
    let a2 = a1 * a1;
    Ok(PairChart {
        a1: a1.recip(),
        b: b.iter().map(|x| -x / &a2).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitionReport {
    pub d: usize,
    /// The map composed with itself is the identity, as rational functions.
    pub involution: bool,
    /// Each fibre coordinate is `λ(a₁)·bᵢ` with the same `λ`.
    pub fiber_linear: bool,
    /// The common scalar `λ`, in canonical text.
    pub scaling_factor: String,
    pub scaling_is_minus_inverse_square: bool,
    /// The chart change on V(xz + y²) equals the pair-chart map.
    pub quadric_agrees: bool,
    /// Transition applied twice at (2, (1,…,1)).
    pub sample_round_trip: PairChart,
}

impl TransitionReport {
    pub fn passed(&self) -> bool {
        self.involution && self.fiber_linear && self.scaling_is_minus_inverse_square && self.quadric_agrees
    }
}

/// Symbolic checks of the chart transition for the pair charts of R_d.
pub fn transition_check(d: usize) -> TransitionReport {
    let mut names = vec!["a1".to_string()];
    names.extend((0..=d).map(|i| format!("b{i}")));
    let ctx = VarContext::new(names).expect("distinct names");
    let var = |i: usize| RatFunc::from_poly(ctx.var_at(i));
    let a = var(0);
    let a_sq = a.mul(&a);
    let phi_a = a.inv().expect("a₁ ≠ 0");
    let phi_b: Vec<RatFunc> = (1..=d + 1)
        .map(|i| var(i).neg().div(&a_sq).expect("a₁ ≠ 0"))
        .collect();
    let mut phi: BTreeMap<usize, RatFunc> = BTreeMap::new();
    phi.insert(0, phi_a.clone());
    for (i, f) in phi_b.iter().enumerate() {
        phi.insert(i + 1, f.clone());
    }

    let involution = phi
        .iter()
        .all(|(&i, f)| f.substitute(&phi).map(|g| g == var(i)).unwrap_or(false));

    let lambda = phi_b[0].div(&var(1)).expect("b₀ ≠ 0");
    let lambda_free_of_b = (1..=d + 1)
        .all(|i| !lambda.numerator().contains_var(i) && !lambda.denominator().contains_var(i));
    let fiber_linear = lambda_free_of_b
        && phi_b
            .iter()
            .enumerate()
            .all(|(i, f)| *f == lambda.mul(&var(i + 1)));
    let minus_inv_sq = RatFunc::new(-Poly::one(&ctx), ctx.var_at(0).pow(2)).expect("nonzero");
    let scaling_is_minus_inverse_square = lambda == minus_inv_sq;

    // Chart x = 1 of V(xz + y²): the point (1 : y : z : u⃗) with z = −y².
    // The chart z ≠ 0 uses (−y/z, u⃗/z); identify y with a₁ and u⃗ with b⃗.
    let y = var(0);
    let z = y.mul(&y).neg();
    let quadric_agrees = y.neg().div(&z).map(|f| f == phi_a).unwrap_or(false)
        && (1..=d + 1).all(|i| var(i).div(&z).map(|f| f == phi_b[i - 1]).unwrap_or(false));

    let two = Rational::from_integer(2.into());
    let ones = vec![Rational::one(); d + 1];
    let once = chart_transition(&two, &ones).expect("a₁ = 2");
    let sample_round_trip = chart_transition(&once.a1, &once.b).expect("a₁ = 1/2");

    TransitionReport {
        d,
        involution,
        fiber_linear,
        scaling_factor: lambda.to_string(),
        scaling_is_minus_inverse_square,
        quadric_agrees,
        sample_round_trip,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, rat};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn nilpotents_multiply_to_zero() {
        let r = ArtinAlgebra::new(1);
        let p = mul(&r.x(0), &r.x(1)).unwrap();
        assert_eq!(p, r.zero());
        let e = r.element(ints(&[2, 1, 1])).unwrap();
        assert_eq!(mul(&r.one(), &e).unwrap(), e);
    }

    #[test]
    fn mixed_product() {
        let r = ArtinAlgebra::new(1);
        let e1 = r.element(ints(&[2, 1, 1])).unwrap();
        let e2 = r.element(ints(&[3, 0, 1])).unwrap();
        assert_eq!(mul(&e1, &e2).unwrap().coords(), ints(&[6, 3, 5]).as_slice());
        assert!(mul(&e1, &ArtinAlgebra::new(2).one()).is_err());
    }

    #[test]
    fn inverse_is_two_sided() {
        let r = ArtinAlgebra::new(2);
        let e = r.element(vec![rat(3, 2), int(1), int(-4), rat(1, 7)]).unwrap();
        let inv = inverse(&e).unwrap();
        assert_eq!(mul(&e, &inv).unwrap(), r.one());
        assert_eq!(inverse(&r.x(0)), Err(ArtinError::NotInvertible));
    }

    #[test]
    fn closure_of_single_generator() {
        let r = ArtinAlgebra::new(1);
        let g = r.pair(&r.x(0).neg(), &r.one());
        let m = rmodule_closure(&[g], &r);
        assert_eq!(m.dim(), 3);
        assert!(m.is_closed());
        assert_eq!(rmodule_closure(&[], &r).dim(), 0);
    }

    #[test]
    fn already_closed_generators() {
        let r = ArtinAlgebra::new(1);
        let z = r.zero();
        let gens = vec![r.pair(&r.x(0), &z), r.pair(&r.x(1), &z), r.pair(&z, &r.x(1))];
        let m = rmodule_closure(&gens, &r);
        assert_eq!(m.dim(), 3);
        assert_eq!(m, Submodule::span(&r, gens));
    }

    #[test]
    fn split_kernel() {
        let r = ArtinAlgebra::new(1);
        let (k, chart) = kernel_of_pair(&r.one(), &r.zero(), &r).unwrap();
        assert_eq!(k.dim(), 3);
        let z = r.zero();
        let right = Submodule::span(&r, vec![r.pair(&z, &r.one()), r.pair(&z, &r.x(0)), r.pair(&z, &r.x(1))]);
        assert_eq!(k, right);
        assert_eq!(chart.unwrap(), PairChart { a1: int(0), b: ints(&[0, 0]) });
    }

    #[test]
    fn pair_needs_a_unit() {
        let r = ArtinAlgebra::new(1);
        assert_eq!(
            kernel_of_pair(&r.x(0), &r.x(1), &r),
            Err(ArtinError::NotSurjective)
        );
        let (k, chart) = kernel_of_pair(&r.x(0), &r.one(), &r).unwrap();
        assert_eq!(k.dim(), 3);
        assert!(chart.is_none());
    }

    #[test]
    fn gamma_kernel_base_point() {
        let r = ArtinAlgebra::new(1);
        let g = GammaPoint::new(&ints(&[0, 1]), (int(0), int(1))).unwrap();
        let m = gamma_kernel(&g, &r).unwrap();
        let z = r.zero();
        let want = Submodule::span(&r, vec![r.pair(&r.x(0), &z), r.pair(&r.x(1), &z), r.pair(&z, &r.x(1))]);
        assert_eq!(m, want);
        assert!(m.is_closed());
    }

    #[test]
    fn gamma_point_normalized() {
        let g = GammaPoint::new(&ints(&[0, 3, 6]), (int(2), int(4))).unwrap();
        assert_eq!(g.direction(), ints(&[0, 1, 2]).as_slice());
        assert_eq!(g.slope(), (&int(1), &int(2)));
        assert!(GammaPoint::new(&ints(&[0, 0]), (int(1), int(0))).is_err());
    }

    #[test]
    fn limit_at_zero_slope_parameter() {
        // a₁ = 0: the limit is spanned by (Σuᵢxᵢ, 0) and all (0, xᵢ).
        let r = ArtinAlgebra::new(1);
        let u = ints(&[2, -1]);
        let lim = gamma_limit(&u, &int(0), &r).unwrap();
        let z = r.zero();
        let ux = r.element(ints(&[0, 2, -1])).unwrap();
        let want = Submodule::span(&r, vec![r.pair(&ux, &z), r.pair(&z, &r.x(0)), r.pair(&z, &r.x(1))]);
        assert_eq!(lim, want);
    }

    #[test]
    fn transition_checks_pass() {
        for d in 1..=3 {
            let rep = transition_check(d);
            assert!(rep.passed(), "{rep:?}");
            assert_eq!(rep.sample_round_trip, PairChart { a1: int(2), b: vec![int(1); d + 1] });
        }
        let fixed = chart_transition(&int(1), &ints(&[3, -2])).unwrap();
        assert_eq!(fixed.b, ints(&[-3, 2]));
        assert_eq!(chart_transition(&int(0), &[]), Err(ArtinError::OffChart));
    }
}
