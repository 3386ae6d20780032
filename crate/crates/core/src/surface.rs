//! Numerical divisor classes on surfaces, point blowups, Chern characters of
//! sheaves pushed forward from curves, and the rank inequalities used for
//! filtrations of length m.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::ratpoly::{int, rat_serde, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("class has {got} coordinates, lattice has rank {expected}")]
    LatticeMismatch { expected: usize, got: usize },
    #[error("intersection form is not a symmetric square matrix")]
    NotSymmetric,
    #[error("label count does not match the form")]
    LabelCount,
    #[error("unknown class label `{0}`")]
    UnknownLabel(String),
    #[error("multiplicity must be non-negative")]
    NegativeMultiplicity,
    #[error("rank sequence must be non-empty")]
    EmptyRanks,
    #[error("ranks must be at least 1")]
    ZeroRank,
}

/// Free lattice of divisor classes with an integral symmetric form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceLattice {
    labels: Vec<String>,
    gram: Vec<Vec<i64>>,
}

impl SurfaceLattice {
    pub fn new(labels: Vec<String>, gram: Vec<Vec<i64>>) -> Result<Self, SurfaceError> {
        let n = gram.len();
        if labels.len() != n {
            return Err(SurfaceError::LabelCount);
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n || (0..n).any(|j| gram[j].len() != n || gram[j][i] != row[j]) {
                return Err(SurfaceError::NotSymmetric);
            }
        }
        Ok(Self { labels, gram })
    }

    /// Rank-one lattice generated by `label` with the given square.
    pub fn rank_one(label: &str, square: i64) -> Self {
        Self {
            labels: vec![label.to_string()],
            gram: vec![vec![square]],
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis(&self, i: usize) -> DivisorClass {
        let mut c = vec![Rational::zero(); self.rank()];
        c[i] = int(1);
        DivisorClass { coords: c }
    }

    pub fn class_of(&self, label: &str) -> Result<DivisorClass, SurfaceError> {
        self.index_of(label)
            .map(|i| self.basis(i))
            .ok_or_else(|| SurfaceError::UnknownLabel(label.to_string()))
    }

    pub fn class(&self, coords: Vec<Rational>) -> Result<DivisorClass, SurfaceError> {
        self.check(&DivisorClass { coords })
    }

    fn check(&self, c: &DivisorClass) -> Result<DivisorClass, SurfaceError> {
        if c.coords.len() != self.rank() {
            return Err(SurfaceError::LatticeMismatch {
                expected: self.rank(),
                got: c.coords.len(),
            });
        }
        Ok(c.clone())
    }

    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<Rational, SurfaceError> {
        intersect(self, a, b)
    }

    pub fn square(&self, a: &DivisorClass) -> Result<Rational, SurfaceError> {
        intersect(self, a, a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DivisorClass {
    #[serde(serialize_with = "rat_serde::seq")]
    coords: Vec<Rational>,
}

impl DivisorClass {
    pub fn from_ints(v: &[i64]) -> Self {
        Self {
            coords: v.iter().map(|&x| int(x)).collect(),
        }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            coords: vec![Rational::zero(); rank],
        }
    }

    pub fn add(&self, o: &DivisorClass) -> DivisorClass {
        assert_eq!(self.coords.len(), o.coords.len(), "lattice mismatch");
        Self {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &DivisorClass) -> DivisorClass {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> DivisorClass {
        Self {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// Same class in a lattice extended by `extra` new orthogonal classes.
    pub fn extend(&self, extra: usize) -> DivisorClass {
        let mut coords = self.coords.clone();
        coords.extend(std::iter::repeat(Rational::zero()).take(extra));
        Self { coords }
    }
}

/// `aᵀ·G·b`.
pub fn intersect(
    lat: &SurfaceLattice,
    a: &DivisorClass,
    b: &DivisorClass,
) -> Result<Rational, SurfaceError> {
    lat.check(a)?;
    lat.check(b)?;
    let mut acc = Rational::zero();
    for (i, x) in a.coords.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coords.iter().enumerate() {
            let g = lat.gram[i][j];
            if g != 0 && !y.is_zero() {
                acc += x * y * int(g);
            }
        }
    }
    Ok(acc)
}

/// One point blowup: the new lattice has the old classes (as pullbacks)
/// followed by the exceptional class `E` with `E² = −1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Blowup {
    pub lattice: SurfaceLattice,
    pub exceptional: usize,
    /// Multiplicity of each old basis class at the centre.
    pub multiplicities: Vec<i64>,
}

impl Blowup {
    pub fn exceptional_class(&self) -> DivisorClass {
        self.lattice.basis(self.exceptional)
    }

    pub fn pullback(&self, d: &DivisorClass) -> DivisorClass {
        d.extend(1)
    }

    /// Multiplicity of `d` at the centre, linear in the class.
    pub fn multiplicity(&self, d: &DivisorClass) -> Rational {
        d.coords
            .iter()
            .zip(&self.multiplicities)
            .map(|(c, &m)| c * int(m))
            .sum()
    }

    pub fn strict(&self, d: &DivisorClass) -> DivisorClass {
        let m = self.multiplicity(d);
        self.pullback(d).sub(&self.exceptional_class().scale(&m))
    }
}

pub fn blowup_point(
    lat: &SurfaceLattice,
    multiplicities: &BTreeMap<String, i64>,
) -> Result<Blowup, SurfaceError> {
    let mut mult = vec![0; lat.rank()];
    for (label, &m) in multiplicities {
        if m < 0 {
            return Err(SurfaceError::NegativeMultiplicity);
        }
        let i = lat
            .index_of(label)
            .ok_or_else(|| SurfaceError::UnknownLabel(label.clone()))?;
        mult[i] = m;
    }
    let n = lat.rank();
    let mut gram: Vec<Vec<i64>> = lat
        .gram
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.push(0);
            r
        })
        .collect();
    let mut last = vec![0; n + 1];
    last[n] = -1;
    gram.push(last);
    let mut labels = lat.labels.clone();
    let mut k = 1;
    let mut label = format!("E{k}");
    while labels.contains(&label) {
        k += 1;
        label = format!("E{k}");
    }
    labels.push(label);
    Ok(Blowup {
        lattice: SurfaceLattice { labels, gram },
        exceptional: n,
        multiplicities: mult,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectCheck {
    #[serde(serialize_with = "rat_serde::one")]
    pub lhs: Rational,
    #[serde(serialize_with = "rat_serde::one")]
    pub rhs: Rational,
    pub equal: bool,
}

/// Blow up successively at points where the running strict transform of `c`
/// has multiplicities `mults[j]`, then compare `C² − C̃²` with `C̃·Σ nⱼEⱼ`,
/// where `Eⱼ` is the total transform of the j-th exceptional curve.
pub fn strict_transform_defect_check(
    base: &SurfaceLattice,
    c: &DivisorClass,
    mults: &[i64],
) -> Result<DefectCheck, SurfaceError> {
    let c = base.check(c)?;
    let c_sq = base.square(&c)?;
    let mut lat = base.clone();
    let mut strict = c.clone();
    let mut total = c;
    // Σ nⱼEⱼ, carried along as total transforms.
    let mut defect = DivisorClass::zero(base.rank());
    for &n in mults {
        if n < 0 {
            return Err(SurfaceError::NegativeMultiplicity);
        }
        let blow = blowup_point(&lat, &BTreeMap::new())?;
        let e = blow.exceptional_class().scale(&int(n));
        strict = blow.pullback(&strict).sub(&e);
        total = blow.pullback(&total);
        defect = blow.pullback(&defect).add(&e);
        lat = blow.lattice;
    }
    let strict_sq = lat.square(&strict)?;
    let lhs = &c_sq - &strict_sq;
    let rhs = lat.intersect(&strict, &defect)?;
    debug_assert_eq!(total.sub(&defect), strict);
    Ok(DefectCheck {
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}

/// `(rank, c₁, ch₂)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChernChar {
    pub rank: i64,
    pub c1: DivisorClass,
    #[serde(serialize_with = "rat_serde::one")]
    pub ch2: Rational,
}

impl ChernChar {
    pub fn add(&self, o: &ChernChar) -> ChernChar {
        ChernChar {
            rank: self.rank + o.rank,
            c1: self.c1.add(&o.c1),
            ch2: &self.ch2 + &o.ch2,
        }
    }
}

/// Chern character of a line bundle of degree `deg_l` on a curve of class `d`,
/// pushed forward to the surface: `(0, D, −D²/2 + deg L)`.
pub fn ch_pushforward(
    lat: &SurfaceLattice,
    d: &DivisorClass,
    deg_l: &Rational,
) -> Result<ChernChar, SurfaceError> {
    let d_sq = lat.square(d)?;
    Ok(ChernChar {
        rank: 0,
        c1: d.clone(),
        ch2: -d_sq / int(2) + deg_l,
    })
}

/// Whether `middle = left + right` for a short exact sequence.
pub fn ch_additivity_check(left: &ChernChar, middle: &ChernChar, right: &ChernChar) -> bool {
    left.c1.coords.len() == middle.c1.coords.len()
        && right.c1.coords.len() == middle.c1.coords.len()
        && left.add(right) == *middle
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IneqKind {
    Strict,
    Equality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IneqResult {
    pub lhs: i64,
    pub rhs: i64,
    pub kind: IneqKind,
}

fn check_ranks(ranks: &[u64]) -> Result<(), SurfaceError> {
    if ranks.is_empty() {
        return Err(SurfaceError::EmptyRanks);
    }
    if ranks.contains(&0) {
        return Err(SurfaceError::ZeroRank);
    }
    Ok(())
}

/// `(Σrᵢ)²` against `Σ(2m+1−2i)rᵢ`.
pub fn check_main_ineq(ranks: &[u64]) -> Result<IneqResult, SurfaceError> {
    check_ranks(ranks)?;
    let m = ranks.len() as i64;
    let n: i64 = ranks.iter().map(|&r| r as i64).sum();
    let rhs: i64 = ranks
        .iter()
        .enumerate()
        .map(|(k, &r)| (2 * m + 1 - 2 * (k as i64 + 1)) * r as i64)
        .sum();
    let lhs = n * n;
    Ok(IneqResult {
        lhs,
        rhs,
        kind: if lhs == rhs {
            IneqKind::Equality
        } else {
            IneqKind::Strict
        },
    })
}

/// Ranks of the successive quotients of a filtration along a curve with
/// square `csq`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationData {
    pub csq: i64,
    pub ranks: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationBound {
    #[serde(serialize_with = "rat_serde::one")]
    pub bound: Rational,
    #[serde(serialize_with = "rat_serde::one")]
    pub target: Rational,
    pub tight: bool,
}

/// `Σᵢ(−rᵢ/2 − (m−i)rᵢ)·C²` compared with `−n²C²/2`.
pub fn filtration_ch2_bound(f: &FiltrationData) -> Result<FiltrationBound, SurfaceError> {
    check_ranks(&f.ranks)?;
    let m = f.ranks.len() as i64;
    let csq = int(f.csq);
    let mut bound = Rational::zero();
    for (k, &r) in f.ranks.iter().enumerate() {
        let i = k as i64 + 1;
        let r = int(r as i64);
        bound += (-&r / int(2) - int(m - i) * &r) * &csq;
    }
    let n: i64 = f.ranks.iter().map(|&r| r as i64).sum();
    let target = -int(n * n) * &csq / int(2);
    Ok(FiltrationBound {
        tight: bound == target,
        bound,
        target,
    })
}

/// Symmetric trilinear form on a few named divisor classes of a threefold.
/// Unknown triple products are `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicForm {
    labels: Vec<String>,
    table: BTreeMap<[usize; 3], Rational>,
}

impl CubicForm {
    pub fn new(labels: Vec<String>) -> Self {
        Self {
            labels,
            table: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, mut idx: [usize; 3], v: Rational) {
        idx.sort_unstable();
        self.table.insert(idx, v);
    }

    pub fn get(&self, mut idx: [usize; 3]) -> Option<&Rational> {
        idx.sort_unstable();
        self.table.get(&idx)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `x·y·z` for coordinate vectors over the labels.
    pub fn eval(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                for (k, c) in z.iter().enumerate() {
                    if a.is_zero() || b.is_zero() || c.is_zero() {
                        continue;
                    }
                    acc += a * b * c * self.get([i, j, k])?;
                }
            }
        }
        Some(acc)
    }
}

/// Intersection numbers for the blowup σ of a ℙ¹-bundle threefold along a
/// section ℓ of the ruled surface S over a curve L, with `(ℓ²)_S = a` and
/// `L² = b`: classes σ*S and the exceptional divisor E, with
/// `(σ*S)²·E = 0`, `σ*S·E² = −S·ℓ = −b` and `E³ = −deg N_ℓ = −(a+b)`.
pub fn section_blowup_form(a: i64, b: i64) -> CubicForm {
    let mut f = CubicForm::new(vec!["σ*S".into(), "E".into()]);
    f.set([0, 0, 1], int(0));
    f.set([0, 1, 1], int(-b));
    f.set([1, 1, 1], int(-(a + b)));
    f
}

/// `(S̃|_E)² = (σ*S − E)²·E` from the cubic form.
pub fn section_selfint_via_lattice(a: i64, b: i64) -> Rational {
    let f = section_blowup_form(a, b);
    let strict = [int(1), int(-1)];
    let e = [int(0), int(1)];
    f.eval(&strict, &strict, &e)
        .expect("only E-containing products are needed")
}
