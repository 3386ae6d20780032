//! Random instance generators shared by the test suites and the CLI battery.
//! All generators are driven by a caller-supplied RNG so runs are reproducible.

use rand::Rng;

use crate::artinian::{ArtinAlgebra, ArtinElement, GammaPoint};
use crate::ratpoly::{rat, Rational};
use crate::surface::{DivisorClass, SurfaceLattice};
use crate::transform::{CurveKind, CurveNode, Edge, GraphSpec, ResolutionGraph};

/// A rational `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ bound`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    let bound = bound.max(1);
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

pub fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let r = rational(rng, bound);
        if r != rat(0, 1) {
            return r;
        }
    }
}

/// A nonzero vector in k^{d+1}.
pub fn direction<R: Rng + ?Sized>(rng: &mut R, d: usize, bound: i64) -> Vec<Rational> {
    loop {
        let v: Vec<Rational> = (0..=d).map(|_| rational(rng, bound)).collect();
        if v.iter().any(|c| *c != rat(0, 1)) {
            return v;
        }
    }
}

pub fn gamma_point<R: Rng + ?Sized>(rng: &mut R, d: usize, bound: i64) -> GammaPoint {
    let u = direction(rng, d, bound);
    let slope = if rng.gen_bool(0.5) {
        (rat(1, 1), rational(rng, bound))
    } else {
        (rational(rng, bound), rat(1, 1))
    };
    GammaPoint::new(&u, slope).expect("nonzero data")
}

pub fn element<R: Rng + ?Sized>(rng: &mut R, alg: &ArtinAlgebra, bound: i64) -> ArtinElement {
    let coords = (0..alg.dim()).map(|_| rational(rng, bound)).collect();
    alg.element(coords).expect("right length")
}

pub fn unit<R: Rng + ?Sized>(rng: &mut R, alg: &ArtinAlgebra, bound: i64) -> ArtinElement {
    let a = nonzero_rational(rng, bound);
    let b: Vec<Rational> = (0..=alg.d()).map(|_| rational(rng, bound)).collect();
    alg.from_parts(a, &b).expect("right length")
}

/// A graph satisfying the pullback identity on every exceptional curve, with
/// total multiplicity at most `max_total`.
pub fn consistent_graph<R: Rng + ?Sized>(rng: &mut R, max_total: u32) -> ResolutionGraph {
    let n_exc = rng.gen_range(0..=4usize);
    let n_strict = rng.gen_range(1..=3usize);
    // Reserve one unit per exceptional curve for a possible filler component.
    let mut budget = max_total.saturating_sub(n_exc as u32);
    let mut take = |rng: &mut R, hi: u32| -> u32 {
        let m = rng.gen_range(0..=hi.min(budget));
        budget -= m;
        m
    };
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for i in 0..n_strict {
        let m = take(rng, 3);
        nodes.push(CurveNode {
            label: format!("S{i}"),
            self_int: rng.gen_range(-4..=4),
            mult: m,
            kind: CurveKind::StrictTransform,
        });
    }
    for i in 0..n_strict {
        for j in (i + 1)..n_strict {
            if rng.gen_bool(0.4) {
                edges.push(Edge {
                    a: format!("S{i}"),
                    b: format!("S{j}"),
                    count: 1,
                });
            }
        }
    }
    let exc_mults: Vec<u32> = (0..n_exc).map(|_| take(rng, 3)).collect();
    // Exceptional-exceptional edges only between curves that both carry
    // multiplicity, so the identity stays solvable.
    let mut partial = vec![0i64; n_exc];
    for i in 0..n_exc {
        for j in (i + 1)..n_exc {
            if exc_mults[i] > 0 && exc_mults[j] > 0 && rng.gen_bool(0.4) {
                edges.push(Edge {
                    a: format!("E{i}"),
                    b: format!("E{j}"),
                    count: 1,
                });
                partial[i] += i64::from(exc_mults[j]);
                partial[j] += i64::from(exc_mults[i]);
            }
        }
    }
    let carriers: Vec<usize> = (0..n_strict).filter(|&i| nodes[i].mult == 1).collect();
    for i in 0..n_exc {
        let m = i64::from(exc_mults[i]);
        let mut b = rng.gen_range(1..=3i64);
        if m > 0 {
            let need = (partial[i] + m - 1) / m;
            b = b.max(need);
        }
        let mut rest = b * m - partial[i];
        if rest > 0 {
            if let Some(&s) = carriers.first() {
                edges.push(Edge {
                    a: format!("E{i}"),
                    b: format!("S{s}"),
                    count: rest as u32,
                });
                rest = 0;
            }
        }
        if rest > 0 {
            // No reduced strict component to absorb the remainder: add one.
            let label = format!("T{i}");
            nodes.push(CurveNode {
                label: label.clone(),
                self_int: rng.gen_range(-2..=2),
                mult: 1,
                kind: CurveKind::StrictTransform,
            });
            edges.push(Edge {
                a: format!("E{i}"),
                b: label,
                count: rest as u32,
            });
        }
        nodes.push(CurveNode {
            label: format!("E{i}"),
            self_int: -b,
            mult: exc_mults[i],
            kind: CurveKind::Exceptional,
        });
    }
    ResolutionGraph::new(GraphSpec { nodes, edges }).expect("generated graph is well formed")
}

/// A base lattice, a curve class on it and a chain of point multiplicities.
#[derive(Debug, Clone)]
pub struct BlowupChain {
    pub base: SurfaceLattice,
    pub curve: DivisorClass,
    pub multiplicities: Vec<i64>,
}

pub fn blowup_chain<R: Rng + ?Sized>(rng: &mut R) -> BlowupChain {
    let base = if rng.gen_bool(0.5) {
        SurfaceLattice::rank_one("H", rng.gen_range(1..=5))
    } else {
        SurfaceLattice::new(
            vec!["F1".into(), "F2".into()],
            vec![vec![0, 1], vec![1, 0]],
        )
        .expect("hyperbolic plane")
    };
    let curve = DivisorClass::from_ints(
        &(0..base.rank())
            .map(|_| rng.gen_range(1..=6))
            .collect::<Vec<i64>>(),
    );
    let len = rng.gen_range(0..=4usize);
    let multiplicities = (0..len).map(|_| rng.gen_range(0..=3)).collect();
    BlowupChain {
        base,
        curve,
        multiplicities,
    }
}
