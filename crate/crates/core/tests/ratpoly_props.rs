use std::collections::BTreeMap;

use num_traits::{One, Zero};
use proptest::prelude::*;
use quotkit_core::ratpoly::{
    eliminate_linear, int, jacobian_rank_at, matrix_reduce, rat, Monomial, Poly, PolySystem,
    RatMatrix, Rational, VarContext,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ctx3() -> VarContext {
    VarContext::new(["x", "y", "z"]).unwrap()
}

fn poly_strategy(max_deg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        ((0..=max_deg, 0..=max_deg, 0..=max_deg), -5i64..=5),
        0..6,
    )
    .prop_map(|terms| {
        let c = ctx3();
        Poly::from_terms(
            &c,
            terms
                .into_iter()
                .map(|((a, b, e), k)| (Monomial::from_exponents(vec![a, b, e]), int(k))),
        )
    })
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
    })
}

fn det(m: &[Vec<Rational>]) -> Rational {
    // Laplace expansion along the first row.
    if m.is_empty() {
        return Rational::one();
    }
    let n = m.len();
    let mut acc = Rational::zero();
    for j in 0..n {
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Largest k with a nonzero k×k minor.
fn rank_by_minors(rows: &[Vec<i64>]) -> usize {
    let r = rows.len();
    let c = rows[0].len();
    for k in (1..=r.min(c)).rev() {
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let sub: Vec<Vec<Rational>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| int(rows[i][j])).collect()).collect();
                if !det(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

/// ∂f/∂x_v at `p` by interpolating t ↦ f(p + t·e_v) and reading the t-coefficient.
fn derivative_by_interpolation(f: &Poly, v: usize, p: &[Rational]) -> Rational {
    let deg = f.degree_in(v) as i64;
    let ts: Vec<Rational> = (0..=deg).map(int).collect();
    let ys: Vec<Rational> = ts
        .iter()
        .map(|t| {
            let mut q = p.to_vec();
            q[v] = &q[v] + t;
            f.eval(&q).unwrap()
        })
        .collect();
    // Derivative at 0 of the Lagrange interpolant.
    let mut acc = Rational::zero();
    for i in 0..ts.len() {
        let denom: Rational = (0..ts.len()).filter(|&j| j != i).map(|j| &ts[i] - &ts[j]).product();
        // d/dt Π_{j≠i}(t − t_j) at t = 0.
        let mut dnum = Rational::zero();
        for k in 0..ts.len() {
            if k == i {
                continue;
            }
            let prod: Rational = (0..ts.len())
                .filter(|&j| j != i && j != k)
                .map(|j| -&ts[j])
                .product();
            dnum += prod;
        }
        acc += &ys[i] * dnum / denom;
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reduce_is_idempotent(rows in matrix_strategy()) {
        let c = rows[0].len();
        let m = RatMatrix::from_ints(&rows);
        let once = matrix_reduce(&m);
        let twice = matrix_reduce(&once.rref);
        prop_assert_eq!(&twice.rref, &once.rref);
        prop_assert_eq!(&twice.pivots, &once.pivots);
        prop_assert_eq!(once.rank, rank_by_minors(&rows));
        prop_assert_eq!(once.kernel_basis.len(), c - once.rank);
        for k in &once.kernel_basis {
            let col = RatMatrix::from_rows(k.iter().map(|x| vec![x.clone()]).collect(), 1);
            prop_assert!(m.mul(&col).is_zero());
        }
    }

    #[test]
    fn exact_division_recovers_factor(p in poly_strategy(3), q in poly_strategy(3)) {
        prop_assume!(!q.is_zero());
        let prod = &p * &q;
        prop_assert_eq!(prod.exact_divide(&q).unwrap(), p);
    }

    #[test]
    fn product_rule(f in poly_strategy(3), g in poly_strategy(3), v in 0usize..3) {
        let lhs = (&f * &g).derivative(v);
        let rhs = &(&f * &g.derivative(v)) + &(&g * &f.derivative(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        f in poly_strategy(2),
        g in poly_strategy(2),
        pt in prop::collection::vec(-4i64..=4, 3),
    ) {
        let point: Vec<Rational> = pt.iter().map(|&k| int(k)).collect();
        let subs: BTreeMap<usize, Poly> = [(0, g.clone())].into();
        let lhs = f.substitute_indexed(&subs).eval(&point).unwrap();
        let mut inner = point.clone();
        inner[0] = g.eval(&point).unwrap();
        prop_assert_eq!(lhs, f.eval(&inner).unwrap());
    }

    #[test]
    fn jacobian_matches_interpolated_derivatives(
        f in poly_strategy(3),
        g in poly_strategy(2),
        pt in prop::collection::vec(-3i64..=3, 3),
    ) {
        let c = ctx3();
        let point: Vec<Rational> = pt.iter().map(|&k| int(k)).collect();
        let sys = PolySystem::new(&c, vec![f, g]).unwrap();
        let (rank, jac) = jacobian_rank_at(&sys, &point).unwrap();
        for (i, gen) in sys.generators().iter().enumerate() {
            for v in 0..3 {
                prop_assert_eq!(jac.get(i, v), &derivative_by_interpolation(gen, v, &point));
            }
        }
        prop_assert_eq!(rank, matrix_reduce(&jac).rank);
    }

    #[test]
    fn canonical_text_round_trips(p in poly_strategy(3)) {
        let text = p.to_canonical_string();
        prop_assert_eq!(Poly::parse(&ctx3(), &text).unwrap(), p);
    }
}

fn random_poly(rng: &mut ChaCha8Rng, ctx: &VarContext, vars: &[usize], terms: usize) -> Poly {
    let mut p = Poly::zero(ctx);
    for _ in 0..terms {
        let mut e = vec![0u32; ctx.len()];
        for &v in vars {
            e[v] = rng.gen_range(0..=1);
        }
        p = &p + &Poly::from_term(ctx, Monomial::from_exponents(e), int(rng.gen_range(-3..=3)));
    }
    p
}

/// Triangular bindings over free variables plus a residual `w·q` whose zero
/// set contains `w = 0`.
fn random_system(rng: &mut ChaCha8Rng) -> PolySystem {
    let ctx = VarContext::new(["a", "b", "c", "d", "e", "f"]).unwrap();
    let n = ctx.len();
    let bound = rng.gen_range(1..=3usize);
    let mut gens = Vec::new();
    for v in 0..bound {
        let later: Vec<usize> = ((v + 1)..n).collect();
        let rhs = random_poly(rng, &ctx, &later, 3);
        gens.push(&ctx.var_at(v) - &rhs);
    }
    let free: Vec<usize> = (bound..n).collect();
    let w = free[rng.gen_range(0..free.len())];
    let q = &random_poly(rng, &ctx, &free, 2) + &Poly::constant(&ctx, int(1));
    gens.push(&ctx.var_at(w) * &q);
    if rng.gen_bool(0.5) {
        let w2 = free[rng.gen_range(0..free.len())];
        gens.push(&(&ctx.var_at(w) * &ctx.var_at(w2)) * &random_poly(rng, &ctx, &free, 2));
    }
    PolySystem::new(&ctx, gens).unwrap()
}

#[test]
fn elimination_preserves_solutions() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let sys = random_system(&mut rng);
        let (reduced, subs) = eliminate_linear(&sys);
        let n = sys.context().len();
        let mut found = 0;
        let mut tries = 0;
        while found < 50 && tries < 5000 {
            tries += 1;
            let point: Vec<Rational> = (0..n)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        Rational::zero()
                    } else {
                        rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
                    }
                })
                .collect();
            if !reduced.vanishes_at(&point).unwrap() {
                continue;
            }
            found += 1;
            let mut full = point.clone();
            for (v, value) in subs.iter() {
                full[v] = value.eval(&point).unwrap();
            }
            for g in sys.generators() {
                assert!(g.eval(&full).unwrap().is_zero(), "{g} at {full:?}");
            }
        }
        assert_eq!(found, 50, "system {:?}", sys.to_strings());
    }
}
