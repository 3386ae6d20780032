use num_traits::Zero;
use proptest::prelude::*;
use quotkit_core::artinian::{
    chart_transition, gamma_kernel, gamma_limit, kernel_of_pair, mul, rmodule_closure,
    transition_check, ArtinAlgebra, ArtinElement, GammaPoint, Submodule,
};
use quotkit_core::ratpoly::{int, matrix_reduce, rat, RatMatrix, Rational};
use quotkit_core::sampling;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Structure constants of R_d: basis e₀ = 1, e_{1+i} = xᵢ.
fn table_product(d: usize, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = d + 2;
    let mut out = vec![Rational::zero(); n];
    for i in 0..n {
        for j in 0..n {
            let target = match (i, j) {
                (0, 0) => Some(0),
                (0, k) | (k, 0) => Some(k),
                _ => None,
            };
            if let Some(t) = target {
                out[t] += &a[i] * &b[j];
            }
        }
    }
    out
}

/// Repeatedly add images under every xᵢ until the rank stops growing.
fn naive_closure(gens: &[Vec<Rational>], alg: &ArtinAlgebra) -> RatMatrix {
    let n = alg.ambient_dim();
    let mut rows: Vec<Vec<Rational>> = gens.to_vec();
    let mut rank = matrix_reduce(&RatMatrix::from_rows(rows.clone(), n)).rank;
    loop {
        let mut next = rows.clone();
        for r in &rows {
            for x in alg.actions() {
                next.push(x.left_apply(r));
            }
        }
        let new_rank = matrix_reduce(&RatMatrix::from_rows(next.clone(), n)).rank;
        rows = next;
        if new_rank == rank {
            break;
        }
        rank = new_rank;
    }
    let red = matrix_reduce(&RatMatrix::from_rows(rows, n));
    RatMatrix::from_rows(red.rref.row_vecs().into_iter().take(red.rank).collect(), n)
}

fn same_span(a: &Submodule, b: &Submodule) -> bool {
    a.contains_submodule(b) && b.contains_submodule(a)
}

#[test]
fn product_example_against_table() {
    let alg = ArtinAlgebra::new(1);
    let e1 = alg.element(vec![int(2), int(1), int(1)]).unwrap();
    let e2 = alg.element(vec![int(3), int(0), int(1)]).unwrap();
    let expect = vec![int(6), int(3), int(5)];
    assert_eq!(mul(&e1, &e2).unwrap().coords(), expect.as_slice());
    assert_eq!(table_product(1, e1.coords(), e2.coords()), expect);
}

#[test]
fn closure_examples_against_naive_oracle() {
    let alg = ArtinAlgebra::new(1);
    let g = alg.pair(
        &alg.element(vec![int(0), int(-1), int(0)]).unwrap(),
        &alg.one(),
    );
    let s = rmodule_closure(&[g.clone()], &alg);
    assert_eq!(s.dim(), 3);
    assert_eq!(s.basis(), &naive_closure(&[g], &alg));
    assert_eq!(rmodule_closure(&[], &alg).dim(), 0);
}

#[test]
fn kernel_example_d2() {
    let alg = ArtinAlgebra::new(2);
    let e = alg.element(vec![int(2), int(0), int(0), int(0)]).unwrap();
    let h = alg.element(vec![int(1), int(1), int(0), int(0)]).unwrap();
    let (k, chart) = kernel_of_pair(&e, &h, &alg).unwrap();
    let chart = chart.unwrap();
    assert_eq!(chart.a1, rat(1, 2));
    assert_eq!(chart.b, vec![rat(1, 2), int(0), int(0)]);
    assert_eq!(k.dim(), 4);
    assert_eq!(k.basis(), &naive_closure(&[alg.pair(&h.neg(), &e)], &alg));
}

#[test]
fn gamma_example_d2_is_independent() {
    let alg = ArtinAlgebra::new(2);
    let g = GammaPoint::new(&[int(1), int(0), int(0)], (int(1), int(1))).unwrap();
    let k = gamma_kernel(&g, &alg).unwrap();
    // Oracle: the six listed generators have rank 4.
    let x = |i: usize| {
        let mut v = vec![Rational::zero(); alg.ambient_dim()];
        v[alg.left_x(i)] = int(1);
        v
    };
    let y = |i: usize| {
        let mut v = vec![Rational::zero(); alg.ambient_dim()];
        v[alg.right_x(i)] = int(1);
        v
    };
    let mut rows = vec![x(0), y(0)];
    for i in 0..3 {
        let mut r = x(i);
        r[alg.right_x(i)] = int(-1);
        rows.push(r);
    }
    let listed = matrix_reduce(&RatMatrix::from_rows(rows, alg.ambient_dim()));
    assert_eq!(listed.rank, 4);
    assert_eq!(k.dim(), 4);
}

#[test]
fn limit_generators_d1() {
    let alg = ArtinAlgebra::new(1);
    for (u0, u1, a1) in [(1, 2, 3), (0, 1, -1), (2, -1, 0), (1, 0, 5)] {
        let u = [int(u0), int(u1)];
        let a1 = int(a1);
        let lim = gamma_limit(&u, &a1, &alg).unwrap();
        let n = alg.ambient_dim();
        let mut rows = Vec::new();
        let mut r = vec![Rational::zero(); n];
        r[alg.left_x(0)] = u[0].clone();
        r[alg.left_x(1)] = u[1].clone();
        rows.push(r);
        let mut r = vec![Rational::zero(); n];
        r[alg.right_x(0)] = u[0].clone();
        r[alg.right_x(1)] = u[1].clone();
        rows.push(r);
        // xᵢ·(−h, e) = (−a₁xᵢ, xᵢ).
        for i in 0..2 {
            let mut r = vec![Rational::zero(); n];
            r[alg.left_x(i)] = -a1.clone();
            r[alg.right_x(i)] = int(1);
            rows.push(r);
        }
        let expected = Submodule::span(&alg, rows);
        assert!(same_span(&lim, &expected), "u=({u0},{u1})");
        assert_eq!(lim.dim(), 3);
    }
}

#[test]
fn limits_match_gamma_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in 0..=4 {
        let alg = ArtinAlgebra::new(d);
        for _ in 0..50 {
            let u = sampling::direction(&mut rng, d, 5);
            let a1 = sampling::rational(&mut rng, 5);
            let lim = gamma_limit(&u, &a1, &alg).unwrap();
            let g = GammaPoint::new(&u, (int(1), a1.clone())).unwrap();
            let direct = gamma_kernel(&g, &alg).unwrap();
            assert_eq!(lim.basis(), direct.basis(), "d={d}");
        }
    }
}

#[test]
fn gamma_kernel_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in 0..=6 {
        let alg = ArtinAlgebra::new(d);
        for _ in 0..20 {
            let g = sampling::gamma_point(&mut rng, d, 6);
            let k = gamma_kernel(&g, &alg).unwrap();
            assert_eq!(k.dim(), d + 2);
            assert!(k.is_closed());
        }
    }
}

#[test]
fn transition_examples() {
    let t = chart_transition(&int(2), &[int(1), int(1)]).unwrap();
    let back = chart_transition(&t.a1, &t.b).unwrap();
    assert_eq!((back.a1, back.b), (int(2), vec![int(1), int(1)]));
    let fixed = chart_transition(&int(1), &[int(3), rat(-1, 2)]).unwrap();
    assert_eq!((fixed.a1, fixed.b), (int(1), vec![int(-3), rat(1, 2)]));
    for d in 1..=4 {
        assert!(transition_check(d).passed(), "d={d}");
    }
}

fn algebra_and_pair() -> impl Strategy<Value = (usize, u64)> {
    (0usize..=4, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_matches_structure_constants((d, seed) in algebra_and_pair()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = ArtinAlgebra::new(d);
        let a = sampling::element(&mut rng, &alg, 7);
        let b = sampling::element(&mut rng, &alg, 7);
        let prod = mul(&a, &b).unwrap();
        prop_assert_eq!(prod.coords().to_vec(), table_product(d, a.coords(), b.coords()));
        prop_assert_eq!(mul(&a, &b).unwrap(), mul(&b, &a).unwrap());
    }

    #[test]
    fn kernel_dimension_and_closure((d, seed) in algebra_and_pair()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = ArtinAlgebra::new(d);
        let (e, h): (ArtinElement, ArtinElement) = if seed % 2 == 0 {
            (sampling::unit(&mut rng, &alg, 5), sampling::element(&mut rng, &alg, 5))
        } else {
            (sampling::element(&mut rng, &alg, 5), sampling::unit(&mut rng, &alg, 5))
        };
        let (k, chart) = kernel_of_pair(&e, &h, &alg).unwrap();
        prop_assert!(k.is_closed());
        prop_assert_eq!(k.dim(), d + 2);
        prop_assert_eq!(k.dim() + k.quotient_dim(), 2 * (d + 2));
        prop_assert_eq!(chart.is_some(), e.is_invertible());
        prop_assert_eq!(k.basis(), &naive_closure(&[alg.pair(&h.neg(), &e)], &alg));

        let lambda = sampling::nonzero_rational(&mut rng, 9);
        let (k2, _) = kernel_of_pair(&e.scale(&lambda), &h.scale(&lambda), &alg).unwrap();
        prop_assert_eq!(k.basis(), k2.basis());
    }

    #[test]
    fn closure_of_random_generators_is_closed((d, seed) in algebra_and_pair(), count in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = ArtinAlgebra::new(d);
        let gens: Vec<Vec<Rational>> = (0..count)
            .map(|_| {
                let p = sampling::element(&mut rng, &alg, 4);
                let q = sampling::element(&mut rng, &alg, 4);
                alg.pair(&p, &q)
            })
            .collect();
        let s = rmodule_closure(&gens, &alg);
        prop_assert!(s.is_closed());
        prop_assert_eq!(s.basis(), &naive_closure(&gens, &alg));
        for g in &gens {
            prop_assert!(s.contains(g));
        }
    }
}
