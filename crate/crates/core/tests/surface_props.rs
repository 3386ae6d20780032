use std::collections::BTreeMap;

use proptest::prelude::*;
use quotkit_core::ratpoly::{int, rat, Rational};
use quotkit_core::sampling;
use quotkit_core::surface::{
    blowup_point, ch_additivity_check, ch_pushforward, check_main_ineq, filtration_ch2_bound,
    section_selfint_via_lattice, strict_transform_defect_check, DivisorClass, FiltrationData,
    IneqKind, SurfaceLattice,
};
use quotkit_core::transform::blowup_section_selfint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lattice_strategy() -> impl Strategy<Value = SurfaceLattice> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(-4i64..=4, n * (n + 1) / 2).prop_map(move |upper| {
            let mut gram = vec![vec![0; n]; n];
            let mut k = 0;
            for i in 0..n {
                for j in i..n {
                    gram[i][j] = upper[k];
                    gram[j][i] = upper[k];
                    k += 1;
                }
            }
            let labels = (0..n).map(|i| format!("D{i}")).collect();
            SurfaceLattice::new(labels, gram).unwrap()
        })
    })
}

fn class(v: &[i64]) -> DivisorClass {
    DivisorClass::from_ints(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn form_is_symmetric_and_bilinear(
        lat in lattice_strategy(),
        coeffs in prop::collection::vec(-5i64..=5, 12),
        s in -3i64..=3,
        t in -3i64..=3,
    ) {
        let n = lat.rank();
        let a = class(&coeffs[0..n]);
        let b = class(&coeffs[4..4 + n]);
        let c = class(&coeffs[8..8 + n]);
        prop_assert_eq!(lat.intersect(&a, &b).unwrap(), lat.intersect(&b, &a).unwrap());
        let combo = a.scale(&int(s)).add(&b.scale(&int(t)));
        let lhs = lat.intersect(&combo, &c).unwrap();
        let rhs = int(s) * lat.intersect(&a, &c).unwrap() + int(t) * lat.intersect(&b, &c).unwrap();
        prop_assert_eq!(lhs, rhs);
        // Oracle: explicit double sum.
        let mut direct = Rational::from_integer(0.into());
        for i in 0..n {
            for j in 0..n {
                direct += int(coeffs[i] * lat.gram()[i][j] * coeffs[4 + j]);
            }
        }
        prop_assert_eq!(lat.intersect(&a, &b).unwrap(), direct);
    }

    #[test]
    fn blowup_is_orthogonal_to_pullbacks(lat in lattice_strategy(), coeffs in prop::collection::vec(-5i64..=5, 4), m in 0i64..=3) {
        let n = lat.rank();
        let d = class(&coeffs[0..n]);
        let mults: BTreeMap<String, i64> = [(lat.labels()[0].clone(), m)].into();
        let b = blowup_point(&lat, &mults).unwrap();
        let e = b.exceptional_class();
        prop_assert_eq!(b.lattice.square(&e).unwrap(), int(-1));
        prop_assert_eq!(b.lattice.intersect(&b.pullback(&d), &e).unwrap(), int(0));
        let mult = int(coeffs[0] * m);
        let strict_sq = b.lattice.square(&b.strict(&d)).unwrap();
        prop_assert_eq!(strict_sq, lat.square(&d).unwrap() - &mult * &mult);
    }
}

#[test]
fn blowup_examples() {
    let lat = SurfaceLattice::rank_one("C", 3);
    let c = class(&[1]);
    for (m, drop) in [(0, 0), (1, 1), (2, 4)] {
        let b = blowup_point(&lat, &[("C".to_string(), m)].into()).unwrap();
        assert_eq!(b.lattice.square(&b.strict(&c)).unwrap(), int(3 - drop));
    }
}

#[test]
fn defect_on_random_chains() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let chain = sampling::blowup_chain(&mut rng);
        let check =
            strict_transform_defect_check(&chain.base, &chain.curve, &chain.multiplicities).unwrap();
        assert!(check.equal);
        // Oracle: both sides equal Σ nⱼ².
        let sum_sq: i64 = chain.multiplicities.iter().map(|n| n * n).sum();
        assert_eq!(check.lhs, int(sum_sq));
        assert_eq!(check.rhs, int(sum_sq));
    }
}

#[test]
fn defect_examples() {
    let lat = SurfaceLattice::rank_one("H", 1);
    let c = class(&[3]);
    let one = strict_transform_defect_check(&lat, &c, &[1]).unwrap();
    assert_eq!((one.lhs.clone(), one.rhs.clone()), (int(1), int(1)));
    let two = strict_transform_defect_check(&lat, &c, &[2]).unwrap();
    assert_eq!((two.lhs.clone(), two.rhs.clone()), (int(4), int(4)));
}

#[test]
fn chern_characters_of_the_double_curve() {
    for d in 1..=10i64 {
        let lat = SurfaceLattice::rank_one("C", -d);
        let c = class(&[1]);
        let two_c = class(&[2]);
        let o2c = ch_pushforward(&lat, &two_c, &int(0)).unwrap();
        assert_eq!((o2c.rank, o2c.c1.clone(), o2c.ch2.clone()), (0, two_c.clone(), int(2 * d)));
        let oc = ch_pushforward(&lat, &c, &int(0)).unwrap();
        let sum = oc.add(&oc);
        assert_eq!((sum.c1.clone(), sum.ch2.clone()), (two_c.clone(), int(d)));
        let ocd = ch_pushforward(&lat, &c, &int(d)).unwrap();
        assert_eq!(ocd.ch2, rat(3 * d, 2));
        assert_eq!(oc.ch2, rat(d, 2));
        assert!(ch_additivity_check(&ocd, &o2c, &oc));
        // Negative control.
        assert!(!ch_additivity_check(&oc, &o2c, &oc));
        let zero = ch_pushforward(&lat, &class(&[0]), &int(0)).unwrap();
        assert!(ch_additivity_check(&zero, &oc, &oc));
    }
    for h2 in 1..=4i64 {
        let lat = SurfaceLattice::rank_one("H", h2);
        for deg in 1..=10i64 {
            let ch = ch_pushforward(&lat, &class(&[deg]), &int(0)).unwrap();
            assert_eq!(ch.ch2, rat(-deg * deg * h2, 2));
        }
    }
}

fn all_sequences(max_len: usize, max_r: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &layer {
            for r in 1..=max_r {
                let mut t = s.clone();
                t.push(r);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[test]
fn main_inequality_exhaustive() {
    let seqs = all_sequences(5, 5);
    assert_eq!(seqs.len(), 5 + 25 + 125 + 625 + 3125);
    for s in &seqs {
        let res = check_main_ineq(s).unwrap();
        let n: i64 = s.iter().map(|&r| r as i64).sum();
        let m = s.len() as i64;
        let rhs: i64 = (1..=m).map(|i| (2 * m + 1 - 2 * i) * s[(i - 1) as usize] as i64).sum();
        assert_eq!((res.lhs, res.rhs), (n * n, rhs));
        assert!(res.lhs >= res.rhs);
        let all_ones = s.iter().all(|&r| r == 1);
        assert_eq!(res.kind == IneqKind::Equality, all_ones, "{s:?}");
        for csq in 1..=3 {
            let f = filtration_ch2_bound(&FiltrationData { csq, ranks: s.clone() }).unwrap();
            assert_eq!(f.tight, all_ones, "{s:?}");
        }
    }
    assert!(check_main_ineq(&[]).is_err());
}

#[test]
fn section_selfint_agrees_with_lattice_model() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        let a = rand::Rng::gen_range(&mut rng, -20..=20);
        let b = rand::Rng::gen_range(&mut rng, -20..=20);
        assert_eq!(int(blowup_section_selfint(a, b)), section_selfint_via_lattice(a, b));
    }
}
