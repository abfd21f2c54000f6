use std::collections::BTreeSet;

use beatty_core::beatty::{
    brute_force_mismatches, epsilon, is_mismatch, k_window, mismatch_set, mismatch_sign, recover_k, MismatchTest,
};
use beatty_core::cutproject::{scale_by_conjugate, sigma_points, translate, unit_interval_points, unscale_by_conjugate};
use beatty_core::{BigInt, Family, GFib, LatticePoint, QuadraticUnit, Window, ZBeta};
use proptest::prelude::*;

fn grid() -> Vec<GFib> {
    let mut v = Vec::new();
    for m in [1, 2, 3] {
        v.push(GFib::build(QuadraticUnit::new(Family::Plus, m).unwrap(), 64).unwrap());
    }
    for m in [3, 4, 5] {
        v.push(GFib::build(QuadraticUnit::new(Family::Minus, m).unwrap(), 64).unwrap());
    }
    v
}

#[test]
fn power_identities_to_sixty() {
    for g in grid() {
        let beta = g.unit().beta();
        let mut acc = g.unit().one();
        for i in 1..=60 {
            acc = acc.try_mul(&beta).unwrap();
            assert_eq!(g.beta_pow(i).unwrap(), acc, "{} i={i}", g.unit());
            assert!(g.verify_power_identity(i).unwrap());
        }
    }
    // G_60 is past 64 bits for every m ≥ 2.
    let g = GFib::build(QuadraticUnit::new(Family::Plus, 2).unwrap(), 64).unwrap();
    assert!(g.get(60).unwrap() > &BigInt::from(u64::MAX));
}

#[test]
fn range_law_and_criterion_on_small_window() {
    for g in grid() {
        let family = g.unit().family();
        for i in 1..=12 {
            let test = MismatchTest::new(&g, i).unwrap();
            let nonzero = mismatch_sign(family, i);
            for j in -2000i64..=2000 {
                let e = epsilon(&g, i, &j.into()).unwrap();
                assert!(e == 0 || e == nonzero, "{} i={i} j={j} ε={e}", g.unit());
                assert_eq!(test.is_mismatch_i64(j), e != 0, "{} i={i} j={j}", g.unit());
            }
        }
    }
}

fn closed_form_positions(g: &GFib, i: usize, n: i64) -> Vec<BigInt> {
    let k = k_window(g, i, n as u64).unwrap();
    let lo = BigInt::from(-n);
    let hi = BigInt::from(n);
    mismatch_set(g, i, -k, k)
        .unwrap()
        .into_iter()
        .map(|r| r.j)
        .filter(|j| *j >= lo && *j <= hi)
        .collect()
}

#[test]
fn set_equivalence_and_inverse() {
    let n = 1500;
    for g in grid() {
        for i in 1..=12 {
            let brute: Vec<BigInt> = brute_force_mismatches(&g, i, -n, n).unwrap().into_iter().map(|(j, _)| j).collect();
            assert_eq!(brute, closed_form_positions(&g, i, n), "{} i={i}", g.unit());
            let k = k_window(&g, i, n as u64).unwrap();
            for r in mismatch_set(&g, i, -k, k).unwrap() {
                assert_eq!(recover_k(&g, i, &r.j).unwrap(), r.k);
                assert_eq!(epsilon(&g, i, &r.j).unwrap(), r.epsilon);
            }
        }
    }
}

#[test]
fn golden_ratio_positive_mismatches() {
    let g = GFib::build(QuadraticUnit::golden(), 20).unwrap();
    let fib = g.values();
    let tau = g.unit();
    for i in 1..=8 {
        let window = 3000i64;
        let brute: Vec<BigInt> = brute_force_mismatches(&g, i, 1, window).unwrap().into_iter().map(|(j, _)| j).collect();
        let mut expect = Vec::new();
        for k in 1i64.. {
            let j = &fib[i + 1] * k + tau.floor_mul_i64(k) * &fib[i];
            if j > BigInt::from(window) {
                break;
            }
            expect.push(j);
        }
        assert_eq!(brute, expect, "i={i}");
    }
}

#[test]
fn unit_interval_formula() {
    for g in grid() {
        let u = g.unit();
        let a = sigma_points(&Window::unit_interval(u), -1000, 1000).unwrap();
        let b = unit_interval_points(u, -1000, 1000).unwrap();
        assert_eq!(a, b);
    }
}

fn sample_windows(u: QuadraticUnit) -> Vec<Window> {
    let z = |a: i64, b: i64| ZBeta::new(u, a, b);
    let mut v = vec![
        Window::unit_interval(u),
        Window::new(z(0, 0), z(0, 1)).unwrap(),
        Window::new(z(-1, 1), z(2, -1)).unwrap(),
        Window::new(z(-3, 0), z(4, -2)).unwrap(),
    ];
    let g = GFib::build(u, 10).unwrap();
    v.push(Window::new(u.zero(), g.beta_pow(3).unwrap()).unwrap());
    v
}

#[test]
fn membership_and_translation() {
    for g in grid() {
        let u = g.unit();
        for w in sample_windows(u) {
            let pts = sigma_points(&w, -300, 300).unwrap();
            for p in &pts {
                assert!(w.contains(&p.star(u)).unwrap());
            }
            for t in [-5i64, -1, 0, 3] {
                let t = BigInt::from(t);
                assert_eq!(sigma_points(&w.shift(&t), -300, 300).unwrap(), translate(&pts, &t));
            }
        }
    }
}

#[test]
fn scaling_two_sided_containment() {
    let (lo, hi) = (-400i64, 400i64);
    let in_range = |p: &LatticePoint| p.b >= BigInt::from(lo) && p.b <= BigInt::from(hi);
    for g in grid() {
        let u = g.unit();
        for w in sample_windows(u) {
            let src = sigma_points(&w, lo, hi).unwrap();
            let dst = sigma_points(&w.scale_by_beta(), lo, hi).unwrap();
            let src_set: BTreeSet<_> = src.iter().cloned().collect();
            let dst_set: BTreeSet<_> = dst.iter().cloned().collect();
            let mut compared = 0;
            for p in scale_by_conjugate(u, &src) {
                if in_range(&p) {
                    assert!(dst_set.contains(&p), "{u} image {p:?}");
                    compared += 1;
                }
            }
            for q in unscale_by_conjugate(u, &dst) {
                if in_range(&q) {
                    assert!(src_set.contains(&q), "{u} preimage {q:?}");
                    compared += 1;
                }
            }
            assert!(compared > 0);
        }
    }
}

#[test]
fn sigma_window_reproduces_even_mismatch_sets() {
    for m in [1, 2, 3] {
        let g = GFib::build(QuadraticUnit::new(Family::Plus, m).unwrap(), 20).unwrap();
        for i in [2, 4] {
            let w = Window::new(g.unit().zero(), g.beta_pow(i).unwrap()).unwrap();
            let n = 2000;
            let bs: Vec<BigInt> = sigma_points(&w, -n, n).unwrap().into_iter().map(|p| p.b).collect();
            assert_eq!(bs, closed_form_positions(&g, i, n), "m={m} i={i}");
        }
    }
}

fn gfib_strategy() -> impl Strategy<Value = GFib> {
    prop_oneof![(1u64..6).prop_map(|m| (Family::Plus, m)), (3u64..9).prop_map(|m| (Family::Minus, m)),]
        .prop_map(|(f, m)| GFib::build(QuadraticUnit::new(f, m).unwrap(), 40).unwrap())
}

proptest! {
    #[test]
    fn criterion_matches_epsilon_anywhere(g in gfib_strategy(), i in 1usize..30, j in any::<i64>()) {
        let jb = BigInt::from(j);
        let e = epsilon(&g, i, &jb).unwrap();
        prop_assert!(e == 0 || e == mismatch_sign(g.unit().family(), i));
        prop_assert_eq!(is_mismatch(&g, i, &jb).unwrap(), e != 0);
    }

    #[test]
    fn closed_form_records_are_mismatches(g in gfib_strategy(), i in 1usize..30, k in -1_000_000_000i64..1_000_000_000) {
        for r in mismatch_set(&g, i, k, k).unwrap() {
            prop_assert_eq!(epsilon(&g, i, &r.j).unwrap(), r.epsilon);
            prop_assert_eq!(recover_k(&g, i, &r.j).unwrap(), r.k);
        }
    }
}
