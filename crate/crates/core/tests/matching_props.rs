use gershgorin::matching::{probe_patterns, scaled_pattern};
use gershgorin::sampling::random_points;
use gershgorin::{
    bottleneck_match, matching_distance, pointwise_continuity_probe, Complex64, ComplexMatrix,
    SpectrumMultiset,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exhaustive minimum over all permutations; ties keep the lexicographically
/// first permutation.
fn brute_force(left: &[Complex64], right: &[Complex64]) -> (f64, Vec<usize>) {
    let n = left.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = (f64::INFINITY, perm.clone());
    loop {
        let cost = (0..n)
            .map(|j| (left[j] - right[perm[j]]).norm())
            .fold(0.0, f64::max);
        if cost < best.0 {
            best = (cost, perm.clone());
        }
        // next permutation in lexicographic order
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| perm[i] < perm[i + 1])
        else {
            return best;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn fixed_six_element_pair() {
    let s1 = [
        c(0.1, 0.2),
        c(-0.5, 0.9),
        c(0.7, -0.3),
        c(-0.2, -0.8),
        c(0.9, 0.6),
        c(-0.6, -0.1),
    ];
    let s2 = [
        c(0.4, -0.1),
        c(-0.3, 0.5),
        c(0.2, 0.9),
        c(-0.9, -0.4),
        c(0.6, 0.2),
        c(0.0, -0.7),
    ];
    let r = bottleneck_match(&s1, &s2).unwrap();
    // frozen from a 720-permutation enumeration
    assert!((r.distance - 0.7).abs() < 1e-15);
    let (d, _) = brute_force(&s1, &s2);
    assert_eq!(r.distance, d);
}

#[test]
fn threshold_matching_equals_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..300 {
        let n = rng.gen_range(1..=8);
        let a = random_points(&mut rng, n, 1.0);
        let b = random_points(&mut rng, n, 1.0);
        let fast = bottleneck_match(&a, &b).unwrap();
        let (d, perm) = brute_force(&a, &b);
        assert_eq!(fast.distance, d);
        assert_eq!(fast.assignment, perm);
    }
}

#[test]
fn tie_break_is_lexicographic_with_repeated_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(81);
    for _ in 0..100 {
        let n = rng.gen_range(2..=6);
        // coarse grid values force many exact ties
        let grid = |rng: &mut ChaCha8Rng| c(rng.gen_range(0..3) as f64, rng.gen_range(0..2) as f64);
        let a: Vec<_> = (0..n).map(|_| grid(&mut rng)).collect();
        let b: Vec<_> = (0..n).map(|_| grid(&mut rng)).collect();
        let fast = bottleneck_match(&a, &b).unwrap();
        let (d, perm) = brute_force(&a, &b);
        assert_eq!(fast.distance, d);
        assert_eq!(fast.assignment, perm);
    }
}

#[test]
fn probe_on_jordan_block_respects_square_root_growth() {
    // perturbing the zero corner by delta moves both eigenvalues to +-sqrt(delta)
    let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
    let delta = pointwise_continuity_probe(&a, 0.1, 16, 42).unwrap();
    assert!(delta > 0.0);
    assert!(delta <= 0.1 * 0.1 + 1e-6, "delta = {delta}");
}

#[test]
fn probe_result_holds_on_its_trials() {
    let a = ComplexMatrix::diagonal(&[c(0.0, 0.0), c(10.0, 0.0)]).unwrap();
    let eps = 0.5;
    let delta = pointwise_continuity_probe(&a, eps, 8, 3).unwrap();
    assert!(delta > 0.0);
    let base = gershgorin::eigenvalues_oracle(&a).unwrap();
    for pattern in probe_patterns(2, 8, 3) {
        let e = scaled_pattern(&pattern, delta).unwrap();
        assert!((e.max_abs() - delta).abs() <= 4.0 * f64::EPSILON * delta);
        let moved = gershgorin::eigenvalues_oracle(&(&a + &e)).unwrap();
        assert!(matching_distance(&base, &moved).unwrap().distance < eps);
    }
    // away from the boundary fresh random directions are fine too
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    for _ in 0..50 {
        let e: Vec<Complex64> = (0..4)
            .map(|_| Complex64::from_polar(0.5 * delta, rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        let e = ComplexMatrix::new(2, e).unwrap();
        let moved = gershgorin::eigenvalues_oracle(&(&a + &e)).unwrap();
        assert!(matching_distance(&base, &moved).unwrap().distance < eps);
    }
}

fn arb_points(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
        .prop_map(|v| v.into_iter().map(|(re, im)| c(re, im)).collect())
}

fn arb_triple() -> impl Strategy<Value = (Vec<Complex64>, Vec<Complex64>, Vec<Complex64>)> {
    (1usize..=6).prop_flat_map(|n| (arb_points(n), arb_points(n), arb_points(n)))
}

proptest! {
    #[test]
    fn metric_axioms((x, y, z) in arb_triple()) {
        let d = |a: &[Complex64], b: &[Complex64]| bottleneck_match(a, b).unwrap().distance;
        prop_assert_eq!(d(&x, &x), 0.0);
        prop_assert!((d(&x, &y) - d(&y, &x)).abs() <= 1e-12);
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z) + 1e-12);
    }

    #[test]
    fn distance_ignores_storage_order((x, y, _) in arb_triple(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut xs = x.clone();
        let mut ys = y.clone();
        xs.shuffle(&mut rng);
        ys.shuffle(&mut rng);
        prop_assert_eq!(
            bottleneck_match(&x, &y).unwrap().distance,
            bottleneck_match(&xs, &ys).unwrap().distance
        );
    }

    #[test]
    fn zero_distance_iff_equal_multisets((x, y, _) in arb_triple(), seed in any::<u64>()) {
        let mut shuffled = x.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let sx = SpectrumMultiset::new(x.clone());
        prop_assert_eq!(matching_distance(&sx, &SpectrumMultiset::new(shuffled)).unwrap().distance, 0.0);
        let sy = SpectrumMultiset::new(y.clone());
        let equal = sx.values().iter().zip(sy.values()).all(|(a, b)| (a - b).norm() <= 1e-12);
        prop_assert_eq!(matching_distance(&sx, &sy).unwrap().distance == 0.0, equal);
    }
}
