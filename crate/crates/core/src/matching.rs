//! Bottleneck matching distance between spectra.
//!
//! `d(S, T) = min over permutations J of max_j |s_j - t_J(j)|`. The optimum
//! is found by binary search over the pairwise distances, testing each
//! threshold for a perfect bipartite matching.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::spectrum::{eigenvalues_oracle, SpectrumMultiset};

/// Optimal bottleneck assignment: `assignment[j]` is the index in the second
/// multiset paired with index `j` of the first.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchResult {
    pub distance: f64,
    pub assignment: Vec<usize>,
}

pub fn matching_distance(s1: &SpectrumMultiset, s2: &SpectrumMultiset) -> Result<MatchResult> {
    bottleneck_match(s1.values(), s2.values())
}

/// Bottleneck matching on values in their stored order. Among optimal
/// assignments the lexicographically smallest is returned.
pub fn bottleneck_match(left: &[Complex64], right: &[Complex64]) -> Result<MatchResult> {
    let n = left.len();
    if n != right.len() {
        return Err(Error::IncomparableMultisets {
            left: n,
            right: right.len(),
        });
    }
    if n == 0 {
        return Ok(MatchResult {
            distance: 0.0,
            assignment: Vec::new(),
        });
    }
    let dist: Vec<f64> = left
        .iter()
        .flat_map(|a| right.iter().map(move |b| (a - b).norm()))
        .collect();
    let mut levels = dist.clone();
    levels.sort_by(f64::total_cmp);
    levels.dedup();

    let (mut lo, mut hi) = (0, levels.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        let threshold = levels[mid];
        if perfect_matching_exists(n, 0, &vec![false; n], |i, j| dist[i * n + j] <= threshold) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let distance = levels[lo];
    let allowed = |i: usize, j: usize| dist[i * n + j] <= distance;

    let mut used = vec![false; n];
    let mut assignment = Vec::with_capacity(n);
    for i in 0..n {
        let mut pick = None;
        for j in 0..n {
            if used[j] || !allowed(i, j) {
                continue;
            }
            used[j] = true;
            let feasible = perfect_matching_exists(n, i + 1, &used, allowed);
            used[j] = false;
            if feasible {
                pick = Some(j);
                break;
            }
        }
        let pick = pick.expect("a perfect matching exists at the optimal threshold");
        used[pick] = true;
        assignment.push(pick);
    }
    Ok(MatchResult {
        distance,
        assignment,
    })
}

/// Whether rows `first_row..n` can be matched into the columns not yet
/// `taken`, using Kuhn's augmenting paths.
fn perfect_matching_exists(
    n: usize,
    first_row: usize,
    taken: &[bool],
    allowed: impl Fn(usize, usize) -> bool,
) -> bool {
    let mut owner: Vec<Option<usize>> = vec![None; n];
    fn augment(
        row: usize,
        n: usize,
        taken: &[bool],
        allowed: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for col in 0..n {
            if taken[col] || seen[col] || !allowed(row, col) {
                continue;
            }
            seen[col] = true;
            let free = match owner[col] {
                None => true,
                Some(other) => augment(other, n, taken, allowed, seen, owner),
            };
            if free {
                owner[col] = Some(row);
                return true;
            }
        }
        false
    }
    let mut seen = vec![false; n];
    for row in first_row..n {
        seen.fill(false);
        if !augment(row, n, taken, &allowed, &mut seen, &mut owner) {
            return false;
        }
    }
    true
}

/// Upper end of the δ search in [`pointwise_continuity_probe`].
pub fn probe_upper_bound(a: &ComplexMatrix) -> f64 {
    a.max_abs().max(1.0)
}

const PROBE_BISECTIONS: usize = 48;

/// Unit-modulus phase patterns, one per trial, used by
/// [`pointwise_continuity_probe`] for the given `seed`.
pub fn probe_patterns(n: usize, trials: usize, seed: u64) -> Vec<ComplexMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let entries = (0..n * n)
                .map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..TAU)))
                .collect();
            ComplexMatrix::new(n, entries).expect("unit entries")
        })
        .collect()
}

/// `delta * pattern`, a perturbation with max-entry norm `delta`.
pub fn scaled_pattern(pattern: &ComplexMatrix, delta: f64) -> Result<ComplexMatrix> {
    ComplexMatrix::new(
        pattern.dim(),
        pattern.entries().iter().map(|p| p * delta).collect(),
    )
}

/// Empirical δ for the continuity of `A -> σ(A)` at `a`: the largest tested
/// δ for which every one of `trials` random perturbations `E` with
/// `|E|_max = δ` keeps `d(σ(A), σ(A + E)) < epsilon`.
///
/// Each trial perturbs every entry by `δ` times a fixed random phase, drawn
/// once from `seed`. This is a probe, not a certificate.
pub fn pointwise_continuity_probe(
    a: &ComplexMatrix,
    epsilon: f64,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    if epsilon.is_nan() || epsilon <= 0.0 || trials == 0 {
        return Err(Error::InvalidArgument(
            "probe needs epsilon > 0 and at least one trial".into(),
        ));
    }
    let n = a.dim();
    let phases = probe_patterns(n, trials, seed);
    let base = eigenvalues_oracle(a)?;

    let passes = |delta: f64| -> Result<bool> {
        for pattern in &phases {
            let e = scaled_pattern(pattern, delta)?;
            let perturbed = eigenvalues_oracle(&(a + &e))?;
            if matching_distance(&base, &perturbed)?.distance >= epsilon {
                return Ok(false);
            }
        }
        Ok(true)
    };

    let upper = probe_upper_bound(a);
    if passes(upper)? {
        return Ok(upper);
    }
    let (mut good, mut bad) = (0.0, upper);
    for _ in 0..PROBE_BISECTIONS {
        let mid = 0.5 * (good + bad);
        if passes(mid)? {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Ok(good)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn plus_minus_one_against_double_zero() {
        let r =
            bottleneck_match(&[c(1.0, 0.0), c(-1.0, 0.0)], &[c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(r.distance, 1.0);
        assert_eq!(r.assignment, vec![0, 1]);
    }

    #[test]
    fn equal_multisets() {
        let s = SpectrumMultiset::new(vec![c(0.0, 1.0), c(0.0, -1.0)]);
        let r = matching_distance(&s, &s).unwrap();
        assert_eq!(r.distance, 0.0);
        assert_eq!(r.assignment, vec![0, 1]);
    }

    #[test]
    fn length_mismatch() {
        assert_eq!(
            bottleneck_match(&[c(0.0, 0.0)], &[]),
            Err(Error::IncomparableMultisets { left: 1, right: 0 })
        );
    }

    #[test]
    fn crossing_pairs_are_uncrossed() {
        let r =
            bottleneck_match(&[c(0.0, 0.0), c(10.0, 0.0)], &[c(10.5, 0.0), c(0.2, 0.0)]).unwrap();
        assert_eq!(r.assignment, vec![1, 0]);
        assert!((r.distance - 0.5).abs() < 1e-15);
    }

    #[test]
    fn lexicographic_tie_break() {
        // every assignment of three coincident points is optimal
        let pts = [c(1.0, 1.0); 3];
        let r = bottleneck_match(&pts, &pts).unwrap();
        assert_eq!(r.assignment, vec![0, 1, 2]);
    }

    #[test]
    fn probe_on_separated_diagonal() {
        let a = ComplexMatrix::diagonal(&[c(0.0, 0.0), c(10.0, 0.0)]).unwrap();
        let delta = pointwise_continuity_probe(&a, 0.5, 8, 7).unwrap();
        assert!(delta > 0.0);
    }

    #[test]
    fn probe_vacuous_epsilon_hits_upper_bound() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[0.5, -3.0]]).unwrap();
        let delta = pointwise_continuity_probe(&a, 1e6, 4, 1).unwrap();
        assert_eq!(delta, probe_upper_bound(&a));
    }

    #[test]
    fn probe_rejects_bad_arguments() {
        let a = ComplexMatrix::identity(2);
        assert!(pointwise_continuity_probe(&a, 0.0, 3, 0).is_err());
        assert!(pointwise_continuity_probe(&a, 0.1, 0, 0).is_err());
    }
}
