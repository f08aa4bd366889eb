//! The three counting routes against the eigenvalue oracle.

use gershgorin::homotopy::default_step_epsilon;
use gershgorin::matching::bottleneck_match;
use gershgorin::sampling::{random_matrix, random_separated_matrix};
use gershgorin::winding::uniform_grid;
use gershgorin::{
    count_along_homotopy, count_inside, count_inside_with, eigenvalues_oracle, extract_paths,
    track, track_with_epsilon, verify_gershgorin_part2, Arc, Complex64, ComplexMatrix, Contour,
    RegionSet, WindingOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn circle(center: Complex64, radius: f64) -> Contour {
    Contour {
        arcs: vec![Arc {
            center,
            radius,
            start: 0.0,
            end: std::f64::consts::TAU,
        }],
    }
}

fn oracle_counts(a: &ComplexMatrix, rs: &RegionSet) -> Vec<usize> {
    let mut counts = vec![0; rs.len()];
    for &z in eigenvalues_oracle(a).unwrap().values() {
        counts[rs.region_of(z).unwrap()] += 1;
    }
    counts
}

#[test]
fn winding_count_matches_enclosed_oracle_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut checked = 0;
    while checked < 150 {
        let n = rng.gen_range(2..=8);
        let a = random_matrix(&mut rng, n, 1.0);
        let center = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let gamma = circle(center, rng.gen_range(0.2..2.0));
        let Ok(w) = count_inside(&a, &gamma) else {
            continue;
        };
        let inside = eigenvalues_oracle(&a)
            .unwrap()
            .values()
            .iter()
            .filter(|&&z| gamma.winding_number(z) == 1)
            .count();
        assert_eq!(w.count, inside);
        assert!(w.count <= n);
        assert!(w.residual <= 0.1);
        checked += 1;
    }
}

#[test]
fn region_contour_counts_sum_to_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..40 {
        let n = rng.gen_range(2..=8);
        let a = random_separated_matrix(&mut rng, n);
        let rs = RegionSet::from_matrix(&a);
        let total: usize = (0..rs.len())
            .map(|r| {
                count_inside(&a, &rs.region_contour(r, None).unwrap())
                    .unwrap()
                    .count
            })
            .sum();
        assert_eq!(total, n);
    }
}

#[test]
fn count_is_constant_along_homotopy_for_random_5x5() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let grid = uniform_grid(11);
    for _ in 0..20 {
        let a = random_separated_matrix(&mut rng, 5);
        let rs = RegionSet::from_matrix(&a);
        let want = oracle_counts(&a, &rs);
        for (r, &m) in want.iter().enumerate() {
            let gamma = rs.region_contour(r, None).unwrap();
            let counts: Vec<usize> = count_along_homotopy(&a, &gamma, &grid)
                .unwrap()
                .iter()
                .map(|w| w.count)
                .collect();
            assert_eq!(counts, vec![m; 11]);
        }
    }
}

#[test]
fn residual_does_not_grow_with_sample_density() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..20 {
        let a = random_separated_matrix(&mut rng, 6);
        let rs = RegionSet::from_matrix(&a);
        let gamma = rs.region_contour(0, None).unwrap();
        let mut last: Option<f64> = None;
        for density in [4, 8, 16, 32, 64] {
            let options = WindingOptions {
                samples_per_circle: density,
                ..WindingOptions::default()
            };
            let w = count_inside_with(&a, &gamma, &options).unwrap();
            if let Some(prev) = last {
                // phases are exact; only summation rounding remains
                assert!(w.residual <= prev + 1e-12, "{} > {}", w.residual, prev);
            }
            last = Some(w.residual);
        }
    }
}

#[test]
fn tracked_final_counts_match_oracle_for_random_6x6() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for _ in 0..20 {
        let a = random_separated_matrix(&mut rng, 6);
        let rs = RegionSet::from_matrix(&a);
        let trace = track(&a).unwrap();
        assert_eq!(trace.final_counts(), oracle_counts(&a, &rs).as_slice());
        assert!(trace.counts_constant());
        for row in &trace.region_counts {
            assert_eq!(row.iter().sum::<usize>(), 6);
        }
    }
}

#[test]
fn chained_steps_stay_within_epsilon() {
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    for _ in 0..20 {
        let a = random_separated_matrix(&mut rng, 5);
        let trace = track(&a).unwrap();
        assert!(trace.t_values.windows(2).all(|w| w[0] < w[1]));
        for pair in trace.spectra.windows(2) {
            let stepwise = pair[0]
                .iter()
                .zip(&pair[1])
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            assert!(stepwise < trace.step_epsilon);
            // the chain order is itself an optimal matching
            let best = bottleneck_match(&pair[0], &pair[1]).unwrap();
            assert_eq!(best.distance, stepwise);
        }
        // chain endpoints are the spectra of A_0 and A
        let start = eigenvalues_oracle(&a.diagonal_part()).unwrap();
        let end = eigenvalues_oracle(&a).unwrap();
        let first = gershgorin::SpectrumMultiset::new(trace.spectra[0].clone());
        let last = gershgorin::SpectrumMultiset::new(trace.spectra.last().unwrap().clone());
        assert_eq!(first, start);
        assert_eq!(last, end);
    }
}

#[test]
fn paths_stay_home_and_homes_match_multiplicities() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..30 {
        let a = random_separated_matrix(&mut rng, 5);
        let rs = RegionSet::from_matrix(&a);
        let trace = track(&a).unwrap();
        let paths = extract_paths(&trace, &rs).unwrap();
        assert_eq!(paths.len(), 5);
        for (r, region) in rs.regions().iter().enumerate() {
            let homed: Vec<_> = paths.iter().filter(|p| p.home_region == r).collect();
            assert_eq!(homed.len(), region.multiplicity());
            for p in homed {
                assert!(p.points.iter().all(|&(_, z)| rs.contains(r, z)));
                // starts at a diagonal entry of this region
                let start = p.points[0].1;
                assert!(region.disk_indices.iter().any(|&i| a[(i, i)] == start));
            }
        }
    }
}

#[test]
fn halving_epsilon_keeps_region_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(38);
    for _ in 0..15 {
        let a = random_separated_matrix(&mut rng, 6);
        let rs = RegionSet::from_matrix(&a);
        let eps = default_step_epsilon(&a, &rs);
        let coarse = track_with_epsilon(&a, eps).unwrap();
        let fine = track_with_epsilon(&a, eps / 2.0).unwrap();
        assert!(fine.t_values.len() >= coarse.t_values.len());
        assert!(coarse.counts_constant() && fine.counts_constant());
        assert_eq!(coarse.final_counts(), fine.final_counts());
        assert_eq!(coarse.region_counts[0], fine.region_counts[0]);
    }
}

#[test]
fn verification_agrees_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(39);
    for _ in 0..100 {
        let n = rng.gen_range(4..=8);
        let a = random_separated_matrix(&mut rng, n);
        let report = verify_gershgorin_part2(&a).unwrap();
        assert!(report.part1_containment);
        for v in &report.regions {
            assert!(v.agree, "{v:?} for {a:?}");
        }
    }
}
