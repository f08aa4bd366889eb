//! Seeded random matrix generators used by tests, probes and demos.

use num_complex::Complex64;
use rand::Rng;

use crate::geometry::RegionSet;
use crate::matrix::ComplexMatrix;

fn uniform(rng: &mut impl Rng, half_width: f64) -> Complex64 {
    Complex64::new(
        rng.gen_range(-half_width..=half_width),
        rng.gen_range(-half_width..=half_width),
    )
}

/// Entries uniform in the square `[-w, w] x [-w, w]` of the complex plane.
pub fn random_matrix(rng: &mut impl Rng, n: usize, half_width: f64) -> ComplexMatrix {
    let entries = (0..n * n).map(|_| uniform(rng, half_width)).collect();
    ComplexMatrix::new(n, entries).expect("finite entries")
}

/// Diagonal spread over `[-4, 4]^2` with off-diagonal entries in
/// `[-0.12, 0.12]^2`, redrawn until the disks form at least two regions.
pub fn random_separated_matrix(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    loop {
        let entries: Vec<Complex64> = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    uniform(rng, 4.0)
                } else {
                    uniform(rng, 0.12)
                }
            })
            .collect();
        let a = ComplexMatrix::new(n, entries).expect("finite entries");
        if RegionSet::from_matrix(&a).len() >= 2 {
            return a;
        }
    }
}

/// Random multiset of `n` values in `[-w, w]^2`.
pub fn random_points(rng: &mut impl Rng, n: usize, half_width: f64) -> Vec<Complex64> {
    (0..n).map(|_| uniform(rng, half_width)).collect()
}
