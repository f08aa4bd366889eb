//! Monic polynomials: characteristic polynomial and simultaneous root finding.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

pub const ABERTH_MAX_ITERATIONS: usize = 500;
const ABERTH_STEP_TOLERANCE: f64 = 1e-13;
const NEWTON_POLISH_STEPS: usize = 2;
/// Roots closer than this (relative to `1 + |root|`) are reported as one
/// repeated root.
pub const CLUSTER_TOLERANCE: f64 = 1e-7;
/// Acceptance bound on `|p(root)|` relative to `max(1, max |a_j|)`.
pub const ROOT_RESIDUAL_TOLERANCE: f64 = 1e-8;

/// `z^n + a_1 z^(n-1) + ... + a_n`, leading coefficient implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPolynomial {
    coeffs: Vec<Complex64>,
}

impl MonicPolynomial {
    /// `coeffs` holds `a_1..a_n`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "polynomial degree must be at least 1".into(),
            ));
        }
        if coeffs.iter().any(|a| !a.is_finite()) {
            return Err(Error::CoefficientOverflow);
        }
        Ok(Self { coeffs })
    }

    /// Monic polynomial with the given roots, expanded by repeated
    /// multiplication with `(z - r)`.
    pub fn from_roots(roots: &[Complex64]) -> Result<Self> {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (i, &ci) in c.iter().enumerate() {
                next[i] += ci;
                next[i + 1] -= ci * r;
            }
            c = next;
        }
        Self::new(c[1..].to_vec())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, &a| acc * z + a)
    }

    /// `(p(z), p'(z))` by Horner's scheme.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(1.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &a in &self.coeffs {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    }

    /// `p'(z) / p(z)` from the coefficients.
    pub fn log_derivative(&self, z: Complex64) -> Complex64 {
        let (p, dp) = self.eval_with_derivative(z);
        dp / p
    }

    /// Rounding-level bound on evaluating `p` at `z`.
    fn eval_noise(&self, z: Complex64) -> f64 {
        let r = z.norm();
        let magnitude = self.coeffs.iter().fold(1.0, |acc, a| acc * r + a.norm());
        8.0 * (self.degree() as f64 + 1.0) * f64::EPSILON * magnitude
    }

    /// All roots with multiplicity, by Aberth–Ehrlich iteration followed by
    /// Newton polishing and clustering of numerically repeated roots.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let n = self.degree();
        let radius = 1.0 + self.max_coeff_abs();
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4))
            .collect();
        let tolerance = ABERTH_STEP_TOLERANCE * (1.0 + radius);

        let mut converged = false;
        for _ in 0..ABERTH_MAX_ITERATIONS {
            let mut all_done = true;
            for k in 0..n {
                let (p, dp) = self.eval_with_derivative(z[k]);
                if p.norm() <= self.eval_noise(z[k]) {
                    continue;
                }
                let repulsion: Complex64 = (0..n)
                    .filter(|&j| j != k)
                    .map(|j| (z[k] - z[j]).inv())
                    .sum();
                let denom = dp / p - repulsion;
                if denom.norm() == 0.0 || !denom.is_finite() {
                    continue;
                }
                let step = denom.inv();
                z[k] -= step;
                if step.norm() >= tolerance {
                    all_done = false;
                }
            }
            if all_done {
                converged = true;
                break;
            }
        }
        if !converged || z.iter().any(|r| !r.is_finite()) {
            return Err(Error::OracleNoConvergence {
                iterations: ABERTH_MAX_ITERATIONS,
            });
        }

        for root in z.iter_mut() {
            for _ in 0..NEWTON_POLISH_STEPS {
                let (p, dp) = self.eval_with_derivative(*root);
                if dp.norm() == 0.0 {
                    break;
                }
                let candidate = *root - p / dp;
                if candidate.is_finite() && self.eval(candidate).norm() <= p.norm() {
                    *root = candidate;
                }
            }
        }

        let roots = cluster_repeated(&z);
        let bound = ROOT_RESIDUAL_TOLERANCE * self.max_coeff_abs().max(1.0);
        if roots.iter().any(|&r| self.eval(r).norm() > bound) {
            return Err(Error::OracleNoConvergence {
                iterations: ABERTH_MAX_ITERATIONS,
            });
        }
        Ok(roots)
    }
}

/// Replaces every group of roots linked by gaps below
/// `CLUSTER_TOLERANCE * (1 + |root|)` with copies of the group mean.
fn cluster_repeated(roots: &[Complex64]) -> Vec<Complex64> {
    let n = roots.len();
    let mut group: Vec<usize> = (0..n).collect();
    fn find(group: &mut [usize], mut i: usize) -> usize {
        while group[i] != i {
            group[i] = group[group[i]];
            i = group[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = 1.0 + roots[i].norm().max(roots[j].norm());
            if (roots[i] - roots[j]).norm() < CLUSTER_TOLERANCE * scale {
                let (a, b) = (find(&mut group, i), find(&mut group, j));
                group[a.max(b)] = a.min(b);
            }
        }
    }
    let mut sums = vec![(Complex64::new(0.0, 0.0), 0usize); n];
    for (i, &root) in roots.iter().enumerate() {
        let g = find(&mut group, i);
        sums[g].0 += root;
        sums[g].1 += 1;
    }
    (0..n)
        .map(|i| {
            let g = find(&mut group, i);
            if sums[g].1 == 1 {
                roots[i]
            } else {
                sums[g].0 / sums[g].1 as f64
            }
        })
        .collect()
}

/// Coefficients of `det(zI - A)` by the Faddeev–LeVerrier recurrence.
pub fn characteristic_polynomial(a: &ComplexMatrix) -> Result<MonicPolynomial> {
    let n = a.dim();
    let mut m = ComplexMatrix::identity(n);
    let mut coeffs = Vec::with_capacity(n);
    for k in 1..=n {
        let am = a * &m;
        let ak = -am.trace() / k as f64;
        if !ak.is_finite() {
            return Err(Error::CoefficientOverflow);
        }
        coeffs.push(ak);
        if k < n {
            m = &am + &ComplexMatrix::diagonal(&vec![ak; n]).expect("finite diagonal");
        }
    }
    MonicPolynomial::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_char_poly() {
        let p = characteristic_polynomial(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(p.coefficients(), &[c(-2.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn square_root_family_char_poly() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.25, 0.0]]).unwrap();
        let p = characteristic_polynomial(&a).unwrap();
        assert_eq!(p.coefficients(), &[c(0.0, 0.0), c(-0.25, 0.0)]);
    }

    #[test]
    fn overflow_is_reported() {
        let big = 1e300;
        let a = ComplexMatrix::from_real_rows(&[&[big, big], &[big, big]]).unwrap();
        assert_eq!(
            characteristic_polynomial(&a),
            Err(Error::CoefficientOverflow)
        );
    }

    #[test]
    fn roots_of_known_polynomials() {
        let p = MonicPolynomial::from_roots(&[c(1.0, 0.0), c(-2.0, 1.0), c(0.5, -3.0)]).unwrap();
        let mut r = p.roots().unwrap();
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        let expected = [c(-2.0, 1.0), c(0.5, -3.0), c(1.0, 0.0)];
        for (x, y) in r.iter().zip(expected.iter()) {
            assert!((x - y).norm() < 1e-12, "{x} vs {y}");
        }
    }

    #[test]
    fn double_root_is_repeated() {
        let p = MonicPolynomial::from_roots(&[c(2.0, 0.0), c(2.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let r = p.roots().unwrap();
        let near_two: Vec<_> = r
            .iter()
            .filter(|z| (*z - c(2.0, 0.0)).norm() < 1e-6)
            .collect();
        assert_eq!(near_two.len(), 2);
        assert_eq!(near_two[0], near_two[1]);
    }

    #[test]
    fn zero_double_root() {
        let p = MonicPolynomial::new(vec![c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let r = p.roots().unwrap();
        assert!(r.iter().all(|z| z.norm() < 1e-12), "{r:?}");
    }

    #[test]
    fn degree_zero_rejected() {
        assert!(MonicPolynomial::new(vec![]).is_err());
    }
}
