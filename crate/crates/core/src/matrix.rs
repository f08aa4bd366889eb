//! Dense complex matrices, LU factorization and the resolvent trace.

use std::ops::{Add, Index, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point of the complex plane. Public operations reject non-finite values.
pub type ComplexScalar = Complex64;

/// Relative pivot magnitude under which `zI - A` is treated as singular.
pub const PIVOT_TOLERANCE: f64 = 1e-12;

/// Dense `n x n` complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from `n * n` row-major entries.
    pub fn new(n: usize, entries: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatrix("dimension must be at least 1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries, found {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|z| !z.is_finite()) {
            return Err(Error::InvalidMatrix(format!(
                "entry ({}, {}) is not finite",
                pos / n,
                pos % n
            )));
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix("rows must all have length n".into()));
        }
        Self::new(n, rows.concat())
    }

    /// Convenience constructor for real-valued matrices.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(diag: &[Complex64]) -> Result<Self> {
        let n = diag.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * n + i] = d;
        }
        Self::new(n, entries)
    }

    fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn diagonal_entries(&self) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    /// Max absolute entry, the matrix norm used throughout the crate.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// The diagonal matrix `A_0` sharing the main diagonal of `self`.
    pub fn diagonal_part(&self) -> Self {
        let mut d = Self::zeros(self.n);
        for i in 0..self.n {
            d.entries[i * self.n + i] = self[(i, i)];
        }
        d
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)] == Complex64::new(0.0, 0.0)))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self[(i, j)] == Complex64::new(0.0, 0.0)))
    }

    /// `z I - A`.
    pub fn shifted(&self, z: Complex64) -> Self {
        let mut m = self.clone();
        for v in m.entries.iter_mut() {
            *v = -*v;
        }
        for i in 0..self.n {
            m.entries[i * self.n + i] += z;
        }
        m
    }

    /// Member `A_0 + t (A - A_0)` of the straight-line family joining the
    /// diagonal part of `A` (t = 0) to `A` itself (t = 1).
    pub fn homotopy_member(&self, t: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::ParameterOutOfRange(t));
        }
        let n = self.n;
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(k, &a)| if k / n == k % n { a } else { a * t })
            .collect();
        Ok(Self { n, entries })
    }

    /// Logarithmic derivative `p'(z)/p(z)` of the characteristic polynomial,
    /// evaluated as `trace((zI - A)^-1)` from one LU factorization.
    pub fn resolvent_log_derivative(&self, z: Complex64) -> Result<Complex64> {
        let lu = self.shifted_lu(z)?;
        let n = self.n;
        let mut rhs = vec![Complex64::new(0.0, 0.0); n];
        let mut trace = Complex64::new(0.0, 0.0);
        for i in 0..n {
            rhs.fill(Complex64::new(0.0, 0.0));
            rhs[i] = Complex64::new(1.0, 0.0);
            trace += lu.solve(&rhs)[i];
        }
        Ok(trace)
    }

    /// LU factorization of `zI - A`, rejecting `z` that sit numerically on the
    /// spectrum (smallest pivot below `1e-12 * n * max(|A|_max, |z|)`).
    pub fn shifted_lu(&self, z: Complex64) -> Result<Lu> {
        let lu = Lu::factor(&self.shifted(z));
        let threshold = PIVOT_TOLERANCE * self.n as f64 * self.max_abs().max(z.norm());
        let pivot = lu.min_pivot();
        if pivot <= threshold {
            return Err(Error::NearSpectrum { pivot, threshold });
        }
        Ok(lu)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.n + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix { n: self.n, entries }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix { n: self.n, entries }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        out
    }
}

/// Determinant kept as a unit phase and a natural-log magnitude, so ratios of
/// nearby determinants never overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDet {
    pub phase: Complex64,
    pub log_abs: f64,
}

/// LU factorization with partial pivoting, `P M = L U`.
#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
    odd_swaps: bool,
}

impl Lu {
    pub fn factor(m: &ComplexMatrix) -> Self {
        let n = m.n;
        let mut lu = m.entries.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd_swaps = false;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&a, &b| lu[a * n + k].norm().total_cmp(&lu[b * n + k].norm()))
                .unwrap_or(k);
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                odd_swaps = !odd_swaps;
            }
            let pivot = lu[k * n + k];
            if pivot == Complex64::new(0.0, 0.0) {
                continue;
            }
            for i in k + 1..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                for j in k + 1..n {
                    let u = lu[k * n + j];
                    lu[i * n + j] -= factor * u;
                }
            }
        }
        Self {
            n,
            lu,
            perm,
            odd_swaps,
        }
    }

    pub fn min_pivot(&self) -> f64 {
        (0..self.n)
            .map(|i| self.lu[i * self.n + i].norm())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn det(&self) -> Complex64 {
        let prod: Complex64 = (0..self.n).map(|i| self.lu[i * self.n + i]).product();
        if self.odd_swaps {
            -prod
        } else {
            prod
        }
    }

    pub fn log_det(&self) -> LogDet {
        let mut phase = Complex64::new(if self.odd_swaps { -1.0 } else { 1.0 }, 0.0);
        let mut log_abs = 0.0;
        for i in 0..self.n {
            let u = self.lu[i * self.n + i];
            let r = u.norm();
            log_abs += r.ln();
            phase *= u / r;
        }
        // keep the phase on the unit circle despite rounding drift
        LogDet {
            phase: phase / phase.norm(),
            log_abs,
        }
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[i * n + j];
                let xj = x[j];
                x[i] -= l * xj;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[i * n + j];
                let xj = x[j];
                x[i] -= u * xj;
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }
}
