//! Spectra as unordered multisets and the brute-force eigenvalue oracle.

use std::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::poly::characteristic_polynomial;

/// Largest dimension accepted by [`eigenvalues_oracle`].
pub const ORACLE_MAX_DIM: usize = 20;

/// Unordered multiset of complex values, kept sorted by `(re, im)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumMultiset {
    values: Vec<Complex64>,
}

fn canonical_cmp(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

impl SpectrumMultiset {
    pub fn new(mut values: Vec<Complex64>) -> Self {
        values.sort_by(canonical_cmp);
        Self { values }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn push(&mut self, z: Complex64) {
        let pos = self
            .values
            .partition_point(|v| canonical_cmp(v, &z) != Ordering::Greater);
        self.values.insert(pos, z);
    }

    pub fn sum(&self) -> Complex64 {
        self.values.iter().sum()
    }

    pub fn product(&self) -> Complex64 {
        self.values.iter().product()
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.values
    }
}

impl From<Vec<Complex64>> for SpectrumMultiset {
    fn from(values: Vec<Complex64>) -> Self {
        Self::new(values)
    }
}

/// Eigenvalues of `a` with algebraic multiplicity.
///
/// Triangular matrices return their diagonal directly. Everything else goes
/// through the roots of the characteristic polynomial.
pub fn eigenvalues_oracle(a: &ComplexMatrix) -> Result<SpectrumMultiset> {
    let n = a.dim();
    if n > ORACLE_MAX_DIM {
        return Err(Error::OracleTooLarge {
            n,
            max: ORACLE_MAX_DIM,
        });
    }
    if a.is_upper_triangular() || a.is_lower_triangular() {
        return Ok(SpectrumMultiset::new(a.diagonal_entries()));
    }
    let p = characteristic_polynomial(a)?;
    Ok(SpectrumMultiset::new(p.roots()?))
}
