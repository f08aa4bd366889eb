//! Eigenvalue localization with Gershgorin disks.
//!
//! Besides the disks and their connected regions, the crate counts the
//! eigenvalues in each region three independent ways:
//!
//! * an eigenvalue oracle (characteristic polynomial plus Aberth–Ehrlich),
//! * the argument principle along an arc contour around the region,
//! * adaptive tracking of the spectrum along `A(t) = A_0 + t (A - A_0)`
//!   under the bottleneck matching distance.
//!
//! ```
//! use gershgorin::{ComplexMatrix, verify_gershgorin_part2};
//!
//! let a = ComplexMatrix::from_real_rows(&[&[4.0, 1.0], &[0.0, 2.0]]).unwrap();
//! let report = verify_gershgorin_part2(&a).unwrap();
//! assert!(report.all_agree());
//! ```

pub mod error;
pub mod geometry;
pub mod homotopy;
pub mod matching;
pub mod matrix;
pub mod poly;
pub mod sampling;
pub mod spectrum;
pub mod winding;

pub use error::{Error, Result};
pub use geometry::{connected_regions, gershgorin_disks, Arc, Contour, Disk, Region, RegionSet};
pub use homotopy::{
    extract_paths, track, track_with_epsilon, verify_gershgorin_part2, verify_with, EigenPath,
    HomotopyTrace, Part2Report, RegionVerdict, VerifyOptions,
};
pub use matching::{bottleneck_match, matching_distance, pointwise_continuity_probe, MatchResult};
pub use matrix::{ComplexMatrix, ComplexScalar, Lu};
pub use poly::{characteristic_polynomial, MonicPolynomial};
pub use spectrum::{eigenvalues_oracle, SpectrumMultiset};
pub use winding::{
    count_along_homotopy, count_inside, count_inside_with, WindingCount, WindingOptions,
};

pub use num_complex::Complex64;
