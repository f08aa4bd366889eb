//! Adaptive tracking of the spectrum along `A(t) = A_0 + t (A - A_0)`.
//!
//! The parameter interval is subdivided until consecutive spectra are within
//! the bottleneck distance `epsilon`, with `epsilon` a third of the gap
//! between regions. Spectra are chained by the optimal assignment so every
//! eigenvalue of `A_0` becomes a discrete path ending at an eigenvalue of `A`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::RegionSet;
use crate::matching::bottleneck_match;
use crate::matrix::ComplexMatrix;
use crate::spectrum::eigenvalues_oracle;
use crate::winding::count_inside;

/// Smallest parameter step the tracker will try.
pub const MIN_STEP: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct HomotopyTrace {
    /// Accepted parameters, `0 = t_0 < ... < t_N = 1`.
    pub t_values: Vec<f64>,
    /// `spectra[i][j]` is path `j` at `t_values[i]`.
    pub spectra: Vec<Vec<Complex64>>,
    /// `region_counts[i][r]`: eigenvalues of `A(t_i)` in region `r` of `A`.
    pub region_counts: Vec<Vec<usize>>,
    pub step_epsilon: f64,
}

impl HomotopyTrace {
    /// Whether every region's count is the same at every accepted `t`.
    pub fn counts_constant(&self) -> bool {
        self.region_counts.windows(2).all(|w| w[0] == w[1])
    }

    pub fn final_counts(&self) -> &[usize] {
        self.region_counts.last().map(Vec::as_slice).unwrap_or(&[])
    }
}

/// `gap / 3` for several regions, else `0.1 (1 + spread of the diagonal)`.
pub fn default_step_epsilon(a: &ComplexMatrix, regions: &RegionSet) -> f64 {
    let gap = regions.region_gap();
    if gap.is_finite() {
        return gap / 3.0;
    }
    let diag = a.diagonal_entries();
    let spread = diag
        .iter()
        .flat_map(|x| diag.iter().map(move |y| (x - y).norm()))
        .fold(0.0, f64::max);
    0.1 * (1.0 + spread)
}

pub fn track(a: &ComplexMatrix) -> Result<HomotopyTrace> {
    let regions = RegionSet::from_matrix(a);
    track_with_epsilon(a, default_step_epsilon(a, &regions))
}

pub fn track_with_epsilon(a: &ComplexMatrix, epsilon: f64) -> Result<HomotopyTrace> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "step epsilon must be positive, got {epsilon}"
        )));
    }
    let regions = RegionSet::from_matrix(a);
    let counts_at = |t: f64, spectrum: &[Complex64]| -> Result<Vec<usize>> {
        let mut counts = vec![0; regions.len()];
        for &z in spectrum {
            let r = regions.region_of(z).ok_or(Error::OutsideRegions {
                re: z.re,
                im: z.im,
                t,
            })?;
            counts[r] += 1;
        }
        Ok(counts)
    };

    let mut current = eigenvalues_oracle(&a.homotopy_member(0.0)?)?.into_vec();
    let mut trace = HomotopyTrace {
        t_values: vec![0.0],
        region_counts: vec![counts_at(0.0, &current)?],
        spectra: vec![current.clone()],
        step_epsilon: epsilon,
    };
    let mut t = 0.0;
    let mut step: f64 = 1.0;
    while t < 1.0 {
        let t_next = if t + step >= 1.0 { 1.0 } else { t + step };
        let candidate = eigenvalues_oracle(&a.homotopy_member(t_next)?)?.into_vec();
        let matched = bottleneck_match(&current, &candidate)?;
        if matched.distance < epsilon {
            current = matched.assignment.iter().map(|&j| candidate[j]).collect();
            t = t_next;
            trace.t_values.push(t);
            trace.region_counts.push(counts_at(t, &current)?);
            trace.spectra.push(current.clone());
            step = (2.0 * step).min(1.0);
        } else {
            step *= 0.5;
            if step < MIN_STEP {
                return Err(Error::StepUnderflow { t, step });
            }
        }
    }
    Ok(trace)
}

/// One chained eigenvalue path and the region it starts in.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPath {
    pub index: usize,
    pub points: Vec<(f64, Complex64)>,
    pub home_region: usize,
}

/// Splits a trace into its `n` paths and checks each stays inside the region
/// holding its starting diagonal entry.
pub fn extract_paths(trace: &HomotopyTrace, regions: &RegionSet) -> Result<Vec<EigenPath>> {
    let n = trace.spectra.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| {
            let points: Vec<(f64, Complex64)> = trace
                .t_values
                .iter()
                .zip(&trace.spectra)
                .map(|(&t, s)| (t, s[j]))
                .collect();
            let (t0, z0) = points[0];
            let home_region = regions.region_of(z0).ok_or(Error::OutsideRegions {
                re: z0.re,
                im: z0.im,
                t: t0,
            })?;
            if let Some(&(t, _)) = points
                .iter()
                .find(|(_, z)| !regions.contains(home_region, *z))
            {
                return Err(Error::PathEscapesRegion {
                    path: j,
                    region: home_region,
                    t,
                });
            }
            Ok(EigenPath {
                index: j,
                points,
                home_region,
            })
        })
        .collect()
}

/// The four independently obtained eigenvalue counts for one region.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionVerdict {
    pub region: usize,
    pub disk_indices: Vec<usize>,
    /// Number of disks in the region.
    pub multiplicity: usize,
    /// Count in the region at `t = 1` after tracking from `t = 0`.
    pub homotopy_count: usize,
    /// Argument-principle count inside the inflated region boundary.
    pub winding_count: usize,
    /// Oracle eigenvalues of `A` lying in the region.
    pub oracle_count: usize,
    /// The tracked count did not change along the homotopy.
    pub homotopy_constant: bool,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Part2Report {
    pub regions: Vec<RegionVerdict>,
    /// Every oracle eigenvalue lies in some disk.
    pub part1_containment: bool,
    pub eigenvalues: Vec<Complex64>,
    pub trace: HomotopyTrace,
}

impl Part2Report {
    pub fn all_agree(&self) -> bool {
        self.part1_containment && self.regions.iter().all(|r| r.agree)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct VerifyOptions {
    /// Contour inflation; defaults to a third of the region gap.
    pub inflation: Option<f64>,
    /// Homotopy step acceptance; defaults to [`default_step_epsilon`].
    pub epsilon: Option<f64>,
}

pub fn verify_gershgorin_part2(a: &ComplexMatrix) -> Result<Part2Report> {
    verify_with(a, VerifyOptions::default())
}

pub fn verify_with(a: &ComplexMatrix, options: VerifyOptions) -> Result<Part2Report> {
    let regions = RegionSet::from_matrix(a);
    let eigenvalues = eigenvalues_oracle(a)?.into_vec();
    let part1_containment = eigenvalues.iter().all(|&z| regions.region_of(z).is_some());
    let epsilon = options
        .epsilon
        .unwrap_or_else(|| default_step_epsilon(a, &regions));
    let trace = track_with_epsilon(a, epsilon)?;

    let mut verdicts = Vec::with_capacity(regions.len());
    for (r, region) in regions.regions().iter().enumerate() {
        let contour = regions.region_contour(r, options.inflation)?;
        let winding_count = count_inside(a, &contour)?.count;
        let oracle_count = eigenvalues
            .iter()
            .filter(|&&z| regions.contains(r, z))
            .count();
        let homotopy_count = trace.final_counts()[r];
        let homotopy_constant = trace
            .region_counts
            .iter()
            .all(|row| row[r] == homotopy_count);
        let multiplicity = region.multiplicity();
        let agree = homotopy_constant
            && homotopy_count == multiplicity
            && winding_count == multiplicity
            && oracle_count == multiplicity;
        verdicts.push(RegionVerdict {
            region: r,
            disk_indices: region.disk_indices.clone(),
            multiplicity,
            homotopy_count,
            winding_count,
            oracle_count,
            homotopy_constant,
            agree,
        });
    }
    Ok(Part2Report {
        regions: verdicts,
        part1_containment,
        eigenvalues,
        trace,
    })
}
