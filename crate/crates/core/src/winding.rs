//! Eigenvalue counting by the argument principle.
//!
//! The count inside a contour is the total change of `arg det(zI - A)` along
//! it divided by `2 pi`. Phase increments between neighbouring samples come
//! from ratios of LU determinants; a segment is bisected until its increment
//! is below a quarter turn, so the principal value is the true increment.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{Arc, Contour};
use crate::matrix::{ComplexMatrix, LogDet};

/// Result of one argument-principle count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingCount {
    pub count: usize,
    /// Distance of the raw winding `total / 2 pi` from `count`.
    pub residual: f64,
    /// Determinant evaluations spent.
    pub samples_used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingOptions {
    /// Initial samples per full turn of arc angle.
    pub samples_per_circle: usize,
    pub min_samples_per_arc: usize,
    pub segment_budget: usize,
    pub residual_limit: f64,
}

impl Default for WindingOptions {
    fn default() -> Self {
        Self {
            samples_per_circle: 16,
            min_samples_per_arc: 4,
            segment_budget: 1_000_000,
            residual_limit: 0.1,
        }
    }
}

pub fn count_inside(a: &ComplexMatrix, gamma: &Contour) -> Result<WindingCount> {
    count_inside_with(a, gamma, &WindingOptions::default())
}

pub fn count_inside_with(
    a: &ComplexMatrix,
    gamma: &Contour,
    options: &WindingOptions,
) -> Result<WindingCount> {
    let mut tally = Tally {
        total: 0.0,
        samples: 0,
        segments: 0,
    };
    for arc in &gamma.arcs {
        accumulate_arc(a, arc, options, &mut tally)?;
    }
    let raw = tally.total / TAU;
    let rounded = raw.round();
    let residual = (raw - rounded).abs();
    if residual > options.residual_limit {
        return Err(Error::AmbiguousWinding {
            residual,
            limit: options.residual_limit,
        });
    }
    if rounded < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "contour winds clockwise (winding {rounded})"
        )));
    }
    Ok(WindingCount {
        count: rounded as usize,
        residual,
        samples_used: tally.samples,
    })
}

struct Tally {
    total: f64,
    samples: usize,
    segments: usize,
}

fn log_det_at(a: &ComplexMatrix, z: Complex64, tally: &mut Tally) -> Result<LogDet> {
    tally.samples += 1;
    match a.shifted_lu(z) {
        Ok(lu) => Ok(lu.log_det()),
        Err(Error::NearSpectrum { .. }) => Err(Error::EigenvalueOnContour { re: z.re, im: z.im }),
        Err(e) => Err(e),
    }
}

fn accumulate_arc(
    a: &ComplexMatrix,
    arc: &Arc,
    options: &WindingOptions,
    tally: &mut Tally,
) -> Result<()> {
    let initial = ((options.samples_per_circle as f64 * arc.sweep() / TAU).ceil() as usize)
        .max(options.min_samples_per_arc)
        .max(1);
    let h = arc.sweep() / initial as f64;
    let mut prev_theta = arc.start;
    let mut prev = log_det_at(a, arc.point_at(prev_theta), tally)?;
    for k in 1..=initial {
        let theta = if k == initial {
            arc.end
        } else {
            arc.start + h * k as f64
        };
        let next = log_det_at(a, arc.point_at(theta), tally)?;
        // refine (prev_theta, theta) until every piece turns less than pi/2
        let mut stack = vec![(prev_theta, prev, theta, next)];
        while let Some((t0, d0, t1, d1)) = stack.pop() {
            tally.segments += 1;
            if tally.segments > options.segment_budget {
                return Err(Error::QuadratureNotConverged {
                    budget: options.segment_budget,
                });
            }
            let step = (d1.phase * d0.phase.conj()).arg();
            if step.abs() < FRAC_PI_2 {
                tally.total += step;
            } else {
                let tm = 0.5 * (t0 + t1);
                let dm = log_det_at(a, arc.point_at(tm), tally)?;
                // right half first so the left half is processed next
                stack.push((tm, dm, t1, d1));
                stack.push((t0, d0, tm, dm));
            }
        }
        prev_theta = theta;
        prev = next;
    }
    Ok(())
}

/// `points` equally spaced parameters from 0 to 1 inclusive.
pub fn uniform_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points)
            .map(|i| {
                if i + 1 == points {
                    1.0
                } else {
                    i as f64 / (points - 1) as f64
                }
            })
            .collect(),
    }
}

/// Count inside `gamma` for every member `A(t)` of the diagonal homotopy.
pub fn count_along_homotopy(
    a: &ComplexMatrix,
    gamma: &Contour,
    t_grid: &[f64],
) -> Result<Vec<WindingCount>> {
    if t_grid.first() != Some(&0.0) || t_grid.last() != Some(&1.0) {
        return Err(Error::InvalidGrid(
            "grid must start at 0 and end at 1".into(),
        ));
    }
    if t_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidGrid("grid must be sorted".into()));
    }
    t_grid
        .iter()
        .map(|&t| count_inside(&a.homotopy_member(t)?, gamma))
        .collect()
}
