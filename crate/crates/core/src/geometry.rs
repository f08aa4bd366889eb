//! Gershgorin disks, their connected regions, and arc contours around a
//! region.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Tangency tolerance for disk intersection, relative to the disk scale.
pub const TOUCH_TOLERANCE: f64 = 1e-12;
/// Membership tolerance for [`RegionSet::contains`], relative to the scale.
pub const CONTAINS_TOLERANCE: f64 = 1e-9;
const STITCH_TOLERANCE: f64 = 1e-9;

/// Closed disk `|z - center| <= radius` built from row `row` of a matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Complex64,
    pub radius: f64,
    /// Zero-based source row.
    pub row: usize,
}

impl Disk {
    pub fn new(center: Complex64, radius: f64, row: usize) -> Self {
        debug_assert!(radius >= 0.0);
        Self {
            center,
            radius,
            row,
        }
    }

    /// Signed distance from `z` to the disk (negative inside).
    pub fn signed_distance(&self, z: Complex64) -> f64 {
        (z - self.center).norm() - self.radius
    }
}

/// One disk per row: center `a_ii`, radius the off-diagonal absolute row sum.
pub fn gershgorin_disks(a: &ComplexMatrix) -> Vec<Disk> {
    (0..a.dim())
        .map(|i| {
            let radius = a
                .row(i)
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, z)| z.norm())
                .sum();
            Disk::new(a[(i, i)], radius, i)
        })
        .collect()
}

/// `1 + max(|c_i| + r_i)`, the length scale used by all tolerances.
pub fn disk_scale(disks: &[Disk]) -> f64 {
    1.0 + disks
        .iter()
        .map(|d| d.center.norm() + d.radius)
        .fold(0.0, f64::max)
}

/// A connected component of the disk union.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    /// Source rows of the member disks, ascending.
    pub disk_indices: Vec<usize>,
    members: Vec<usize>,
}

impl Region {
    /// Number of disks composing the region.
    pub fn multiplicity(&self) -> usize {
        self.disk_indices.len()
    }
}

/// Partition of a disk list into connected regions, ordered by smallest
/// member row.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionSet {
    disks: Vec<Disk>,
    regions: Vec<Region>,
    scale: f64,
}

/// Groups disks into the components of their intersection graph. Tangent
/// disks count as connected.
pub fn connected_regions(disks: &[Disk]) -> RegionSet {
    let n = disks.len();
    let scale = disk_scale(disks);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = (disks[i].center - disks[j].center).norm();
            if d <= disks[i].radius + disks[j].radius + TOUCH_TOLERANCE * scale {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(i);
    }
    let mut regions: Vec<Region> = groups
        .into_iter()
        .map(|mut members| {
            members.sort_by_key(|&m| disks[m].row);
            Region {
                disk_indices: members.iter().map(|&m| disks[m].row).collect(),
                members,
            }
        })
        .collect();
    regions.sort_by_key(|r| r.disk_indices[0]);
    RegionSet {
        disks: disks.to_vec(),
        regions,
        scale,
    }
}

impl RegionSet {
    pub fn from_matrix(a: &ComplexMatrix) -> Self {
        connected_regions(&gershgorin_disks(a))
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    pub fn disks(&self) -> &[Disk] {
        &self.disks
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn region_disks(&self, r: usize) -> impl Iterator<Item = &Disk> + '_ {
        self.regions[r].members.iter().map(move |&m| &self.disks[m])
    }

    fn check_index(&self, r: usize) -> Result<()> {
        if r >= self.regions.len() {
            return Err(Error::RegionIndex {
                index: r,
                count: self.regions.len(),
            });
        }
        Ok(())
    }

    /// Smallest clearance between disks of different regions; `+inf` when
    /// there is a single region.
    pub fn region_gap(&self) -> f64 {
        let mut gap = f64::INFINITY;
        for (a, ra) in self.regions.iter().enumerate() {
            for rb in &self.regions[a + 1..] {
                for &i in &ra.members {
                    for &j in &rb.members {
                        let (di, dj) = (&self.disks[i], &self.disks[j]);
                        let clearance = (di.center - dj.center).norm() - di.radius - dj.radius;
                        gap = gap.min(clearance);
                    }
                }
            }
        }
        gap
    }

    /// Whether `z` lies in region `r`, up to `1e-9 * scale`. Out-of-range
    /// indices contain nothing.
    pub fn contains(&self, r: usize, z: Complex64) -> bool {
        let Some(region) = self.regions.get(r) else {
            return false;
        };
        let tol = CONTAINS_TOLERANCE * self.scale;
        region
            .members
            .iter()
            .any(|&m| self.disks[m].signed_distance(z) <= tol)
    }

    /// First region containing `z`.
    pub fn region_of(&self, z: Complex64) -> Option<usize> {
        (0..self.regions.len()).find(|&r| self.contains(r, z))
    }

    /// Distance from `z` to the union of the disks of region `r` (zero inside).
    pub fn distance_to_region(&self, r: usize, z: Complex64) -> f64 {
        self.region_disks(r)
            .map(|d| d.signed_distance(z))
            .fold(f64::INFINITY, f64::min)
            .max(0.0)
    }

    /// Inflation used when the caller gives none: a third of the gap, or a
    /// tenth of `1 + largest radius` for a lone region.
    pub fn default_inflation(&self, r: usize) -> f64 {
        let gap = self.region_gap();
        if gap.is_finite() {
            gap / 3.0
        } else {
            let rmax = self.region_disks(r).map(|d| d.radius).fold(0.0, f64::max);
            0.1 * (1.0 + rmax)
        }
    }

    /// Boundary of the union of region `r`'s disks, each grown by
    /// `inflation`, as counterclockwise circular arcs.
    pub fn region_contour(&self, r: usize, inflation: Option<f64>) -> Result<Contour> {
        self.check_index(r)?;
        let inflation = inflation.unwrap_or_else(|| self.default_inflation(r));
        if !(inflation > 0.0 && inflation.is_finite()) {
            return Err(Error::InvalidInflation(inflation));
        }
        let half_gap = self.region_gap() / 2.0;
        if inflation >= half_gap {
            return Err(Error::ContourTouchesRegion {
                inflation,
                half_gap,
            });
        }
        let circles: Vec<(Complex64, f64)> = self
            .region_disks(r)
            .map(|d| (d.center, d.radius + inflation))
            .collect();
        Ok(union_boundary(&circles, self.scale))
    }
}

/// Counterclockwise arc of the circle `center + radius * e^{i theta}`,
/// `start <= theta <= end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub center: Complex64,
    pub radius: f64,
    pub start: f64,
    pub end: f64,
}

impl Arc {
    pub fn sweep(&self) -> f64 {
        self.end - self.start
    }

    pub fn point_at(&self, theta: f64) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, theta)
    }

    pub fn start_point(&self) -> Complex64 {
        self.point_at(self.start)
    }

    pub fn end_point(&self) -> Complex64 {
        self.point_at(self.end)
    }

    /// Continuous change of `arg(z - w)` along the arc. Exact: each piece of
    /// at most a quarter turn contributes its chord angle, plus a full turn
    /// when `w` sits between chord and arc.
    pub fn angle_swept_around(&self, w: Complex64) -> f64 {
        let pieces = (self.sweep() / FRAC_PI_2).ceil().max(1.0) as usize;
        let h = self.sweep() / pieces as f64;
        let mut total = 0.0;
        for k in 0..pieces {
            let a = self.point_at(self.start + h * k as f64);
            let b = self.point_at(self.start + h * (k + 1) as f64);
            total += ((b - w) / (a - w)).arg();
            let chord = b - a;
            let rel = w - a;
            let right_of_chord = chord.re * rel.im - chord.im * rel.re < 0.0;
            if right_of_chord && (w - self.center).norm() < self.radius {
                total += TAU;
            }
        }
        total
    }
}

/// Closed curve made of arcs chained end to start (possibly several loops
/// when the region's union has holes).
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    pub arcs: Vec<Arc>,
}

impl Contour {
    pub fn length(&self) -> f64 {
        self.arcs.iter().map(|a| a.radius * a.sweep()).sum()
    }

    /// Index of the contour around `w`, computed analytically from the arcs.
    pub fn winding_number(&self, w: Complex64) -> i64 {
        let total: f64 = self.arcs.iter().map(|a| a.angle_swept_around(w)).sum();
        (total / TAU).round() as i64
    }

    /// Largest gap between the end of an arc and the start of its successor
    /// within each loop.
    pub fn closure_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let mut loop_start = 0;
        for (i, arc) in self.arcs.iter().enumerate() {
            let next = self.arcs.get(i + 1);
            let gap_next = next.map(|b| (arc.end_point() - b.start_point()).norm());
            let closes = (arc.end_point() - self.arcs[loop_start].start_point()).norm();
            match gap_next {
                Some(g) if g <= closes => worst = worst.max(g),
                _ => {
                    worst = worst.max(closes);
                    loop_start = i + 1;
                }
            }
        }
        worst
    }

    /// `per_arc` evenly spaced points on every arc (endpoints excluded at the
    /// far end).
    pub fn sample_points(&self, per_arc: usize) -> Vec<Complex64> {
        let per_arc = per_arc.max(1);
        self.arcs
            .iter()
            .flat_map(|a| {
                (0..per_arc)
                    .map(move |k| a.point_at(a.start + a.sweep() * k as f64 / per_arc as f64))
            })
            .collect()
    }
}

fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Boundary arcs of a union of circles.
fn union_boundary(circles: &[(Complex64, f64)], scale: f64) -> Contour {
    let tol = TOUCH_TOLERANCE * scale;
    // drop circles lying inside another (keep the first of identical ones)
    let kept: Vec<usize> = (0..circles.len())
        .filter(|&i| {
            let (ci, ri) = circles[i];
            !(0..circles.len()).any(|j| {
                if i == j {
                    return false;
                }
                let (cj, rj) = circles[j];
                let d = (ci - cj).norm();
                let inside = d + ri <= rj + tol;
                let identical = d <= tol && (ri - rj).abs() <= tol;
                inside && (!identical || j < i)
            })
        })
        .collect();

    let mut arcs = Vec::new();
    for &i in &kept {
        let (ci, ri) = circles[i];
        let mut covered: Vec<(f64, f64)> = Vec::new();
        for &j in &kept {
            if i == j {
                continue;
            }
            let (cj, rj) = circles[j];
            let d = (cj - ci).norm();
            if d >= ri + rj || d + rj <= ri {
                continue;
            }
            let cos_half = ((d * d + ri * ri - rj * rj) / (2.0 * d * ri)).clamp(-1.0, 1.0);
            let half = cos_half.acos();
            let mid = (cj - ci).arg();
            let lo = normalize_angle(mid - half);
            let hi = lo + 2.0 * half;
            if hi > TAU {
                covered.push((lo, TAU));
                covered.push((0.0, hi - TAU));
            } else {
                covered.push((lo, hi));
            }
        }
        if covered.is_empty() {
            arcs.push(Arc {
                center: ci,
                radius: ri,
                start: 0.0,
                end: TAU,
            });
            continue;
        }
        covered.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::new();
        for (lo, hi) in covered {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        let mut free: Vec<(f64, f64)> = Vec::new();
        let mut cursor = 0.0;
        for &(lo, hi) in &merged {
            if lo > cursor {
                free.push((cursor, lo));
            }
            cursor = cursor.max(hi);
        }
        if cursor < TAU {
            free.push((cursor, TAU));
        }
        // join the piece ending at 2pi with the one starting at 0
        if free.len() >= 2 && free[0].0 == 0.0 && free[free.len() - 1].1 == TAU {
            let last = free.pop().expect("nonempty");
            free[0] = (last.0, free[0].1 + TAU);
        }
        for (start, end) in free {
            if (end - start) * ri > tol {
                arcs.push(Arc {
                    center: ci,
                    radius: ri,
                    start,
                    end,
                });
            }
        }
    }
    Contour {
        arcs: stitch(arcs, STITCH_TOLERANCE * scale),
    }
}

/// Orders arcs so each one starts where the previous ended; closed loops are
/// emitted one after another.
fn stitch(mut pool: Vec<Arc>, tol: f64) -> Vec<Arc> {
    let mut out = Vec::with_capacity(pool.len());
    while !pool.is_empty() {
        let first = pool.remove(0);
        let loop_start = first.start_point();
        let mut current = first;
        out.push(first);
        loop {
            if current.sweep() >= TAU || (current.end_point() - loop_start).norm() <= tol {
                break;
            }
            let end = current.end_point();
            let next = pool
                .iter()
                .enumerate()
                .map(|(k, a)| (k, (a.start_point() - end).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1));
            match next {
                Some((k, _)) => {
                    current = pool.remove(k);
                    out.push(current);
                }
                None => break,
            }
        }
    }
    out
}
