//! Region reports in text and JSON form.

use std::fmt::Write;

use gershgorin::{ComplexMatrix, Part2Report, RegionSet, VerifyOptions};
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionRecord {
    pub id: usize,
    /// Zero-based rows of the disks forming the region.
    pub disks: Vec<usize>,
    pub multiplicity: usize,
    pub oracle_count: usize,
    pub winding_count: usize,
    pub homotopy_count: usize,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionReport {
    pub n: usize,
    pub region_gap: Option<f64>,
    pub regions: Vec<RegionRecord>,
    pub eigenvalues: Vec<[f64; 2]>,
    pub part1_containment: bool,
    pub part2_agreement: bool,
}

impl RegionReport {
    pub fn from_verification(a: &ComplexMatrix, rs: &RegionSet, v: &Part2Report) -> Self {
        let gap = rs.region_gap();
        let regions: Vec<RegionRecord> = v
            .regions
            .iter()
            .map(|r| RegionRecord {
                id: r.region,
                disks: r.disk_indices.clone(),
                multiplicity: r.multiplicity,
                oracle_count: r.oracle_count,
                winding_count: r.winding_count,
                homotopy_count: r.homotopy_count,
                agree: r.agree,
            })
            .collect();
        Self {
            n: a.dim(),
            region_gap: gap.is_finite().then_some(gap),
            part2_agreement: regions.iter().all(|r| r.agree),
            regions,
            eigenvalues: v.eigenvalues.iter().map(|z| [z.re, z.im]).collect(),
            part1_containment: v.part1_containment,
        }
    }

    pub fn all_agree(&self) -> bool {
        self.part1_containment && self.part2_agreement
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let gap = match self.region_gap {
            Some(g) => format!("gap {g:.6}"),
            None => "single region".to_string(),
        };
        let _ = writeln!(
            out,
            "{n}x{n} matrix, {k} region(s), {gap}",
            n = self.n,
            k = self.regions.len()
        );
        let _ = writeln!(
            out,
            "{:<8}{:<20}{:>4}{:>8}{:>9}{:>10}  agree",
            "region", "disks", "m", "oracle", "winding", "homotopy"
        );
        for r in &self.regions {
            let disks: Vec<String> = r.disks.iter().map(|d| format!("D{}", d + 1)).collect();
            let _ = writeln!(
                out,
                "{:<8}{:<20}{:>4}{:>8}{:>9}{:>10}  {}",
                format!("R{}", r.id + 1),
                disks.join(","),
                r.multiplicity,
                r.oracle_count,
                r.winding_count,
                r.homotopy_count,
                if r.agree { "yes" } else { "NO" }
            );
        }
        let verdict = |ok: bool| if ok { "ok" } else { "FAILED" };
        let _ = writeln!(
            out,
            "containment of eigenvalues in disks: {}",
            verdict(self.part1_containment)
        );
        let _ = writeln!(
            out,
            "per-region counts agree: {}",
            verdict(self.part2_agreement)
        );
        out
    }
}

pub fn build_report(a: &ComplexMatrix, options: VerifyOptions) -> Result<RegionReport, CliError> {
    let rs = RegionSet::from_matrix(a);
    let v = gershgorin::verify_with(a, options)?;
    Ok(RegionReport::from_verification(a, &rs, &v))
}
