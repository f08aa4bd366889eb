//! Command-line front end: matrix files, region reports and SVG plots.

pub mod format;
pub mod report;
pub mod svg;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use gershgorin::{ComplexMatrix, RegionSet, VerifyOptions};
use serde::Serialize;
use thiserror::Error;

pub use format::{parse_matrix, parse_matrix_str, to_canonical_string, MatrixFile};
pub use report::{build_report, RegionRecord, RegionReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(String),
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(#[from] gershgorin::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use gershgorin::Error as E;
        match self {
            CliError::Numeric(
                E::InvalidInflation(_)
                | E::ContourTouchesRegion { .. }
                | E::InvalidArgument(_)
                | E::OracleTooLarge { .. }
                | E::InvalidMatrix(_),
            ) => EXIT_INPUT,
            CliError::Numeric(_) => EXIT_DISAGREE,
            _ => EXIT_INPUT,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "gershgorin",
    version,
    about = "Gershgorin disks and eigenvalue counts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the disks of each row.
    Disks(CommonArgs),
    /// Group the disks into connected regions.
    Regions(CommonArgs),
    /// Count eigenvalues per region by every route and compare.
    Report(CommonArgs),
    /// Track the spectrum along the diagonal homotopy.
    Track(CommonArgs),
    /// Write an SVG of disks, regions, eigenvalues and paths.
    Plot(CommonArgs),
    /// Empirical continuity radius of the spectrum at the matrix.
    Probe(ProbeArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSON matrix file.
    pub matrix: PathBuf,
    /// Machine-readable output.
    #[arg(long)]
    pub json: bool,
    /// Contour inflation around each region.
    #[arg(long)]
    pub inflation: Option<f64>,
    /// Homotopy step acceptance distance.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Output file (SVG for `plot`, JSON otherwise).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    pub matrix: PathBuf,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 32)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn emit(stdout: &mut dyn Write, text: &str) -> Result<(), CliError> {
    stdout
        .write_all(text.as_bytes())
        .map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct DiskRecord {
    row: usize,
    center: [f64; 2],
    radius: f64,
}

#[derive(Serialize)]
struct RegionsRecord {
    region_gap: Option<f64>,
    regions: Vec<RegionSummary>,
}

#[derive(Serialize)]
struct RegionSummary {
    id: usize,
    disks: Vec<usize>,
    multiplicity: usize,
}

#[derive(Serialize)]
struct TrackRecord {
    step_epsilon: f64,
    t_values: Vec<f64>,
    region_counts: Vec<Vec<usize>>,
    spectra: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize)]
struct ProbeRecord {
    epsilon: f64,
    trials: usize,
    seed: u64,
    delta: f64,
}

fn verify_options(args: &CommonArgs) -> VerifyOptions {
    VerifyOptions {
        inflation: args.inflation,
        epsilon: args.epsilon,
    }
}

fn execute(command: &Command, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Disks(args) => {
            let a = parse_matrix(&args.matrix)?;
            let disks: Vec<DiskRecord> = gershgorin::gershgorin_disks(&a)
                .iter()
                .map(|d| DiskRecord {
                    row: d.row,
                    center: [d.center.re, d.center.im],
                    radius: d.radius,
                })
                .collect();
            let text = if args.json {
                to_json(&disks)
            } else {
                let mut s = String::new();
                for d in &disks {
                    let _ = writeln!(
                        s,
                        "D{}: center {} {:+}i, radius {}",
                        d.row + 1,
                        d.center[0],
                        d.center[1],
                        d.radius
                    );
                }
                s
            };
            finish(args, stdout, &text)
        }
        Command::Regions(args) => {
            let a = parse_matrix(&args.matrix)?;
            let rs = RegionSet::from_matrix(&a);
            let gap = rs.region_gap();
            let record = RegionsRecord {
                region_gap: gap.is_finite().then_some(gap),
                regions: rs
                    .regions()
                    .iter()
                    .enumerate()
                    .map(|(id, r)| RegionSummary {
                        id,
                        disks: r.disk_indices.clone(),
                        multiplicity: r.multiplicity(),
                    })
                    .collect(),
            };
            let text = if args.json {
                to_json(&record)
            } else {
                let mut s = String::new();
                for r in &record.regions {
                    let disks: Vec<String> =
                        r.disks.iter().map(|d| format!("D{}", d + 1)).collect();
                    let _ = writeln!(
                        s,
                        "R{}: {} (m = {})",
                        r.id + 1,
                        disks.join(", "),
                        r.multiplicity
                    );
                }
                match record.region_gap {
                    Some(g) => {
                        let _ = writeln!(s, "gap between regions: {g}");
                    }
                    None => {
                        let _ = writeln!(s, "single region");
                    }
                }
                s
            };
            finish(args, stdout, &text)
        }
        Command::Report(args) => {
            let a = parse_matrix(&args.matrix)?;
            let report = build_report(&a, verify_options(args))?;
            if let Some(out) = &args.out {
                write_file(out, &report.to_json())?;
            }
            emit(
                stdout,
                &if args.json {
                    report.to_json()
                } else {
                    report.to_text()
                },
            )?;
            Ok(if report.all_agree() {
                EXIT_OK
            } else {
                EXIT_DISAGREE
            })
        }
        Command::Track(args) => {
            let a = parse_matrix(&args.matrix)?;
            let trace = match args.epsilon {
                Some(eps) => gershgorin::track_with_epsilon(&a, eps)?,
                None => gershgorin::track(&a)?,
            };
            let text = if args.json {
                to_json(&TrackRecord {
                    step_epsilon: trace.step_epsilon,
                    t_values: trace.t_values.clone(),
                    region_counts: trace.region_counts.clone(),
                    spectra: trace
                        .spectra
                        .iter()
                        .map(|s| s.iter().map(|z| [z.re, z.im]).collect())
                        .collect(),
                })
            } else {
                let mut s = String::new();
                let _ = writeln!(
                    s,
                    "{} accepted steps, epsilon {}",
                    trace.t_values.len() - 1,
                    trace.step_epsilon
                );
                for (t, counts) in trace.t_values.iter().zip(&trace.region_counts) {
                    let _ = writeln!(s, "t = {t:<12.8} counts {counts:?}");
                }
                let _ = writeln!(
                    s,
                    "region counts constant: {}",
                    if trace.counts_constant() { "yes" } else { "NO" }
                );
                s
            };
            let code = if trace.counts_constant() {
                EXIT_OK
            } else {
                EXIT_DISAGREE
            };
            finish(args, stdout, &text).map(|_| code)
        }
        Command::Plot(args) => {
            let Some(out) = &args.out else {
                return Err(CliError::Usage("plot needs --out <path>".into()));
            };
            let a = parse_matrix(&args.matrix)?;
            let svg = render_plot(&a, args.inflation, args.epsilon)?;
            write_file(out, &svg)?;
            Ok(EXIT_OK)
        }
        Command::Probe(args) => {
            let a = parse_matrix(&args.matrix)?;
            let delta =
                gershgorin::pointwise_continuity_probe(&a, args.epsilon, args.trials, args.seed)?;
            let text = if args.json {
                to_json(&ProbeRecord {
                    epsilon: args.epsilon,
                    trials: args.trials,
                    seed: args.seed,
                    delta,
                })
            } else {
                format!(
                    "empirical delta {delta} for epsilon {} ({} trials, seed {})\n",
                    args.epsilon, args.trials, args.seed
                )
            };
            emit(stdout, &text)?;
            Ok(EXIT_OK)
        }
    }
}

fn finish(args: &CommonArgs, stdout: &mut dyn Write, text: &str) -> Result<i32, CliError> {
    match &args.out {
        Some(path) => write_file(path, text)?,
        None => emit(stdout, text)?,
    }
    Ok(EXIT_OK)
}

/// SVG for `a`: disks, inflated region boundaries, oracle eigenvalues and
/// the tracked homotopy paths.
pub fn render_plot(
    a: &ComplexMatrix,
    inflation: Option<f64>,
    epsilon: Option<f64>,
) -> Result<String, CliError> {
    let rs = RegionSet::from_matrix(a);
    let contours = (0..rs.len())
        .map(|r| rs.region_contour(r, inflation))
        .collect::<Result<Vec<_>, _>>()?;
    let eigenvalues = gershgorin::eigenvalues_oracle(a)?.into_vec();
    let trace = match epsilon {
        Some(eps) => gershgorin::track_with_epsilon(a, eps)?,
        None => gershgorin::track(a)?,
    };
    let paths = gershgorin::extract_paths(&trace, &rs)?;
    Ok(svg::render(&svg::PlotInput {
        regions: &rs,
        contours: &contours,
        eigenvalues: &eigenvalues,
        paths: &paths,
    }))
}
