use thiserror::Error;

/// Failures raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("coefficient overflow")]
    CoefficientOverflow,
    #[error("z too close to spectrum (pivot {pivot:e} below {threshold:e})")]
    NearSpectrum { pivot: f64, threshold: f64 },
    #[error("oracle did not converge after {iterations} iterations")]
    OracleNoConvergence { iterations: usize },
    #[error("oracle limited to n <= {max}, got n = {n}")]
    OracleTooLarge { n: usize, max: usize },
    #[error("parameter out of range: t = {0}")]
    ParameterOutOfRange(f64),
    #[error("region index {index} out of range ({count} regions)")]
    RegionIndex { index: usize, count: usize },
    #[error("contour would touch another region (inflation {inflation} >= gap/2 = {half_gap})")]
    ContourTouchesRegion { inflation: f64, half_gap: f64 },
    #[error("inflation must be positive and finite, got {0}")]
    InvalidInflation(f64),
    #[error("incomparable multisets ({left} vs {right} values)")]
    IncomparableMultisets { left: usize, right: usize },
    #[error("eigenvalue on contour at z = {re} + {im}i")]
    EigenvalueOnContour { re: f64, im: f64 },
    #[error("quadrature not converged (segment budget {budget} exceeded)")]
    QuadratureNotConverged { budget: usize },
    #[error("ambiguous winding (residual {residual} > {limit})")]
    AmbiguousWinding { residual: f64, limit: f64 },
    #[error("invalid parameter grid: {0}")]
    InvalidGrid(String),
    #[error("step underflow at t = {t} (step {step:e})")]
    StepUnderflow { t: f64, step: f64 },
    #[error("path {path} escapes region {region} at t = {t}")]
    PathEscapesRegion { path: usize, region: usize, t: f64 },
    #[error("eigenvalue {re} + {im}i at t = {t} lies outside every region")]
    OutsideRegions { re: f64, im: f64, t: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
