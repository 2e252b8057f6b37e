//! Exhaustive enumeration, exact pushforwards, Monte Carlo estimation,
//! goodness-of-fit tests and parameter sweeps.

mod exact;
mod monte_carlo;
mod space;
pub mod stats;
mod sweep;
mod verify;

use thiserror::Error;

use crate::complex::ComplexError;
use crate::measure::MeasureError;
use crate::params::ParamsError;
use crate::sampler::SampleError;
use crate::topology::TopologyError;

pub use exact::{
    conditional_link, conditional_links_intersection, enumerate_distribution, exact_pushforward,
    ExactDistribution, Transform,
};
pub use monte_carlo::{
    chi_square_test, lookup_metric, metric_names, monte_carlo, ExperimentReport, Metric, Outcome,
    EVENTS, STATISTICS,
};
pub use space::{enumerate_space, enumerate_space_with_guard, guard_from_env, DEFAULT_GUARD, GUARD_ENV};
pub use sweep::{sweep, write_csv, AxisRange, SweepGrid, SweepMetric, SweepRow};
pub use verify::{verify_identities, IDENTITY_TOLERANCE, SUM_TOLERANCE};

#[derive(Debug, Error)]
pub enum LabError {
    #[error("Ω_{n}^{r} has more than {guard} complexes (raise {GUARD_ENV} to allow)")]
    GuardExceeded { n: u32, r: usize, guard: u64 },
    #[error("Δ_{n}^({r}) has more than 128 simplices; too large to enumerate")]
    SpaceTooLarge { n: u32, r: usize },
    #[error("the conditioning event has probability zero")]
    ZeroProbabilityCondition,
    #[error("expected complexes in Ω_{}^{}, got Ω_{}^{}", .expected.0, .expected.1, .got.0, .got.1)]
    SpaceMismatch { expected: (u32, usize), got: (u32, usize) },
    #[error("invalid transform: {0}")]
    InvalidTransform(String),
    #[error("unknown metric `{0}`")]
    UnknownMetric(String),
    #[error("invalid sweep grid: {0}")]
    InvalidGrid(String),
    #[error("at least one trial is required")]
    ZeroTrials,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
