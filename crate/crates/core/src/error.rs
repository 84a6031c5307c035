use thiserror::Error;

use crate::symkernel::{CoordId, KernelError, SolveError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("complex dimension must be at least 1")]
    ZeroDimension,
    #[error("base chart has no projection")]
    NoProjection,
    #[error("{0} has no dot coordinate")]
    NoDot(CoordId),
    #[error("{coord} is not a coordinate of the chart {chart}")]
    NotInChart { coord: String, chart: String },
    #[error("chart mismatch: {left} vs {right}")]
    ChartMismatch { left: String, right: String },
    #[error("operation requires a chart with time")]
    NeedsTime,
    #[error("operation requires a time-free chart")]
    NeedsTimeFree,
    #[error("operation requires order k >= 1")]
    NeedsPositiveOrder,
    #[error("object must live on a base chart (k = 0)")]
    NotBase,
    #[error("unsupported form degree {0}")]
    UnsupportedDegree(usize),
    #[error("complete-vertical order ({r},{s}) does not add up to k = {k}")]
    OrderMismatch { r: u32, s: u32, k: u32 },
    #[error("{0}")]
    Domain(String),
    #[error("solver: {detail}")]
    Solver {
        detail: String,
        #[source]
        source: SolveError,
    },
    #[error("holdout residual nonzero for {witness}: family too small")]
    Holdout { witness: String },
    #[error("not Hermitian with respect to J")]
    NotHermitian,
}

pub type Result<T> = std::result::Result<T, Error>;
