use thiserror::Error;

/// Errors produced by the scattering backends, metrics and oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("frequency grid needs at least 2 points, got {0}")]
    GridTooSmall(usize),

    #[error("frequency grid is not strictly increasing at index {0}")]
    GridNotIncreasing(usize),

    #[error("frequency {omega} lies outside the open band ({lo}, {hi})")]
    OutsideBand { omega: f64, lo: f64, hi: f64 },

    #[error("wave number {0} is at or beyond a band edge; expected 0 < k < pi")]
    BandEdge(f64),

    #[error("|t| = {0:e} is too small for a finite transfer matrix")]
    NearTotalReflection(f64),

    #[error("response and packet are sampled on different grids")]
    GridMismatch,

    #[error("packet mass outside the grid is {0:e}, grid too narrow")]
    PacketNotContained(f64),

    #[error("linear system is singular (pivot {pivot:e} at row {row})")]
    Singular { row: usize, pivot: f64 },

    #[error("norm drifted by {0:e} during propagation")]
    NormDrift(f64),

    #[error("packet touched boundary (edge population {0:e})")]
    BoundaryTouched(f64),

    #[error("scattering did not complete within {0} time units")]
    NotSettled(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(value: f64, name: &'static str) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(name))
    }
}
