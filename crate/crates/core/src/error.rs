use thiserror::Error;

/// Failures surfaced by the dynamics, planners and benchmark harness.
#[derive(Debug, Error)]
pub enum Error {
    /// Zero airspeed: the angle of attack is undefined.
    #[error("degenerate flight state: zero airspeed (u = w = 0)")]
    DegenerateState,

    #[error("argument out of domain: {0}")]
    Domain(String),

    /// Flapping coefficients were requested for a gliding maneuver.
    #[error("flapping coefficients require a positive flapping frequency")]
    ModeMismatch,

    /// A non-finite value appeared while integrating a segment.
    #[error("numerical divergence after {elapsed_s} s of integration")]
    Divergence { elapsed_s: f64 },

    /// No tree node reached the tolerance region around the target.
    #[error("no solution within tolerance (best distance to target {best_distance})")]
    NoSolution { best_distance: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
