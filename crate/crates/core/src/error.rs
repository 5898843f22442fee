//! Error type shared by the solver and field layers.
//!
//! Contract violations (mismatched grids handed to a checked wrapper, a
//! negative Sobolev index, ε = 0 matrices) are usage errors; runtime
//! failures of the dynamics (positivity loss, NaN blowup) carry enough
//! context to report the breakdown time and offending field.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// API misuse detected by a checked entry point.
    #[error("usage error: {0}")]
    Usage(String),

    /// Poisson right-hand side with a nonzero mean on the torus.
    #[error("incompatible Poisson right-hand side: |mean| = {mean:e} exceeds {limit:e}")]
    IncompatibleRhs { mean: f64, limit: f64 },

    /// A state left the admissible region (positivity or box bound).
    #[error("state space exit: {field} reached {value:e} (limit {limit:e})")]
    StateSpaceExit {
        field: &'static str,
        value: f64,
        limit: f64,
    },

    /// Equation of state returned a nonpositive density or pressure slope.
    #[error("invalid gas law at (S, p) = ({s:e}, {p:e}): R = {r:e}, dR/dp = {drdp:e}")]
    InvalidGasLaw { s: f64, p: f64, r: f64, drdp: f64 },

    /// Non-finite values appeared during time integration.
    #[error("numerical blowup at t = {time:e}: {what}")]
    Blowup { time: f64, what: String },

    /// Advisory CFL violation from a checked stepper.
    #[error("time step {dt:e} exceeds advective CFL bound {bound:e}")]
    CflExceeded { dt: f64, bound: f64 },

    /// Rate fit preconditions not met.
    #[error("rate fit rejected: {0}")]
    RateFit(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed snapshot file, manifest, or configuration text.
    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}
