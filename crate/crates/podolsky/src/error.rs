//! Error taxonomy shared across the crate.
//!
//! Numerical code here never returns NaN to signal failure: every fallible
//! operation yields a typed error so callers (and the sweep mask) can tell a
//! genuinely undefined regime apart from a numerical fault.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A precondition on the inputs was violated. The message names the
    /// offending parameter and the constraint.
    #[error("domain error: {0}")]
    Domain(String),

    /// An unscaled quantity exceeds the representable range; the scaled
    /// variant of the operation is the intended escape hatch.
    #[error("overflow: {0}")]
    Overflow(String),

    /// The requested value diverges at this argument (e.g. K0 at x = 0).
    #[error("divergence: {0}")]
    Divergence(String),

    /// An iterative or discretized method finished without meeting its
    /// tolerance; `achieved` is the error estimate it reached.
    #[error("convergence failure: {context} (achieved {achieved:e})")]
    Convergence { context: String, achieved: f64 },

    /// The estimator denominator is not positive: no length scale solves the
    /// asymptotic model for these inputs. Distinct from `Domain` so sweeps
    /// can mask it as "no solution" rather than "bad call".
    #[error("non-physical regime: {0}")]
    NonPhysical(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn overflow(msg: impl Into<String>) -> Self {
        Error::Overflow(msg.into())
    }
}
