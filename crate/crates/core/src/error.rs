use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A probability was NaN or outside `[0, 1]`.
    #[error("probability {0} is not in [0, 1]")]
    InvalidProbability(f64),

    /// Paired probability vectors must have equal length.
    #[error("probability vectors have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    /// Probability vectors must hold at least one entry.
    #[error("probability vector is empty")]
    EmptyVector,

    /// Exhaustive outcome enumeration was requested above the cap.
    #[error("enumeration over 2^{n} outcomes exceeds the cap 2^{cap}")]
    EnumerationTooLarge { n: usize, cap: usize },

    /// The `small_p` discrepancy form is only valid for p <= 0.9.
    #[error("small_p form requires p <= 0.9, got p = {0}")]
    SmallPOutOfRange(f64),

    /// Exact binomial evaluation was requested above the cap.
    #[error("binomial with {n} trials exceeds the exact-evaluation cap {cap}")]
    BinomialTooLarge { n: u64, cap: u64 },

    /// A binomial needs at least one trial.
    #[error("binomial needs at least one trial")]
    EmptyBinomial,

    /// Graphs need at least two vertices.
    #[error("graph order must be at least 2, got {0}")]
    GraphTooSmall(u32),

    /// A kernel or weight evaluation produced a nonfinite or negative base
    /// intensity.
    #[error("base intensity at edge ({i}, {j}) is invalid: {value}")]
    InvalidIntensity { i: u32, j: u32, value: f64 },

    /// A kernel parameter violates its constraints.
    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    /// A sampled vertex weight was not strictly positive.
    #[error("vertex weight {value} at index {index} is not strictly positive")]
    NonpositiveWeight { index: usize, value: f64 },

    /// A custom link left `[0, 1]`.
    #[error("link maps {input} to {output}, outside [0, 1]")]
    LinkOutOfRange { input: f64, output: f64 },

    /// A custom link failed the `h(x) = x + O(x^2)` admission check.
    #[error("link fails the h(x) = x + O(x^2) admission check at x = {0}")]
    LinkNotNearIdentity(f64),

    /// The requested operation needs a different ensemble kind.
    #[error("{0}")]
    EnsembleMismatch(String),

    /// A sequence diagnostic was configured inconsistently.
    #[error("{0}")]
    InvalidDiagnostic(String),

    /// The pair generator of a sequence failed at a grid point.
    #[error("pair generator failed at n = {n}: {source}")]
    Generator {
        n: u32,
        #[source]
        source: Box<Error>,
    },

    /// A tabulated kernel file was malformed.
    #[error("tabulated kernel: {0}")]
    TabulatedKernel(String),
}
