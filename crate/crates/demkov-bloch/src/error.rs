use thiserror::Error;

/// Errors produced by the special-function and model-assembly layers.
#[derive(Debug, Error)]
pub enum Error {
    /// A lower hypergeometric parameter sits on a nonpositive integer, where
    /// the defining series is undefined.
    #[error("lower parameter {0} is (within tolerance) a nonpositive integer")]
    NonpositiveIntegerParameter(String),

    /// The three-solution basis degenerates (a lower parameter or their
    /// difference is integer); callers must use the resonant route instead.
    #[error("degenerate hypergeometric parameters: {0}")]
    DegenerateParameters(String),

    /// Gamma function evaluated at (or too close to) a pole.
    #[error("gamma function pole at z = {0}")]
    GammaPole(String),

    /// The series did not meet the requested tolerance within the term budget.
    #[error("series did not converge within {terms} terms (|z| = {z_abs})")]
    NonConvergence { terms: usize, z_abs: f64 },

    /// Asymptotic expansion requested below its validity threshold.
    #[error("|z| = {z_abs} is below the asymptotic crossover {z_switch}")]
    AsymptoticDomain { z_abs: f64, z_switch: f64 },

    /// The matching linear system is numerically singular.
    #[error("singular matching system (|det| = {det_abs}, scale = {scale})")]
    SingularSystem { det_abs: f64, scale: f64 },

    /// Bloch-vector reconstruction is not available for these inputs.
    #[error("coherence reconstruction unavailable: {0}")]
    InversionUnavailable(String),

    /// The adaptive integrator ran out of steps.
    #[error("integrator exceeded {0} steps")]
    StepLimitExceeded(usize),

    /// Invalid model or run parameters.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
