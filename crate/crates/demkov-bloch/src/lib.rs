//! Closed-form dynamics of a two-level system driven by an exponentially
//! peaked pulse with transverse dephasing.
//!
//! The pulse envelope is `Omega(t) = Omega0 exp(-|t|/T)` at constant detuning
//! `Delta`, with dephasing rate `Gamma` acting on the coherences. The
//! population inversion `w(t)` is evaluated analytically through generalized
//! hypergeometric functions `1F2` (and, on resonance, `0F1`/Bessel functions),
//! matched across the envelope cusp at `t = 0`. The remaining Bloch components
//! `u, v` follow from `w` and its derivatives.
//!
//! The crate ships:
//!
//! - [`demkov::DemkovSolution`]: the analytic solution object (inversion,
//!   full Bloch vector, final inversion `w(+infinity)`),
//! - [`specialfn`]: the extended-precision special-function layer
//!   (`1F2`, `0F1`, complex Gamma, Bessel `J`/`Y`),
//! - [`oracle`]: an independent adaptive Runge-Kutta integration of the same
//!   Bloch system, used to validate the closed form,
//! - [`cli`]: the command-line front end (`demkov` binary).
//!
//! See the `examples/` directory for runnable entry points covering each
//! capability.

pub mod cli;
pub mod demkov;
pub mod error;
pub mod mp;
pub mod oracle;
pub mod resonant;
pub mod specialfn;

pub use demkov::{
    bloch_from_w, time_series, w_full, w_infinity, BlochRoute, BlochSample, BlochVector,
    CuspState, DemkovSolution, IntegrationConstants, ModelParams, ReducedParams, TimeSeries,
};
pub use error::{Error, Result};
pub use oracle::{integrate_bloch, oracle_w_infinity, IntegratorConfig, Trajectory};
pub use resonant::{w_resonant_full, ResonantConstants, ResonantSolution};
pub use specialfn::{EvalMethod, EvalResult, GhfParams, PrecisionPolicy};
