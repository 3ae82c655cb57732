//! Evaluation of the generalized hypergeometric function 1F2 with complex
//! parameters, its derivatives, the large-argument expansion, and the Bessel
//! and gamma functions it reduces to.

mod bessel;
mod gamma;
mod ghf;

pub use bessel::{bessel_j, bessel_y_int};
pub use gamma::{complex_gamma, recip_gamma};
pub use ghf::{ghf_1f2, ghf_1f2_asymptotic, ghf_1f2_derivative, hyp0f1};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Proximity tolerance for integer-degeneracy checks on lower parameters.
pub const EPS_DEGEN: f64 = 1e-8;

/// Tolerance on imaginary parts of quantities that must come out real.
pub const TOL_REAL: f64 = 1e-9;

/// Parameter triple of `1F2(a1; b1, b2; z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhfParams {
    pub a1: Complex64,
    pub b1: Complex64,
    pub b2: Complex64,
}

fn near_integer(z: Complex64, eps: f64) -> Option<i64> {
    let n = z.re.round();
    if z.im.abs() <= eps && (z.re - n).abs() <= eps {
        Some(n as i64)
    } else {
        None
    }
}

fn near_nonpositive_integer(z: Complex64, eps: f64) -> bool {
    matches!(near_integer(z, eps), Some(n) if n <= 0)
}

impl GhfParams {
    /// Build a parameter triple, rejecting lower parameters on which the
    /// defining series is undefined.
    pub fn new(a1: Complex64, b1: Complex64, b2: Complex64) -> Result<Self> {
        for (name, b) in [("b1", b1), ("b2", b2)] {
            if near_nonpositive_integer(b, EPS_DEGEN) {
                return Err(Error::NonpositiveIntegerParameter(format!(
                    "{name} = {b}"
                )));
            }
        }
        Ok(GhfParams { a1, b1, b2 })
    }

    /// True when the three-solution basis around the origin degenerates:
    /// `b1`, `b2`, or `b1 - b2` lies within [`EPS_DEGEN`] of an integer.
    pub fn is_degenerate(&self) -> bool {
        near_integer(self.b1, EPS_DEGEN).is_some()
            || near_integer(self.b2, EPS_DEGEN).is_some()
            || near_integer(self.b1 - self.b2, EPS_DEGEN).is_some()
    }
}

/// Accuracy controls for series/asymptotic evaluation.
#[derive(Debug, Clone)]
pub struct PrecisionPolicy {
    /// Requested relative accuracy of the returned value.
    pub target_rel_error: f64,
    /// Hard cap on the number of series terms.
    pub max_terms: usize,
    /// `|z|` beyond which evaluation may switch to the asymptotic expansion.
    pub z_switch: f64,
    /// Floor on the working precision, in decimal digits.
    pub digits_floor: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        let floor = std::env::var("DEMKOV_PRECISION_DIGITS")
            .ok()
            .and_then(|s| s.parse::<u32>().ok())
            .unwrap_or(20);
        PrecisionPolicy {
            target_rel_error: 1e-13,
            max_terms: 20_000,
            z_switch: 1e4,
            digits_floor: floor.max(20),
        }
    }
}

impl PrecisionPolicy {
    /// Working precision for an argument of modulus `z_abs`.
    ///
    /// Series terms peak near `exp(2*sqrt(z_abs))` while the sum is of order
    /// one, so that many decimal digits are lost to cancellation and must be
    /// added back on top of the baseline.
    pub fn working_digits(&self, z_abs: f64) -> u32 {
        let cancelled = (2.0 * z_abs.sqrt() * std::f64::consts::LOG10_E).ceil() as u32;
        self.digits_floor + cancelled + 10
    }
}

/// Which evaluation path produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMethod {
    Series,
    Asymptotic,
}

/// A value together with its accuracy estimate and provenance.
#[derive(Debug, Clone, Copy)]
pub struct EvalResult {
    pub value: Complex64,
    pub est_rel_error: f64,
    pub method: EvalMethod,
}

/// Rising factorial `(alpha)_k`.
pub fn pochhammer(alpha: Complex64, k: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for j in 0..k {
        acc *= alpha + j as f64;
    }
    acc
}

/// `z^s` on the fixed branch used throughout this crate: for `z` on the
/// negative real axis, `(-1)^s = exp(i*pi*s)`.
pub fn branch_pow(z: Complex64, s: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re < 0.0 {
        let ln_z = Complex64::new((-z.re).ln(), std::f64::consts::PI);
        (s * ln_z).exp()
    } else {
        z.powc(s)
    }
}

/// Closed-form Wronskian of the three-solution basis of the 1F2 equation,
/// `(b1-1)(b2-1)(b1-b2) z^(-b1-b2-1)`, on the crate's power branch.
///
/// Serves as the reference the numerically assembled 3x3 determinant is
/// checked against.
pub fn wronskian_identity(p: &GhfParams, z: Complex64) -> Result<Complex64> {
    if p.is_degenerate() {
        return Err(Error::DegenerateParameters(format!(
            "b1 = {}, b2 = {}",
            p.b1, p.b2
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let k = (p.b1 - one) * (p.b2 - one) * (p.b1 - p.b2);
    Ok(k * branch_pow(z, -p.b1 - p.b2 - one))
}
