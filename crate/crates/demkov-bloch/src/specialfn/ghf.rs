//! Power-series and asymptotic evaluation of 1F2 (and the 0F1 it reduces to).
//!
//! The series is summed at an adaptive working precision because for the
//! physically relevant arguments (real negative, |z| up to several hundred)
//! the terms grow to ~exp(2*sqrt(|z|)) before the alternating sum collapses
//! to a value of order one.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{complex_gamma, recip_gamma};
use super::{EvalMethod, EvalResult, GhfParams, PrecisionPolicy};
use crate::error::{Error, Result};
use crate::mp::{c_mag, c_to_f64, to_f64, MpCtx};

/// How many consecutive terms must satisfy the tail bound before the series
/// is declared converged. A single small term near the alternating-term peak
/// is not a safe stopping signal.
const CONSECUTIVE_SMALL: u32 = 3;

/// Generalized hypergeometric function `1F2(a1; b1, b2; z)` by direct
/// summation of the defining series at extended working precision.
pub fn ghf_1f2(p: &GhfParams, z: Complex64, policy: &PrecisionPolicy) -> Result<EvalResult> {
    if z == Complex64::new(0.0, 0.0) {
        return Ok(EvalResult {
            value: Complex64::new(1.0, 0.0),
            est_rel_error: 0.0,
            method: EvalMethod::Series,
        });
    }
    let z_abs = z.norm();
    let ctx = MpCtx::with_digits(policy.working_digits(z_abs));
    let zc = ctx.c_from_f64(z.re, z.im);

    // Shifted parameters a1+k, b1+k, b2+k, advanced by exact unit increments.
    let one = ctx.c_from_f64(1.0, 0.0);
    let mut ak = ctx.c_from_f64(p.a1.re, p.a1.im);
    let mut b1k = ctx.c_from_f64(p.b1.re, p.b1.im);
    let mut b2k = ctx.c_from_f64(p.b2.re, p.b2.im);

    let mut term = ctx.c_from_f64(1.0, 0.0);
    let mut sum = term.clone();
    let mut peak: f64 = 1.0;
    let mut small_streak = 0u32;
    // The term magnitude peaks near k = 2*sqrt(|z|); do not stop before it.
    let k_peak = (2.0 * z_abs.sqrt()).ceil() as usize + 1;

    for k in 0..policy.max_terms {
        let kf = k as f64;
        // term_{k+1} = term_k * z * (a1+k) / ((b1+k)(b2+k)(k+1))
        let num = ctx.c_mul(&zc, &ak);
        let kp1 = ctx.c_from_f64(kf + 1.0, 0.0);
        let den = ctx.c_mul(&ctx.c_mul(&b1k, &b2k), &kp1);
        term = ctx.c_div(&ctx.c_mul(&term, &num), &den);
        sum = ctx.c_add(&sum, &term);
        ak = ctx.c_add(&ak, &one);
        b1k = ctx.c_add(&b1k, &one);
        b2k = ctx.c_add(&b2k, &one);

        let t_mag = c_mag(&term);
        peak = peak.max(t_mag);

        if k + 1 >= k_peak {
            // Geometric tail bound from the worst-case next-term ratio.
            let kn = kf + 2.0;
            let d1 = (kn - p.b1.norm()).max(1e-300);
            let d2 = (kn - p.b2.norm()).max(1e-300);
            let rho = z_abs * (kn + p.a1.norm()) / (d1 * d2 * kn);
            if rho < 0.5 {
                let s_mag = c_mag(&sum).max(1e-300);
                let tail = t_mag * rho / (1.0 - rho);
                if tail < policy.target_rel_error * s_mag {
                    small_streak += 1;
                    if small_streak >= CONSECUTIVE_SMALL {
                        let rounding =
                            (k as f64) * (peak / s_mag) * 2f64.powi(-(ctx.prec_bits() as i32 - 4));
                        let (re, im) = c_to_f64(&sum);
                        return Ok(EvalResult {
                            value: Complex64::new(re, im),
                            est_rel_error: tail / s_mag + rounding,
                            method: EvalMethod::Series,
                        });
                    }
                } else {
                    small_streak = 0;
                }
            }
        }
    }
    Err(Error::NonConvergence {
        terms: policy.max_terms,
        z_abs,
    })
}

/// n-th derivative of 1F2 in its argument:
/// `(a1)_n / ((b1)_n (b2)_n) * 1F2(a1+n; b1+n, b2+n; z)`.
pub fn ghf_1f2_derivative(
    p: &GhfParams,
    z: Complex64,
    n: u32,
    policy: &PrecisionPolicy,
) -> Result<EvalResult> {
    assert!(n >= 1, "derivative order must be positive");
    let nf = n as f64;
    let shifted = GhfParams::new(p.a1 + nf, p.b1 + nf, p.b2 + nf)?;
    let prefactor = super::pochhammer(p.a1, n)
        / (super::pochhammer(p.b1, n) * super::pochhammer(p.b2, n));
    let inner = ghf_1f2(&shifted, z, policy)?;
    Ok(EvalResult {
        value: prefactor * inner.value,
        est_rel_error: inner.est_rel_error + 4.0 * f64::EPSILON,
        method: inner.method,
    })
}

/// Two-term large-argument expansion of 1F2 on the negative real axis:
/// an oscillatory term `~ (-z)^chi cos(pi chi + 2 sqrt(-z))` with
/// `chi = (a1 - b1 - b2 + 1/2) / 2`, plus an algebraic term `~ (-z)^(-a1)`.
///
/// The accuracy estimate reflects the first omitted orders, `O(1/sqrt(-z))`
/// of the oscillatory term and `O(1/z)` of the algebraic one.
pub fn ghf_1f2_asymptotic(
    p: &GhfParams,
    z: Complex64,
    policy: &PrecisionPolicy,
) -> Result<EvalResult> {
    let z_abs = z.norm();
    if z_abs < policy.z_switch {
        return Err(Error::AsymptoticDomain {
            z_abs,
            z_switch: policy.z_switch,
        });
    }
    if !(z.im == 0.0 && z.re < 0.0) {
        return Err(Error::InvalidParameter(format!(
            "asymptotic expansion implemented on the negative real axis only, got z = {z}"
        )));
    }
    let mz = -z.re; // > 0
    let chi = (p.a1 - p.b1 - p.b2 + 0.5) / 2.0;
    let gb = complex_gamma(p.b1)? * complex_gamma(p.b2)?;

    let osc_coeff = gb / (PI.sqrt() * complex_gamma(p.a1)?);
    let phase = chi * PI + 2.0 * mz.sqrt();
    let osc = osc_coeff * (chi * mz.ln()).exp() * phase.cos();

    // The algebraic coefficient vanishes (reciprocal gamma at a pole) when
    // b1 - a1 or b2 - a1 is a nonpositive integer.
    let alg_coeff = gb * recip_gamma(p.b1 - p.a1) * recip_gamma(p.b2 - p.a1);
    let alg = alg_coeff * ((-p.a1) * mz.ln()).exp();

    let value = osc + alg;
    // First omitted orders, measured against the oscillatory amplitude (the
    // evaluated cosine may sit near a zero while the phase-shifted correction
    // does not). The parameter-dependent factors bound the 1/sqrt(-z)
    // correction coefficients, which grow quadratically with the b's.
    let osc_amp = osc_coeff.norm() * mz.powf(chi.re);
    let c_osc = 1.0 + (p.b1.norm_sqr() + p.b2.norm_sqr()) / 2.0;
    let c_alg = 1.0 + p.a1.norm();
    let est =
        (osc_amp * c_osc / mz.sqrt() + alg.norm() * c_alg / mz) / value.norm().max(1e-300);
    Ok(EvalResult {
        value,
        est_rel_error: est,
        method: EvalMethod::Asymptotic,
    })
}

/// Confluent limit `0F1(; b; z)` for real parameter and argument, summed at
/// extended precision. This is the workhorse of the resonant (Bessel) route.
pub fn hyp0f1(b: f64, z: f64, policy: &PrecisionPolicy) -> Result<EvalResult> {
    let n = b.round();
    if n <= 0.0 && (b - n).abs() <= super::EPS_DEGEN {
        return Err(Error::NonpositiveIntegerParameter(format!("b = {b}")));
    }
    if z == 0.0 {
        return Ok(EvalResult {
            value: Complex64::new(1.0, 0.0),
            est_rel_error: 0.0,
            method: EvalMethod::Series,
        });
    }
    let z_abs = z.abs();
    let ctx = MpCtx::with_digits(policy.working_digits(z_abs));
    let zc = ctx.from_f64(z);
    let one = ctx.from_f64(1.0);
    let mut bk = ctx.from_f64(b);
    let mut term = ctx.from_f64(1.0);
    let mut sum = term.clone();
    let mut peak: f64 = 1.0;
    let mut small_streak = 0u32;
    let k_peak = (2.0 * z_abs.sqrt()).ceil() as usize + 1;

    for k in 0..policy.max_terms {
        let kf = k as f64;
        let den = ctx.mul(&bk, &ctx.from_f64(kf + 1.0));
        term = ctx.div(&ctx.mul(&term, &zc), &den);
        sum = ctx.add(&sum, &term);
        bk = ctx.add(&bk, &one);

        let t_mag = to_f64(&term).abs();
        peak = peak.max(t_mag);

        if k + 1 >= k_peak {
            let kn = kf + 2.0;
            let db = (kn - b.abs()).max(1e-300);
            let rho = z_abs / (db * kn);
            if rho < 0.5 {
                let s_mag = to_f64(&sum).abs().max(1e-300);
                let tail = t_mag * rho / (1.0 - rho);
                if tail < policy.target_rel_error * s_mag {
                    small_streak += 1;
                    if small_streak >= CONSECUTIVE_SMALL {
                        let rounding =
                            (k as f64) * (peak / s_mag) * 2f64.powi(-(ctx.prec_bits() as i32 - 4));
                        return Ok(EvalResult {
                            value: Complex64::new(to_f64(&sum), 0.0),
                            est_rel_error: tail / s_mag + rounding,
                            method: EvalMethod::Series,
                        });
                    }
                } else {
                    small_streak = 0;
                }
            }
        }
    }
    Err(Error::NonConvergence {
        terms: policy.max_terms,
        z_abs,
    })
}
