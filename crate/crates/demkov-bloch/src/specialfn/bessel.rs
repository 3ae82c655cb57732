//! Bessel functions of the first and second kind, built on the 0F1 series.
//!
//! `J_nu(x) = (x/2)^nu / Gamma(nu+1) * 0F1(; nu+1; -x^2/4)`, and for integer
//! order the second kind `Y_n` from the standard logarithmic series (needed
//! when the two first-kind orders +-nu collapse onto each other).

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::complex_gamma;
use super::ghf::hyp0f1;
use super::PrecisionPolicy;
use crate::error::{Error, Result};
use crate::mp::{to_f64, MpCtx};

/// Euler-Mascheroni constant to ~50 digits (parsed into the working
/// precision where needed; f64 rounding is enough for the assembled value).
const EULER_GAMMA: f64 = 0.5772156649015328606065120900824024310421593359399;

/// Bessel function of the first kind of real order `nu` at `x >= 0`.
pub fn bessel_j(nu: f64, x: f64, policy: &PrecisionPolicy) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::InvalidParameter(format!("bessel_j requires x >= 0, got {x}")));
    }
    let n = nu.round();
    let is_int = (nu - n).abs() <= 1e-12;
    if x == 0.0 {
        if nu == 0.0 || (is_int && n != 0.0) {
            return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
        }
        if nu > 0.0 {
            return Ok(0.0);
        }
        return Err(Error::InvalidParameter(format!(
            "J_nu(0) diverges for negative non-integer order {nu}"
        )));
    }
    if is_int && n < 0.0 {
        // J_{-n} = (-1)^n J_n
        let sign = if (n as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        return Ok(sign * bessel_j(-n, x, policy)?);
    }
    let f = hyp0f1(nu + 1.0, -x * x / 4.0, policy)?.value.re;
    let gamma = complex_gamma(Complex64::new(nu + 1.0, 0.0))?.re;
    Ok((x / 2.0).powf(nu) / gamma * f)
}

/// Bessel function of the second kind of integer order `n >= 0` at `x > 0`.
///
/// `Y_0` and `Y_1` come from the logarithmic series with harmonic-number
/// weights, summed at extended precision; higher orders use the (stable,
/// upward) three-term recurrence.
pub fn bessel_y_int(n: u32, x: f64, policy: &PrecisionPolicy) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::InvalidParameter(format!("bessel_y requires x > 0, got {x}")));
    }
    let y0 = y_series(0, x, policy)?;
    if n == 0 {
        return Ok(y0);
    }
    let y1 = y_series(1, x, policy)?;
    if n == 1 {
        return Ok(y1);
    }
    let mut prev = y0;
    let mut cur = y1;
    for m in 1..n {
        let next = (2.0 * m as f64 / x) * cur - prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `Y_n` for n = 0, 1 via
/// `(2/pi)(ln(x/2)+euler_gamma) J_n - (finite sum) - (x/2)^n/pi * S`,
/// `S = sum_k (H_k + H_{n+k}) (-x^2/4)^k / (k! (n+k)!)`.
fn y_series(n: u32, x: f64, policy: &PrecisionPolicy) -> Result<f64> {
    let jn = bessel_j(n as f64, x, policy)?;
    let q = -x * x / 4.0;
    let ctx = MpCtx::with_digits(policy.working_digits(q.abs()));

    // S at extended precision: the alternating terms peak near exp(x) while
    // the sum stays small.
    let qc = ctx.from_f64(q);
    let one = ctx.from_f64(1.0);
    // t_0 = 1/n!
    let mut term = one.clone();
    for j in 1..=n {
        term = ctx.div(&term, &ctx.from_f64(j as f64));
    }
    let mut h_k = ctx.from_f64(0.0);
    let mut h_nk = {
        let mut h = ctx.from_f64(0.0);
        for j in 1..=n {
            h = ctx.add(&h, &ctx.div(&one, &ctx.from_f64(j as f64)));
        }
        h
    };
    let mut sum = ctx.mul(&term, &ctx.add(&h_k, &h_nk));
    let mut small_streak = 0u32;
    let k_peak = (2.0 * q.abs().sqrt()).ceil() as usize + 1;
    let mut converged = false;
    for k in 0..policy.max_terms {
        let kf = k as f64;
        let den = ctx.mul(&ctx.from_f64(kf + 1.0), &ctx.from_f64(n as f64 + kf + 1.0));
        term = ctx.div(&ctx.mul(&term, &qc), &den);
        h_k = ctx.add(&h_k, &ctx.div(&one, &ctx.from_f64(kf + 1.0)));
        h_nk = ctx.add(&h_nk, &ctx.div(&one, &ctx.from_f64(n as f64 + kf + 1.0)));
        sum = ctx.add(&sum, &ctx.mul(&term, &ctx.add(&h_k, &h_nk)));

        if k + 1 >= k_peak {
            let t_mag = to_f64(&term).abs() * (to_f64(&h_k) + to_f64(&h_nk));
            let s_mag = to_f64(&sum).abs().max(1e-300);
            let rho = q.abs() / ((kf + 2.0) * (kf + 2.0));
            if rho < 0.5 && t_mag * rho / (1.0 - rho) < policy.target_rel_error * s_mag {
                small_streak += 1;
                if small_streak >= 3 {
                    converged = true;
                    break;
                }
            } else {
                small_streak = 0;
            }
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            terms: policy.max_terms,
            z_abs: q.abs(),
        });
    }
    let s = to_f64(&sum);

    let log_part = (2.0 / PI) * ((x / 2.0).ln() + EULER_GAMMA) * jn;
    let finite: f64 = (0..n)
        .map(|k| {
            let num: f64 = (1..=(n - 1 - k)).map(|j| j as f64).product::<f64>().max(1.0);
            let kfact: f64 = (1..=k).map(|j| j as f64).product::<f64>().max(1.0);
            (num / kfact) * (x * x / 4.0).powi(k as i32)
        })
        .sum();
    let finite_part = (x / 2.0).powi(-(n as i32)) / PI * finite;
    let series_part = (x / 2.0).powi(n as i32) / PI * s;
    Ok(log_part - finite_part - series_part)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pol() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn half_integer_closed_forms() {
        // J_{-1/2}(x) = sqrt(2/(pi x)) cos x at x = 1
        let j = bessel_j(-0.5, 1.0, &pol()).unwrap();
        let expect = (2.0 / (PI * 1.0)).sqrt() * 1.0f64.cos();
        assert!((j - expect).abs() < 1e-14);
        // J_{1/2}(x) = sqrt(2/(pi x)) sin x at x = 2
        let j = bessel_j(0.5, 2.0, &pol()).unwrap();
        let expect = (2.0 / (PI * 2.0)).sqrt() * 2.0f64.sin();
        assert!((j - expect).abs() < 1e-14);
    }

    #[test]
    fn fractional_order_reference_value() {
        // J_0.6(5), frozen from an 80-digit series evaluation
        let j = bessel_j(0.6, 5.0, &pol()).unwrap();
        let expect = -0.3536364045389870054278484127886070660414;
        assert!((j - expect).abs() < 1e-12 * expect.abs());
    }

    #[test]
    fn negative_integer_order_reflection() {
        let p = pol();
        let j1 = bessel_j(1.0, 3.3, &p).unwrap();
        let jm1 = bessel_j(-1.0, 3.3, &p).unwrap();
        assert!((jm1 + j1).abs() < 1e-14);
    }

    #[test]
    fn y_wronskian_identity() {
        // J_{n+1} Y_n - J_n Y_{n+1} = 2/(pi x)
        let p = pol();
        for &x in &[0.3, 1.0, 7.5, 30.0, 50.0] {
            for n in 0..3u32 {
                let jn = bessel_j(n as f64, x, &p).unwrap();
                let jn1 = bessel_j(n as f64 + 1.0, x, &p).unwrap();
                let yn = bessel_y_int(n, x, &p).unwrap();
                let yn1 = bessel_y_int(n + 1, x, &p).unwrap();
                let w = jn1 * yn - jn * yn1;
                let expect = 2.0 / (PI * x);
                assert!(
                    (w - expect).abs() < 1e-9 * expect.abs(),
                    "n={n}, x={x}: {w} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn y0_small_argument_log_behavior() {
        // Y_0(x) ~ (2/pi)(ln(x/2)+gamma) as x -> 0
        let p = pol();
        let x = 1e-6;
        let y = bessel_y_int(0, x, &p).unwrap();
        let expect = (2.0 / PI) * ((x / 2.0).ln() + EULER_GAMMA);
        assert!((y - expect).abs() < 1e-10);
    }
}
