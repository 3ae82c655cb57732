//! Zero-detuning solution. On resonance the Bloch system factorizes: the
//! in-phase coherence decays on its own (`u' = -Gamma u`, so `u = 0` from
//! the ground-state initial condition) and `(v, w)` close into a
//! second-order system whose inversion solves
//! `w'' + (1/T +- Gamma... )` — after the argument substitution this is a
//! confluent 0F1 (Bessel) equation on each branch.
//!
//! With `nu = 1/2 + gamma` and `x = -omega^2 exp(-+2t/T)` the left-branch
//! inversion is `w1(t) = -0F1(; nu; x)` and the right branch is spanned by
//! `g1 = 0F1(; 1-nu; x)` (tending to one) and
//! `g2 = (-x)^nu 0F1(; 1+nu; x) / Gamma(1+nu)` (tending to zero). When `nu`
//! is a positive integer those two Bessel orders collapse onto each other
//! and `g1` is replaced by the normalized second-kind solution
//! `-(pi/(n-1)!) (xi/2)^n Y_n(xi)`, `xi = 2 omega exp(-t/T)`.

use num_complex::Complex64;

use crate::demkov::{CuspState, ReducedParams};
use crate::error::{Error, Result};
use crate::specialfn::{bessel_y_int, complex_gamma, hyp0f1, PrecisionPolicy, EPS_DEGEN};

/// Bloch vector on the resonant route; `u` vanishes identically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonantState {
    pub u_r: f64,
    pub v_r: f64,
    pub w_r: f64,
}

/// Matching constants of the two-solution right branch;
/// `w(+inf) = a_plus_r`.
#[derive(Debug, Clone, Copy)]
pub struct ResonantConstants {
    pub a_plus_r: f64,
    pub b_plus_r: Complex64,
    pub wronskian2: Complex64,
}

/// `0F1(; b; x)` with its first two derivatives in `x`
/// (`d/dx 0F1(;b;x) = 0F1(;b+1;x)/b`).
fn hyp0f1_derivs(b: f64, x: f64, policy: &PrecisionPolicy) -> Result<(f64, f64, f64)> {
    let f0 = hyp0f1(b, x, policy)?.value.re;
    let f1 = hyp0f1(b + 1.0, x, policy)?.value.re / b;
    let f2 = hyp0f1(b + 2.0, x, policy)?.value.re / (b * (b + 1.0));
    Ok((f0, f1, f2))
}

/// Left-branch resonant inversion `w1(t) = -0F1(; 1/2+gamma; -omega^2 e^(2t/T))`
/// for `t <= 0`. Equivalent Bessel form:
/// `-Gamma(1/2+gamma) (omega e^(t/T))^(1/2-gamma) J_(gamma-1/2)(2 omega e^(t/T))`.
pub fn w_resonant_branch1(rp: &ReducedParams, t: f64, policy: &PrecisionPolicy) -> Result<f64> {
    let x = -rp.omega * rp.omega * (2.0 * t / rp.t_width).exp();
    Ok(-hyp0f1(0.5 + rp.gamma, x, policy)?.value.re)
}

fn branch1_derivs(rp: &ReducedParams, t: f64, policy: &PrecisionPolicy) -> Result<(f64, f64, f64)> {
    let tw = rp.t_width;
    let x = -rp.omega * rp.omega * (2.0 * t / tw).exp();
    let (f0, f1, f2) = hyp0f1_derivs(0.5 + rp.gamma, x, policy)?;
    let xdot = (2.0 / tw) * x;
    let xddot = (4.0 / (tw * tw)) * x;
    Ok((-f0, -f1 * xdot, -(f2 * xdot * xdot + f1 * xddot)))
}

/// Cusp data of the resonant branch, with the same second-derivative jump
/// law as the general route.
pub fn resonant_cusp(rp: &ReducedParams, policy: &PrecisionPolicy) -> Result<CuspState> {
    let (w0, w1dot, w2dot_left) = branch1_derivs(rp, 0.0, policy)?;
    Ok(CuspState {
        w0,
        w1dot,
        w2dot_left,
        w2dot_right: w2dot_left - (2.0 / rp.t_width) * w1dot,
    })
}

/// Which second right-branch solution is in play.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PairKind {
    /// Orders `+-nu` independent: `g1 = 0F1(; 1-nu; x)`.
    Generic,
    /// `nu = n` integer: `g1` built on `Y_n`.
    IntegerOrder(u32),
}

/// Assembled resonant solution: branch-1 evaluator plus matched two-solution
/// right branch.
#[derive(Debug, Clone)]
pub struct ResonantSolution {
    gamma: f64,
    omega: f64,
    t_width: f64,
    nu: f64,
    pair: PairKind,
    constants: ResonantConstants,
}

impl ResonantSolution {
    pub fn new(rp: &ReducedParams, policy: &PrecisionPolicy) -> Result<Self> {
        if rp.omega <= 0.0 {
            return Err(Error::InvalidParameter(
                "resonant route needs a nonzero pulse".into(),
            ));
        }
        if rp.gamma < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "dephasing must be nonnegative, got gamma = {}",
                rp.gamma
            )));
        }
        let nu = 0.5 + rp.gamma;
        let n = nu.round();
        let pair = if n >= 1.0 && (nu - n).abs() <= EPS_DEGEN {
            PairKind::IntegerOrder(n as u32)
        } else {
            PairKind::Generic
        };
        let mut sol = ResonantSolution {
            gamma: rp.gamma,
            omega: rp.omega,
            t_width: rp.t_width,
            nu,
            pair,
            constants: ResonantConstants {
                a_plus_r: 0.0,
                b_plus_r: Complex64::new(0.0, 0.0),
                wronskian2: Complex64::new(0.0, 0.0),
            },
        };
        let cusp = resonant_cusp(rp, policy)?;
        let (g1, g2) = sol.pair_at(0.0, policy)?;
        let det = g1.0 * g2.1 - g2.0 * g1.1;
        let scale = g1.0.abs().max(g2.0.abs()) * g1.1.abs().max(g2.1.abs());
        if det.abs() < 1e-12 * scale.max(1e-300) {
            return Err(Error::SingularSystem {
                det_abs: det.abs(),
                scale,
            });
        }
        let a = (cusp.w0 * g2.1 - g2.0 * cusp.w1dot) / det;
        let b = (g1.0 * cusp.w1dot - cusp.w0 * g1.1) / det;
        sol.constants = ResonantConstants {
            a_plus_r: a,
            b_plus_r: Complex64::new(b, 0.0),
            wronskian2: Complex64::new(det, 0.0),
        };
        Ok(sol)
    }

    pub fn constants(&self) -> &ResonantConstants {
        &self.constants
    }

    /// `w(+inf)`: `g1 -> 1` and `g2 -> 0`, so only the first constant
    /// survives.
    pub fn w_infinity(&self) -> f64 {
        self.constants.a_plus_r
    }

    /// Evaluate the right-branch pair with first and second time
    /// derivatives at `t >= 0`.
    fn pair_at(
        &self,
        t: f64,
        policy: &PrecisionPolicy,
    ) -> Result<((f64, f64, f64), (f64, f64, f64))> {
        let tw = self.t_width;
        let nu = self.nu;
        let x = -self.omega * self.omega * (-2.0 * t / tw).exp();
        let xdot = -(2.0 / tw) * x;
        let xddot = (4.0 / (tw * tw)) * x;

        // g2 = (-x)^nu 0F1(; 1+nu; x) / Gamma(1+nu), always valid.
        let (f0, f1, f2) = hyp0f1_derivs(1.0 + nu, x, policy)?;
        let gam = complex_gamma(Complex64::new(1.0 + nu, 0.0))?.re;
        let mx = -x; // > 0
        let p0 = mx.powf(nu);
        let p1 = -nu * mx.powf(nu - 1.0);
        let p2 = nu * (nu - 1.0) * mx.powf(nu - 2.0);
        let h0 = p0 * f0 / gam;
        let h1 = (p1 * f0 + p0 * f1) / gam;
        let h2 = (p2 * f0 + 2.0 * p1 * f1 + p0 * f2) / gam;
        let g2 = (
            h0,
            h1 * xdot,
            h2 * xdot * xdot + h1 * xddot,
        );

        let g1 = match self.pair {
            PairKind::Generic => {
                let (f0, f1, f2) = hyp0f1_derivs(1.0 - nu, x, policy)?;
                (
                    f0,
                    f1 * xdot,
                    f2 * xdot * xdot + f1 * xddot,
                )
            }
            PairKind::IntegerOrder(n) => {
                // kappa (xi/2)^n Y_n(xi), kappa = -pi/(n-1)!, xi = 2 omega e^(-t/T).
                let xi = 2.0 * self.omega * (-t / tw).exp();
                let half = xi / 2.0;
                let yn = bessel_y_int(n, xi, policy)?;
                let ynm1 = bessel_y_int(n - 1, xi, policy)?;
                // Y_{n-2} via Y_{-1} = -Y_1 when n = 1
                let ynm2 = if n >= 2 {
                    bessel_y_int(n - 2, xi, policy)?
                } else {
                    -bessel_y_int(1, xi, policy)?
                };
                let fact: f64 = (1..n).map(|j| j as f64).product::<f64>().max(1.0);
                let kappa = -std::f64::consts::PI / fact;
                let g = half.powi(n as i32) * yn;
                let gp = half.powi(n as i32) * ynm1;
                let gpp = half.powi(n as i32) * ynm2 + 0.5 * half.powi(n as i32 - 1) * ynm1;
                let xidot = -xi / tw;
                let xiddot = xi / (tw * tw);
                (
                    kappa * g,
                    kappa * gp * xidot,
                    kappa * (gpp * xidot * xidot + gp * xiddot),
                )
            }
        };
        Ok((g1, g2))
    }

    /// `(w, w', w'')` at `t`; left-sided at the cusp.
    pub fn w_derivs(&self, t: f64, policy: &PrecisionPolicy) -> Result<(f64, f64, f64)> {
        let rp = self.as_reduced();
        if t <= 0.0 {
            branch1_derivs(&rp, t, policy)
        } else {
            let (g1, g2) = self.pair_at(t, policy)?;
            let a = self.constants.a_plus_r;
            let b = self.constants.b_plus_r.re;
            Ok((
                a * g1.0 + b * g2.0,
                a * g1.1 + b * g2.1,
                a * g1.2 + b * g2.2,
            ))
        }
    }

    fn as_reduced(&self) -> ReducedParams {
        let p = crate::demkov::ModelParams {
            delta: 0.0,
            omega0: 2.0 * self.omega / self.t_width,
            t_width: self.t_width,
            gamma_deph: 2.0 * self.gamma / self.t_width,
        };
        crate::demkov::reduce(&p)
    }
}

/// Piecewise resonant inversion for parameters with `delta ~ 0`.
pub fn w_resonant_full(
    params: &crate::demkov::ModelParams,
    t: f64,
    policy: &PrecisionPolicy,
) -> Result<f64> {
    let rp = crate::demkov::reduce(params);
    if rp.delta.abs() > EPS_DEGEN {
        return Err(Error::InvalidParameter(format!(
            "resonant route requires |reduced delta| <= {EPS_DEGEN}, got {}",
            rp.delta
        )));
    }
    if rp.omega == 0.0 {
        return Ok(-1.0);
    }
    let sol = ResonantSolution::new(&rp, policy)?;
    Ok(sol.w_derivs(t, policy)?.0)
}
