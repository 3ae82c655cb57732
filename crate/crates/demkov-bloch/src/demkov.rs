//! Exact population-inversion solution for a two-state system driven by a
//! two-sided exponential pulse `Omega(t) = Omega0 exp(-|t|/T)` at constant
//! detuning, with transverse dephasing.
//!
//! The inversion obeys a third-order linear ODE on each side of the pulse
//! cusp at `t = 0`. On each branch the substitution
//! `x = -(T Omega0 / 2)^2 exp(+-2t/T)` maps it onto the 1F2 equation; the
//! left branch picks the regular solution (so that `w(-inf) = -1`), and the
//! right branch is matched at the cusp across a basis of three 1F2-type
//! solutions. The limit `w(+inf)` is the coefficient of the unique basis
//! member that does not decay.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::resonant::ResonantSolution;
use crate::specialfn::{
    branch_pow, ghf_1f2, ghf_1f2_derivative, GhfParams, PrecisionPolicy, EPS_DEGEN, TOL_REAL,
};

/// Physical inputs of the model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    /// Detuning (transition frequency minus carrier frequency).
    pub delta: f64,
    /// Peak Rabi frequency, nonnegative.
    pub omega0: f64,
    /// Pulse width, positive.
    pub t_width: f64,
    /// Dephasing rate (inverse transverse relaxation time), nonnegative.
    pub gamma_deph: f64,
}

impl ModelParams {
    pub fn new(delta: f64, omega0: f64, t_width: f64, gamma_deph: f64) -> Result<Self> {
        let p = ModelParams {
            delta,
            omega0,
            t_width,
            gamma_deph,
        };
        p.validate()?;
        Ok(p)
    }

    /// Model in reduced units: `gamma = T*Gamma/2`, `delta = T*Delta/2`,
    /// `omega = T*Omega0/2`, with `T = 1`.
    pub fn from_reduced(gamma: f64, delta: f64, omega: f64) -> Result<Self> {
        ModelParams::new(2.0 * delta, 2.0 * omega, 1.0, 2.0 * gamma)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_width > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "pulse width must be positive, got {}",
                self.t_width
            )));
        }
        if !(self.omega0 >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "peak Rabi frequency must be nonnegative, got {}",
                self.omega0
            )));
        }
        if !(self.gamma_deph >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "dephasing rate must be nonnegative, got {}",
                self.gamma_deph
            )));
        }
        if !self.delta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "detuning must be finite, got {}",
                self.delta
            )));
        }
        Ok(())
    }

    /// Pulse envelope `Omega(t) = Omega0 exp(-|t|/T)`.
    pub fn rabi(&self, t: f64) -> f64 {
        self.omega0 * (-t.abs() / self.t_width).exp()
    }
}

/// Dimensionless parameters and the hypergeometric parameter blocks of the
/// two branches.
#[derive(Debug, Clone, Copy)]
pub struct ReducedParams {
    /// `T * Gamma / 2`
    pub gamma: f64,
    /// `T * Delta / 2`
    pub delta: f64,
    /// `T * Omega0 / 2`
    pub omega: f64,
    /// Pulse width, carried along for dimensionful time derivatives.
    pub t_width: f64,
    /// Left-branch parameters: `a1 = 1/2 + gamma`, `b1 = a1 + i delta`, `b2 = b1*`.
    pub ghf_branch1: GhfParams,
    /// Right-branch parameters: the sign of `gamma` flips.
    pub ghf_branch2: GhfParams,
}

/// Map physical parameters onto the reduced set.
pub fn reduce(params: &ModelParams) -> ReducedParams {
    let t = params.t_width;
    let gamma = t * params.gamma_deph / 2.0;
    let delta = t * params.delta / 2.0;
    let omega = t * params.omega0 / 2.0;
    let ghf_branch1 = GhfParams {
        a1: Complex64::new(0.5 + gamma, 0.0),
        b1: Complex64::new(0.5 + gamma, delta),
        b2: Complex64::new(0.5 + gamma, -delta),
    };
    let ghf_branch2 = GhfParams {
        a1: Complex64::new(0.5 - gamma, 0.0),
        b1: Complex64::new(0.5 - gamma, -delta),
        b2: Complex64::new(0.5 - gamma, delta),
    };
    ReducedParams {
        gamma,
        delta,
        omega,
        t_width: t,
        ghf_branch1,
        ghf_branch2,
    }
}

/// The Bloch vector `(u, v, w)`: twice the real and imaginary coherence and
/// the population inversion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochVector {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl BlochVector {
    pub fn norm_sq(&self) -> f64 {
        self.u * self.u + self.v * self.v + self.w * self.w
    }
}

/// Which evaluation route produced a Bloch sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BlochRoute {
    /// Full three-solution machinery with algebraic coherence reconstruction.
    General,
    /// Resonant (`delta ~ 0`) factorized route, where `u = 0` identically.
    Resonant,
    /// `Omega0 = 0`: the state never moves from `(0, 0, -1)`.
    Frozen,
}

/// A Bloch vector together with the route that produced it.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BlochSample {
    pub state: BlochVector,
    pub route: BlochRoute,
}

/// Inversion data at the pulse cusp `t = 0`.
///
/// `w` and its first derivative are continuous there, while the second
/// derivative jumps: `d/dt` of `w' = Omega v` picks up the jump of
/// `Omega'`, which is `-2 Omega0 / T` across the cusp, so
/// `w''(0+) = w''(0-) - (2/T) w'(0)`.
#[derive(Debug, Clone, Copy)]
pub struct CuspState {
    pub w0: f64,
    pub w1dot: f64,
    pub w2dot_left: f64,
    pub w2dot_right: f64,
}

/// Value and first two time derivatives of one basis solution.
#[derive(Debug, Clone, Copy)]
pub struct SolutionTriple {
    pub f: Complex64,
    pub fdot: Complex64,
    pub fddot: Complex64,
}

/// The three right-branch basis solutions as evaluators in `t`.
#[derive(Debug, Clone)]
pub struct FundamentalSet {
    params: [GhfParams; 3],
    /// Exponent of the power prefactor of the second solution; the third
    /// uses its conjugate.
    s: Complex64,
    omega: f64,
    t_width: f64,
}

impl FundamentalSet {
    /// Evaluate all three solutions with their first two time derivatives.
    pub fn eval(&self, t: f64, policy: &PrecisionPolicy) -> Result<[SolutionTriple; 3]> {
        let tw = self.t_width;
        let x = -self.omega * self.omega * (-2.0 * t / tw).exp();
        let xc = Complex64::new(x, 0.0);
        let xdot = -(2.0 / tw) * x;
        let xddot = (4.0 / (tw * tw)) * x;

        let mut out = [SolutionTriple {
            f: Complex64::new(0.0, 0.0),
            fdot: Complex64::new(0.0, 0.0),
            fddot: Complex64::new(0.0, 0.0),
        }; 3];

        for (i, p) in self.params.iter().enumerate() {
            let f0 = ghf_1f2(p, xc, policy)?.value;
            let f1 = ghf_1f2_derivative(p, xc, 1, policy)?.value;
            let f2 = ghf_1f2_derivative(p, xc, 2, policy)?.value;
            let (g0, g1, g2) = if i == 0 {
                (f0, f1, f2)
            } else {
                let s = if i == 1 { self.s } else { self.s.conj() };
                // Conjugate branches of the power prefactor keep the second
                // and third solutions complex conjugate on the negative real
                // axis, which is what makes the matched inversion real.
                let pw = if i == 1 {
                    branch_pow(xc, s)
                } else {
                    branch_pow(xc, self.s).conj()
                };
                let g0 = pw * f0;
                let g1 = pw * (s * f0 / x + f1);
                let g2 = pw * (s * (s - 1.0) * f0 / (x * x) + 2.0 * s * f1 / x + f2);
                (g0, g1, g2)
            };
            out[i] = SolutionTriple {
                f: g0,
                fdot: g1 * xdot,
                fddot: g2 * xdot * xdot + g1 * xddot,
            };
        }
        Ok(out)
    }
}

/// Matching constants of the right branch; `Re(a_plus)` is `w(+inf)`.
#[derive(Debug, Clone, Copy)]
pub struct IntegrationConstants {
    pub a_plus: Complex64,
    pub b_plus: Complex64,
    pub c_plus: Complex64,
    /// Determinant of the matching system (the basis Wronskian at `t = 0`).
    pub wronskian: Complex64,
}

/// Uniformly sampled Bloch-vector trajectory.
#[derive(Debug, Clone, Serialize)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub states: Vec<BlochVector>,
}

fn real_checked(z: Complex64, what: &str) -> f64 {
    debug_assert!(
        z.im.abs() <= TOL_REAL * z.re.abs().max(1.0),
        "{what} should be real, got {z}"
    );
    z.re
}

/// Left-branch inversion, its first and second time derivative.
fn branch1_derivs(rp: &ReducedParams, t: f64, policy: &PrecisionPolicy) -> Result<(f64, f64, f64)> {
    let tw = rp.t_width;
    let x = -rp.omega * rp.omega * (2.0 * t / tw).exp();
    let xc = Complex64::new(x, 0.0);
    let p = &rp.ghf_branch1;
    let f0 = ghf_1f2(p, xc, policy)?.value;
    let f1 = ghf_1f2_derivative(p, xc, 1, policy)?.value;
    let f2 = ghf_1f2_derivative(p, xc, 2, policy)?.value;
    let xdot = (2.0 / tw) * x;
    let xddot = (4.0 / (tw * tw)) * x;
    let w = -f0;
    let wdot = -f1 * xdot;
    let wddot = -(f2 * xdot * xdot + f1 * xddot);
    Ok((
        real_checked(w, "w1"),
        real_checked(wdot, "w1'"),
        real_checked(wddot, "w1''"),
    ))
}

/// Left-branch inversion
/// `w1(t) = -1F2(1/2+gamma; 1/2+gamma+i delta, 1/2+gamma-i delta; -omega^2 e^(2t/T))`
/// for `t <= 0`. The regular solution alone survives the `t -> -inf` limit,
/// which fixes its coefficient to `-1` and the two singular ones to zero.
pub fn w_branch1(rp: &ReducedParams, t: f64, policy: &PrecisionPolicy) -> Result<f64> {
    let tw = rp.t_width;
    let x = -rp.omega * rp.omega * (2.0 * t / tw).exp();
    let v = ghf_1f2(&rp.ghf_branch1, Complex64::new(x, 0.0), policy)?.value;
    Ok(real_checked(-v, "w1"))
}

/// Inversion data at the cusp, including the second-derivative jump.
pub fn matching_at_cusp(rp: &ReducedParams, policy: &PrecisionPolicy) -> Result<CuspState> {
    let (w0, w1dot, w2dot_left) = branch1_derivs(rp, 0.0, policy)?;
    let w2dot_right = w2dot_left - (2.0 / rp.t_width) * w1dot;
    Ok(CuspState {
        w0,
        w1dot,
        w2dot_left,
        w2dot_right,
    })
}

/// Build the right-branch basis evaluators.
pub fn fundamental_set(rp: &ReducedParams, policy: &PrecisionPolicy) -> Result<FundamentalSet> {
    let _ = policy;
    if rp.ghf_branch2.is_degenerate() {
        return Err(Error::DegenerateParameters(format!(
            "delta = {} (resonant route required)",
            rp.delta
        )));
    }
    let g = rp.gamma;
    let d = rp.delta;
    let s = Complex64::new(0.5 + g, d);
    let params = [
        rp.ghf_branch2,
        GhfParams {
            a1: Complex64::new(1.0, d),
            b1: Complex64::new(1.5 + g, d),
            b2: Complex64::new(1.0, 2.0 * d),
        },
        GhfParams {
            a1: Complex64::new(1.0, -d),
            b1: Complex64::new(1.0, -2.0 * d),
            b2: Complex64::new(1.5 + g, -d),
        },
    ];
    Ok(FundamentalSet {
        params,
        s,
        omega: rp.omega,
        t_width: rp.t_width,
    })
}

/// Solve a 3x3 complex system by Gaussian elimination with partial pivoting;
/// returns the solution and the determinant.
fn solve3(
    mut m: [[Complex64; 3]; 3],
    mut rhs: [Complex64; 3],
) -> (Option<[Complex64; 3]>, Complex64) {
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&a, &b| {
                m[a][col]
                    .norm_sqr()
                    .partial_cmp(&m[b][col].norm_sqr())
                    .unwrap()
            })
            .unwrap();
        if pivot != col {
            m.swap(pivot, col);
            rhs.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        if p.norm_sqr() == 0.0 {
            return (None, det);
        }
        for row in col + 1..3 {
            let factor = m[row][col] / p;
            for k in col..3 {
                let sub = factor * m[col][k];
                m[row][k] -= sub;
            }
            let sub = factor * rhs[col];
            rhs[row] -= sub;
        }
    }
    let mut x = [Complex64::new(0.0, 0.0); 3];
    for row in (0..3).rev() {
        let mut acc = rhs[row];
        for k in row + 1..3 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    (Some(x), det)
}

/// Match the right-branch solution to the cusp data; the determinant of the
/// system is the basis Wronskian in `t` at `t = 0`.
pub fn branch2_constants(
    cusp: &CuspState,
    fs: &FundamentalSet,
    policy: &PrecisionPolicy,
) -> Result<IntegrationConstants> {
    let triples = fs.eval(0.0, policy)?;
    let m = [
        [triples[0].f, triples[1].f, triples[2].f],
        [triples[0].fdot, triples[1].fdot, triples[2].fdot],
        [triples[0].fddot, triples[1].fddot, triples[2].fddot],
    ];
    let scale: f64 = m
        .iter()
        .map(|row| row.iter().map(|z| z.norm()).fold(0.0f64, f64::max))
        .product();
    let rhs = [
        Complex64::new(cusp.w0, 0.0),
        Complex64::new(cusp.w1dot, 0.0),
        Complex64::new(cusp.w2dot_right, 0.0),
    ];
    let (sol, det) = solve3(m, rhs);
    let det_abs = det.norm();
    let sol = match sol {
        Some(s) if det_abs >= 1e-12 * scale => s,
        _ => {
            return Err(Error::SingularSystem {
                det_abs,
                scale,
            })
        }
    };
    Ok(IntegrationConstants {
        a_plus: sol[0],
        b_plus: sol[1],
        c_plus: sol[2],
        wronskian: det,
    })
}

enum Route {
    Frozen,
    Resonant(ResonantSolution),
    General {
        cusp: CuspState,
        fs: FundamentalSet,
        constants: IntegrationConstants,
        est_error: f64,
    },
}

/// A fully assembled solution for one parameter set; build once, evaluate at
/// many times. Immutable after construction and safe to share across threads.
pub struct DemkovSolution {
    params: ModelParams,
    rp: ReducedParams,
    policy: PrecisionPolicy,
    route: Route,
}

impl DemkovSolution {
    pub fn new(params: ModelParams, policy: PrecisionPolicy) -> Result<Self> {
        params.validate()?;
        let rp = reduce(&params);
        let route = if rp.omega == 0.0 {
            Route::Frozen
        } else if rp.delta.abs() <= EPS_DEGEN {
            Route::Resonant(ResonantSolution::new(&rp, &policy)?)
        } else {
            let cusp = matching_at_cusp(&rp, &policy)?;
            let fs = fundamental_set(&rp, &policy)?;
            let constants = branch2_constants(&cusp, &fs, &policy)?;
            // Forward error: series accuracy amplified by the conditioning of
            // the matching solve.
            let triples = fs.eval(0.0, &policy)?;
            let scale: f64 = triples.iter().map(|t| t.f.norm()).fold(0.0, f64::max);
            let cond = (scale / constants.wronskian.norm().max(1e-300)).max(1.0);
            let est_error = policy.target_rel_error * cond * 100.0;
            Route::General {
                cusp,
                fs,
                constants,
                est_error,
            }
        };
        Ok(DemkovSolution {
            params,
            rp,
            policy,
            route,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn reduced(&self) -> &ReducedParams {
        &self.rp
    }

    pub fn route(&self) -> BlochRoute {
        match self.route {
            Route::Frozen => BlochRoute::Frozen,
            Route::Resonant(_) => BlochRoute::Resonant,
            Route::General { .. } => BlochRoute::General,
        }
    }

    pub fn cusp(&self) -> Option<&CuspState> {
        match &self.route {
            Route::General { cusp, .. } => Some(cusp),
            _ => None,
        }
    }

    pub fn constants(&self) -> Option<&IntegrationConstants> {
        match &self.route {
            Route::General { constants, .. } => Some(constants),
            _ => None,
        }
    }

    /// Population inversion at time `t`.
    pub fn w(&self, t: f64) -> Result<f64> {
        Ok(self.w_derivs(t)?.0)
    }

    /// `(w, w', w'')` at `t`; at the cusp the left-sided second derivative
    /// is reported.
    pub fn w_derivs(&self, t: f64) -> Result<(f64, f64, f64)> {
        match &self.route {
            Route::Frozen => Ok((-1.0, 0.0, 0.0)),
            Route::Resonant(r) => r.w_derivs(t, &self.policy),
            Route::General { constants, fs, .. } => {
                if t <= 0.0 {
                    branch1_derivs(&self.rp, t, &self.policy)
                } else {
                    let tr = fs.eval(t, &self.policy)?;
                    let a = constants.a_plus;
                    let b = constants.b_plus;
                    let c = constants.c_plus;
                    let w = a * tr[0].f + b * tr[1].f + c * tr[2].f;
                    let wd = a * tr[0].fdot + b * tr[1].fdot + c * tr[2].fdot;
                    let wdd = a * tr[0].fddot + b * tr[1].fddot + c * tr[2].fddot;
                    Ok((
                        real_checked(w, "w2"),
                        real_checked(wd, "w2'"),
                        real_checked(wdd, "w2''"),
                    ))
                }
            }
        }
    }

    /// Final inversion `w(+inf)`.
    pub fn w_infinity(&self) -> f64 {
        match &self.route {
            Route::Frozen => -1.0,
            Route::Resonant(r) => r.w_infinity(),
            Route::General { constants, .. } => constants.a_plus.re,
        }
    }

    /// Final transition probability `p = (1 + w(+inf)) / 2`.
    pub fn transition_probability(&self) -> f64 {
        (1.0 + self.w_infinity()) / 2.0
    }

    /// Rough forward bound on the error of `w_infinity`.
    pub fn w_infinity_est_error(&self) -> f64 {
        match &self.route {
            Route::Frozen => 0.0,
            Route::Resonant(_) => self.policy.target_rel_error * 100.0,
            Route::General { est_error, .. } => *est_error,
        }
    }

    /// Reconstruct the full Bloch vector from `w` and its derivatives:
    /// `v = w'/Omega` and `u = (v' + Gamma v + Omega w) / Delta`.
    pub fn bloch(&self, t: f64) -> Result<BlochSample> {
        match &self.route {
            Route::Frozen => Ok(BlochSample {
                state: BlochVector {
                    u: 0.0,
                    v: 0.0,
                    w: -1.0,
                },
                route: BlochRoute::Frozen,
            }),
            Route::Resonant(_) => {
                let (w, wd, _) = self.w_derivs(t)?;
                let om = self.params.rabi(t);
                Ok(BlochSample {
                    state: BlochVector {
                        u: 0.0,
                        v: wd / om,
                        w,
                    },
                    route: BlochRoute::Resonant,
                })
            }
            Route::General { .. } => {
                let (w, wd, wdd) = self.w_derivs(t)?;
                let om = self.params.rabi(t);
                // Omega' = -sign(t) Omega / T; the left-sided value is used
                // at the cusp, matching the left-sided w''.
                let om_dot = if t <= 0.0 {
                    om / self.params.t_width
                } else {
                    -om / self.params.t_width
                };
                let v = wd / om;
                let vdot = (wdd * om - wd * om_dot) / (om * om);
                let u = (vdot + self.params.gamma_deph * v + om * w) / self.params.delta;
                Ok(BlochSample {
                    state: BlochVector { u, v, w },
                    route: BlochRoute::General,
                })
            }
        }
    }

    /// Uniformly sampled analytic Bloch trajectory on `[t_min, t_max]`.
    pub fn time_series(&self, t_min: f64, t_max: f64, n_points: usize) -> Result<TimeSeries> {
        if !(t_min < t_max) || n_points < 2 {
            return Err(Error::InvalidParameter(format!(
                "need t_min < t_max and n_points >= 2, got [{t_min}, {t_max}] with {n_points}"
            )));
        }
        let mut times = Vec::with_capacity(n_points);
        let mut states = Vec::with_capacity(n_points);
        let dt = (t_max - t_min) / (n_points - 1) as f64;
        for i in 0..n_points {
            let t = if i + 1 == n_points {
                t_max
            } else {
                t_min + i as f64 * dt
            };
            times.push(t);
            states.push(self.bloch(t)?.state);
        }
        Ok(TimeSeries { times, states })
    }
}

/// Piecewise inversion `w(t)`: left branch for `t <= 0`, matched right
/// branch for `t > 0`.
pub fn w_full(params: &ModelParams, t: f64, policy: &PrecisionPolicy) -> Result<f64> {
    DemkovSolution::new(*params, policy.clone())?.w(t)
}

/// Final inversion `w(+inf)`.
pub fn w_infinity(params: &ModelParams, policy: &PrecisionPolicy) -> Result<f64> {
    Ok(DemkovSolution::new(*params, policy.clone())?.w_infinity())
}

/// Full Bloch vector at `t`, reconstructed from the inversion.
pub fn bloch_from_w(params: &ModelParams, t: f64, policy: &PrecisionPolicy) -> Result<BlochSample> {
    DemkovSolution::new(*params, policy.clone())?.bloch(t)
}

/// Uniformly sampled analytic trajectory.
pub fn time_series(
    params: &ModelParams,
    t_min: f64,
    t_max: f64,
    n_points: usize,
    policy: &PrecisionPolicy,
) -> Result<TimeSeries> {
    DemkovSolution::new(*params, policy.clone())?.time_series(t_min, t_max, n_points)
}
