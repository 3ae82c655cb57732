//! Independent ground truth: adaptive Dormand-Prince 5(4) integration of the
//! Bloch system
//!
//! ```text
//! u' = -Gamma u - Delta v
//! v' =  Delta u - Gamma v - Omega(t) w
//! w' =  Omega(t) v
//! ```
//!
//! starting far in the wings of the pulse from `(0, 0, -1)`. A step boundary
//! is forced at the envelope cusp `t = 0`, where the right-hand side loses a
//! derivative and an adaptive controller would otherwise drop an order.

use crate::demkov::{BlochVector, ModelParams};
use crate::error::{Error, Result};

/// Tolerances and integration range (in units of the pulse width).
#[derive(Debug, Clone, Copy)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Integration starts at `-t_start_factor * T`.
    pub t_start_factor: f64,
    /// Integration ends at `t_end_factor * T`.
    pub t_end_factor: f64,
    pub max_steps: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        // exp(-40) ~ 4e-18 makes the pulse truncation invisible in doubles.
        IntegratorConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            t_start_factor: 40.0,
            t_end_factor: 40.0,
            max_steps: 1_000_000,
        }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::InvalidParameter("tolerances must be positive".into()));
        }
        if self.t_start_factor < 10.0 || self.t_end_factor < 10.0 {
            return Err(Error::InvalidParameter(
                "start/end factors below 10 truncate the pulse".into(),
            ));
        }
        if self.max_steps < 1000 {
            return Err(Error::InvalidParameter("max_steps must be >= 1000".into()));
        }
        Ok(())
    }
}

/// Integrated trajectory sampled at the requested times.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<BlochVector>,
    pub step_count: usize,
    pub max_est_local_error: f64,
}

type State = [f64; 3];

fn rhs(params: &ModelParams, t: f64, y: &State) -> State {
    let om = params.rabi(t);
    let g = params.gamma_deph;
    let d = params.delta;
    [
        -g * y[0] - d * y[1],
        d * y[0] - g * y[1] - om * y[2],
        om * y[1],
    ]
}

// Dormand-Prince 5(4) tableau.
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

struct Stepper<'a> {
    params: &'a ModelParams,
    cfg: IntegratorConfig,
    t: f64,
    y: State,
    h: f64,
    k0: State,
    steps: usize,
    max_err: f64,
}

impl<'a> Stepper<'a> {
    fn new(params: &'a ModelParams, cfg: IntegratorConfig, t0: f64, y0: State) -> Self {
        let h0 = params.t_width / 100.0;
        let k0 = rhs(params, t0, &y0);
        Stepper {
            params,
            cfg,
            t: t0,
            y: y0,
            h: h0,
            k0,
            steps: 0,
        max_err: 0.0,
        }
    }

    /// One accepted adaptive step of size at most `h_max`.
    fn step(&mut self, h_max: f64) -> Result<()> {
        let mut h = self.h.min(h_max).max(1e-14 * self.params.t_width);
        loop {
            if self.steps >= self.cfg.max_steps {
                return Err(Error::StepLimitExceeded(self.cfg.max_steps));
            }
            self.steps += 1;

            let mut k = [[0.0f64; 3]; 7];
            k[0] = self.k0;
            for stage in 0..6 {
                let mut yt = self.y;
                for (j, kj) in k.iter().enumerate().take(stage + 1) {
                    let a = A[stage][j];
                    if a != 0.0 {
                        for m in 0..3 {
                            yt[m] += h * a * kj[m];
                        }
                    }
                }
                k[stage + 1] = rhs(self.params, self.t + C[stage] * h, &yt);
            }
            let mut y5 = self.y;
            let mut y4 = self.y;
            for (j, kj) in k.iter().enumerate() {
                for m in 0..3 {
                    y5[m] += h * B5[j] * kj[m];
                    y4[m] += h * B4[j] * kj[m];
                }
            }
            let mut err_sq = 0.0;
            for m in 0..3 {
                let sc = self.cfg.abs_tol + self.cfg.rel_tol * self.y[m].abs().max(y5[m].abs());
                let e = (y5[m] - y4[m]) / sc;
                err_sq += e * e;
            }
            let err = (err_sq / 3.0).sqrt();

            if err <= 1.0 {
                self.t += h;
                self.y = y5;
                self.k0 = k[6]; // FSAL
                self.max_err = self.max_err.max(err);
                let factor = if err > 0.0 {
                    (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                } else {
                    5.0
                };
                self.h = h * factor;
                return Ok(());
            }
            let factor = (0.9 * err.powf(-0.2)).clamp(0.2, 1.0);
            h *= factor;
        }
    }

    /// Integrate exactly up to `t_target` (which becomes a step boundary).
    fn advance_to(&mut self, t_target: f64) -> Result<()> {
        while self.t < t_target {
            let remaining = t_target - self.t;
            // Land exactly on the target once it is within reach.
            let h_max = if remaining <= self.h * 1.5 {
                remaining
            } else {
                remaining / 2.0
            };
            let h_before = self.h;
            self.step(h_max.min(remaining))?;
            self.h = self.h.max(h_before.min(remaining));
            if remaining <= 1e-15 * self.t.abs().max(1.0) {
                break;
            }
        }
        self.t = t_target;
        Ok(())
    }
}

/// Integrate the Bloch system and sample it at `sample_times` (ascending).
///
/// A mesh point is always placed at `t = 0`.
pub fn integrate_bloch(
    params: &ModelParams,
    cfg: &IntegratorConfig,
    sample_times: &[f64],
) -> Result<Trajectory> {
    params.validate()?;
    cfg.validate()?;
    let t0 = -cfg.t_start_factor * params.t_width;
    let t_end = cfg.t_end_factor * params.t_width;
    for w in sample_times.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::InvalidParameter(
                "sample times must be strictly increasing".into(),
            ));
        }
    }
    if let (Some(&first), Some(&last)) = (sample_times.first(), sample_times.last()) {
        if first < t0 || last > t_end {
            return Err(Error::InvalidParameter(format!(
                "sample times must lie within [{t0}, {t_end}]"
            )));
        }
    }

    let mut stepper = Stepper::new(params, *cfg, t0, [0.0, 0.0, -1.0]);
    let mut times = Vec::with_capacity(sample_times.len());
    let mut states = Vec::with_capacity(sample_times.len());
    let mut cusp_done = false;
    for &ts in sample_times {
        if !cusp_done && ts > 0.0 && stepper.t < 0.0 {
            stepper.advance_to(0.0)?;
            stepper.k0 = rhs(params, stepper.t, &stepper.y);
            cusp_done = true;
        }
        stepper.advance_to(ts)?;
        times.push(ts);
        states.push(BlochVector {
            u: stepper.y[0],
            v: stepper.y[1],
            w: stepper.y[2],
        });
    }
    Ok(Trajectory {
        times,
        states,
        step_count: stepper.steps,
        max_est_local_error: stepper.max_err,
    })
}

/// `w` at the end of the integration window, where the pulse has decayed to
/// `Omega0 exp(-t_end_factor)` and the inversion is frozen.
pub fn oracle_w_infinity(params: &ModelParams, cfg: &IntegratorConfig) -> Result<f64> {
    if params.omega0 == 0.0 {
        return Ok(-1.0);
    }
    let t_end = cfg.t_end_factor * params.t_width;
    let traj = integrate_bloch(params, cfg, &[t_end])?;
    Ok(traj.states[0].w)
}

/// One-sided cusp data `(w, w', w'')` computed from a state at `t = 0`
/// through the Bloch equations themselves; `side < 0` uses the left-sided
/// envelope slope.
pub fn cusp_from_state(params: &ModelParams, state: &BlochVector, side: i8) -> (f64, f64, f64) {
    let om = params.omega0;
    let om_dot = if side < 0 {
        om / params.t_width
    } else {
        -om / params.t_width
    };
    let vdot = params.delta * state.u - params.gamma_deph * state.v - om * state.w;
    let wdot = om * state.v;
    let wddot = om_dot * state.v + om * vdot;
    (state.w, wdot, wddot)
}
