//! Validate the closed form against the built-in adaptive Runge-Kutta
//! integration of the Bloch system, reporting the sup-norm disagreement.

use demkov_bloch::{
    integrate_bloch, DemkovSolution, IntegratorConfig, ModelParams, PrecisionPolicy,
};

fn main() -> demkov_bloch::Result<()> {
    let params = ModelParams::from_reduced(0.1, 1.5, 25.0)?;
    let sol = DemkovSolution::new(params, PrecisionPolicy::default())?;

    let times: Vec<f64> = (0..=400).map(|i| -10.0 + 0.05 * i as f64).collect();
    let cfg = IntegratorConfig::default();
    let traj = integrate_bloch(&params, &cfg, &times)?;

    let mut sup = 0.0f64;
    for (t, state) in times.iter().zip(&traj.states) {
        sup = sup.max((sol.w(*t)? - state.w).abs());
    }
    println!("integrator steps:        {}", traj.step_count);
    println!("max est. local error:    {:.3e}", traj.max_est_local_error);
    println!("sup |w_exact - w_ode|:   {sup:.3e}");
    println!(
        "w(+inf): exact {:.15}, integrated {:.15}",
        sol.w_infinity(),
        demkov_bloch::oracle_w_infinity(&params, &cfg)?
    );
    Ok(())
}
