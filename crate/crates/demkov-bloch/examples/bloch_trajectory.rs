//! Sample the full analytic Bloch trajectory for a strong detuned pulse and
//! print it as CSV (`cargo run --example bloch_trajectory > traj.csv`).

use demkov_bloch::{DemkovSolution, ModelParams, PrecisionPolicy};

fn main() -> demkov_bloch::Result<()> {
    // Reduced units (pulse width T = 1): gamma = 0.1, delta = 1.5, omega = 25.
    let params = ModelParams::from_reduced(0.1, 1.5, 25.0)?;
    let sol = DemkovSolution::new(params, PrecisionPolicy::default())?;

    let ts = sol.time_series(-5.0, 5.0, 1001)?;
    println!("t,u,v,w");
    for (t, s) in ts.times.iter().zip(&ts.states) {
        println!("{t:.16e},{:.16e},{:.16e},{:.16e}", s.u, s.v, s.w);
    }
    eprintln!(
        "route: {:?}, w(+inf) = {:.12}, p = {:.12}",
        sol.route(),
        sol.w_infinity(),
        sol.transition_probability()
    );
    Ok(())
}
