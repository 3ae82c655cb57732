//! Final inversion w(+inf) and transition probability as a function of the
//! peak coupling, at fixed detuning and dephasing.

use demkov_bloch::{DemkovSolution, ModelParams, PrecisionPolicy};

fn main() -> demkov_bloch::Result<()> {
    let policy = PrecisionPolicy::default();
    println!("{:>8} {:>22} {:>22} {:>12}", "omega", "w_infinity", "p", "est_err");
    for i in 0..=40 {
        let omega = 0.25 * i as f64;
        let params = ModelParams::from_reduced(0.1, 1.5, omega)?;
        let sol = DemkovSolution::new(params, policy.clone())?;
        println!(
            "{omega:>8.2} {:>22.15e} {:>22.15e} {:>12.2e}",
            sol.w_infinity(),
            sol.transition_probability(),
            sol.w_infinity_est_error()
        );
    }
    Ok(())
}
