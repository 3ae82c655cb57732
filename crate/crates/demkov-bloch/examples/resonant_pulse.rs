//! On-resonance dynamics. At delta = 0 the inversion closes into a
//! second-order (Bessel) problem; gamma = 1/2 is the special point where the
//! two Bessel orders collapse and the second-kind solution takes over.

use demkov_bloch::demkov::reduce;
use demkov_bloch::{ModelParams, PrecisionPolicy, ResonantSolution};

fn main() -> demkov_bloch::Result<()> {
    let policy = PrecisionPolicy::default();
    for &gamma in &[0.0, 0.1, 0.5] {
        let params = ModelParams::from_reduced(gamma, 0.0, 5.0)?;
        let sol = ResonantSolution::new(&reduce(&params), &policy)?;
        println!("gamma = {gamma}: w(+inf) = {:.15}", sol.w_infinity());
        for &t in &[-2.0, -1.0, 0.0, 1.0, 2.0, 4.0] {
            let (w, wdot, _) = sol.w_derivs(t, &policy)?;
            let v = wdot / params.rabi(t);
            println!("  t = {t:>5}: w = {w:>19.15}  v = {v:>19.15}  (u = 0)");
        }
    }
    Ok(())
}
