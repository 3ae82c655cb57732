//! Direct use of the special-function layer: the 1F2 series deep in the
//! cancellation regime, its large-argument expansion, and the Bessel
//! reduction of 0F1.

use num_complex::Complex64;

use demkov_bloch::specialfn::{
    bessel_j, complex_gamma, ghf_1f2, ghf_1f2_asymptotic, hyp0f1, GhfParams,
};
use demkov_bloch::PrecisionPolicy;

fn main() -> demkov_bloch::Result<()> {
    let c = Complex64::new;
    let policy = PrecisionPolicy::default();
    let p = GhfParams::new(c(0.6, 0.0), c(0.6, 1.5), c(0.6, -1.5))?;

    // Alternating terms peak near exp(2 sqrt(625)) = 5e21 while the sum is
    // of order 1e-2; the evaluator raises the working precision to cope.
    let z = c(-625.0, 0.0);
    let series = ghf_1f2(&p, z, &policy)?;
    println!(
        "series     1F2(0.6; 0.6+-1.5i; -625) = {:.15e} (est rel err {:.1e})",
        series.value.re, series.est_rel_error
    );

    let mut loose = policy.clone();
    loose.z_switch = 500.0;
    let asym = ghf_1f2_asymptotic(&p, z, &loose)?;
    println!(
        "asymptotic same quantity              = {:.15e} (est rel err {:.1e})",
        asym.value.re, asym.est_rel_error
    );

    // 0F1(; b; -x^2/4) = Gamma(b) (x/2)^(1-b) J_(b-1)(x)
    let (b, x) = (1.6, 10.0);
    let lhs = hyp0f1(b, -x * x / 4.0, &policy)?.value.re;
    let rhs = complex_gamma(c(b, 0.0))?.re * (x / 2.0f64).powf(1.0 - b)
        * bessel_j(b - 1.0, x, &policy)?;
    println!("0F1 vs Bessel: {lhs:.15e} vs {rhs:.15e}");
    Ok(())
}
