//! Contour-plot data: w(+inf) over a (delta, omega) grid at fixed dephasing,
//! evaluated cell-by-cell in parallel.

use rayon::prelude::*;

use demkov_bloch::{DemkovSolution, ModelParams, PrecisionPolicy};

fn main() {
    let gamma = 0.1;
    let deltas: Vec<f64> = (0..=20).map(|i| 0.1 + 0.2 * i as f64).collect();
    let omegas: Vec<f64> = (0..=20).map(|i| 0.25 + 0.5 * i as f64).collect();

    let cells: Vec<(f64, f64)> = deltas
        .iter()
        .flat_map(|&d| omegas.iter().map(move |&om| (d, om)))
        .collect();
    let policy = PrecisionPolicy::default();
    let values: Vec<f64> = cells
        .par_iter()
        .map(|&(d, om)| {
            let params = ModelParams::from_reduced(gamma, d, om).expect("valid grid cell");
            DemkovSolution::new(params, policy.clone())
                .expect("solvable grid cell")
                .w_infinity()
        })
        .collect();

    println!("delta,omega,w_infinity");
    for ((d, om), w) in cells.iter().zip(&values) {
        println!("{d:.16e},{om:.16e},{w:.16e}");
    }
}
