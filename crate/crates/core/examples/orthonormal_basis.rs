//! Builds an orthonormal basis and prints its Gram matrix under the weight.

use heun::oracle::{weighted_inner_product, QuadratureConfig};
use heun::{orthonormal_basis, ClassId, HeunParameters, SolverOptions};

fn main() -> heun::Result<()> {
    let params = HeunParameters::new(1.0, 2.0, 1.5, 1.5, 1.0, 2.0)?;
    let basis = orthonormal_basis(&params, ClassId::I, -80.0, 10.0, 5, &SolverOptions::default())?;
    println!("eigenvalues: {:?}", basis.eigenvalues());

    let quad = QuadratureConfig::default();
    for n in 0..basis.len() {
        let row: Vec<String> = (0..basis.len())
            .map(|m| {
                let f = |x: f64| basis.eval(n, x).unwrap_or(f64::NAN);
                let g = |x: f64| basis.eval(m, x).unwrap_or(f64::NAN);
                let v = weighted_inner_product(&params, &basis.class, f, g, &quad).map(|r| r.value).unwrap_or(f64::NAN);
                format!("{v:+.2e}")
            })
            .collect();
        println!("{}", row.join("  "));
    }
    Ok(())
}
