//! Normalization integrals read off from the series data at the eigenvalue,
//! compared with adaptive quadrature of the weighted square. The evaluation
//! counters show what each route costs.

use heun::counters;
use heun::oracle::{weighted_inner_product, QuadratureConfig};
use heun::{find_eigenvalues, normalization_integral, ClassId, HeunParameters, SolverOptions};

fn main() -> heun::Result<()> {
    let params = HeunParameters::new(1.0, 2.0, 1.5, 1.5, 1.0, 2.0)?;
    let opts = SolverOptions::default();
    let sols = find_eigenvalues(&params, ClassId::I, -25.0, 10.0, 4, &opts)?;
    let quad = QuadratureConfig { abs_tol: 0.0, rel_tol: 1e-13, ..QuadratureConfig::default() };

    for s in &sols {
        let before = counters::snapshot();
        let closed = normalization_integral(&params, &s.class, s.lambda, 0.5, &opts)?;
        let closed_cost = counters::snapshot() - before;

        let before = counters::snapshot();
        let h = |x: f64| s.eval(x).unwrap_or(f64::NAN);
        let q = weighted_inner_product(&params, &s.class, h, h, &quad)?;
        let quad_cost = counters::snapshot() - before;

        println!(
            "n = {}  lambda = {:+.10}  I = {:.15e}  quadrature = {:.15e}  rel diff = {:.1e}",
            s.index,
            s.lambda,
            closed,
            q.value,
            ((closed - q.value) / q.value).abs()
        );
        println!("       cost: {} series pairs vs {} integrand evaluations", closed_cost.pairs, quad_cost.integrand);
    }
    Ok(())
}
