//! Class IV functions carry the non-analytic factor x^(1-γ)(1-x)^(1-δ).
//! For γ = δ = 3/2 and λ = 5/2 the Heun function is exactly that factor,
//! and its norm is π.

use heun::oracle::{verify_basis, QuadratureConfig, ShootingConfig, VerificationThresholds};
use heun::{orthonormal_basis, ClassId, HeunParameters, SolverOptions};

fn main() -> heun::Result<()> {
    let params = HeunParameters::new(1.0, 2.0, 1.5, 1.5, 1.0, 2.0)?;
    let basis = orthonormal_basis(&params, ClassId::IV, -15.0, 10.0, 4, &SolverOptions::default())?;
    // ascending order puts the nodeless eigenfunction at the top of the window
    let ground = basis.solutions.last().expect("window holds eigenvalues");
    println!(
        "n = {}  lambda = {:.15}  I = {:.15}  (pi = {:.15})",
        ground.index,
        ground.lambda,
        ground.norm,
        std::f64::consts::PI
    );

    let report = verify_basis(
        &basis,
        &QuadratureConfig::default(),
        &ShootingConfig::default(),
        &VerificationThresholds::default(),
    );
    for c in &report.norms {
        println!("n = {}  lambda = {:+.10}  rel err vs quadrature {:.1e}", c.n, c.lambda, c.rel_error);
    }
    println!("max |offdiag| = {:.1e}, max |diag - 1| = {:.1e}", report.max_offdiag, report.max_diag_deviation);
    println!("passed: {}", report.passed);
    Ok(())
}
