//! With ε = 0 and λ = αβa the Heun equation collapses to the hypergeometric
//! one. For α = -2, β = 3, γ = 1 the regular solution at the origin is the
//! polynomial 1 - 6x + 6x², so λ = -12 must come out as an eigenvalue.

use heun::{find_eigenvalues, ClassId, HeunParameters, SolverOptions};

fn main() -> heun::Result<()> {
    let params = HeunParameters::new(-2.0, 3.0, 1.0, 1.0, 0.0, 2.0)?;
    let sols = find_eigenvalues(&params, ClassId::I, -20.0, 0.0, 8, &SolverOptions::default())?;
    let root = sols.iter().find(|s| (s.lambda + 12.0).abs() < 1e-6).expect("lambda = -12 in window");

    println!("lambda = {:.15}", root.lambda);
    println!("leading coefficients: {:?}", &root.series0.coeffs()[..5]);
    println!("A = {:.15}  I = {:.15}", root.a_coeff, root.norm);
    for x in [0.1, 0.25, 0.5, 0.9] {
        let exact = 1.0 - 6.0 * x + 6.0 * x * x;
        println!("H({x}) = {:+.15}  polynomial {:+.15}", root.eval(x)?, exact);
    }
    Ok(())
}
