//! Eigenvalue search for every class of one parameter set.

use heun::{existence_ok, find_eigenvalues, ClassId, HeunParameters, SolverOptions};

fn main() -> heun::Result<()> {
    let params = HeunParameters::new(1.0, 2.0, 1.5, 1.5, 1.0, 2.0)?;
    for id in ClassId::ALL {
        if !existence_ok(&params, id) {
            println!("class {id}: existence conditions fail");
            continue;
        }
        let sols = find_eigenvalues(&params, id, -120.0, 20.0, 6, &SolverOptions::default())?;
        println!("class {id}:");
        for s in &sols {
            println!("  n = {}  lambda = {:+.12}  A = {:+.6}  |W| = {:.1e}", s.index, s.lambda, s.a_coeff, s.residual);
        }
    }

    // a on the other side of the interval flips the direction of the spectrum
    let left = HeunParameters::new(1.0, 2.0, 1.5, 1.5, 1.0, -0.5)?;
    let sols = find_eigenvalues(&left, ClassId::I, -20.0, 200.0, 5, &SolverOptions::default())?;
    println!("a = -0.5, class I:");
    for s in &sols {
        println!("  n = {}  lambda = {:+.12}", s.index, s.lambda);
    }
    Ok(())
}
