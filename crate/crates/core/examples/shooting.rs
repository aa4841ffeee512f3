//! Eigenvalues from direct integration of the ODE, matched at an interior
//! point, against the Wronskian roots.

use heun::oracle::{shooting_eigenvalues, ShootingConfig};
use heun::{find_eigenvalues, ClassId, HeunParameters, SolverOptions};

fn main() -> heun::Result<()> {
    for (name, params) in [
        ("a = 2", HeunParameters::new(1.0, 2.0, 1.5, 1.5, 1.0, 2.0)?),
        ("a = -0.5", HeunParameters::new(1.0, 2.0, 1.5, 1.5, 1.0, -0.5)?),
    ] {
        let (lo, hi) = (-40.0, 40.0);
        let mut shot = shooting_eigenvalues(&params, ClassId::I, lo, hi, 200, &ShootingConfig::default())?;
        let series = find_eigenvalues(&params, ClassId::I, lo, hi, usize::MAX, &SolverOptions::default())?;
        let mut wr: Vec<f64> = series.iter().map(|s| s.lambda).collect();
        wr.sort_by(f64::total_cmp);
        shot.sort_by(f64::total_cmp);
        println!("{name}:");
        for (a, b) in wr.iter().zip(&shot) {
            println!("  wronskian {a:+.12}  shooting {b:+.12}  rel diff {:.1e}", ((a - b) / a).abs());
        }
    }
    Ok(())
}
