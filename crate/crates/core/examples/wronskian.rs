//! The Wronskian of the two endpoint solutions times p is constant in x,
//! and it changes sign as λ crosses an eigenvalue.

use heun::{class_exponents, mutual_region, wronskian, ClassId, HeunParameters, SeriesOptions};

fn main() -> heun::Result<()> {
    let params = HeunParameters::new(1.0, 2.0, 1.5, 1.5, 1.0, 2.0)?;
    let class = class_exponents(&params, ClassId::I);
    let region = mutual_region(&params)?;
    let opts = SeriesOptions::default();

    println!("W p across the mutual region at lambda = -7:");
    for i in 0..=4 {
        let x = region.lo + (region.hi - region.lo) * i as f64 / 4.0;
        let s = wronskian(&params, &class, -7.0, x, &opts)?;
        println!("  x = {x:.3}  W = {:+.12e}  W p = {:+.15e}", s.w, s.wp);
    }

    println!("W p at x* as a function of lambda:");
    for lambda in [-12.0, -11.0, -10.5, -10.0, -9.0] {
        let s = wronskian(&params, &class, lambda, region.recommended_point, &opts)?;
        println!("  lambda = {lambda:+.1}  W p = {:+.6e}  d(W p)/dlambda = {:+.6e}", s.wp, s.dwp_dlambda);
    }
    Ok(())
}
