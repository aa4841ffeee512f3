//! Local Frobenius solutions about x = 0 and x = 1, their truncation orders
//! and the bundle of derivatives each evaluation returns.

use heun::{build_series, class_exponents, mutual_region, Center, ClassId, HeunParameters, SeriesOptions};

fn main() -> heun::Result<()> {
    let params = HeunParameters::new(1.0, 2.0, 1.5, 1.5, 1.0, 2.0)?;
    let region = mutual_region(&params)?;
    println!("mutual region [{:.3}, {:.3}], recommended x* = {:.3}", region.lo, region.hi, region.recommended_point);

    let lambda = -5.0;
    for id in [ClassId::I, ClassId::IV] {
        let class = class_exponents(&params, id);
        for center in [Center::X0, Center::X1] {
            let s = build_series(&params, &class, center, lambda, &SeriesOptions::default())?;
            let e = s.eval(region.recommended_point)?;
            println!(
                "class {id:<3} {center:?}: sigma = {:+.2}, N = {:3}, y = {:+.12e}, y' = {:+.12e}, dy/dl = {:+.12e}",
                s.exponent(),
                s.truncation_order(),
                e.y,
                e.dy_dx,
                e.dy_dlambda,
            );
        }
    }

    // the truncation order follows how far the series has to reach
    let class = class_exponents(&params, ClassId::I);
    for reach in [0.2, 0.5, 0.8, 0.95] {
        let opts = SeriesOptions { reach: Some(reach), ..SeriesOptions::default() };
        let s = build_series(&params, &class, Center::X0, lambda, &opts)?;
        println!("reach {reach:.2}: {} terms", s.truncation_order());
    }
    Ok(())
}
