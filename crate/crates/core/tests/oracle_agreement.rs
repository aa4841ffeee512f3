use heun::oracle::{shoot, shooting_eigenvalues, ShootingConfig};
use heun::{class_exponents, existence_ok, find_eigenvalues, ClassId, HeunParameters, SolverOptions};

fn families() -> [(HeunParameters, f64, f64); 3] {
    [
        (HeunParameters::new(1.0, 2.0, 1.5, 1.5, 1.0, 2.0).unwrap(), -60.0, 10.0),
        (HeunParameters::new(1.0, 2.0, 1.5, 1.5, 1.0, -0.5).unwrap(), -10.0, 60.0),
        (HeunParameters::new(0.25, 0.75, 0.8, 1.3, -0.1, 3.5).unwrap(), -40.0, 5.0),
    ]
}

#[test]
fn shooting_finds_the_same_spectrum() {
    for (params, lo, hi) in families() {
        for id in ClassId::ALL {
            if !existence_ok(&params, id) {
                continue;
            }
            let mut series: Vec<f64> = find_eigenvalues(&params, id, lo, hi, usize::MAX, &SolverOptions::default())
                .unwrap()
                .iter()
                .map(|s| s.lambda)
                .collect();
            series.sort_by(f64::total_cmp);
            let mut shot = shooting_eigenvalues(&params, id, lo, hi, 400, &ShootingConfig::default()).unwrap();
            shot.sort_by(f64::total_cmp);
            assert!(!series.is_empty());
            assert_eq!(series.len(), shot.len(), "a={} {id}: {series:?} vs {shot:?}", params.a);
            for (a, b) in series.iter().zip(&shot) {
                assert!((a - b).abs() <= 1e-8 * a.abs().max(1.0), "a={} {id}: {a} vs {b}", params.a);
            }
        }
    }
}

#[test]
fn matching_is_independent_of_the_matching_point() {
    let (params, lo, hi) = families()[0];
    let sols = find_eigenvalues(&params, ClassId::I, lo, hi, 3, &SolverOptions::default()).unwrap();
    let class = class_exponents(&params, ClassId::I);
    for s in &sols {
        for m in [0.3, 0.5, 0.7] {
            let cfg = ShootingConfig { matching_point: Some(m), ..ShootingConfig::default() };
            let shot = shoot(&params, &class, s.lambda, &cfg).unwrap();
            assert!(shot.relative_mismatch() < 1e-8, "lambda={} m={m}", s.lambda);
        }
        let off = shoot(&params, &class, s.lambda + 0.1, &ShootingConfig::default()).unwrap();
        assert!(off.relative_mismatch() > 1e-4);
    }
}
