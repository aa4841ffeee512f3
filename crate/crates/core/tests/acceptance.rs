//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::time::Instant;

use heun::counters;
use heun::oracle::quadrature::integrate;
use heun::oracle::{shooting_eigenvalues, weighted_inner_product, QuadratureConfig, ShootingConfig};
use heun::{
    build_series, class_exponents, find_eigenvalues, mutual_region, normalization_integral, orthonormal_basis,
    wronskian, Center, ClassId, HeunParameters, SeriesOptions, SolverOptions, SpectralBasis,
};
use rand::{rngs::StdRng, Rng, SeedableRng};

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self { passed, detail: detail.into() }
    }

    fn fail(detail: impl std::fmt::Display) -> Self {
        Self { passed: false, detail: format!("error: {detail}") }
    }
}

fn p1() -> HeunParameters {
    HeunParameters::new(1.0, 2.0, 1.5, 1.5, 1.0, 2.0).unwrap()
}

fn p2() -> HeunParameters {
    HeunParameters::new(-2.0, 3.0, 1.0, 1.0, 0.0, 2.0).unwrap()
}

/// Range of λ for the random samples.
const LAMBDA_RANGE: (f64, f64) = (-80.0, 10.0);

/// Windows holding exactly the four eigenvalues next to the upper end of the
/// spectrum, i.e. the eigenfunctions with the fewest zeros.
fn p1_window(id: ClassId) -> (f64, f64) {
    match id {
        ClassId::IV => (-15.0, 10.0),
        _ => (-25.0, 10.0),
    }
}

fn p1_basis(id: ClassId) -> heun::Result<SpectralBasis> {
    let (lo, hi) = p1_window(id);
    orthonormal_basis(&p1(), id, lo, hi, 4, &SolverOptions::default())
}

fn quad(rel_tol: f64) -> QuadratureConfig {
    QuadratureConfig { abs_tol: 0.0, rel_tol, max_segments: 20_000, ..QuadratureConfig::default() }
}

fn hypergeometric_regression() -> Outcome {
    let start = Instant::now();
    let sols = match find_eigenvalues(&p2(), ClassId::I, -20.0, 0.0, usize::MAX, &SolverOptions::default()) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(e),
    };
    let elapsed = start.elapsed().as_secs_f64();
    let Some(root) = sols.iter().min_by(|a, b| (a.lambda + 12.0).abs().total_cmp(&(b.lambda + 12.0).abs())) else {
        return Outcome::new(false, "no eigenvalue found");
    };
    let expected = [1.0, -6.0, 6.0];
    let coeff_err = root
        .series0
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, &c)| (c - expected.get(k).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max);
    let lambda_err = (root.lambda + 12.0).abs();
    Outcome::new(
        lambda_err <= 1e-10 && coeff_err <= 1e-10 && elapsed < 1.0,
        format!("|lambda + 12| = {lambda_err:.1e}, max coefficient error {coeff_err:.1e}, {elapsed:.3} s"),
    )
}

/// Closed-form norms of the first four eigenfunctions against quadrature.
fn norms_vs_quadrature(id: ClassId, rel_tol: f64) -> Outcome {
    let start = Instant::now();
    let basis = match p1_basis(id) {
        Ok(b) => b,
        Err(e) => return Outcome::fail(e),
    };
    if basis.len() != 4 {
        return Outcome::new(false, format!("found {} eigenvalues", basis.len()));
    }
    let mut worst: f64 = 0.0;
    for s in &basis.solutions {
        let h = |x: f64| s.eval(x).unwrap_or(f64::NAN);
        match weighted_inner_product(&basis.params, &basis.class, h, h, &quad(rel_tol)) {
            Ok(q) => worst = worst.max(((s.norm - q.value) / q.value).abs()),
            Err(e) => return Outcome::fail(e),
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    Outcome::new(
        worst <= 1e-7 && elapsed < 10.0,
        format!("lambda = {:?}, max rel error {worst:.1e}, {elapsed:.2} s", rounded(&basis.eigenvalues())),
    )
}

fn rounded(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| (x * 1e6).round() / 1e6).collect()
}

fn invariance(id: ClassId) -> Outcome {
    let params = p1();
    let basis = match p1_basis(id) {
        Ok(b) => b,
        Err(e) => return Outcome::fail(e),
    };
    let region = mutual_region(&params).unwrap();
    let w = region.hi - region.lo;
    let points = [region.lo + 0.1 * w, region.recommended_point, region.hi - 0.1 * w];
    let mut worst: f64 = 0.0;
    for s in &basis.solutions {
        let mut values = Vec::new();
        for &x in &points {
            match normalization_integral(&params, &basis.class, s.lambda, x, &SolverOptions::default()) {
                Ok(v) => values.push(v),
                Err(e) => return Outcome::fail(e),
            }
        }
        let max = values.iter().copied().fold(f64::MIN, f64::max);
        let min = values.iter().copied().fold(f64::MAX, f64::min);
        worst = worst.max((max - min) / values[1].abs());
    }
    Outcome::new(
        worst <= 1e-8,
        format!("{} eigenvalues, x = {points:.3?}, max relative spread {worst:.1e}", basis.len()),
    )
}

fn wronskian_structure(id: ClassId) -> Outcome {
    let params = p1();
    let class = class_exponents(&params, id);
    let region = mutual_region(&params).unwrap();
    let mut rng = StdRng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let lambda = rng.gen_range(LAMBDA_RANGE.0..LAMBDA_RANGE.1);
        let x1 = rng.gen_range(region.lo..region.hi);
        let x2 = rng.gen_range(region.lo..region.hi);
        let opts = SeriesOptions::default();
        match (wronskian(&params, &class, lambda, x1, &opts), wronskian(&params, &class, lambda, x2, &opts)) {
            (Ok(a), Ok(b)) => worst = worst.max(((a.wp - b.wp) / a.wp).abs()),
            (Err(e), _) | (_, Err(e)) => return Outcome::fail(e),
        }
    }
    Outcome::new(worst <= 1e-9, format!("20 samples, max relative variation of W p {worst:.1e}"))
}

fn gram(id: ClassId, rel_tol: f64) -> Outcome {
    let basis = match p1_basis(id) {
        Ok(b) => b,
        Err(e) => return Outcome::fail(e),
    };
    let mut offdiag: f64 = 0.0;
    let mut diag: f64 = 0.0;
    for n in 0..basis.len() {
        for m in n..basis.len() {
            let f = |x: f64| basis.eval(n, x).unwrap_or(f64::NAN);
            let g = |x: f64| basis.eval(m, x).unwrap_or(f64::NAN);
            let v = match weighted_inner_product(&basis.params, &basis.class, f, g, &quad(rel_tol)) {
                Ok(r) => r.value,
                Err(e) => return Outcome::fail(e),
            };
            if n == m {
                diag = diag.max((v - 1.0).abs());
            } else {
                offdiag = offdiag.max(v.abs());
            }
        }
    }
    Outcome::new(
        basis.len() == 4 && offdiag <= 1e-8 && diag <= 1e-7,
        format!("{}x{} Gram matrix, max |offdiag| {offdiag:.1e}, max |diag - 1| {diag:.1e}", basis.len(), basis.len()),
    )
}

fn class_iv() -> Outcome {
    let params = p1();
    assert!(params.gamma == 1.5 && params.delta == 1.5);
    let mut parts = Vec::new();
    let mut passed = true;
    // tight quadrature first; relax only if the desingularized rule cannot deliver it
    for (name, run) in [
        ("norms", &(|tol| norms_vs_quadrature(ClassId::IV, tol)) as &dyn Fn(f64) -> Outcome),
        ("gram", &(|tol| gram(ClassId::IV, tol)) as &dyn Fn(f64) -> Outcome),
    ] {
        let mut o = run(1e-10);
        let mut note = "";
        if !o.passed && o.detail.starts_with("error: quadrature") {
            o = run(1e-6);
            note = " (quadrature tol relaxed to 1e-6)";
        }
        passed &= o.passed;
        parts.push(format!("{name}: {}{note}", o.detail));
    }
    for (name, o) in [("invariance", invariance(ClassId::IV)), ("wronskian", wronskian_structure(ClassId::IV))] {
        passed &= o.passed;
        parts.push(format!("{name}: {}", o.detail));
    }
    Outcome::new(passed, parts.join("; "))
}

fn derivatives() -> Outcome {
    let params = p1();
    let region = mutual_region(&params).unwrap();
    let opts = SeriesOptions::default();
    let h = 1e-6;
    let mut rng = StdRng::seed_from_u64(7);
    let rel = |a: f64, fd: f64| ((a - fd) / a).abs();
    let (mut wy, mut wyx, mut ww) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..10 {
        let id = ClassId::ALL[i % 4];
        let class = class_exponents(&params, id);
        let lambda = rng.gen_range(LAMBDA_RANGE.0..LAMBDA_RANGE.1);
        let x = rng.gen_range(region.lo..region.hi);
        for center in [Center::X0, Center::X1] {
            let bundle = |l: f64| build_series(&params, &class, center, l, &opts).and_then(|s| s.eval(x));
            let (Ok(b), Ok(up), Ok(dn)) = (bundle(lambda), bundle(lambda + h), bundle(lambda - h)) else {
                return Outcome::new(false, "series evaluation failed");
            };
            wy = wy.max(rel(b.dy_dlambda, (up.y - dn.y) / (2.0 * h)));
            wyx = wyx.max(rel(b.d2y_dlambda_dx, (up.dy_dx - dn.dy_dx) / (2.0 * h)));
        }
        let wr = |l: f64| wronskian(&params, &class, l, x, &opts);
        let (Ok(s), Ok(up), Ok(dn)) = (wr(lambda), wr(lambda + h), wr(lambda - h)) else {
            return Outcome::new(false, "wronskian evaluation failed");
        };
        ww = ww.max(rel(s.dw_dlambda, (up.w - dn.w) / (2.0 * h)));
    }
    Outcome::new(
        wy <= 1e-6 && wyx <= 1e-6 && ww <= 1e-6,
        format!("10 points, max rel error dy/dl {wy:.1e}, d2y/dldx {wyx:.1e}, dW/dl {ww:.1e}"),
    )
}

fn shooting() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for id in [ClassId::I, ClassId::IV] {
        let params = p1();
        let (lo, hi) = LAMBDA_RANGE;
        let series = match find_eigenvalues(&params, id, lo, hi, usize::MAX, &SolverOptions::default()) {
            Ok(s) => s,
            Err(e) => return Outcome::fail(e),
        };
        let mut wr: Vec<f64> = series.iter().map(|s| s.lambda).collect();
        wr.sort_by(f64::total_cmp);
        let mut shot = match shooting_eigenvalues(&params, id, lo, hi, 200, &ShootingConfig::default()) {
            Ok(s) => s,
            Err(e) => return Outcome::fail(e),
        };
        shot.sort_by(f64::total_cmp);
        if wr.len() != shot.len() {
            return Outcome::new(false, format!("class {id}: {} vs {} eigenvalues", wr.len(), shot.len()));
        }
        for (a, b) in wr.iter().zip(&shot) {
            worst = worst.max(((a - b) / a).abs());
        }
        count += wr.len();
    }
    Outcome::new(worst <= 1e-6, format!("{count} eigenvalues (classes I and IV), max rel difference {worst:.1e}"))
}

fn oracle_self_check() -> Outcome {
    // x = sin²θ turns the integrand into a smooth one on [0, π/2]
    let r = integrate(
        |t: f64| {
            let (s, c) = t.sin_cos();
            2.0 * s * s * c * c
        },
        0.0,
        PI / 2.0,
        1e-14,
        1e-14,
        1000,
    );
    // and the same through the weighted inner product with the power substitution
    let params = p1();
    let class = class_exponents(&params, ClassId::I);
    let weighted = weighted_inner_product(&params, &class, |_| 1.0, |_| 1.0, &quad(1e-12));
    let e1 = (r.value - PI / 8.0).abs();
    let e2 = weighted.map(|w| (w.value - PI / 8.0).abs()).unwrap_or(f64::INFINITY);
    Outcome::new(e1 <= 1e-10 && e2 <= 1e-10, format!("errors {e1:.1e} (plain), {e2:.1e} (desingularized)"))
}

fn efficiency() -> Outcome {
    let params = p1();
    let opts = SolverOptions::default();
    let basis = match p1_basis(ClassId::I) {
        Ok(b) => b,
        Err(e) => return Outcome::fail(e),
    };
    let region = mutual_region(&params).unwrap();
    let mut lines = Vec::new();
    let mut passed = true;
    for s in &basis.solutions {
        let before = counters::snapshot();
        let closed = match normalization_integral(&params, &basis.class, s.lambda, region.recommended_point, &opts) {
            Ok(v) => v,
            Err(e) => return Outcome::fail(e),
        };
        let closed_cost = counters::snapshot() - before;

        // quadrature to the accuracy the closed form achieves against it
        let before = counters::snapshot();
        let h = |x: f64| s.eval(x).unwrap_or(f64::NAN);
        let q = match weighted_inner_product(&params, &basis.class, h, h, &quad(1e-13)) {
            Ok(q) => q,
            Err(e) => return Outcome::fail(e),
        };
        let quad_cost = counters::snapshot() - before;

        // for context: adaptive Gauss-Kronrod without the endpoint substitution
        let plain_evals = std::cell::Cell::new(0usize);
        let integrand = |x: f64| {
            plain_evals.set(plain_evals.get() + 1);
            if x > 0.0 && x < 1.0 {
                params.weight(x).unwrap() * h(x) * h(x)
            } else {
                0.0
            }
        };
        let plain = integrate(integrand, 0.0, 1.0, 0.0, 1e-13, 20_000);

        let rel = ((closed - q.value) / q.value).abs();
        let ok = closed_cost.pairs <= 3 && quad_cost.integrand >= 1000;
        passed &= ok;
        lines.push(format!(
            "n={}: {} pairs ({} series) vs {} integrand evals (rel diff {rel:.0e}; plain GK {} evals{})",
            s.index,
            closed_cost.pairs,
            closed_cost.series,
            quad_cost.integrand,
            plain_evals.get(),
            if plain.converged { "" } else { ", not converged" }
        ));
    }
    Outcome::new(passed, lines.join("; "))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("hypergeometric regression", hypergeometric_regression),
        ("closed-form norms vs quadrature", || norms_vs_quadrature(ClassId::I, 1e-10)),
        ("x-invariance of the closed form", || invariance(ClassId::I)),
        ("W p constant in x", || wronskian_structure(ClassId::I)),
        ("orthonormality (Gram matrix)", || gram(ClassId::I, 1e-10)),
        ("class IV repeat of 2-5", class_iv),
        ("lambda derivatives vs central differences", derivatives),
        ("shooting eigenvalues", shooting),
        ("quadrature self-check", oracle_self_check),
        ("closed form vs quadrature cost", efficiency),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.passed {
            failed += 1;
        }
        println!("criterion {:>2} {} {name}: {}", i + 1, if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
