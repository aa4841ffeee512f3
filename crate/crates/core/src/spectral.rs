//! Eigenvalues as Wronskian roots, the closed-form normalization integral
//! and the orthonormal basis built from them.
//!
//! The normalization integral of an eigenfunction follows from quantities
//! already produced by the root search:
//!
//! ```text
//! ∫₀¹ ω̃ H² dx = -κ · p̃(x) · ∂W/∂λ(λₙ, x) · y₀(λₙ, x) / y₁(λₙ, x)
//! ```
//!
//! for any `x` in the mutual region, where `κ` is
//! [`HeunParameters::orientation`] (`+1` for `a > 1`). The right-hand side
//! is x-independent; that invariance is checked on every evaluation.

use crate::counters;
use crate::error::{Error, Result};
use crate::frobenius::{build_series, mutual_region, Center, EvalBundle, FrobeniusSeries, MutualRegion, SeriesOptions};
use crate::params::{class_exponents, existence_ok, ClassId, FunctionClass, HeunParameters};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Relative step-size tolerance for eigenvalue refinement.
    pub tol: f64,
    /// Number of λ samples used to isolate sign changes.
    pub scan_points: usize,
    pub max_iterations: usize,
    /// Allowed relative spread of the continuation coefficient and of the
    /// normalization integral across the mutual region.
    pub invariance_tol: f64,
    pub series: SeriesOptions,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { tol: 1e-12, scan_points: 200, max_iterations: 200, invariance_tol: 1e-8, series: SeriesOptions::default() }
    }
}

/// `W = y₀ ∂ₓy₁ - y₁ ∂ₓy₀` and `W·p̃` with their λ-derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WronskianSample {
    pub lambda: f64,
    pub x: f64,
    pub w: f64,
    pub dw_dlambda: f64,
    pub wp: f64,
    pub dwp_dlambda: f64,
}

impl WronskianSample {
    fn assemble(params: &HeunParameters, lambda: f64, x: f64, b0: &EvalBundle, b1: &EvalBundle) -> Self {
        let w = b0.y * b1.dy_dx - b1.y * b0.dy_dx;
        let dw_dlambda = b0.dy_dlambda * b1.dy_dx + b0.y * b1.d2y_dlambda_dx
            - b1.dy_dlambda * b0.dy_dx
            - b1.y * b0.d2y_dlambda_dx;
        let p = params.p_factor_unchecked(x);
        Self { lambda, x, w, dw_dlambda, wp: w * p, dwp_dlambda: dw_dlambda * p }
    }
}

/// Evaluates both series at `x` and assembles the Wronskian.
pub(crate) fn sample_pair(
    s0: &FrobeniusSeries,
    s1: &FrobeniusSeries,
    x: f64,
) -> Result<(WronskianSample, EvalBundle, EvalBundle)> {
    let b0 = s0.eval(x)?;
    let b1 = s1.eval(x)?;
    counters::bump_pair();
    Ok((WronskianSample::assemble(s0.params(), s0.lambda(), x, &b0, &b1), b0, b1))
}

fn build_pair(
    params: &HeunParameters,
    class: &FunctionClass,
    lambda: f64,
    opts: &SeriesOptions,
) -> Result<(FrobeniusSeries, FrobeniusSeries)> {
    Ok((
        build_series(params, class, Center::X0, lambda, opts)?,
        build_series(params, class, Center::X1, lambda, opts)?,
    ))
}

pub fn wronskian(
    params: &HeunParameters,
    class: &FunctionClass,
    lambda: f64,
    x: f64,
    opts: &SeriesOptions,
) -> Result<WronskianSample> {
    mutual_region(params)?.check(x)?;
    let (s0, s1) = build_pair(params, class, lambda, opts)?;
    Ok(sample_pair(&s0, &s1, x)?.0)
}

/// Ratio `y₀/y₁` read off the `(y, y')` vectors, which are parallel at an
/// eigenvalue. Stays well conditioned where `y₁` itself has a node.
fn ratio(b0: &EvalBundle, b1: &EvalBundle) -> f64 {
    (b0.y * b1.y + b0.dy_dx * b1.dy_dx) / (b1.y * b1.y + b1.dy_dx * b1.dy_dx)
}

fn relative_spread(values: &[f64], reference: f64) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    (max - min) / reference.abs()
}

/// Three evaluation points used for the invariance checks.
fn check_points(region: &MutualRegion, first: f64) -> [f64; 3] {
    let x = region.recommended_point;
    let w = region.hi - region.lo;
    [first, (x - 0.2 * w).max(region.lo), (x + 0.2 * w).min(region.hi)]
}

/// Closed-form norm and continuation coefficient from one point.
fn closed_form_at(params: &HeunParameters, sample: &WronskianSample, b0: &EvalBundle, b1: &EvalBundle) -> (f64, f64) {
    let a_coeff = ratio(b0, b1);
    let p = params.p_factor_unchecked(sample.x);
    (-params.orientation() * p * sample.dw_dlambda * a_coeff, a_coeff)
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Normalization {
    value: f64,
    a_coeff: f64,
    residual: f64,
    relative_residual: f64,
}

fn normalize(
    s0: &FrobeniusSeries,
    s1: &FrobeniusSeries,
    region: &MutualRegion,
    x_eval: f64,
    invariance_tol: f64,
) -> Result<Normalization> {
    let params = s0.params();
    let points = check_points(region, x_eval);
    let mut norms = [0.0; 3];
    let mut coeffs = [0.0; 3];
    let mut first = None;
    for (i, &x) in points.iter().enumerate() {
        let (sample, b0, b1) = sample_pair(s0, s1, x)?;
        let (norm, a) = closed_form_at(params, &sample, &b0, &b1);
        norms[i] = norm;
        coeffs[i] = a;
        if i == 0 {
            first = Some((sample, b0, b1));
        }
    }
    let (sample, b0, b1) = first.expect("three check points");

    let a_spread = (coeffs[0] - coeffs[1]).abs() / coeffs[0].abs();
    if !(a_spread <= invariance_tol) || coeffs[0] == 0.0 {
        return Err(Error::InconsistentContinuation { spread: a_spread });
    }
    let gap = ((b0.y - coeffs[0] * b1.y).powi(2) + (b0.dy_dx - coeffs[0] * b1.dy_dx).powi(2)).sqrt();
    let scale = (b0.y.powi(2) + b0.dy_dx.powi(2)).sqrt();
    if !(gap <= 1e-9 * scale) {
        return Err(Error::InconsistentContinuation { spread: gap / scale });
    }

    let value = norms[0];
    if !(value > 0.0) {
        return Err(Error::NonPositiveNorm { value });
    }
    let spread = relative_spread(&norms, value);
    if !(spread <= invariance_tol) {
        return Err(Error::InvarianceViolation { spread });
    }
    let relative_residual = sample.w.abs() / (b0.y.hypot(b0.dy_dx) * b1.y.hypot(b1.dy_dx));
    Ok(Normalization { value, a_coeff: coeffs[0], residual: sample.w.abs(), relative_residual })
}

/// `A(λₙ) = y₀/y₁` at the recommended point, cross-checked at a second point.
pub fn continuation_coefficient(
    params: &HeunParameters,
    lambda_n: f64,
    series0: &FrobeniusSeries,
    series1: &FrobeniusSeries,
    invariance_tol: f64,
) -> Result<f64> {
    let region = mutual_region(params)?;
    if series0.lambda() != lambda_n || series1.lambda() != lambda_n {
        return Err(Error::InconsistentContinuation { spread: f64::INFINITY });
    }
    let [x0, x1, _] = check_points(&region, region.recommended_point);
    let (_, a0, b0) = sample_pair(series0, series1, x0)?;
    let (_, a1, b1) = sample_pair(series0, series1, x1)?;
    let r0 = ratio(&a0, &b0);
    let r1 = ratio(&a1, &b1);
    let spread = (r0 - r1).abs() / r0.abs();
    if !(spread <= invariance_tol) {
        return Err(Error::InconsistentContinuation { spread });
    }
    Ok(r0)
}

/// Closed-form normalization integral at an eigenvalue, evaluated at `x_eval`
/// and checked for x-invariance at two further points.
pub fn normalization_integral(
    params: &HeunParameters,
    class: &FunctionClass,
    lambda_n: f64,
    x_eval: f64,
    opts: &SolverOptions,
) -> Result<f64> {
    if !existence_ok(params, class.id) {
        return Err(Error::ExistenceViolated(class.id));
    }
    let region = mutual_region(params)?;
    region.check(x_eval)?;
    let (s0, s1) = build_pair(params, class, lambda_n, &opts.series)?;
    Ok(normalize(&s0, &s1, &region, x_eval, opts.invariance_tol)?.value)
}

/// One orthogonal Heun function.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSolution {
    pub index: usize,
    pub lambda: f64,
    /// Continuation coefficient: `Hₙ = A·y₁` near `x = 1`.
    pub a_coeff: f64,
    /// `∫₀¹ ω̃ Hₙ² dx`.
    pub norm: f64,
    pub series0: FrobeniusSeries,
    pub series1: FrobeniusSeries,
    pub class: FunctionClass,
    /// `|W(λₙ, x*)|`.
    pub residual: f64,
    /// `|W|` divided by the lengths of the `(y, y')` vectors of both series.
    pub relative_residual: f64,
    /// Where evaluation switches from the `y₀` to the `A·y₁` representation.
    pub switch_point: f64,
}

impl EigenSolution {
    /// `Hₙ(x)`, normalized so that `x^(-σ₀) Hₙ → 1` at the origin.
    pub fn eval(&self, x: f64) -> Result<f64> {
        eval_heun(self, x)
    }

    /// `hₙ(x) = Hₙ(x) / √Iₙ`.
    pub fn eval_normalized(&self, x: f64) -> Result<f64> {
        Ok(eval_heun(self, x)? / self.norm.sqrt())
    }
}

pub fn eval_heun(solution: &EigenSolution, x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain { x });
    }
    if x <= solution.switch_point {
        Ok(solution.series0.eval(x)?.y)
    } else {
        Ok(solution.a_coeff * solution.series1.eval(x)?.y)
    }
}

fn validate_problem(params: &HeunParameters, id: ClassId, lambda_lo: f64, lambda_hi: f64) -> Result<FunctionClass> {
    if !existence_ok(params, id) {
        return Err(Error::ExistenceViolated(id));
    }
    if !(lambda_lo.is_finite() && lambda_hi.is_finite() && lambda_lo < lambda_hi) {
        return Err(Error::InvalidWindow { lo: lambda_lo, hi: lambda_hi });
    }
    Ok(class_exponents(params, id))
}

/// Locates the eigenvalues in `[lambda_lo, lambda_hi]`.
///
/// `W·p̃` at the recommended point is scanned on a uniform grid; every sign
/// change is refined by Newton's method using `∂(W·p̃)/∂λ`, falling back to
/// bisection whenever a step would leave the bracket. Roots are returned in
/// ascending order, indexed from zero, and only the first `max_count` are
/// refined.
pub fn find_eigenvalues(
    params: &HeunParameters,
    id: ClassId,
    lambda_lo: f64,
    lambda_hi: f64,
    max_count: usize,
    opts: &SolverOptions,
) -> Result<Vec<EigenSolution>> {
    let class = validate_problem(params, id, lambda_lo, lambda_hi)?;
    if !(opts.tol > 0.0) {
        return Err(Error::NonPositiveTol(opts.tol));
    }
    let region = mutual_region(params)?;
    let x_star = region.recommended_point;
    let probe = |lambda: f64| -> Result<WronskianSample> {
        let (s0, s1) = build_pair(params, &class, lambda, &opts.series)?;
        Ok(sample_pair(&s0, &s1, x_star)?.0)
    };

    let n = opts.scan_points.max(2);
    let step = (lambda_hi - lambda_lo) / (n - 1) as f64;
    let grid: Vec<f64> = (0..n).map(|i| if i + 1 == n { lambda_hi } else { lambda_lo + step * i as f64 }).collect();

    // sign changes first, refinement only for the roots that are kept
    let mut roots: Vec<Root> = Vec::new();
    let mut prev = probe(grid[0])?;
    let mut skip_exact = false;
    for i in 0..n {
        if prev.wp == 0.0 && !skip_exact {
            roots.push(Root::Exact(grid[i]));
        }
        if i + 1 == n {
            break;
        }
        let next = probe(grid[i + 1])?;
        skip_exact = false;
        if prev.wp != 0.0 && next.wp != 0.0 && prev.wp.signum() != next.wp.signum() {
            roots.push(Root::Bracket(prev, next));
        } else if next.wp == 0.0 && prev.wp == 0.0 {
            skip_exact = true;
        }
        prev = next;
    }
    roots
        .into_iter()
        .take(max_count)
        .enumerate()
        .map(|(index, root)| {
            let lambda = match root {
                Root::Exact(l) => l,
                Root::Bracket(lo, hi) => refine(&probe, &lo, &hi, step, opts)?,
            };
            finish_root(params, &class, &region, lambda, index, opts)
        })
        .collect()
}

enum Root {
    Exact(f64),
    Bracket(WronskianSample, WronskianSample),
}

fn refine(
    probe: &dyn Fn(f64) -> Result<WronskianSample>,
    lo: &WronskianSample,
    hi: &WronskianSample,
    grid_step: f64,
    opts: &SolverOptions,
) -> Result<f64> {
    let (mut a, mut fa) = (lo.lambda, lo.wp);
    let (mut b, mut fb) = (hi.lambda, hi.wp);
    let bracket_scale = fa.abs().max(fb.abs());
    let mut x = 0.5 * (a + b);
    for _ in 0..opts.max_iterations {
        let s = probe(x)?;
        if !s.wp.is_finite() || !s.dwp_dlambda.is_finite() {
            return Err(Error::BracketFailure { lo: a, hi: b });
        }
        if s.wp == 0.0 {
            return Ok(x);
        }
        if s.wp.signum() == fa.signum() {
            a = x;
            fa = s.wp;
        } else {
            b = x;
            fb = s.wp;
        }
        if fa.signum() == fb.signum() {
            return Err(Error::BracketFailure { lo: a, hi: b });
        }
        let newton = x - s.wp / s.dwp_dlambda;
        let next = if s.dwp_dlambda != 0.0 && newton > a && newton < b { newton } else { 0.5 * (a + b) };
        let done = (next - x).abs() <= opts.tol * x.abs().max(1.0) || (b - a) <= opts.tol * x.abs().max(1.0);
        if done && s.dwp_dlambda.abs() * grid_step <= 1e-10 * bracket_scale {
            return Err(Error::DegenerateRoot { lambda: next });
        }
        x = next;
        if done {
            return Ok(x);
        }
    }
    Err(Error::BracketFailure { lo: a, hi: b })
}

fn finish_root(
    params: &HeunParameters,
    class: &FunctionClass,
    region: &MutualRegion,
    lambda: f64,
    index: usize,
    opts: &SolverOptions,
) -> Result<EigenSolution> {
    let (series0, series1) = build_pair(params, class, lambda, &opts.series)?;
    let norm = normalize(&series0, &series1, region, region.recommended_point, opts.invariance_tol)?;
    Ok(EigenSolution {
        index,
        lambda,
        a_coeff: norm.a_coeff,
        norm: norm.value,
        series0,
        series1,
        class: *class,
        residual: norm.residual,
        relative_residual: norm.relative_residual,
        switch_point: region.recommended_point,
    })
}

/// Orthonormal Heun functions `hₙ = Hₙ / √Iₙ` for one parameter set and class.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralBasis {
    pub params: HeunParameters,
    pub class: FunctionClass,
    pub solutions: Vec<EigenSolution>,
    pub switch_point: f64,
}

impl SpectralBasis {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.solutions.iter().map(|s| s.lambda).collect()
    }

    /// `hₙ(x)`.
    pub fn eval(&self, n: usize, x: f64) -> Result<f64> {
        self.solutions[n].eval_normalized(x)
    }

    /// Copy of the basis with `Iₙ` multiplied by `factor`, for exercising the
    /// verification path.
    pub fn with_scaled_norm(&self, n: usize, factor: f64) -> Self {
        let mut out = self.clone();
        out.solutions[n].norm *= factor;
        out
    }
}

pub fn orthonormal_basis(
    params: &HeunParameters,
    id: ClassId,
    lambda_lo: f64,
    lambda_hi: f64,
    max_count: usize,
    opts: &SolverOptions,
) -> Result<SpectralBasis> {
    let solutions = find_eigenvalues(params, id, lambda_lo, lambda_hi, max_count, opts)?;
    let region = mutual_region(params)?;
    Ok(SpectralBasis {
        params: *params,
        class: class_exponents(params, id),
        solutions,
        switch_point: region.recommended_point,
    })
}
