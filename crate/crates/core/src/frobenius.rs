//! Local Frobenius solutions about `x = 0` and `x = 1`.
//!
//! About `x = 0` the solution is `y = x^σ Σ c_k x^k`. Substituting into the
//! equation multiplied by `x(x-1)(x-a)` and matching powers gives the
//! three-term recursion (with `r = k + σ`)
//!
//! ```text
//! a (r)(r - 1 + γ) c_k = [ (r-1)((r-2+γ)(1+a) + aδ + ε) + λ ] c_{k-1}
//!                        - (r-2+α)(r-2+β) c_{k-2}
//! ```
//!
//! whose `k = 0` case is the indicial equation `σ(σ - 1 + γ) = 0`. The
//! `∂c_k/∂λ` follow by differentiating the recursion term by term.
//!
//! About `x = 1` we set `t = 1 - x`. The substitution maps the equation onto
//! itself with `γ ↔ δ`, `a → 1 - a` and `λ → αβ - λ`, so the same recursion
//! applies with `∂λ_local/∂λ = -1`. The normalization `(1-x)^(-σ₁) y₁ → 1`
//! uses the positive real branch.
//!
//! Coefficients and partial sums are carried in double-double. Away from the
//! center the sums cancel heavily (alternating terms of size 10⁴ times the
//! result are common for large |λ|), and plain doubles would leave rounding
//! noise well above what λ-differences need.

use crate::counters;
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::params::{existence_ok, FunctionClass, HeunParameters};

/// Shrink factor applied to both convergence radii when forming the
/// mutual region.
pub const SAFETY_FACTOR: f64 = 0.9;

/// Minimum number of terms kept in any series.
pub const MIN_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Center {
    X0,
    X1,
}

/// Convergence radius of the local series about `center`.
pub fn radius(params: &HeunParameters, center: Center) -> f64 {
    match center {
        Center::X0 => params.a.abs().min(1.0),
        Center::X1 => (params.a - 1.0).abs().min(1.0),
    }
}

/// Subinterval of (0, 1) on which both endpoint series converge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MutualRegion {
    pub lo: f64,
    pub hi: f64,
    /// Point where `x/r₀ = (1-x)/r₁`.
    pub recommended_point: f64,
}

impl MutualRegion {
    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub(crate) fn check(&self, x: f64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::OutsideMutualRegion { x, lo: self.lo, hi: self.hi })
        }
    }
}

pub fn mutual_region(params: &HeunParameters) -> Result<MutualRegion> {
    let r0 = radius(params, Center::X0);
    let r1 = radius(params, Center::X1);
    let lo = 1.0 - SAFETY_FACTOR * r1;
    let hi = SAFETY_FACTOR * r0;
    if !(lo > 0.0 && lo <= hi && hi < 1.0) {
        return Err(Error::EmptyRegion);
    }
    let recommended_point = (r0 / (r0 + r1)).clamp(lo, hi);
    Ok(MutualRegion { lo, hi, recommended_point })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// Relative tail tolerance.
    pub tol: f64,
    pub max_order: usize,
    /// Largest distance from the center at which the series must meet `tol`.
    /// Defaults to the far edge of the mutual region.
    pub reach: Option<f64>,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self { tol: 1e-15, max_order: 5000, reach: None }
    }
}

/// Values of a local solution and its x- and λ-derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalBundle {
    pub y: f64,
    pub dy_dx: f64,
    pub dy_dlambda: f64,
    pub d2y_dlambda_dx: f64,
}

/// A truncated Frobenius series together with its λ-derivative coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusSeries {
    center: Center,
    exponent: f64,
    lambda: f64,
    coeffs: Vec<f64>,
    dcoeffs: Vec<f64>,
    coeffs_dd: Vec<Dd>,
    dcoeffs_dd: Vec<Dd>,
    radius: f64,
    reach: f64,
    params: HeunParameters,
}

/// The equation as seen from one endpoint, in the local variable `t`.
/// Everything that enters the recursion is carried in double-double.
struct LocalProblem {
    gamma: f64,
    delta: f64,
    epsilon: f64,
    a: Dd,
    alpha: f64,
    beta: f64,
    sigma: f64,
    lambda: Dd,
    dlambda: f64,
}

impl LocalProblem {
    fn new(params: &HeunParameters, class: &FunctionClass, center: Center, lambda: f64) -> Self {
        let HeunParameters { alpha, beta, gamma, delta, epsilon, a, .. } = *params;
        match center {
            Center::X0 => Self {
                gamma,
                delta,
                epsilon,
                a: Dd::new(a),
                alpha,
                beta,
                sigma: class.sigma0,
                lambda: Dd::new(lambda),
                dlambda: 1.0,
            },
            Center::X1 => Self {
                gamma: delta,
                delta: gamma,
                epsilon,
                a: Dd::sum(1.0, -a),
                alpha,
                beta,
                sigma: class.sigma1,
                lambda: Dd::prod(alpha, beta) - Dd::new(lambda),
                dlambda: -1.0,
            },
        }
    }

    /// `(lead, mid, back)` with `lead·c_k = (mid + λ) c_{k-1} - back·c_{k-2}`.
    fn recursion(&self, k: usize) -> (Dd, Dd, Dd) {
        let r = Dd::sum(k as f64, self.sigma);
        let shift = |v: f64, by: f64| r + Dd::sum(v, by);
        let lead = self.a * r * shift(self.gamma, -1.0);
        let mid = shift(0.0, -1.0)
            * (shift(self.gamma, -2.0) * (self.a + Dd::ONE) + self.a * self.delta + Dd::new(self.epsilon));
        let back = shift(self.alpha, -2.0) * shift(self.beta, -2.0);
        (lead, mid, back)
    }
}

/// Builds the local series about `center` for the given class and λ.
pub fn build_series(
    params: &HeunParameters,
    class: &FunctionClass,
    center: Center,
    lambda: f64,
    opts: &SeriesOptions,
) -> Result<FrobeniusSeries> {
    if !(opts.tol > 0.0) {
        return Err(Error::NonPositiveTol(opts.tol));
    }
    if !existence_ok(params, class.id) {
        return Err(Error::ExistenceViolated(class.id));
    }
    if !lambda.is_finite() {
        return Err(Error::NonFinite("lambda"));
    }
    let radius = radius(params, center);
    let reach = match opts.reach {
        Some(r) => r,
        None => {
            let region = mutual_region(params)?;
            match center {
                Center::X0 => region.hi,
                Center::X1 => 1.0 - region.lo,
            }
        }
    };
    if !(reach > 0.0 && reach < radius) {
        return Err(Error::OutsideRadius { distance: reach, radius });
    }

    let local = LocalProblem::new(params, class, center, lambda);
    let mut cs = vec![Dd::ONE];
    let mut ds = vec![Dd::ZERO];
    let mut mass = 1.0;
    let mut dmass = 0.0;
    let mut small_run = 0usize;
    let mut pow = 1.0;

    for k in 1..=opts.max_order {
        let (lead, mid, back) = local.recursion(k);
        let c1 = cs[k - 1];
        let d1 = ds[k - 1];
        let (c2, d2) = if k >= 2 { (cs[k - 2], ds[k - 2]) } else { (Dd::ZERO, Dd::ZERO) };
        let m = mid + local.lambda;
        let c = (m * c1 - back * c2) / lead;
        let d = (m * d1 + c1 * local.dlambda - back * d2) / lead;
        if !c.is_finite() || !d.is_finite() {
            return Err(Error::NoConvergence { max_order: opts.max_order });
        }
        cs.push(c);
        ds.push(d);

        // term magnitudes at the reach, weighted by (k+1) so that the
        // x-derivative series is covered as well
        pow *= reach;
        let w = (k + 1) as f64 * pow;
        let term = c.hi.abs() * w;
        let dterm = d.hi.abs() * w;
        mass += term;
        dmass += dterm;
        if term <= opts.tol * mass && dterm <= opts.tol * dmass {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if k >= MIN_ORDER && small_run >= 3 {
            return Ok(FrobeniusSeries {
                center,
                exponent: local.sigma,
                lambda,
                coeffs: cs.iter().map(|c| c.to_f64()).collect(),
                dcoeffs: ds.iter().map(|d| d.to_f64()).collect(),
                coeffs_dd: cs,
                dcoeffs_dd: ds,
                radius,
                reach,
                params: *params,
            });
        }
    }
    Err(Error::NoConvergence { max_order: opts.max_order })
}

/// Sums of the power series part and its t-derivatives.
struct PartialSums {
    s: f64,
    s1: f64,
    s2: f64,
    sl: f64,
    sl1: f64,
}

impl FrobeniusSeries {
    pub fn center(&self) -> Center {
        self.center
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn dcoeffs(&self) -> &[f64] {
        &self.dcoeffs
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Distance from the center within which the tail tolerance was enforced.
    pub fn reach(&self) -> f64 {
        self.reach
    }

    pub fn params(&self) -> &HeunParameters {
        &self.params
    }

    fn local_variable(&self, x: f64) -> Result<f64> {
        let t = match self.center {
            Center::X0 => x,
            Center::X1 => 1.0 - x,
        };
        if !(t >= 0.0 && t < self.radius) {
            return Err(Error::OutsideRadius { distance: t.abs(), radius: self.radius });
        }
        Ok(t)
    }

    /// Sign of `dt/dx`.
    fn orientation(&self) -> f64 {
        match self.center {
            Center::X0 => 1.0,
            Center::X1 => -1.0,
        }
    }

    fn partial_sums(&self, t: f64) -> PartialSums {
        let (mut s, mut s1, mut s2, mut sl, mut sl1) = (Dd::ZERO, Dd::ZERO, Dd::ZERO, Dd::ZERO, Dd::ZERO);
        // pows = (t^k, t^(k-1), t^(k-2))
        let (mut p0, mut p1, mut p2) = (Dd::ONE, Dd::ZERO, Dd::ZERO);
        for (k, (&c, &d)) in self.coeffs_dd.iter().zip(&self.dcoeffs_dd).enumerate() {
            let kf = k as f64;
            s = s + c * p0;
            sl = sl + d * p0;
            if k >= 1 {
                let kp1 = p1 * kf;
                s1 = s1 + c * kp1;
                sl1 = sl1 + d * kp1;
            }
            if k >= 2 {
                s2 = s2 + c * p2 * (kf * (kf - 1.0));
            }
            p2 = if k == 0 { Dd::ZERO } else if k == 1 { Dd::ONE } else { p2 * t };
            p1 = if k == 0 { Dd::ONE } else { p1 * t };
            p0 = p0 * t;
        }
        PartialSums { s: s.to_f64(), s1: s1.to_f64(), s2: s2.to_f64(), sl: sl.to_f64(), sl1: sl1.to_f64() }
    }

    /// Evaluates `y`, `∂y/∂x`, `∂y/∂λ` and `∂²y/∂λ∂x` by term-by-term
    /// differentiation of the truncated series, exponent prefactor included.
    pub fn eval(&self, x: f64) -> Result<EvalBundle> {
        let t = self.local_variable(x)?;
        counters::bump_series();
        let ps = self.partial_sums(t);
        let s = self.orientation();
        let sigma = self.exponent;
        if sigma == 0.0 {
            return Ok(EvalBundle { y: ps.s, dy_dx: s * ps.s1, dy_dlambda: ps.sl, d2y_dlambda_dx: s * ps.sl1 });
        }
        let ts = t.powf(sigma);
        let ts1 = sigma * t.powf(sigma - 1.0);
        Ok(EvalBundle {
            y: ts * ps.s,
            dy_dx: s * (ts1 * ps.s + ts * ps.s1),
            dy_dlambda: ts * ps.sl,
            d2y_dlambda_dx: s * (ts1 * ps.sl + ts * ps.sl1),
        })
    }

    /// Second x-derivative of the truncated series.
    pub fn second_derivative(&self, x: f64) -> Result<f64> {
        let t = self.local_variable(x)?;
        let ps = self.partial_sums(t);
        let sigma = self.exponent;
        if sigma == 0.0 {
            return Ok(ps.s2);
        }
        Ok(t.powf(sigma) * ps.s2
            + 2.0 * sigma * t.powf(sigma - 1.0) * ps.s1
            + sigma * (sigma - 1.0) * t.powf(sigma - 2.0) * ps.s)
    }
}
