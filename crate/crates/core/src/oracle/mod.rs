//! Brute-force cross-checks: shooting for eigenvalues, desingularized
//! quadrature for weighted inner products, and a combined basis report.
//!
//! Nothing here reuses the spectral code path. The local series enter only
//! as initial data a short distance from each singular endpoint.

mod ode;
pub mod quadrature;
mod verify;

pub use ode::Dopri5;
pub use verify::{verify_basis, GramEntry, NormCheck, VerificationReport, VerificationThresholds};

use crate::counters;
use crate::error::{Error, Result};
use crate::frobenius::{build_series, mutual_region, Center, SeriesOptions};
use crate::params::{class_exponents, existence_ok, ClassId, FunctionClass, HeunParameters};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig {
    /// Distance from each endpoint at which the series seed the integrator.
    pub start_offset: f64,
    /// Local relative error tolerance.
    pub step_tol: f64,
    /// Defaults to the recommended point of the mutual region.
    pub matching_point: Option<f64>,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        Self { start_offset: 1e-4, step_tol: 1e-12, matching_point: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub split_point: f64,
    pub max_segments: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { abs_tol: 1e-10, rel_tol: 1e-10, split_point: 0.5, max_segments: 5000 }
    }
}

/// Left and right solutions `(y, y')` at the matching point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shot {
    pub x: f64,
    pub left: [f64; 2],
    pub right: [f64; 2],
}

impl Shot {
    /// `y_L y_R' - y_R y_L'`; zero exactly at an eigenvalue.
    pub fn mismatch(&self) -> f64 {
        self.left[0] * self.right[1] - self.right[0] * self.left[1]
    }

    /// Sine of the angle between the left and right `(y, y')` vectors.
    pub fn relative_mismatch(&self) -> f64 {
        let scale = self.left[0].hypot(self.left[1]) * self.right[0].hypot(self.right[1]);
        self.mismatch().abs() / scale
    }
}

/// Integrates the equation inward from both endpoints to the matching point.
pub fn shoot(params: &HeunParameters, class: &FunctionClass, lambda: f64, cfg: &ShootingConfig) -> Result<Shot> {
    let region = mutual_region(params)?;
    let xm = cfg.matching_point.unwrap_or(region.recommended_point);
    if !(cfg.start_offset > 0.0 && cfg.start_offset < region.lo) {
        return Err(Error::Domain { x: cfg.start_offset });
    }
    if !(xm > cfg.start_offset && xm < 1.0 - cfg.start_offset) {
        return Err(Error::Domain { x: xm });
    }
    let series_opts = SeriesOptions::default();
    let xl = cfg.start_offset;
    let xr = 1.0 - cfg.start_offset;
    let b0 = build_series(params, class, Center::X0, lambda, &series_opts)?.eval(xl)?;
    let b1 = build_series(params, class, Center::X1, lambda, &series_opts)?.eval(xr)?;

    let rhs = |x: f64, s: &[f64; 2]| {
        let (p, q) = params.ode_coefficients(lambda, x);
        [s[1], -p * s[1] - q * s[0]]
    };
    let run = |x0: f64, s0: [f64; 2]| {
        let scale = s0[0].abs().max(s0[1].abs() * cfg.start_offset);
        let ode = Dopri5::new(cfg.step_tol, cfg.step_tol * 1e-3 * scale);
        ode.integrate(rhs, x0, xm, s0, 0.01 * cfg.start_offset)
    };
    let left = run(xl, [b0.y, b0.dy_dx])?;
    let right = run(xr, [b1.y, b1.dy_dx])?;
    Ok(Shot { x: xm, left, right })
}

pub fn shoot_mismatch(params: &HeunParameters, class: &FunctionClass, lambda: f64, cfg: &ShootingConfig) -> Result<f64> {
    Ok(shoot(params, class, lambda, cfg)?.mismatch())
}

/// Eigenvalues in `[lo, hi]` as sign changes of the shooting mismatch,
/// refined by the Illinois variant of regula falsi.
pub fn shooting_eigenvalues(
    params: &HeunParameters,
    id: ClassId,
    lo: f64,
    hi: f64,
    scan_points: usize,
    cfg: &ShootingConfig,
) -> Result<Vec<f64>> {
    if !existence_ok(params, id) {
        return Err(Error::ExistenceViolated(id));
    }
    if !(lo < hi) {
        return Err(Error::InvalidWindow { lo, hi });
    }
    let class = class_exponents(params, id);
    let f = |lambda: f64| shoot_mismatch(params, &class, lambda, cfg);
    let n = scan_points.max(2);
    let step = (hi - lo) / (n - 1) as f64;
    let mut roots = Vec::new();
    let mut a = lo;
    let mut fa = f(a)?;
    for i in 1..n {
        let b = if i + 1 == n { hi } else { lo + step * i as f64 };
        let fb = f(b)?;
        if fa == 0.0 {
            roots.push(a);
        } else if fb != 0.0 && fa.signum() != fb.signum() {
            roots.push(illinois(&f, a, b, fa, fb)?);
        }
        a = b;
        fa = fb;
    }
    if fa == 0.0 {
        roots.push(a);
    }
    Ok(roots)
}

fn illinois(f: &dyn Fn(f64) -> Result<f64>, mut a: f64, mut b: f64, mut fa: f64, mut fb: f64) -> Result<f64> {
    let mut side = 0i8;
    for _ in 0..200 {
        let c = (a * fb - b * fa) / (fb - fa);
        if (b - a).abs() <= 1e-14 * c.abs().max(1.0) {
            return Ok(c);
        }
        let fc = f(c)?;
        if fc == 0.0 {
            return Ok(c);
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
    }
    Ok(0.5 * (a + b))
}

/// Result of a desingularized quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
}

/// Power `q` of the substitution `x = t^q` that absorbs a local factor
/// `x^mu`: the transformed integrand carries `t^(k-1)` with integer `k ≥ 1`
/// and the smooth remainder is evaluated at `t^q` with `q ≥ 2`.
fn substitution_power(mu: f64) -> f64 {
    let k = (2.0 * (mu + 1.0)).ceil().max(1.0);
    k / (mu + 1.0)
}

/// `∫₀¹ ω̃ f g dx` for functions with the endpoint behaviour of `class`.
///
/// Near `x = 0` the integrand behaves like `x^μ₀` with `μ₀ = γ - 1 + 2σ₀`,
/// near `x = 1` like `(1-x)^μ₁` with `μ₁ = δ - 1 + 2σ₁`. Each half of the
/// interval is mapped by a power substitution that makes the integrand
/// bounded, then integrated adaptively.
pub fn weighted_inner_product<F, G>(
    params: &HeunParameters,
    class: &FunctionClass,
    f: F,
    g: G,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let mu0 = params.gamma - 1.0 + 2.0 * class.sigma0;
    let mu1 = params.delta - 1.0 + 2.0 * class.sigma1;
    if !(mu0 > -1.0 && mu1 > -1.0) {
        return Err(Error::ExistenceViolated(class.id));
    }
    let q0 = substitution_power(mu0);
    let q1 = substitution_power(mu1);
    let split = cfg.split_point;
    let mut evaluations = 0u64;

    let dist = |x: f64| (x - params.a).abs();
    let weight = |x: f64, one_minus_x: f64| {
        x.powf(params.gamma - 1.0) * one_minus_x.powf(params.delta - 1.0) * dist(x).powf(params.epsilon - 1.0)
    };

    let left = {
        let integrand = |t: f64| {
            counters::bump_integrand();
            evaluations += 1;
            let x = t.powf(q0);
            if x <= 0.0 {
                return 0.0;
            }
            weight(x, 1.0 - x) * f(x) * g(x) * q0 * t.powf(q0 - 1.0)
        };
        quadrature::integrate(integrand, 0.0, split.powf(1.0 / q0), cfg.abs_tol * 0.5, cfg.rel_tol, cfg.max_segments)
    };
    let right = {
        let integrand = |u: f64| {
            counters::bump_integrand();
            evaluations += 1;
            let s = u.powf(q1);
            let x = 1.0 - s;
            if s <= 0.0 || x >= 1.0 {
                return 0.0;
            }
            weight(x, s) * f(x) * g(x) * q1 * u.powf(q1 - 1.0)
        };
        quadrature::integrate(
            integrand,
            0.0,
            (1.0 - split).powf(1.0 / q1),
            cfg.abs_tol * 0.5,
            cfg.rel_tol,
            cfg.max_segments,
        )
    };
    let value = left.value + right.value;
    let error_estimate = left.error + right.error;
    if !value.is_finite() || !left.converged || !right.converged {
        return Err(Error::ToleranceNotMet { estimate: error_estimate });
    }
    Ok(QuadratureResult { value, error_estimate, evaluations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_weight() {
        let params = HeunParameters::new(1.0, 1.0, 1.0, 1.0, 1.0, 3.0).unwrap();
        let class = class_exponents(&params, ClassId::I);
        let r = weighted_inner_product(&params, &class, |_| 1.0, |_| 1.0, &QuadratureConfig::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn beta_integral() {
        let params = HeunParameters::new(1.0, 2.0, 1.5, 1.5, 1.0, 2.0).unwrap();
        let class = class_exponents(&params, ClassId::I);
        let r = weighted_inner_product(&params, &class, |_| 1.0, |_| 1.0, &QuadratureConfig::default()).unwrap();
        assert!((r.value - PI / 8.0).abs() < 1e-10, "{}", r.value - PI / 8.0);
    }

    #[test]
    fn singular_class_iv_integrand() {
        // ω̃ = √(x(1-x)), f = g = (x(1-x))^(-1/2): ∫ (x(1-x))^(-1/2) dx = π
        let params = HeunParameters::new(1.0, 2.0, 1.5, 1.5, 1.0, 2.0).unwrap();
        let class = class_exponents(&params, ClassId::IV);
        let h = |x: f64| (x * (1.0 - x)).powf(-0.5);
        let r = weighted_inner_product(&params, &class, h, h, &QuadratureConfig::default()).unwrap();
        assert!((r.value - PI).abs() < 1e-10);
    }

    #[test]
    fn hypergeometric_closed_form() {
        let params = HeunParameters::new(-2.0, 3.0, 1.0, 1.0, 0.0, 2.0).unwrap();
        let class = class_exponents(&params, ClassId::I);
        let h = |x: f64| 1.0 - 6.0 * x + 6.0 * x * x;
        let r = weighted_inner_product(&params, &class, h, h, &QuadratureConfig::default()).unwrap();
        let f = |u: f64| 9.0 * u.powi(4) - 72.0 * u.powi(3) + 240.0 * u * u - 468.0 * u;
        let exact = f(2.0) - f(1.0) + 169.0 * std::f64::consts::LN_2;
        assert!((r.value - exact).abs() < 1e-10);
    }

    #[test]
    fn halving_tolerance_moves_less_than_estimate() {
        let params = HeunParameters::new(1.0, 2.0, 1.3, 1.7, 1.0, 2.5).unwrap();
        let class = class_exponents(&params, ClassId::I);
        let f = |x: f64| (3.0 * x).cos();
        let coarse = QuadratureConfig { abs_tol: 1e-6, rel_tol: 1e-6, ..Default::default() };
        let fine = QuadratureConfig { abs_tol: 5e-7, rel_tol: 5e-7, ..Default::default() };
        let a = weighted_inner_product(&params, &class, f, f, &coarse).unwrap();
        let b = weighted_inner_product(&params, &class, f, f, &fine).unwrap();
        assert!((a.value - b.value).abs() <= a.error_estimate);
    }

    #[test]
    fn hypergeometric_mismatch() {
        let params = HeunParameters::new(-2.0, 3.0, 1.0, 1.0, 0.0, 2.0).unwrap();
        let class = class_exponents(&params, ClassId::I);
        let cfg = ShootingConfig::default();
        let at = shoot(&params, &class, -12.0, &cfg).unwrap();
        let off = shoot(&params, &class, -11.0, &cfg).unwrap();
        assert!(at.relative_mismatch() < 1e-8, "{}", at.relative_mismatch());
        assert!(off.mismatch().abs() >= 1e3 * at.mismatch().abs());
    }

    #[test]
    fn shooting_config_checks() {
        let params = HeunParameters::new(-2.0, 3.0, 1.0, 1.0, 0.0, 2.0).unwrap();
        let class = class_exponents(&params, ClassId::I);
        let cfg = ShootingConfig { start_offset: 0.2, ..Default::default() };
        assert!(shoot(&params, &class, -12.0, &cfg).is_err());
    }
}
