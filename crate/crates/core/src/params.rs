//! Heun parameters, solution classes and the Sturm-Liouville weight.
//!
//! The equation is taken in the standard form
//!
//! ```text
//! y'' + (γ/x + δ/(x-1) + ε/(x-a)) y' + (αβx - λ) / (x(x-1)(x-a)) y = 0
//! ```
//!
//! with the exponent constraint `α + β - γ - δ - ε + 1 = 0`. On (0, 1) the
//! factors `(x-1)^δ` and `(x-a)^ε` of the self-adjoint form are replaced by
//! their positive real branches `(1-x)^δ` and `|x-a|^ε`. The logarithmic
//! derivative is unchanged, so the self-adjoint identities carry over with
//! real, positive `p` and `ω`; only the orientation factor
//! [`HeunParameters::orientation`] records a sign that flips for `a < 0`.

use std::fmt;

use crate::error::{Error, Result};

/// Tolerance on the Riemann relation residual.
pub const RIEMANN_TOL: f64 = 1e-12;

/// Which side of the unit interval the fourth finite singularity sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `a < 0`
    ALeft,
    /// `a > 1`
    ARight,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeunParameters {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub epsilon: f64,
    pub a: f64,
    side: Side,
}

impl HeunParameters {
    /// Validates a raw parameter set.
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64, epsilon: f64, a: f64) -> Result<Self> {
        for (name, v) in [
            ("alpha", alpha),
            ("beta", beta),
            ("gamma", gamma),
            ("delta", delta),
            ("epsilon", epsilon),
            ("a", a),
        ] {
            if !v.is_finite() {
                return Err(Error::NonFinite(name));
            }
        }
        let residual = alpha + beta - gamma - delta - epsilon + 1.0;
        if residual.abs() > RIEMANN_TOL {
            return Err(Error::RiemannViolation { residual });
        }
        let side = if a < 0.0 {
            Side::ALeft
        } else if a > 1.0 {
            Side::ARight
        } else {
            return Err(Error::SingularityInInterval { a });
        };
        Ok(Self { alpha, beta, gamma, delta, epsilon, a, side })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn riemann_residual(&self) -> f64 {
        self.alpha + self.beta - self.gamma - self.delta - self.epsilon + 1.0
    }

    /// Sign relating the real-branch weight to the equation's own
    /// denominator: `p̃(x) = orientation · x(x-1)(x-a) · ω̃(x)`.
    ///
    /// `+1` for `a > 1`, `-1` for `a < 0`. The self-adjoint form reads
    /// `(p̃ y')' + orientation · (αβx - λ) ω̃ y = 0`.
    pub fn orientation(&self) -> f64 {
        match self.side {
            Side::ARight => 1.0,
            Side::ALeft => -1.0,
        }
    }

    /// Distance from `x` to the singularity at `a`, always positive on (0, 1).
    fn dist_a(&self, x: f64) -> f64 {
        (x - self.a).abs()
    }

    /// Sturm-Liouville weight `x^(γ-1) (1-x)^(δ-1) |x-a|^(ε-1)` on (0, 1).
    pub fn weight(&self, x: f64) -> Result<f64> {
        check_open_unit(x)?;
        Ok(self.weight_unchecked(x))
    }

    /// Integrating factor `x^γ (1-x)^δ |x-a|^ε` on (0, 1).
    pub fn p_factor(&self, x: f64) -> Result<f64> {
        check_open_unit(x)?;
        Ok(self.p_factor_unchecked(x))
    }

    pub(crate) fn weight_unchecked(&self, x: f64) -> f64 {
        x.powf(self.gamma - 1.0) * (1.0 - x).powf(self.delta - 1.0) * self.dist_a(x).powf(self.epsilon - 1.0)
    }

    pub(crate) fn p_factor_unchecked(&self, x: f64) -> f64 {
        x.powf(self.gamma) * (1.0 - x).powf(self.delta) * self.dist_a(x).powf(self.epsilon)
    }

    /// Coefficients `(P, Q)` of `y'' + P y' + Q y = 0` at a regular point.
    pub fn ode_coefficients(&self, lambda: f64, x: f64) -> (f64, f64) {
        let p = self.gamma / x + self.delta / (x - 1.0) + self.epsilon / (x - self.a);
        let q = (self.alpha * self.beta * x - lambda) / (x * (x - 1.0) * (x - self.a));
        (p, q)
    }
}

fn check_open_unit(x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain { x })
    }
}

/// Solves the Riemann relation for the single missing exponent.
///
/// `exponents` is `[α, β, γ, δ, ε]`; exactly one entry may be `None`.
pub fn complete_riemann(exponents: [Option<f64>; 5]) -> std::result::Result<[f64; 5], usize> {
    let missing: Vec<usize> = exponents.iter().enumerate().filter(|(_, v)| v.is_none()).map(|(i, _)| i).collect();
    match missing.as_slice() {
        [] => Ok(exponents.map(|v| v.unwrap_or_default())),
        [i] => {
            // α + β - γ - δ - ε + 1 = 0, signs per slot
            const SIGNS: [f64; 5] = [1.0, 1.0, -1.0, -1.0, -1.0];
            let partial: f64 = exponents
                .iter()
                .zip(SIGNS)
                .filter_map(|(v, s)| v.map(|v| s * v))
                .sum::<f64>()
                + 1.0;
            let mut out = exponents.map(|v| v.unwrap_or_default());
            out[*i] = -partial / SIGNS[*i];
            Ok(out)
        }
        _ => Err(missing.len()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassId {
    I,
    II,
    III,
    IV,
}

impl ClassId {
    pub const ALL: [ClassId; 4] = [ClassId::I, ClassId::II, ClassId::III, ClassId::IV];

    /// Whether the solution at `x = 0` uses the exponent `1 - γ`.
    pub fn nontrivial_at_zero(self) -> bool {
        matches!(self, ClassId::II | ClassId::IV)
    }

    /// Whether the solution at `x = 1` uses the exponent `1 - δ`.
    pub fn nontrivial_at_one(self) -> bool {
        matches!(self, ClassId::III | ClassId::IV)
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassId::I => "I",
            ClassId::II => "II",
            ClassId::III => "III",
            ClassId::IV => "IV",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for ClassId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "I" | "i" | "1" => Ok(ClassId::I),
            "II" | "ii" | "2" => Ok(ClassId::II),
            "III" | "iii" | "3" => Ok(ClassId::III),
            "IV" | "iv" | "4" => Ok(ClassId::IV),
            other => Err(format!("unknown class `{other}`")),
        }
    }
}

/// A solution class together with its endpoint exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionClass {
    pub id: ClassId,
    /// Exponent at `x = 0`.
    pub sigma0: f64,
    /// Exponent at `x = 1`.
    pub sigma1: f64,
}

pub fn class_exponents(params: &HeunParameters, id: ClassId) -> FunctionClass {
    let sigma0 = if id.nontrivial_at_zero() { 1.0 - params.gamma } else { 0.0 };
    let sigma1 = if id.nontrivial_at_one() { 1.0 - params.delta } else { 0.0 };
    FunctionClass { id, sigma0, sigma1 }
}

/// Class-dependent existence conditions. The inequalities are strict.
pub fn existence_ok(params: &HeunParameters, id: ClassId) -> bool {
    let at_zero = if id.nontrivial_at_zero() { params.gamma < 2.0 } else { params.gamma > 0.0 };
    let at_one = if id.nontrivial_at_one() { params.delta < 2.0 } else { params.delta > 0.0 };
    at_zero && at_one
}
