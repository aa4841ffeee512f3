use rayon::prelude::*;

use super::{shoot, weighted_inner_product, QuadratureConfig, ShootingConfig};
use crate::spectral::SpectralBasis;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerificationThresholds {
    /// Largest allowed `|⟨hₙ, hₘ⟩|`, `n ≠ m`.
    pub gram_offdiag: f64,
    /// Largest allowed `|⟨hₙ, hₙ⟩ - 1|`.
    pub gram_diag: f64,
    /// Closed-form against quadrature, relative.
    pub norm_rel: f64,
    /// Relative shooting mismatch at each eigenvalue.
    pub shooting_rel: f64,
}

impl Default for VerificationThresholds {
    fn default() -> Self {
        Self { gram_offdiag: 1e-8, gram_diag: 1e-7, norm_rel: 1e-7, shooting_rel: 1e-7 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormCheck {
    pub n: usize,
    pub lambda: f64,
    pub closed_form: f64,
    pub quadrature: f64,
    pub quadrature_error: f64,
    pub rel_error: f64,
    pub shooting_mismatch: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramEntry {
    pub n: usize,
    pub m: usize,
    pub value: f64,
    pub error_estimate: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub norms: Vec<NormCheck>,
    /// Upper triangle, `n ≤ m`.
    pub gram: Vec<GramEntry>,
    pub max_offdiag: f64,
    pub max_diag_deviation: f64,
    pub passed: bool,
}

impl VerificationReport {
    pub fn failed_indices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.norms.iter().filter(|c| !c.passed).map(|c| c.n).collect();
        for g in self.gram.iter().filter(|g| !g.passed) {
            out.push(g.n);
            out.push(g.m);
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Checks every basis element against quadrature and shooting. Failures are
/// recorded in the report, never raised.
pub fn verify_basis(
    basis: &SpectralBasis,
    quad: &QuadratureConfig,
    shooting: &ShootingConfig,
    thresholds: &VerificationThresholds,
) -> VerificationReport {
    let params = &basis.params;
    let class = &basis.class;

    let norms: Vec<NormCheck> = basis
        .solutions
        .par_iter()
        .enumerate()
        .map(|(n, sol)| {
            let h = |x: f64| sol.eval(x).unwrap_or(f64::NAN);
            let (quadrature, quadrature_error) = match weighted_inner_product(params, class, h, h, quad) {
                Ok(r) => (r.value, r.error_estimate),
                Err(_) => (f64::NAN, f64::NAN),
            };
            let rel_error = ((sol.norm - quadrature) / quadrature).abs();
            let shooting_mismatch =
                shoot(params, class, sol.lambda, shooting).map(|s| s.relative_mismatch()).unwrap_or(f64::NAN);
            let passed = rel_error <= thresholds.norm_rel && shooting_mismatch <= thresholds.shooting_rel;
            NormCheck {
                n,
                lambda: sol.lambda,
                closed_form: sol.norm,
                quadrature,
                quadrature_error,
                rel_error,
                shooting_mismatch,
                passed,
            }
        })
        .collect();

    let pairs: Vec<(usize, usize)> =
        (0..basis.len()).flat_map(|n| (n..basis.len()).map(move |m| (n, m))).collect();
    let gram: Vec<GramEntry> = pairs
        .par_iter()
        .map(|&(n, m)| {
            let f = |x: f64| basis.eval(n, x).unwrap_or(f64::NAN);
            let g = |x: f64| basis.eval(m, x).unwrap_or(f64::NAN);
            let (value, error_estimate) = match weighted_inner_product(params, class, f, g, quad) {
                Ok(r) => (r.value, r.error_estimate),
                Err(_) => (f64::NAN, f64::NAN),
            };
            let passed = if n == m {
                (value - 1.0).abs() <= thresholds.gram_diag
            } else {
                value.abs() <= thresholds.gram_offdiag
            };
            GramEntry { n, m, value, error_estimate, passed }
        })
        .collect();

    let max_offdiag = gram.iter().filter(|g| g.n != g.m).map(|g| g.value.abs()).fold(0.0, f64::max);
    let max_diag_deviation = gram.iter().filter(|g| g.n == g.m).map(|g| (g.value - 1.0).abs()).fold(0.0, f64::max);
    let passed = norms.iter().all(|c| c.passed) && gram.iter().all(|g| g.passed);
    VerificationReport { norms, gram, max_offdiag, max_diag_deviation, passed }
}
