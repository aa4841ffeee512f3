use std::time::Instant;

use rayon::prelude::*;

use super::config::ProblemSpec;
use super::document::{EigenRecord, NormRecord, ResultDocument, SampleRecord, VerificationSummary};
use super::CliError;
use crate::oracle::{verify_basis, QuadratureConfig, ShootingConfig, VerificationThresholds};
use crate::params::HeunParameters;
use crate::spectral::{orthonormal_basis, SolverOptions, SpectralBasis};

/// Worker pool sized by `HEUN_THREADS`; `0` means run on a single thread.
/// Unset leaves the choice to rayon.
pub fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("HEUN_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| CliError::Usage(format!("HEUN_THREADS: bad value `{v}`")))?;
        builder = builder.num_threads(n.max(1));
    }
    builder.build().map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

fn solve(spec: &ProblemSpec) -> Result<(HeunParameters, SpectralBasis), CliError> {
    let params = spec.resolve()?;
    let mut opts = SolverOptions { tol: spec.tol, ..SolverOptions::default() };
    if let Some(n) = spec.scan_points {
        opts.scan_points = n;
    }
    let basis = orthonormal_basis(&params, spec.class, spec.lambda_min, spec.lambda_max, spec.max_count, &opts)?;
    Ok((params, basis))
}

fn document(command: &str, spec: &ProblemSpec, params: &HeunParameters, basis: &SpectralBasis) -> ResultDocument {
    ResultDocument {
        command: command.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        timing_seconds: 0.0,
        spec: spec.clone(),
        parameters: [params.alpha, params.beta, params.gamma, params.delta, params.epsilon, params.a],
        eigen: basis
            .solutions
            .iter()
            .map(|s| EigenRecord { n: s.index, lambda: s.lambda, a_coeff: s.a_coeff, norm: s.norm, residual: s.residual })
            .collect(),
        samples: Vec::new(),
        verification: None,
    }
}

pub fn cmd_eigs(spec: &ProblemSpec) -> Result<ResultDocument, CliError> {
    let start = Instant::now();
    let (params, basis) = solve(spec)?;
    let mut doc = document("eigs", spec, &params, &basis);
    doc.timing_seconds = start.elapsed().as_secs_f64();
    Ok(doc)
}

/// `corrupt_norm` doubles the stored norm of that basis element before
/// checking, so the failure path can be exercised.
pub fn cmd_verify(spec: &ProblemSpec, corrupt_norm: Option<usize>) -> Result<ResultDocument, CliError> {
    let start = Instant::now();
    let (params, mut basis) = solve(spec)?;
    if let Some(n) = corrupt_norm {
        if n >= basis.len() {
            return Err(CliError::Usage(format!("--corrupt-norm {n}: only {} eigenvalues found", basis.len())));
        }
        basis = basis.with_scaled_norm(n, 2.0);
    }
    let report = verify_basis(
        &basis,
        &QuadratureConfig::default(),
        &ShootingConfig::default(),
        &VerificationThresholds::default(),
    );
    let mut doc = document("verify", spec, &params, &basis);
    doc.verification = Some(VerificationSummary {
        passed: report.passed,
        max_offdiag: report.max_offdiag,
        max_diag_deviation: report.max_diag_deviation,
        norms: report
            .norms
            .iter()
            .map(|c| NormRecord {
                n: c.n,
                lambda: c.lambda,
                closed_form: c.closed_form,
                quadrature: c.quadrature,
                rel_error: c.rel_error,
                shooting_mismatch: c.shooting_mismatch,
                passed: c.passed,
            })
            .collect(),
    });
    doc.timing_seconds = start.elapsed().as_secs_f64();
    Ok(doc)
}

/// Rows are ordered by eigenvalue index, then by the order of `points`.
pub fn cmd_eval(spec: &ProblemSpec, points: &[f64]) -> Result<ResultDocument, CliError> {
    let start = Instant::now();
    let (params, basis) = solve(spec)?;
    let jobs: Vec<(usize, f64)> = (0..basis.len()).flat_map(|n| points.iter().map(move |&x| (n, x))).collect();
    let samples = jobs
        .par_iter()
        .map(|&(n, x)| match basis.eval(n, x) {
            Ok(v) => SampleRecord { n, x, value: Some(v), error: None },
            Err(e) => SampleRecord { n, x, value: None, error: Some(e.to_string()) },
        })
        .collect();
    let mut doc = document("eval", spec, &params, &basis);
    doc.samples = samples;
    doc.timing_seconds = start.elapsed().as_secs_f64();
    Ok(doc)
}
