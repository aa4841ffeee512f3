//! Orthonormal systems of Heun functions on `[0, 1]`.
//!
//! Eigenvalues of the accessory parameter are located as roots of the
//! Wronskian of the two endpoint Frobenius solutions, and the quadratic
//! normalization integrals are read off in closed form from the same
//! series data. The [`oracle`] module re-derives both by direct ODE
//! integration and quadrature.
//!
//! ```
//! use heun::{find_eigenvalues, ClassId, HeunParameters, SolverOptions};
//!
//! // With ε = 0 and λ = αβa the equation reduces to the hypergeometric one,
//! // whose polynomial solution 1 - 6x + 6x² is a Heun function.
//! let params = HeunParameters::new(-2.0, 3.0, 1.0, 1.0, 0.0, 2.0)?;
//! let sols = find_eigenvalues(&params, ClassId::I, -13.0, -11.0, 4, &SolverOptions::default())?;
//! assert!((sols[0].lambda + 12.0).abs() < 1e-10);
//! assert!((sols[0].eval(0.5)? + 0.5).abs() < 1e-12);
//! # Ok::<(), heun::Error>(())
//! ```

// `!(x > 0.0)` style tests are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod counters;
mod dd;
mod error;
pub mod frobenius;
pub mod oracle;
pub mod params;
pub mod spectral;

pub use error::{Error, Result};
pub use frobenius::{build_series, mutual_region, Center, EvalBundle, FrobeniusSeries, MutualRegion, SeriesOptions};
pub use params::{class_exponents, complete_riemann, existence_ok, ClassId, FunctionClass, HeunParameters, Side};
pub use spectral::{
    continuation_coefficient, eval_heun, find_eigenvalues, normalization_integral, orthonormal_basis, wronskian,
    EigenSolution, SolverOptions, SpectralBasis, WronskianSample,
};
