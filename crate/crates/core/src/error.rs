use thiserror::Error;

use crate::params::ClassId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{0}` is not a finite number")]
    NonFinite(&'static str),

    #[error("Riemann relation violated: alpha + beta - gamma - delta - epsilon + 1 = {residual:e}")]
    RiemannViolation { residual: f64 },

    #[error("singular point a = {a} lies inside [0, 1]")]
    SingularityInInterval { a: f64 },

    #[error("x = {x} is outside the open interval (0, 1)")]
    Domain { x: f64 },

    #[error("tolerance must be positive, got {0}")]
    NonPositiveTol(f64),

    #[error("series did not reach tolerance within {max_order} terms")]
    NoConvergence { max_order: usize },

    #[error("|x - center| = {distance} is not inside the convergence radius {radius}")]
    OutsideRadius { distance: f64, radius: f64 },

    #[error("the two local series have no usable region of mutual convergence")]
    EmptyRegion,

    #[error("existence conditions fail for class {0}")]
    ExistenceViolated(ClassId),

    #[error("x = {x} is outside the mutual convergence region [{lo}, {hi}]")]
    OutsideMutualRegion { x: f64, lo: f64, hi: f64 },

    #[error("invalid eigenvalue window [{lo}, {hi}]")]
    InvalidWindow { lo: f64, hi: f64 },

    #[error("lost the sign change while refining the root in [{lo}, {hi}]")]
    BracketFailure { lo: f64, hi: f64 },

    #[error("root near lambda = {lambda} is degenerate (dW/dlambda vanishes)")]
    DegenerateRoot { lambda: f64 },

    #[error("continuation coefficient varies across the mutual region (relative spread {spread:e})")]
    InconsistentContinuation { spread: f64 },

    #[error("normalization integral is not x-invariant (relative spread {spread:e})")]
    InvarianceViolation { spread: f64 },

    #[error("normalization integral evaluated to non-positive value {value:e}")]
    NonPositiveNorm { value: f64 },

    #[error("ODE integrator failed at x = {x}: {reason}")]
    IntegratorFailure { x: f64, reason: &'static str },

    #[error("quadrature tolerance not met (error estimate {estimate:e})")]
    ToleranceNotMet { estimate: f64 },
}
