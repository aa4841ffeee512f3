//! Per-thread evaluation counters used to compare the cost of the closed-form
//! normalization against quadrature.

use std::cell::Cell;

thread_local! {
    static SERIES_EVALS: Cell<u64> = const { Cell::new(0) };
    static PAIR_EVALS: Cell<u64> = const { Cell::new(0) };
    static INTEGRAND_EVALS: Cell<u64> = const { Cell::new(0) };
}

/// Snapshot of the counters on the current thread.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    /// Evaluations of a single local series (one [`crate::frobenius::EvalBundle`]).
    pub series: u64,
    /// Evaluations of the `(y₀, y₁)` pair at one point (one Wronskian sample).
    pub pairs: u64,
    /// Integrand evaluations performed by the quadrature oracle.
    pub integrand: u64,
}

impl std::ops::Sub for Counts {
    type Output = Counts;

    fn sub(self, rhs: Counts) -> Counts {
        Counts {
            series: self.series - rhs.series,
            pairs: self.pairs - rhs.pairs,
            integrand: self.integrand - rhs.integrand,
        }
    }
}

pub fn snapshot() -> Counts {
    Counts {
        series: SERIES_EVALS.with(Cell::get),
        pairs: PAIR_EVALS.with(Cell::get),
        integrand: INTEGRAND_EVALS.with(Cell::get),
    }
}

pub(crate) fn bump_series() {
    SERIES_EVALS.with(|c| c.set(c.get() + 1));
}

pub(crate) fn bump_pair() {
    PAIR_EVALS.with(|c| c.set(c.get() + 1));
}

pub(crate) fn bump_integrand() {
    INTEGRAND_EVALS.with(|c| c.set(c.get() + 1));
}
