//! Rationality diagnostics over Q and Q(p^(1/s)): exact Hankel
//! determinants, Kronecker-style detection of rational generating
//! functions, norms and denominators, lcm-growth tracking, binomial-basis
//! bounds, minimal-recurrence fitting, and the sparse exceptional sets
//! that exempt denominator spikes.
//!
//! Everything is exact except [`polya_decay_report`], which converts exact
//! determinants to floats for display.

mod exceptional;
mod fit;
pub mod qpoly;
mod radical;
mod window;

pub use exceptional::{build_exceptional_set, vanishing_poly, ExceptionalSet};
pub use fit::{binomial_basis, fit_polyexp, fit_rationals, regenerate, BinomialBasis, RecurrenceFit};
pub use qpoly::{q_int, q_ratio, q_string, QPoly, Q};
pub use radical::{denominator, field_norm, RElem, RadicalField};
pub use window::{
    big_ln, expand_rational, hankel_det, kronecker_detect, lcm_den_growth,
    multiply_window_by_poly, polya_decay_report, rational_window, LcmGrowthReport, PolyaDecayRow,
    SeriesWindow,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("window too short: operation needs {needed} coefficients, only {available} available")]
    WindowTooShort { needed: usize, available: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("window has irrational entries; project or norm it first")]
    NotRationalWindow,
    #[error("{0} is not prime")]
    NonPrime(u64),
}
