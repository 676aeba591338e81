//! Exact arithmetic for dynamical zeta functions on positive-characteristic
//! tori, plus the rationality diagnostics used to probe them.
//!
//! A matrix A over F_q\[t\] acts by multiplication on the compact group
//! (F_q((1/t))/F_q\[t\])^d. This crate computes the fixed-point counts
//! N_k = |det(A^k - I)| exactly, extracts the eigenvalue data governing
//! them, classifies the zeta function exp(sum N_k z^k / k) as algebraic
//! (with an explicit closed form) or transcendental (with the radius of its
//! natural boundary), and ships the companion diagnostic toolkit: Hankel
//! determinants over Q(p^(1/s)), Kronecker-style rationality detection,
//! minimal-recurrence fitting, denominator-growth tracking, and the sparse
//! exceptional sets along which denominators are allowed to blow up.
//!
//! Modules, bottom of the stack first:
//!
//! - [`gfq`] — finite fields GF(p^e) and towers GF(q^d), polynomial
//!   factorization, multiplicative orders.
//! - [`funcfield`] — F_q\[t\] linear algebra: exact determinants,
//!   characteristic polynomials, Smith normal form, the absolute value
//!   q^deg.
//! - [`newton`] — Newton polygons with respect to -deg_t: root valuations,
//!   residual polynomials, shifted polygons.
//! - [`zeta`] — the fixed-point oracle, spectral data, the
//!   algebraic/transcendental classifier, and exact series expansion.
//! - [`dichotomy`] — Hankel/Kronecker/recurrence machinery over Q and
//!   Q(p^(1/s)).
//! - [`report`] — JSON input/output schema and the pipelines behind the
//!   `torus-zeta` binary.
//!
//! All arithmetic is exact; the single floating-point surface is the
//! informational Hankel-decay report.

#![allow(clippy::needless_range_loop)] // indexed loops read better in the elimination kernels

pub mod dichotomy;
pub mod funcfield;
pub mod gfq;
pub mod newton;
pub mod report;
pub mod zeta;
