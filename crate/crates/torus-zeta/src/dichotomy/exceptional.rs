//! The sparse exceptional sets along which coefficient denominators are
//! allowed to blow up, and vanishing polynomials over them.
//!
//! S is the union over l >= 1 of the slices
//!   S_l = { k in (p^(l-1), p^l] : k = 0 mod p^(l - floor(log_p l)) },
//! so |S_l| <= l and |S cap \[1, n\]| = O((log n)^2). Inside each slice the
//! modulus keeps only the k whose p-adic valuation is within about
//! log_p(l) of the maximum possible, which is exactly where the
//! denominators of the normalized fixed-point ratios spike.

use num_bigint::BigInt;

use super::qpoly::{Q, QPoly};
use crate::gfq::intfactor::is_prime;

#[derive(Debug, Clone)]
pub struct ExceptionalSet {
    p: u64,
    bound: u64,
    members: Vec<u64>,
}

/// Members of S up to `bound`, by direct evaluation of the slice
/// congruences in integer arithmetic (floor(log_p l) is computed by
/// comparing powers, never through floats).
pub fn build_exceptional_set(p: u64, bound: u64) -> ExceptionalSet {
    assert!(is_prime(p), "exceptional sets are indexed by a prime");
    let mut members = Vec::new();
    let mut lower = 1u64; // p^(l-1)
    let mut l = 1u32;
    while lower <= bound {
        let upper = lower.saturating_mul(p).min(bound);
        let modulus = p.pow(l - floor_log(p, l as u64));
        // multiples of `modulus` in (lower, upper]
        let mut k = (lower / modulus + 1) * modulus;
        while k <= upper {
            members.push(k);
            k += modulus;
        }
        lower = lower.saturating_mul(p);
        l += 1;
    }
    ExceptionalSet { p, bound, members }
}

/// Largest j with p^j <= n (n >= 1).
fn floor_log(p: u64, n: u64) -> u32 {
    let mut j = 0u32;
    let mut pw = p;
    while pw <= n {
        j += 1;
        pw = pw.saturating_mul(p);
    }
    j
}

/// Smallest U with p^U >= n (n >= 1).
fn ceil_log(p: u64, n: u64) -> u32 {
    let mut u = 0u32;
    let mut pw = 1u64;
    while pw < n {
        u += 1;
        pw = pw.saturating_mul(p);
    }
    u
}

impl ExceptionalSet {
    /// The empty set (no indices are exempt).
    pub fn empty(p: u64) -> ExceptionalSet {
        ExceptionalSet { p, bound: 0, members: Vec::new() }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn contains(&self, k: u64) -> bool {
        debug_assert!(
            k <= self.bound || self.bound == 0,
            "membership query beyond the built bound"
        );
        self.members.binary_search(&k).is_ok()
    }

    /// |S cap \[1, n\]|.
    pub fn count_upto(&self, n: u64) -> usize {
        self.members.partition_point(|&k| k <= n)
    }

    /// The proof-shaped density ceiling (ceil(log_p n) + 1)^2; membership
    /// counts stay below it for every n.
    pub fn density_ceiling(&self, n: u64) -> u64 {
        let u = ceil_log(self.p, n.max(1)) as u64;
        (u + 1) * (u + 1)
    }
}

/// The monic integer polynomial with simple roots exactly S cap [1, bound].
pub fn vanishing_poly(s: &ExceptionalSet, bound: u64) -> QPoly {
    let mut out = QPoly::one();
    for &k in s.members() {
        if k > bound {
            break;
        }
        out = out.mul(&QPoly::linear_root(&Q::from_integer(BigInt::from(k))));
    }
    out
}
