//! The dynamical zeta engine for multiplication-by-A maps on the torus
//! (F_q((1/t))/F_q\[t\])^d.
//!
//! The number of isolated fixed points of the k-th iterate is
//! N_k = |det(A^k - I)|, a power of q or zero. [`nk_oracle`] computes it
//! directly; [`spectral_data`] extracts the eigenvalue data (growth
//! exponent R, orders of root-of-unity eigenvalues, orders and maximal-
//! ideal magnitudes of the remaining unit eigenvalues) from which
//! [`nk_formula`] reproduces every N_k by pure exponent arithmetic, and
//! [`classify`] decides whether zeta(z) = exp(sum N_k z^k / k) is
//! algebraic, assembling the closed form when it is.

mod series;
mod spectral;

pub use series::{
    closed_form_series, dichotomy_coefficients, radical_index, zeta_series, ZetaSeries,
};
pub use spectral::spectral_data;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

use crate::funcfield::{abs_value, AbsVal, PolyMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("spectral bookkeeping failed a cross-check: {0}")]
    InternalInconsistency(String),
    #[error("fixed-point exponent is not a nonnegative integer (spectral data is wrong)")]
    NonIntegerExponent,
    #[error("series needs N_k up to k = {needed}, sequence stops at {available}")]
    InsufficientTerms { needed: usize, available: usize },
}

/// An exact fixed-point count: zero or a power of q, stored as the
/// exponent so the integer is never expanded unless asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NkValue {
    Zero,
    QPow(u64),
}

impl NkValue {
    pub fn is_zero(self) -> bool {
        matches!(self, NkValue::Zero)
    }

    pub fn exponent(self) -> Option<u64> {
        match self {
            NkValue::Zero => None,
            NkValue::QPow(e) => Some(e),
        }
    }

    pub fn to_biguint(self, q: u64) -> num_bigint::BigUint {
        use num_bigint::BigUint;
        match self {
            NkValue::Zero => BigUint::zero(),
            NkValue::QPow(e) => BigUint::from(q).pow(e.try_into().expect("desk-scale exponent")),
        }
    }
}

/// N_k = |det(A^k - I)|: q^deg of the determinant, or 0 when A^k fixes a
/// positive-dimensional subgroup and no fixed point is isolated.
pub fn nk_oracle(a: &PolyMatrix, k: u64) -> NkValue {
    debug_assert!(k >= 1);
    let m = a.pow(k).sub_identity();
    match abs_value(&m.det()) {
        AbsVal::Zero => NkValue::Zero,
        AbsVal::QPow(e) => NkValue::QPow(e as u64),
    }
}

/// The sequence N_1..N_kmax, computed with incremental matrix powers and
/// an optional fan-out across worker threads (results are assembled in
/// index order, so the output does not depend on the thread count).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NkSequence {
    q: u64,
    values: Vec<NkValue>,
}

impl NkSequence {
    pub fn compute(a: &PolyMatrix, kmax: u64) -> NkSequence {
        NkSequence::compute_with_threads(a, kmax, default_threads())
    }

    pub fn compute_with_threads(a: &PolyMatrix, kmax: u64, threads: usize) -> NkSequence {
        let q = a.field().order();
        let kmax = kmax as usize;
        let workers = threads.clamp(1, kmax.max(1));
        let mut values = vec![NkValue::Zero; kmax];
        if kmax == 0 {
            return NkSequence { q, values };
        }
        let chunk = kmax.div_ceil(workers);
        let slots: Vec<&mut [NkValue]> = values.chunks_mut(chunk).collect();
        std::thread::scope(|scope| {
            for (w, slot) in slots.into_iter().enumerate() {
                let a = &a;
                scope.spawn(move || {
                    let start = (w * chunk + 1) as u64;
                    let mut power = a.pow(start);
                    for (i, out) in slot.iter_mut().enumerate() {
                        if i > 0 {
                            power = power.mul(a);
                        }
                        *out = match abs_value(&power.sub_identity().det()) {
                            AbsVal::Zero => NkValue::Zero,
                            AbsVal::QPow(e) => NkValue::QPow(e as u64),
                        };
                    }
                });
            }
        });
        NkSequence { q, values }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn kmax(&self) -> usize {
        self.values.len()
    }

    /// N_k for 1 <= k <= kmax.
    pub fn get(&self, k: usize) -> NkValue {
        self.values[k - 1]
    }

    pub fn values(&self) -> &[NkValue] {
        &self.values
    }

    pub fn from_values(q: u64, values: Vec<NkValue>) -> NkSequence {
        NkSequence { q, values }
    }
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// One class of root-of-unity eigenvalues: everything of a given
/// multiplicative order, counted with algebraic multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RouClass {
    pub order: u64,
    pub multiplicity: usize,
}

/// One class of unit eigenvalues that are not roots of unity: common
/// residue order n, common maximal-ideal magnitude |eta - residue| =
/// q^(-eta1_exponent), counted with multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitClass {
    pub order: u64,
    /// Positive rational w with |eta_(1)| = q^(-w).
    pub eta1_exponent: Rational64,
    pub multiplicity: usize,
}

/// Everything the fixed-point formula and the classifier consume.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralData {
    pub q: u64,
    pub p: u64,
    /// q = p^e.
    pub e: u32,
    pub dim: usize,
    /// Growth exponent R >= 0: the product of max(1, |lambda|) over the
    /// eigenvalues is q^R, the reciprocal radius of convergence.
    pub r_exponent: u64,
    /// Root-of-unity eigenvalue classes, ascending order, aggregated.
    pub rou: Vec<RouClass>,
    /// Unit non-root-of-unity classes, ascending (order, exponent).
    pub unit_nonrou: Vec<UnitClass>,
    pub zero_eigen_multiplicity: usize,
    /// Eigenvalues with |lambda| > 1, with multiplicity.
    pub big_eigen_count: usize,
    /// Eigenvalues with 0 < |lambda| < 1, with multiplicity.
    pub small_eigen_count: usize,
}

impl SpectralData {
    /// True when fixed-point counts vanish for some iterates but not all:
    /// a root-of-unity eigenvalue exists, yet none of order 1.
    pub fn mixed_degeneracy(&self) -> bool {
        !self.rou.is_empty() && self.rou.iter().all(|c| c.order > 1)
    }

    /// p^(v_p(k)) * sum of eta1 exponents over classes with order dividing
    /// k: the total unit-eigenvalue deduction in the exponent of N_k.
    fn unit_deduction(&self, k: u64) -> Rational64 {
        let p_pow = self.p.pow(padic_valuation(k, self.p)) as i64;
        let mut total = Rational64::zero();
        for c in &self.unit_nonrou {
            if k.is_multiple_of(c.order) {
                total += c.eta1_exponent * Rational64::from_integer(c.multiplicity as i64);
            }
        }
        total * Rational64::from_integer(p_pow)
    }

    /// The exact q-exponent of c_k = N_k / q^(Rk), or None when N_k = 0.
    /// Always <= 0; its denominator divides the radical index.
    pub fn c_exponent_q(&self, k: u64) -> Option<Rational64> {
        if self.rou.iter().any(|c| k.is_multiple_of(c.order)) {
            return None;
        }
        Some(-self.unit_deduction(k))
    }
}

/// v_p(k): the exponent of p in k.
pub fn padic_valuation(k: u64, p: u64) -> u32 {
    debug_assert!(k >= 1 && p >= 2);
    let mut v = 0u32;
    let mut k = k;
    while k.is_multiple_of(p) {
        k /= p;
        v += 1;
    }
    v
}

/// N_k assembled from spectral data alone: 0 when a root-of-unity
/// eigenvalue's order divides k, otherwise q raised to
/// Rk - p^(v_p(k)) * sum of the eta1 exponents whose orders divide k.
/// The exponent must come out a nonnegative integer; anything else means
/// the spectral data is wrong.
pub fn nk_formula(s: &SpectralData, k: u64) -> Result<NkValue, Error> {
    debug_assert!(k >= 1);
    if s.rou.iter().any(|c| k.is_multiple_of(c.order)) {
        return Ok(NkValue::Zero);
    }
    let exponent = Rational64::from_integer((s.r_exponent * k) as i64) - s.unit_deduction(k);
    if !exponent.is_integer() || exponent.is_negative() {
        return Err(Error::NonIntegerExponent);
    }
    Ok(NkValue::QPow(exponent.to_integer() as u64))
}

/// One subset term of the closed form: the factor
/// (1 - (q^R z)^lcm)^(sign / lcm) for a nonempty subset of the
/// root-of-unity classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetFactor {
    /// Indices into [`SpectralData::rou`].
    pub indices: Vec<usize>,
    pub lcm: u64,
    pub exponent: Rational64,
}

/// The closed form of an algebraic zeta function: the leading factor
/// (1 - q^R z)^(-1) times the inclusion-exclusion product over subsets of
/// root-of-unity classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub r_exponent: u64,
    /// The raw 2^M - 1 subset expansion.
    pub subset_factors: Vec<SubsetFactor>,
    /// Merged exponents per lcm value, the leading (1, -1) included and
    /// zero exponents dropped: the canonical form for reports.
    pub combined: Vec<(u64, Rational64)>,
}

impl ClosedForm {
    /// True when the merged exponents are all integers, i.e. the zeta
    /// function is rational rather than merely algebraic.
    pub fn is_rational(&self) -> bool {
        self.combined.iter().all(|(_, e)| e.is_integer())
    }

    /// An empty combined list means the factors cancel and zeta = 1.
    pub fn is_one(&self) -> bool {
        self.combined.is_empty()
    }
}

/// The outcome of the dichotomy for one matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZetaVerdict {
    Algebraic {
        closed_form: ClosedForm,
        /// All merged exponents integral.
        rational: bool,
    },
    Transcendental {
        /// The circle |z| = 1/q^R is a natural boundary.
        boundary_q_exponent: u64,
        /// Index into `unit_nonrou` of a class whose order no
        /// root-of-unity order divides.
        witness: usize,
    },
}

/// Decides the dichotomy: algebraic exactly when every unit
/// non-root-of-unity order n_j is divisible by some root-of-unity order
/// m_i (vacuously true when there are no such eigenvalues).
pub fn classify(s: &SpectralData) -> ZetaVerdict {
    let witness = s
        .unit_nonrou
        .iter()
        .position(|u| !s.rou.iter().any(|r| u.order % r.order == 0));
    match witness {
        Some(j) => {
            ZetaVerdict::Transcendental { boundary_q_exponent: s.r_exponent, witness: j }
        }
        None => {
            let closed_form = assemble_closed_form(s);
            let rational = closed_form.is_rational();
            ZetaVerdict::Algebraic { closed_form, rational }
        }
    }
}

fn assemble_closed_form(s: &SpectralData) -> ClosedForm {
    let m = s.rou.len();
    let mut subset_factors = Vec::with_capacity((1usize << m).saturating_sub(1));
    let mut combined: BTreeMap<u64, Rational64> = BTreeMap::new();
    combined.insert(1, -Rational64::one());
    for mask in 1u32..(1u32 << m) {
        let indices: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        let l = indices.iter().fold(1u64, |acc, &i| num_integer::lcm(acc, s.rou[i].order));
        let sign = if indices.len() % 2 == 1 { 1 } else { -1 };
        let exponent = Rational64::new(sign, l as i64);
        *combined.entry(l).or_insert_with(Rational64::zero) += exponent;
        subset_factors.push(SubsetFactor { indices, lcm: l, exponent });
    }
    let combined: Vec<(u64, Rational64)> =
        combined.into_iter().filter(|(_, e)| !e.is_zero()).collect();
    ClosedForm { r_exponent: s.r_exponent, subset_factors, combined }
}
