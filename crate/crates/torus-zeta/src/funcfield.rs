//! Exact linear algebra over F_q\[t\] and the absolute value of the valued
//! field F_q((1/t)).
//!
//! Elements of F_q\[t\] are [`TPoly`] (polynomials in t); square matrices
//! over them are [`PolyMatrix`]. Determinants and characteristic
//! polynomials use fraction-free Bareiss elimination, whose divisions are
//! exact in any integral domain, so no division by integers ever happens
//! (safe in characteristic p). Smith normal form works over the Euclidean
//! domain F_q\[t\] with full transform tracking.

use std::sync::Arc;

use crate::gfq::{self, FFElem, FFPoly, Field};

/// Polynomials in the variable t over GF(q): the ring whose quotients the
/// torus is built from. Structurally identical to [`FFPoly`].
pub type TPoly = FFPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Field(#[from] gfq::Error),
}

/// The absolute value |x| = q^E on F_q((1/t)), stored as the exponent so
/// that q^E is never expanded. For a polynomial x, E = deg_t(x).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbsVal {
    Zero,
    QPow(i64),
}

impl AbsVal {
    pub fn exponent(self) -> Option<i64> {
        match self {
            AbsVal::Zero => None,
            AbsVal::QPow(e) => Some(e),
        }
    }
}

/// |x| = q^deg(x), |0| = 0.
pub fn abs_value(x: &TPoly) -> AbsVal {
    match x.degree() {
        None => AbsVal::Zero,
        Some(d) => AbsVal::QPow(d as i64),
    }
}

/// Entry-level operations Bareiss elimination needs; implemented by both
/// F_q\[t\] and F_q\[t\]\[X\].
trait DomainEntry: Clone {
    fn is_zero(&self) -> bool;
    fn one_like(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn exact_div(&self, rhs: &Self) -> Self;
}

impl DomainEntry for TPoly {
    fn is_zero(&self) -> bool {
        FFPoly::is_zero(self)
    }
    fn one_like(&self) -> Self {
        FFPoly::one(self.field())
    }
    fn mul(&self, rhs: &Self) -> Self {
        FFPoly::mul(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        FFPoly::sub(self, rhs)
    }
    fn neg(&self) -> Self {
        FFPoly::neg(self)
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        FFPoly::exact_div(self, rhs)
    }
}

impl DomainEntry for BiPoly {
    fn is_zero(&self) -> bool {
        BiPoly::is_zero(self)
    }
    fn one_like(&self) -> Self {
        BiPoly::one(self.field())
    }
    fn mul(&self, rhs: &Self) -> Self {
        BiPoly::mul(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        BiPoly::sub(self, rhs)
    }
    fn neg(&self) -> Self {
        BiPoly::neg(self)
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        BiPoly::exact_div(self, rhs)
    }
}

/// Fraction-free determinant of a square matrix over an integral domain.
/// Every division is by a previous pivot and is exact.
fn bareiss_det<T: DomainEntry>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    let one = m[0][0].one_like();
    let mut prev = one.clone();
    let mut negate = false;
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => {
                    // Whole column is zero below the diagonal: singular.
                    return m[0][0].sub(&m[0][0]);
                }
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.exact_div(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// A square matrix over F_q\[t\].
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    field: Arc<Field>,
    d: usize,
    entries: Vec<TPoly>, // row-major, length d*d
}

impl PolyMatrix {
    pub fn new(field: &Arc<Field>, d: usize, entries: Vec<TPoly>) -> Result<PolyMatrix, Error> {
        if entries.len() != d * d {
            return Err(Error::DimensionMismatch { expected: d * d, found: entries.len() });
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(PolyMatrix { field: Arc::clone(field), d, entries })
    }

    /// Convenience constructor: rows of integer-coefficient t-polynomials.
    pub fn from_int_rows(field: &Arc<Field>, rows: &[Vec<Vec<i64>>]) -> Result<PolyMatrix, Error> {
        let d = rows.len();
        let mut entries = Vec::with_capacity(d * d);
        for row in rows {
            if row.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: row.len() });
            }
            for e in row {
                entries.push(TPoly::from_ints(field, e));
            }
        }
        PolyMatrix::new(field, d, entries)
    }

    pub fn identity(field: &Arc<Field>, d: usize) -> PolyMatrix {
        let mut entries = vec![TPoly::zero(field); d * d];
        for i in 0..d {
            entries[i * d + i] = TPoly::one(field);
        }
        PolyMatrix { field: Arc::clone(field), d, entries }
    }

    pub fn zero(field: &Arc<Field>, d: usize) -> PolyMatrix {
        PolyMatrix { field: Arc::clone(field), d, entries: vec![TPoly::zero(field); d * d] }
    }

    pub fn diagonal(field: &Arc<Field>, diag: &[TPoly]) -> PolyMatrix {
        let d = diag.len();
        let mut m = PolyMatrix::zero(field, d);
        for (i, x) in diag.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn at(&self, i: usize, j: usize) -> &TPoly {
        &self.entries[i * self.d + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TPoly) {
        assert!(v.field() == &self.field);
        self.entries[i * self.d + j] = v;
    }

    pub fn add(&self, rhs: &PolyMatrix) -> PolyMatrix {
        self.zip(rhs, TPoly::add)
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> PolyMatrix {
        self.zip(rhs, TPoly::sub)
    }

    fn zip(&self, rhs: &PolyMatrix, f: impl Fn(&TPoly, &TPoly) -> TPoly) -> PolyMatrix {
        assert_eq!(self.d, rhs.d);
        assert!(self.field == rhs.field);
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect();
        PolyMatrix { field: Arc::clone(&self.field), d: self.d, entries }
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.d, rhs.d);
        assert!(self.field == rhs.field);
        let d = self.d;
        let mut out = PolyMatrix::zero(&self.field, d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = TPoly::zero(&self.field);
                for k in 0..d {
                    acc = acc.add(&self.at(i, k).mul(rhs.at(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Scalar multiplication by an element of F_q\[t\].
    pub fn scale(&self, c: &TPoly) -> PolyMatrix {
        let entries = self.entries.iter().map(|e| e.mul(c)).collect();
        PolyMatrix { field: Arc::clone(&self.field), d: self.d, entries }
    }

    /// M^k by binary exponentiation (k = 0 gives the identity).
    pub fn pow(&self, mut k: u64) -> PolyMatrix {
        let mut acc = PolyMatrix::identity(&self.field, self.d);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// self - identity.
    pub fn sub_identity(&self) -> PolyMatrix {
        self.sub(&PolyMatrix::identity(&self.field, self.d))
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> TPoly {
        let rows: Vec<Vec<TPoly>> =
            (0..self.d).map(|i| (0..self.d).map(|j| self.at(i, j).clone()).collect()).collect();
        if self.d == 0 {
            return TPoly::one(&self.field);
        }
        bareiss_det(rows)
    }

    /// The characteristic polynomial det(X I - M) as a monic element of
    /// F_q\[t\]\[X\], computed fraction-free over the bivariate domain.
    pub fn charpoly(&self) -> BiPoly {
        let x = BiPoly::new(
            &self.field,
            vec![TPoly::zero(&self.field), TPoly::one(&self.field)],
        );
        let rows: Vec<Vec<BiPoly>> = (0..self.d)
            .map(|i| {
                (0..self.d)
                    .map(|j| {
                        let e = BiPoly::constant(self.at(i, j).clone()).neg();
                        if i == j {
                            x.add(&e)
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect();
        if self.d == 0 {
            return BiPoly::one(&self.field);
        }
        let chi = bareiss_det(rows);
        debug_assert_eq!(chi.deg_x(), Some(self.d));
        debug_assert!(chi.leading_x().is_some_and(|c| c.is_one()));
        chi
    }

    /// Evaluates a bivariate polynomial at this matrix:
    /// sum c_i(t) * M^i. Used for Cayley-Hamilton style cross-checks.
    pub fn eval_bipoly(&self, chi: &BiPoly) -> PolyMatrix {
        let mut acc = PolyMatrix::zero(&self.field, self.d);
        let mut pow = PolyMatrix::identity(&self.field, self.d);
        for (i, c) in chi.coeffs_x().iter().enumerate() {
            if i > 0 {
                pow = pow.mul(self);
            }
            acc = acc.add(&pow.scale(c));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TPoly::is_zero)
    }
}

impl std::fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.d {
            write!(f, "  [")?;
            for j in 0..self.d {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Smith normal form U M V = D with unimodular U, V and monic invariant
/// factors b_1 | b_2 | ... | b_d on the diagonal of D.
pub struct SmithNormalForm {
    pub u: PolyMatrix,
    pub d: PolyMatrix,
    pub v: PolyMatrix,
    pub invariant_factors: Vec<TPoly>,
}

/// Smith normal form of a nonsingular matrix over F_q\[t\]. Pivots are the
/// smallest-degree nonzero entries (row-major tie break), which makes the
/// transform deterministic.
pub fn smith_normal_form(m: &PolyMatrix) -> Result<SmithNormalForm, Error> {
    if m.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let field = m.field().clone();
    let n = m.dim();
    let mut d = m.clone();
    let mut u = PolyMatrix::identity(&field, n);
    let mut v = PolyMatrix::identity(&field, n);

    for r in 0..n {
        loop {
            // Smallest-degree nonzero pivot in the trailing submatrix.
            let mut pivot: Option<(usize, usize, usize)> = None;
            for i in r..n {
                for j in r..n {
                    if let Some(deg) = d.at(i, j).degree() {
                        if pivot.is_none_or(|(_, _, best)| deg < best) {
                            pivot = Some((i, j, deg));
                        }
                    }
                }
            }
            let (pi, pj, _) = pivot.expect("nonsingular matrix has a pivot in every step");
            if pi != r {
                swap_rows(&mut d, r, pi);
                swap_rows(&mut u, r, pi);
            }
            if pj != r {
                swap_cols(&mut d, r, pj);
                swap_cols(&mut v, r, pj);
            }

            // Euclidean reduction of the pivot column and row.
            let mut clean = true;
            for i in r + 1..n {
                if d.at(i, r).is_zero() {
                    continue;
                }
                let (q, rem) = d.at(i, r).div_rem(d.at(r, r))?;
                row_sub_mul(&mut d, i, r, &q);
                row_sub_mul(&mut u, i, r, &q);
                if !rem.is_zero() {
                    clean = false;
                }
            }
            for j in r + 1..n {
                if d.at(r, j).is_zero() {
                    continue;
                }
                let (q, rem) = d.at(r, j).div_rem(d.at(r, r))?;
                col_sub_mul(&mut d, j, r, &q);
                col_sub_mul(&mut v, j, r, &q);
                if !rem.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue; // leftover remainders become the next, smaller pivot
            }

            // Pivot must divide the whole trailing submatrix for the
            // divisibility chain; fold a violating row into the pivot row
            // and repeat.
            let mut violating = None;
            'scan: for i in r + 1..n {
                for j in r + 1..n {
                    if !d.at(r, r).divides(d.at(i, j)) {
                        violating = Some(i);
                        break 'scan;
                    }
                }
            }
            match violating {
                Some(i) => {
                    row_add(&mut d, r, i);
                    row_add(&mut u, r, i);
                }
                None => break,
            }
        }
    }

    // Normalize the invariant factors to be monic by scaling rows of D
    // (units keep U unimodular).
    for r in 0..n {
        let lc = d.at(r, r).leading().cloned().expect("nonsingular diagonal");
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            row_scale(&mut d, r, &inv);
            row_scale(&mut u, r, &inv);
        }
    }

    let factors: Vec<TPoly> = (0..n).map(|i| d.at(i, i).clone()).collect();
    debug_assert!(u.mul(m).mul(&v) == d, "U M V != D");
    debug_assert!(factors.windows(2).all(|w| w[0].divides(&w[1])), "divisibility chain broken");
    debug_assert_eq!(u.det().degree(), Some(0));
    debug_assert_eq!(v.det().degree(), Some(0));
    Ok(SmithNormalForm { u, d, v, invariant_factors: factors })
}

fn swap_rows(m: &mut PolyMatrix, a: usize, b: usize) {
    let n = m.dim();
    for j in 0..n {
        let x = m.at(a, j).clone();
        let y = m.at(b, j).clone();
        m.set(a, j, y);
        m.set(b, j, x);
    }
}

fn swap_cols(m: &mut PolyMatrix, a: usize, b: usize) {
    let n = m.dim();
    for i in 0..n {
        let x = m.at(i, a).clone();
        let y = m.at(i, b).clone();
        m.set(i, a, y);
        m.set(i, b, x);
    }
}

/// row_i -= q * row_r
fn row_sub_mul(m: &mut PolyMatrix, i: usize, r: usize, q: &TPoly) {
    let n = m.dim();
    for j in 0..n {
        let v = m.at(i, j).sub(&q.mul(m.at(r, j)));
        m.set(i, j, v);
    }
}

/// col_j -= q * col_r
fn col_sub_mul(m: &mut PolyMatrix, j: usize, r: usize, q: &TPoly) {
    let n = m.dim();
    for i in 0..n {
        let v = m.at(i, j).sub(&q.mul(m.at(i, r)));
        m.set(i, j, v);
    }
}

/// row_r += row_i
fn row_add(m: &mut PolyMatrix, r: usize, i: usize) {
    let n = m.dim();
    for j in 0..n {
        let v = m.at(r, j).add(m.at(i, j));
        m.set(r, j, v);
    }
}

fn row_scale(m: &mut PolyMatrix, r: usize, c: &FFElem) {
    let n = m.dim();
    for j in 0..n {
        let v = m.at(r, j).scale(c);
        m.set(r, j, v);
    }
}

/// Number of fixed points of the multiplication-by-B map on the torus,
/// computed through the Smith normal form of B - I: the product of
/// q^deg(b_i) over the invariant factors, or 0 when B - I is singular.
/// Serves as an oracle independent of the determinant route.
pub fn fixed_point_count_snf(b: &PolyMatrix) -> num_bigint::BigUint {
    use num_bigint::BigUint;
    let c = b.sub_identity();
    if c.det().is_zero() {
        return BigUint::from(0u32);
    }
    let snf = smith_normal_form(&c).expect("nonsingular by the det check");
    let q = BigUint::from(b.field().order());
    let mut count = BigUint::from(1u32);
    for f in &snf.invariant_factors {
        count *= q.pow(f.degree().unwrap() as u32);
    }
    count
}

/// An element of F_q\[t\]\[X\], little-endian in X. Characteristic polynomials
/// live here: the roots in X are the matrix eigenvalues.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: Arc<Field>,
    coeffs: Vec<TPoly>,
}

impl BiPoly {
    pub fn new(field: &Arc<Field>, mut coeffs: Vec<TPoly>) -> BiPoly {
        assert!(coeffs.iter().all(|c| c.field() == field));
        while coeffs.last().is_some_and(TPoly::is_zero) {
            coeffs.pop();
        }
        BiPoly { field: Arc::clone(field), coeffs }
    }

    pub fn zero(field: &Arc<Field>) -> BiPoly {
        BiPoly { field: Arc::clone(field), coeffs: Vec::new() }
    }

    pub fn one(field: &Arc<Field>) -> BiPoly {
        BiPoly::constant(TPoly::one(field))
    }

    pub fn constant(c: TPoly) -> BiPoly {
        let field = Arc::clone(c.field());
        BiPoly::new(&field, vec![c])
    }

    /// Promotes a polynomial with constant coefficients (an element of
    /// GF(q)\[X\]) into F_q\[t\]\[X\].
    pub fn from_x_poly(p: &FFPoly) -> BiPoly {
        let field = Arc::clone(p.field());
        let coeffs = p.coeffs().iter().map(|c| TPoly::constant(c.clone())).collect();
        BiPoly::new(&field, coeffs)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs_x(&self) -> &[TPoly] {
        &self.coeffs
    }

    pub fn coeff_x(&self, i: usize) -> TPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| TPoly::zero(&self.field))
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_x(&self) -> Option<&TPoly> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, rhs: &BiPoly) -> BiPoly {
        assert!(self.field == rhs.field);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff_x(i).add(&rhs.coeff_x(i)));
        }
        BiPoly::new(&self.field, out)
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly { field: Arc::clone(&self.field), coeffs: self.coeffs.iter().map(TPoly::neg).collect() }
    }

    pub fn sub(&self, rhs: &BiPoly) -> BiPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &BiPoly) -> BiPoly {
        assert!(self.field == rhs.field);
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero(&self.field);
        }
        let mut out = vec![TPoly::zero(&self.field); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        BiPoly::new(&self.field, out)
    }

    pub fn pow(&self, mut k: u64) -> BiPoly {
        let mut acc = BiPoly::one(&self.field);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Long division in X that succeeds only when the division is exact;
    /// every leading-coefficient division in F_q\[t\] is then exact too.
    pub fn exact_div(&self, divisor: &BiPoly) -> BiPoly {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return BiPoly::zero(&self.field);
        }
        let ddeg = divisor.deg_x().unwrap();
        let dlc = divisor.leading_x().unwrap();
        let mut rem = self.coeffs.clone();
        assert!(rem.len() > ddeg, "inexact bivariate division");
        let qlen = rem.len() - ddeg;
        let mut quot = vec![TPoly::zero(&self.field); qlen];
        for k in (0..qlen).rev() {
            if rem[k + ddeg].is_zero() {
                continue;
            }
            let c = rem[k + ddeg].exact_div(dlc);
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].sub(&c.mul(d));
            }
            quot[k] = c;
        }
        assert!(rem.iter().all(TPoly::is_zero), "inexact bivariate division");
        BiPoly::new(&self.field, quot)
    }

    /// Whether self divides other exactly in F_q\[t\]\[X\].
    pub fn divides(&self, other: &BiPoly) -> bool {
        if other.is_zero() {
            return true;
        }
        if self.is_zero() {
            return false;
        }
        let ddeg = self.deg_x().unwrap();
        let dlc = self.leading_x().unwrap();
        let mut rem = other.coeffs.clone();
        if rem.len() < ddeg + 1 {
            return false;
        }
        let qlen = rem.len() - ddeg;
        for k in (0..qlen).rev() {
            if rem[k + ddeg].is_zero() {
                continue;
            }
            let (c, r) = rem[k + ddeg].div_rem(dlc).expect("nonzero leading coefficient");
            if !r.is_zero() {
                return false;
            }
            for (i, d) in self.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].sub(&c.mul(d));
            }
        }
        rem.iter().all(TPoly::is_zero)
    }

    /// The t-degree slice: the polynomial sum_j ([t^m] c_j) X^j over GF(q).
    pub fn t_slice(&self, m: usize) -> FFPoly {
        let coeffs: Vec<FFElem> = self.coeffs.iter().map(|c| c.coeff(m)).collect();
        FFPoly::new(&self.field, coeffs)
    }

    /// Largest t-degree appearing in any coefficient.
    pub fn max_t_degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(TPoly::degree).max()
    }

    /// Maps coefficients into a direct extension of the coefficient field.
    pub fn lift_to(&self, ext: &Arc<Field>) -> Result<BiPoly, Error> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let lifted: Result<Vec<FFElem>, gfq::Error> =
                    c.coeffs().iter().map(|e| e.embed_into(ext)).collect();
                Ok(TPoly::new(ext, lifted?))
            })
            .collect::<Result<Vec<TPoly>, gfq::Error>>()?;
        Ok(BiPoly::new(ext, coeffs))
    }
}

/// The substitution X -> X + shift for a constant shift in the coefficient
/// field, by Horner re-expansion. Roots move by -shift.
pub fn bipoly_shift(chi: &BiPoly, shift: &FFElem) -> Result<BiPoly, Error> {
    if shift.field() != chi.field() {
        return Err(Error::FieldMismatch);
    }
    let field = chi.field();
    let x_plus = BiPoly::new(
        field,
        vec![TPoly::constant(shift.clone()), TPoly::one(field)],
    );
    let mut acc = BiPoly::zero(field);
    for c in chi.coeffs_x().iter().rev() {
        acc = acc.mul(&x_plus).add(&BiPoly::constant(c.clone()));
    }
    Ok(acc)
}

impl std::fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c:?})")?,
                1 => write!(f, "({c:?})*X")?,
                _ => write!(f, "({c:?})*X^{i}")?,
            }
        }
        Ok(())
    }
}
