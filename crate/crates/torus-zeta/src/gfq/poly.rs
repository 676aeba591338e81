//! Dense univariate polynomials over a finite field, little-endian
//! coefficient order. The zero polynomial is the empty coefficient vector;
//! otherwise the leading coefficient is nonzero.

use std::fmt;
use std::sync::Arc;

use super::field::{FFElem, Field};
use super::Error;

#[derive(Clone, PartialEq, Eq)]
pub struct FFPoly {
    field: Arc<Field>,
    coeffs: Vec<FFElem>,
}

impl FFPoly {
    /// Builds a polynomial, trimming leading zeros.
    pub fn new(field: &Arc<Field>, mut coeffs: Vec<FFElem>) -> FFPoly {
        assert!(coeffs.iter().all(|c| c.field() == field), "coefficient from a different field");
        while coeffs.last().is_some_and(FFElem::is_zero) {
            coeffs.pop();
        }
        FFPoly { field: Arc::clone(field), coeffs }
    }

    pub fn zero(field: &Arc<Field>) -> FFPoly {
        FFPoly { field: Arc::clone(field), coeffs: Vec::new() }
    }

    pub fn one(field: &Arc<Field>) -> FFPoly {
        FFPoly::constant(FFElem::one(field))
    }

    pub fn constant(c: FFElem) -> FFPoly {
        let field = Arc::clone(c.field());
        FFPoly::new(&field, vec![c])
    }

    /// x^k with unit coefficient.
    pub fn monomial(field: &Arc<Field>, k: usize) -> FFPoly {
        let mut coeffs = vec![FFElem::zero(field); k + 1];
        coeffs[k] = FFElem::one(field);
        FFPoly { field: Arc::clone(field), coeffs }
    }

    /// Convenience constructor from integers (images of n * 1 in the field).
    pub fn from_ints(field: &Arc<Field>, ints: &[i64]) -> FFPoly {
        FFPoly::new(field, ints.iter().map(|&n| FFElem::from_int(field, n)).collect())
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FFElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| FFElem::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FFElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(FFElem::is_one)
    }

    pub fn add(&self, rhs: &FFPoly) -> FFPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&rhs.coeff(i)));
        }
        FFPoly::new(&self.field, out)
    }

    pub fn neg(&self) -> FFPoly {
        FFPoly { field: Arc::clone(&self.field), coeffs: self.coeffs.iter().map(FFElem::neg).collect() }
    }

    pub fn sub(&self, rhs: &FFPoly) -> FFPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &FFPoly) -> FFPoly {
        if self.is_zero() || rhs.is_zero() {
            return FFPoly::zero(&self.field);
        }
        let mut out = vec![FFElem::zero(&self.field); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        FFPoly::new(&self.field, out)
    }

    pub fn scale(&self, c: &FFElem) -> FFPoly {
        FFPoly::new(&self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, mut exp: u64) -> FFPoly {
        let mut acc = FFPoly::one(&self.field);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, divisor: &FFPoly) -> Result<(FFPoly, FFPoly), Error> {
        let ddeg = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = divisor.leading().unwrap().inv().expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() < ddeg + 1 {
            return Ok((FFPoly::zero(&self.field), self.clone()));
        }
        let qlen = rem.len() - ddeg;
        let mut quot = vec![FFElem::zero(&self.field); qlen];
        for k in (0..qlen).rev() {
            let c = rem[k + ddeg].mul(&lc_inv);
            if c.is_zero() {
                continue;
            }
            quot[k] = c.clone();
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].sub(&c.mul(d));
            }
        }
        Ok((FFPoly::new(&self.field, quot), FFPoly::new(&self.field, rem)))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &FFPoly) -> FFPoly {
        let (q, r) = self.div_rem(divisor).expect("division by zero polynomial");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &FFPoly) -> bool {
        match other.div_rem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// Monic scalar multiple (zero stays zero).
    pub fn monic(&self) -> FFPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().unwrap()),
        }
    }

    /// Monic greatest common divisor. Errors when both inputs are zero.
    pub fn gcd(&self, other: &FFPoly) -> Result<FFPoly, Error> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Formal derivative.
    pub fn derivative(&self) -> FFPoly {
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.mul(&FFElem::from_int(&self.field, i as i64)));
        }
        FFPoly::new(&self.field, out)
    }

    pub fn eval(&self, x: &FFElem) -> FFElem {
        let mut acc = FFElem::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// self^exp mod m by square-and-multiply.
    pub fn pow_mod(&self, mut exp: u128, m: &FFPoly) -> Result<FFPoly, Error> {
        let mut acc = FFPoly::one(&self.field);
        let mut base = self.div_rem(m)?.1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).div_rem(m)?.1;
            }
            base = base.mul(&base).div_rem(m)?.1;
            exp >>= 1;
        }
        Ok(acc)
    }

    /// Monic polynomial with the same roots, all simple. Handles the
    /// characteristic-p degeneracy f' = 0 (f a p-th power) by extracting
    /// p-th roots of the surviving coefficients and recursing.
    pub fn squarefree_part(&self) -> Result<FFPoly, Error> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.monic();
        if f.degree() == Some(0) {
            return Ok(FFPoly::one(&self.field));
        }
        let df = f.derivative();
        if df.is_zero() {
            // f(x) = g(x^p) with g built from p-th roots of the coefficients.
            let p = self.field.characteristic() as usize;
            let mut g = Vec::new();
            for (i, c) in f.coeffs.iter().enumerate() {
                if i % p == 0 {
                    g.push(c.pth_root());
                } else {
                    debug_assert!(c.is_zero());
                }
            }
            return FFPoly::new(&self.field, g).squarefree_part();
        }
        let g = f.gcd(&df)?;
        let radical = f.exact_div(&g);
        // g may still hide factors whose multiplicity is divisible by p;
        // recurse on it and merge.
        if g.degree() == Some(0) {
            return Ok(radical.monic());
        }
        let rest = g.squarefree_part()?;
        let merged = radical.mul(&rest);
        let dup = radical.gcd(&rest)?;
        Ok(merged.exact_div(&dup).monic())
    }
}

impl fmt::Debug for FFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
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
                0 => write!(f, "{c:?}")?,
                1 => write!(f, "{c:?}*x")?,
                _ => write!(f, "{c:?}*x^{i}")?,
            }
        }
        Ok(())
    }
}
