//! Dense polynomials with exact rational coefficients, little-endian.
//! Carrier for recurrence characteristic polynomials, detected
//! numerator/denominator pairs, and vanishing polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<Q>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Q>) -> QPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> QPoly {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> QPoly {
        QPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> QPoly {
        QPoly::new(vec![c])
    }

    pub fn from_ints(ints: &[i64]) -> QPoly {
        QPoly::new(ints.iter().map(|&n| q_int(n)).collect())
    }

    /// x - root
    pub fn linear_root(root: &Q) -> QPoly {
        QPoly::new(vec![-root.clone(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn sub(&self, rhs: &QPoly) -> QPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &Q) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        let ddeg = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < ddeg + 1 {
            return (QPoly::zero(), self.clone());
        }
        let qlen = rem.len() - ddeg;
        let mut quot = vec![Q::zero(); qlen];
        for k in (0..qlen).rev() {
            let c = &rem[k + ddeg] / &lc;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                let sub = &c * d;
                rem[k + i] -= sub;
            }
            quot[k] = c;
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Monic greatest common divisor (1 when either input is a nonzero
    /// constant; zero only when both inputs are zero).
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> QPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn derivative(&self) -> QPoly {
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * q_int(i as i64))
            .collect();
        QPoly::new(out)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, n: i64) -> Q {
        self.eval(&q_int(n))
    }

    /// Number of distinct complex roots: deg f - deg gcd(f, f').
    pub fn distinct_root_count(&self) -> usize {
        match self.degree() {
            None | Some(0) => 0,
            Some(d) => {
                let g = self.gcd(&self.derivative());
                d - g.degree().unwrap_or(0)
            }
        }
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }
}

impl std::fmt::Debug for QPoly {
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
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{i}")?,
            }
        }
        Ok(())
    }
}

/// Lowest-terms "num/den" rendering used throughout the JSON reports.
pub fn q_string(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// |x| as f64, for display-only diagnostics.
pub fn q_to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        // Fall back on a log-scale estimate for values outside f64 range.
        let n = x.numer().abs().to_f64().unwrap_or(f64::MAX);
        let d = x.denom().abs().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn div_rem_and_gcd() {
        let f = QPoly::from_ints(&[6, -5, 1]); // (z-2)(z-3)
        let g = QPoly::from_ints(&[-2, 1]);
        let (q, r) = f.div_rem(&g);
        assert!(r.is_zero());
        assert_eq!(q, QPoly::from_ints(&[-3, 1]));
        assert_eq!(f.gcd(&g), g.monic());
        let coprime = QPoly::from_ints(&[1, 1]);
        assert!(f.gcd(&coprime).is_one());
    }

    #[test]
    fn distinct_roots() {
        // (z-2)^2 (z-3): 2 distinct roots
        let f = QPoly::from_ints(&[-2, 1]).mul(&QPoly::from_ints(&[-2, 1])).mul(&QPoly::from_ints(&[-3, 1]));
        assert_eq!(f.distinct_root_count(), 2);
        assert_eq!(QPoly::from_ints(&[5]).distinct_root_count(), 0);
    }

    #[test]
    fn eval_and_derivative() {
        let f = QPoly::from_ints(&[1, 0, 3]); // 3z^2 + 1
        assert_eq!(f.eval_int(2), q_int(13));
        assert_eq!(f.derivative(), QPoly::from_ints(&[0, 6]));
    }
}
