//! The radical number field Q(p^(1/s)) in the power basis
//! {1, p^(1/s), ..., p^((s-1)/s)}, with exact rational coordinates.
//!
//! x^s - p is irreducible over Q by Eisenstein at p, so this really is a
//! field; s = 1 degenerates to Q itself. These fields house the normalized
//! fixed-point ratios c_k, whose denominators the dichotomy machinery
//! tracks.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::qpoly::Q;
use super::Error;
use crate::gfq::intfactor::is_prime;

/// Field descriptor; s = 1 means plain Q (and compares equal to any other
/// s = 1 descriptor regardless of p).
#[derive(Debug, Clone, Copy, Eq)]
pub struct RadicalField {
    p: u64,
    s: u32,
}

impl PartialEq for RadicalField {
    fn eq(&self, other: &Self) -> bool {
        (self.s == 1 && other.s == 1) || (self.p == other.p && self.s == other.s)
    }
}

impl RadicalField {
    pub fn new(p: u64, s: u32) -> Result<RadicalField, Error> {
        if s == 0 {
            return Err(Error::PreconditionViolated("radical index s must be positive".into()));
        }
        if !is_prime(p) {
            // Irreducibility of x^s - p is certified by Eisenstein at p.
            return Err(Error::NonPrime(p));
        }
        Ok(RadicalField { p, s })
    }

    /// Plain Q.
    pub fn rationals() -> RadicalField {
        RadicalField { p: 2, s: 1 }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn is_rational(&self) -> bool {
        self.s == 1
    }

    pub fn zero(&self) -> RElem {
        RElem { field: *self, coords: vec![Q::zero(); self.s as usize] }
    }

    pub fn one(&self) -> RElem {
        self.from_rational(Q::one())
    }

    pub fn from_rational(&self, x: Q) -> RElem {
        let mut coords = vec![Q::zero(); self.s as usize];
        coords[0] = x;
        RElem { field: *self, coords }
    }

    /// The basis element p^(j/s), 0 <= j < s.
    pub fn radical_power(&self, j: u32) -> RElem {
        assert!(j < self.s);
        let mut coords = vec![Q::zero(); self.s as usize];
        coords[j as usize] = Q::one();
        RElem { field: *self, coords }
    }

    /// p^E for an exact rational exponent E whose denominator divides s.
    /// Writes E = W + j/s with integer W and 0 <= j < s.
    pub fn p_power(&self, exponent: &Q) -> RElem {
        let s = BigInt::from(self.s);
        let scaled = exponent * Q::from_integer(s.clone());
        assert!(
            scaled.is_integer(),
            "exponent denominator must divide the radical index s"
        );
        let num = scaled.to_integer();
        let (w, j) = num.div_mod_floor(&s);
        let j = j.to_u32().unwrap();
        let p = BigInt::from(self.p);
        let rational_part = if w.is_negative() {
            let e = (-&w).to_u32().expect("desk-scale exponent");
            Q::new(BigInt::one(), p.pow(e))
        } else {
            Q::from_integer(p.pow(w.to_u32().expect("desk-scale exponent")))
        };
        self.radical_power(j).scale(&rational_part)
    }
}

/// An element of Q(p^(1/s)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RElem {
    field: RadicalField,
    coords: Vec<Q>,
}

impl RElem {
    pub fn field(&self) -> RadicalField {
        self.field
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The rational part when all radical coordinates vanish.
    pub fn as_rational(&self) -> Option<Q> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &RElem) -> RElem {
        self.check(rhs);
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect();
        RElem { field: self.field, coords }
    }

    pub fn neg(&self) -> RElem {
        RElem { field: self.field, coords: self.coords.iter().map(|a| -a.clone()).collect() }
    }

    pub fn sub(&self, rhs: &RElem) -> RElem {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &Q) -> RElem {
        RElem { field: self.field, coords: self.coords.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, rhs: &RElem) -> RElem {
        self.check(rhs);
        let s = self.field.s as usize;
        let p = Q::from_integer(BigInt::from(self.field.p));
        let mut conv = vec![Q::zero(); 2 * s - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                conv[i + j] += a * b;
            }
        }
        // p^(k/s) with k >= s reduces to p * p^((k-s)/s).
        let mut coords = conv[..s].to_vec();
        for k in s..conv.len() {
            let add = &conv[k] * &p;
            coords[k - s] += add;
        }
        RElem { field: self.field, coords }
    }

    /// Multiplicative inverse via the s x s linear system M_x y = e_0,
    /// where M_x is the multiplication-by-x matrix. None for zero.
    pub fn inv(&self) -> Option<RElem> {
        if self.is_zero() {
            return None;
        }
        let s = self.field.s as usize;
        let m = self.mul_matrix();
        // Augmented Gaussian elimination over Q.
        let mut a: Vec<Vec<Q>> = (0..s)
            .map(|i| {
                let mut row: Vec<Q> = (0..s).map(|j| m[i][j].clone()).collect();
                row.push(if i == 0 { Q::one() } else { Q::zero() });
                row
            })
            .collect();
        for col in 0..s {
            let piv = (col..s).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..s {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..=s {
                        let sub = &f * &a[col][j];
                        a[r][j] -= sub;
                    }
                }
            }
        }
        let coords = (0..s).map(|i| a[i][s].clone()).collect();
        Some(RElem { field: self.field, coords })
    }

    pub fn div(&self, rhs: &RElem) -> Option<RElem> {
        Some(self.mul(&rhs.inv()?))
    }

    /// Column j is x * p^(j/s) in coordinates.
    fn mul_matrix(&self) -> Vec<Vec<Q>> {
        let s = self.field.s as usize;
        let mut m = vec![vec![Q::zero(); s]; s];
        for j in 0..s {
            let col = self.mul(&self.field.radical_power(j as u32));
            for (i, v) in col.coords.iter().enumerate() {
                m[i][j] = v.clone();
            }
        }
        m
    }

    /// Field norm down to Q: the determinant of the multiplication matrix
    /// in the power basis.
    pub fn norm(&self) -> Q {
        let s = self.field.s as usize;
        let mut m = self.mul_matrix();
        let mut det = Q::one();
        for col in 0..s {
            let Some(piv) = (col..s).find(|&r| !m[r][col].is_zero()) else {
                return Q::zero();
            };
            if piv != col {
                m.swap(col, piv);
                det = -det;
            }
            det *= m[col][col].clone();
            let inv = m[col][col].recip();
            for r in col + 1..s {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] * &inv;
                for j in col..s {
                    let sub = &f * &m[col][j];
                    m[r][j] -= sub;
                }
            }
        }
        det
    }

    /// The coordinate-wise denominator in the order Z\[p^(1/s)\]: the least
    /// positive integer D with D * x in Z\[p^(1/s)\], i.e. the lcm of the
    /// coordinate denominators.
    ///
    /// Z\[p^(1/s)\] need not be the maximal order of the field in general,
    /// so for arbitrary elements this can differ from the denominator with
    /// respect to the ring of all algebraic integers. Every value produced
    /// by the zeta pipeline is a rational multiple of a single power
    /// p^(j/s), where the two notions agree.
    pub fn denominator(&self) -> BigUint {
        let mut l = BigUint::one();
        for c in &self.coords {
            l = l.lcm(&c.denom().magnitude().clone());
        }
        l
    }

    /// Max of |x| over the real embeddings p^(1/s) -> +-(p^(1/s)) (both
    /// signs only when s is even). Display-only.
    pub fn abs_max_embedding(&self) -> f64 {
        let s = self.field.s;
        let root = (self.field.p as f64).powf(1.0 / s as f64);
        let eval = |r: f64| -> f64 {
            let mut acc = 0.0f64;
            let mut pw = 1.0f64;
            for c in &self.coords {
                acc += super::qpoly::q_to_f64(c) * pw;
                pw *= r;
            }
            acc.abs()
        };
        if s.is_multiple_of(2) {
            eval(root).max(eval(-root))
        } else {
            eval(root)
        }
    }

    fn check(&self, rhs: &RElem) {
        assert!(self.field == rhs.field, "radical field mismatch");
    }
}

/// Norm of an element down to Q.
pub fn field_norm(x: &RElem) -> Q {
    x.norm()
}

/// Coordinate-wise denominator of an element (see [`RElem::denominator`]).
pub fn denominator(x: &RElem) -> BigUint {
    x.denominator()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dichotomy::qpoly::{q_int, q_ratio};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn norm_examples() {
        // x = 2^(1/2) in Q(2^(1/2)): mult matrix [[0,2],[1,0]], norm -2
        let f = RadicalField::new(2, 2).unwrap();
        let x = f.radical_power(1);
        assert_eq!(x.norm(), q_int(-2));
        assert_eq!(f.one().norm(), q_int(1));
        // x = 1/2 in Q
        let q = RadicalField::rationals();
        assert_eq!(q.from_rational(q_ratio(1, 2)).norm(), q_ratio(1, 2));
    }

    #[test]
    fn denominator_examples() {
        let q = RadicalField::rationals();
        assert_eq!(q.from_rational(q_ratio(1, 2)).denominator(), BigUint::from(2u32));
        assert_eq!(q.from_rational(q_ratio(1, 16)).denominator(), BigUint::from(16u32));
        // (1/3) * 2^(1/2): denominator 3
        let f = RadicalField::new(2, 2).unwrap();
        let x = f.radical_power(1).scale(&q_ratio(1, 3));
        assert_eq!(x.denominator(), BigUint::from(3u32));
    }

    #[test]
    fn p_power_decomposition() {
        let f = RadicalField::new(2, 2).unwrap();
        // 2^(-3/2) = (1/4) * 2^(1/2)
        let x = f.p_power(&q_ratio(-3, 2));
        assert_eq!(x.coords()[0], q_int(0));
        assert_eq!(x.coords()[1], q_ratio(1, 4));
        // 2^2 = 4
        let y = f.p_power(&q_int(2));
        assert_eq!(y.as_rational().unwrap(), q_int(4));
        // multiplicativity: 2^(-3/2) * 2^(3/2) = 1
        let z = f.p_power(&q_ratio(3, 2));
        assert_eq!(x.mul(&z), f.one());
    }

    #[test]
    fn norm_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for s in [1u32, 2, 3] {
            let f = RadicalField::new(2, s).unwrap();
            for _ in 0..34 {
                let rand_elem = |rng: &mut ChaCha8Rng| {
                    let coords: Vec<Q> = (0..s)
                        .map(|_| q_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
                        .collect();
                    RElem { field: f, coords }
                };
                let x = rand_elem(&mut rng);
                let y = rand_elem(&mut rng);
                assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = RadicalField::new(3, 3).unwrap();
        let x = f.radical_power(1).scale(&q_ratio(2, 5)).add(&f.from_rational(q_int(1)));
        let xi = x.inv().unwrap();
        assert_eq!(x.mul(&xi), f.one());
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn denominator_is_minimal() {
        // d * x has integer coordinates and no smaller positive integer does.
        let f = RadicalField::new(2, 2).unwrap();
        let x = f.radical_power(1).scale(&q_ratio(5, 6)).add(&f.from_rational(q_ratio(1, 4)));
        let d = x.denominator();
        assert_eq!(d, BigUint::from(12u32));
        let dx = x.scale(&Q::from_integer(BigInt::from(12)));
        assert!(dx.coords().iter().all(|c| c.denom().is_one()));
        for smaller in 1u32..12 {
            let y = x.scale(&Q::from_integer(BigInt::from(smaller)));
            assert!(!y.coords().iter().all(|c| c.denom().is_one()));
        }
    }
}
