//! Exact finite-field arithmetic: GF(p), GF(p^e), tower extensions
//! GF(q^d), univariate polynomials, factorization into irreducibles, and
//! multiplicative orders.

mod factor;
mod field;
pub(crate) mod intfactor;
mod poly;

pub use factor::{ff_factor, is_irreducible, order_of_root};
pub use field::{FFElem, Field};
pub use poly::FFPoly;

use std::sync::Arc;

/// Errors from finite-field construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus is not monic irreducible over its base field")]
    ReducibleModulus,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("polynomial has 0 as a root")]
    ZeroRoot,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("value exceeds the supported desk-scale range")]
    Overflow,
}

/// Constructs GF(p^e), validating primality and the modulus. With no
/// modulus, the deterministically smallest monic irreducible of degree e
/// over GF(p) is selected.
pub fn make_field(p: u64, e: u32, modulus: Option<FFPoly>) -> Result<Arc<Field>, Error> {
    Field::new(p, e, modulus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_field_spec_examples() {
        assert_eq!(make_field(7, 1, None).unwrap().order(), 7);
        let gf4 = make_field(2, 2, None).unwrap();
        assert_eq!(gf4.order(), 4);
        assert_eq!(gf4.modulus_ints().unwrap(), vec![1, 1, 1]);
        assert!(matches!(make_field(4, 1, None), Err(Error::NonPrime(4))));
    }

    #[test]
    fn make_field_rejects_bad_modulus() {
        let gf2 = make_field(2, 1, None).unwrap();
        // x^2 + 1 = (x+1)^2 is reducible over GF(2)
        let reducible = FFPoly::from_ints(&gf2, &[1, 0, 1]);
        assert!(matches!(make_field(2, 2, Some(reducible)), Err(Error::ReducibleModulus)));
        // modulus degree must match the requested extension degree
        let cubic = FFPoly::from_ints(&gf2, &[1, 1, 0, 1]);
        assert!(matches!(
            make_field(2, 2, Some(cubic.clone())),
            Err(Error::DegreeMismatch { expected: 2, found: 3 })
        ));
        // the same cubic is a fine degree-3 modulus
        assert_eq!(make_field(2, 3, Some(cubic)).unwrap().order(), 8);
    }
}
