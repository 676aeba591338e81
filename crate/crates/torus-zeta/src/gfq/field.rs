//! Finite fields as explicit quotient towers.
//!
//! A [`Field`] is either the prime field GF(p) or an extension
//! `base[x]/(modulus)` over another field in the tower. Arithmetic on
//! [`FFElem`] recurses through the tower, so GF(q^d) built over GF(q)
//! keeps its coordinates as GF(q)-elements rather than flattening to the
//! prime field.
//!
//! All values are immutable after construction; fields are shared through
//! `Arc` and every operation is a pure function.

use std::fmt;
use std::sync::Arc;

use super::intfactor::is_prime;
use super::poly::FFPoly;
use super::Error;

/// A finite field: GF(p), GF(p^e), or a tower extension GF(q^d) over GF(q).
pub struct Field {
    p: u64,
    /// Absolute extension degree over the prime field.
    abs_degree: u32,
    kind: FieldKind,
}

enum FieldKind {
    Prime,
    Extension {
        base: Arc<Field>,
        /// Monic irreducible over `base`, little-endian; its degree is the
        /// relative degree of the extension.
        modulus: FFPoly,
    },
}

impl Field {
    /// The prime field GF(p). Fails with [`Error::NonPrime`] on composite p.
    pub fn prime(p: u64) -> Result<Arc<Field>, Error> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        Ok(Arc::new(Field { p, abs_degree: 1, kind: FieldKind::Prime }))
    }

    /// GF(p^e) over the prime field. When no modulus is supplied, the
    /// deterministically smallest monic irreducible of degree e is selected
    /// (coefficient vectors scanned in base-p counting order, constant
    /// coefficient least significant).
    pub fn new(p: u64, e: u32, modulus: Option<FFPoly>) -> Result<Arc<Field>, Error> {
        let prime = Field::prime(p)?;
        if e == 0 {
            return Err(Error::DegreeMismatch { expected: 1, found: 0 });
        }
        if e == 1 {
            // The quotient by any monic linear polynomial is GF(p) itself;
            // elements are stored as canonical residues either way.
            if let Some(m) = &modulus {
                if m.degree() != Some(1) {
                    return Err(Error::DegreeMismatch {
                        expected: 1,
                        found: m.degree().unwrap_or(0) as u32,
                    });
                }
            }
            return Ok(prime);
        }
        let modulus = match modulus {
            Some(m) => {
                if m.degree() != Some(e as usize) {
                    return Err(Error::DegreeMismatch {
                        expected: e,
                        found: m.degree().unwrap_or(0) as u32,
                    });
                }
                m
            }
            None => smallest_irreducible(&prime, e)?,
        };
        Field::extension(&prime, modulus)
    }

    /// The extension `base[x]/(modulus)`. The modulus must be monic,
    /// irreducible over `base`, and of degree at least 2.
    pub fn extension(base: &Arc<Field>, modulus: FFPoly) -> Result<Arc<Field>, Error> {
        if modulus.field() != base {
            return Err(Error::FieldMismatch);
        }
        let deg = match modulus.degree() {
            Some(d) if d >= 2 => d as u32,
            Some(d) => return Err(Error::DegreeMismatch { expected: 2, found: d as u32 }),
            None => return Err(Error::ZeroPolynomial),
        };
        if !modulus.is_monic() {
            return Err(Error::ReducibleModulus);
        }
        if !super::factor::is_irreducible(&modulus)? {
            return Err(Error::ReducibleModulus);
        }
        base.order_checked()
            .and_then(|q| q.checked_pow(deg))
            .ok_or(Error::Overflow)?;
        Ok(Arc::new(Field {
            p: base.p,
            abs_degree: base.abs_degree * deg,
            kind: FieldKind::Extension { base: Arc::clone(base), modulus },
        }))
    }

    /// GF(q^degree) over this field, with the deterministically smallest
    /// monic irreducible modulus of that degree.
    pub fn extension_of_degree(base: &Arc<Field>, degree: u32) -> Result<Arc<Field>, Error> {
        if degree <= 1 {
            return Err(Error::DegreeMismatch { expected: 2, found: degree });
        }
        Field::extension(base, smallest_irreducible(base, degree)?)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Extension degree over the prime field.
    pub fn abs_degree(&self) -> u32 {
        self.abs_degree
    }

    /// Degree over the immediate base field (1 for a prime field).
    pub fn rel_degree(&self) -> u32 {
        match &self.kind {
            FieldKind::Prime => 1,
            FieldKind::Extension { modulus, .. } => modulus.degree().unwrap() as u32,
        }
    }

    /// Number of elements, q = p^abs_degree. Panics on overflow; use
    /// [`Field::order_checked`] where overflow is a real possibility.
    pub fn order(&self) -> u64 {
        self.order_checked().expect("field order overflows u64")
    }

    pub fn order_checked(&self) -> Option<u64> {
        self.p.checked_pow(self.abs_degree)
    }

    pub fn base(&self) -> Option<&Arc<Field>> {
        match &self.kind {
            FieldKind::Prime => None,
            FieldKind::Extension { base, .. } => Some(base),
        }
    }

    pub fn modulus(&self) -> Option<&FFPoly> {
        match &self.kind {
            FieldKind::Prime => None,
            FieldKind::Extension { modulus, .. } => Some(modulus),
        }
    }

    /// The modulus coefficient vector as integers, for prime-field
    /// extensions only (used by the report serializer).
    pub fn modulus_ints(&self) -> Option<Vec<u64>> {
        let m = self.modulus()?;
        m.coeffs().iter().map(|c| c.as_prime_int()).collect()
    }

    /// Iterator over all field elements in a fixed (odometer) order.
    pub fn elements(self: &Arc<Field>) -> impl Iterator<Item = FFElem> {
        let field = Arc::clone(self);
        let n = self.order();
        (0..n).map(move |i| elem_from_index(&field, i))
    }

    /// The i-th element of the [`Field::elements`] enumeration.
    pub fn nth_element(self: &Arc<Field>, i: u64) -> FFElem {
        debug_assert!(i < self.order());
        elem_from_index(self, i)
    }
}

/// Builds the element whose tower coordinates are the base-q digits of `i`.
fn elem_from_index(field: &Arc<Field>, i: u64) -> FFElem {
    match &field.kind {
        FieldKind::Prime => FFElem { field: Arc::clone(field), repr: Repr::Prime(i % field.p) },
        FieldKind::Extension { base, modulus } => {
            let q = base.order();
            let deg = modulus.degree().unwrap();
            let mut rem = i;
            let mut coords = Vec::with_capacity(deg);
            for _ in 0..deg {
                coords.push(elem_from_index(base, rem % q));
                rem /= q;
            }
            FFElem { field: Arc::clone(field), repr: Repr::Ext(coords) }
        }
    }
}

/// Scans monic degree-`deg` polynomials over `base` in counting order and
/// returns the first irreducible one.
fn smallest_irreducible(base: &Arc<Field>, deg: u32) -> Result<FFPoly, Error> {
    let q = base.order_checked().ok_or(Error::Overflow)?;
    let count = q.checked_pow(deg).ok_or(Error::Overflow)?;
    for idx in 0..count {
        let mut rem = idx;
        let mut coeffs = Vec::with_capacity(deg as usize + 1);
        for _ in 0..deg {
            coeffs.push(elem_from_index(base, rem % q));
            rem /= q;
        }
        coeffs.push(FFElem::one(base));
        let cand = FFPoly::new(base, coeffs);
        if super::factor::is_irreducible(&cand)? {
            return Ok(cand);
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over a finite field")
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if self.p != other.p || self.abs_degree != other.abs_degree {
            return false;
        }
        match (&self.kind, &other.kind) {
            (FieldKind::Prime, FieldKind::Prime) => true,
            (
                FieldKind::Extension { base: b1, modulus: m1 },
                FieldKind::Extension { base: b2, modulus: m2 },
            ) => b1 == b2 && m1.coeffs() == m2.coeffs(),
            _ => false,
        }
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FieldKind::Prime => write!(f, "GF({})", self.p),
            FieldKind::Extension { base, .. } => {
                write!(f, "GF({}^{})[over {:?}]", self.p, self.abs_degree, base)
            }
        }
    }
}

/// An element of a [`Field`], carried with a handle to its field.
#[derive(Clone)]
pub struct FFElem {
    field: Arc<Field>,
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    /// Residue in [0, p).
    Prime(u64),
    /// Little-endian coordinates over the base field, length = rel_degree.
    Ext(Vec<FFElem>),
}

impl FFElem {
    pub fn zero(field: &Arc<Field>) -> FFElem {
        match &field.kind {
            FieldKind::Prime => FFElem { field: Arc::clone(field), repr: Repr::Prime(0) },
            FieldKind::Extension { base, modulus } => {
                let coords = vec![FFElem::zero(base); modulus.degree().unwrap()];
                FFElem { field: Arc::clone(field), repr: Repr::Ext(coords) }
            }
        }
    }

    pub fn one(field: &Arc<Field>) -> FFElem {
        FFElem::from_int(field, 1)
    }

    /// The image of the integer `n` (i.e. n * 1) in the field.
    pub fn from_int(field: &Arc<Field>, n: i64) -> FFElem {
        let p = field.p as i64;
        let r = n.rem_euclid(p) as u64;
        match &field.kind {
            FieldKind::Prime => FFElem { field: Arc::clone(field), repr: Repr::Prime(r) },
            FieldKind::Extension { base, .. } => {
                let mut e = FFElem::zero(field);
                if let Repr::Ext(coords) = &mut e.repr {
                    coords[0] = FFElem::from_int(base, n);
                }
                e
            }
        }
    }

    /// Element of an extension field from little-endian base-field
    /// coordinates. Short vectors are padded with zeros.
    pub fn from_coords(field: &Arc<Field>, coords: Vec<FFElem>) -> Result<FFElem, Error> {
        match &field.kind {
            FieldKind::Prime => Err(Error::FieldMismatch),
            FieldKind::Extension { base, modulus } => {
                let deg = modulus.degree().unwrap();
                if coords.len() > deg || coords.iter().any(|c| c.field() != base) {
                    return Err(Error::FieldMismatch);
                }
                let mut full = coords;
                full.resize(deg, FFElem::zero(base));
                Ok(FFElem { field: Arc::clone(field), repr: Repr::Ext(full) })
            }
        }
    }

    /// The canonical generator x of an extension `base[x]/(modulus)`.
    pub fn generator(field: &Arc<Field>) -> Result<FFElem, Error> {
        match &field.kind {
            FieldKind::Prime => Err(Error::FieldMismatch),
            FieldKind::Extension { base, .. } => {
                let mut coords = vec![FFElem::zero(base), FFElem::one(base)];
                coords.truncate(field.rel_degree() as usize);
                FFElem::from_coords(field, coords)
            }
        }
    }

    /// Embeds an element of the base field into `ext` (a direct extension).
    pub fn embed_into(&self, ext: &Arc<Field>) -> Result<FFElem, Error> {
        match &ext.kind {
            FieldKind::Extension { base, .. } if base.as_ref() == self.field.as_ref() => {
                FFElem::from_coords(ext, vec![self.clone()])
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Prime(v) => *v == 0,
            Repr::Ext(coords) => coords.iter().all(FFElem::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        self == &FFElem::one(&self.field)
    }

    /// The residue as an integer, for prime-field elements only.
    pub fn as_prime_int(&self) -> Option<u64> {
        match &self.repr {
            Repr::Prime(v) => Some(*v),
            Repr::Ext(_) => None,
        }
    }

    /// Little-endian coordinates over the base field (extensions only).
    pub fn coords(&self) -> Option<&[FFElem]> {
        match &self.repr {
            Repr::Prime(_) => None,
            Repr::Ext(coords) => Some(coords),
        }
    }

    pub fn add(&self, rhs: &FFElem) -> FFElem {
        self.check_same_field(rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => FFElem {
                field: Arc::clone(&self.field),
                repr: Repr::Prime((a + b) % self.field.p),
            },
            (Repr::Ext(a), Repr::Ext(b)) => FFElem {
                field: Arc::clone(&self.field),
                repr: Repr::Ext(a.iter().zip(b).map(|(x, y)| x.add(y)).collect()),
            },
            _ => unreachable!("same field implies same representation"),
        }
    }

    pub fn neg(&self) -> FFElem {
        match &self.repr {
            Repr::Prime(a) => FFElem {
                field: Arc::clone(&self.field),
                repr: Repr::Prime(if *a == 0 { 0 } else { self.field.p - a }),
            },
            Repr::Ext(coords) => FFElem {
                field: Arc::clone(&self.field),
                repr: Repr::Ext(coords.iter().map(FFElem::neg).collect()),
            },
        }
    }

    pub fn sub(&self, rhs: &FFElem) -> FFElem {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &FFElem) -> FFElem {
        self.check_same_field(rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => FFElem {
                field: Arc::clone(&self.field),
                repr: Repr::Prime(((*a as u128 * *b as u128) % self.field.p as u128) as u64),
            },
            (Repr::Ext(a), Repr::Ext(b)) => {
                let modulus = self.field.modulus().unwrap();
                let base = self.field.base().unwrap();
                // Schoolbook product of the coordinate vectors, reduced mod
                // the tower modulus.
                let mut prod = vec![FFElem::zero(base); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        prod[i + j] = prod[i + j].add(&x.mul(y));
                    }
                }
                let prod_poly = FFPoly::new(base, prod);
                let (_, rem) = prod_poly.div_rem(modulus).expect("modulus is nonzero");
                let mut coords = rem.coeffs().to_vec();
                coords.resize(a.len(), FFElem::zero(base));
                FFElem { field: Arc::clone(&self.field), repr: Repr::Ext(coords) }
            }
            _ => unreachable!("same field implies same representation"),
        }
    }

    pub fn pow(&self, mut exp: u64) -> FFElem {
        let mut acc = FFElem::one(&self.field);
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

    /// Multiplicative inverse. Returns `None` for zero.
    pub fn inv(&self) -> Option<FFElem> {
        if self.is_zero() {
            return None;
        }
        // q is desk-scale throughout, so x^(q-2) is cheap and avoids a
        // separate extended-Euclid path through the tower.
        Some(self.pow(self.field.order() - 2))
    }

    /// Inverse Frobenius: the unique y with y^p = x.
    pub fn pth_root(&self) -> FFElem {
        let q = self.field.order();
        let p = self.field.p;
        // x -> x^(q/p) inverts x -> x^p on a field of order q.
        self.pow(q / p)
    }

    fn check_same_field(&self, rhs: &FFElem) {
        assert!(
            self.field == rhs.field,
            "finite field arithmetic across distinct fields: {:?} vs {:?}",
            self.field,
            rhs.field
        );
    }
}

impl PartialEq for FFElem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.repr == other.repr
    }
}

impl Eq for FFElem {}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Prime(v) => write!(f, "{v}"),
            Repr::Ext(coords) => {
                write!(f, "[")?;
                for (i, c) in coords.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c:?}")?;
                }
                write!(f, "]")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert!(matches!(Field::prime(4), Err(Error::NonPrime(4))));
        assert!(matches!(Field::new(4, 1, None), Err(Error::NonPrime(4))));
        assert!(Field::prime(7).is_ok());
    }

    #[test]
    fn gf4_default_modulus_is_x2_x_1() {
        let gf4 = Field::new(2, 2, None).unwrap();
        assert_eq!(gf4.order(), 4);
        let m = gf4.modulus_ints().unwrap();
        assert_eq!(m, vec![1, 1, 1]); // x^2 + x + 1
    }

    #[test]
    fn gf8_default_modulus_is_x3_x_1() {
        let gf8 = Field::new(2, 3, None).unwrap();
        assert_eq!(gf8.modulus_ints().unwrap(), vec![1, 1, 0, 1]);
    }

    #[test]
    fn prime_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = FFElem::from_int(&f, 5);
        let b = FFElem::from_int(&f, 4);
        assert_eq!(a.add(&b), FFElem::from_int(&f, 2));
        assert_eq!(a.mul(&b), FFElem::from_int(&f, 6));
        assert_eq!(a.sub(&b), FFElem::from_int(&f, 1));
        assert_eq!(a.inv().unwrap().mul(&a), FFElem::one(&f));
    }

    #[test]
    fn fermat_in_every_constructed_field() {
        // x^(q-1) = 1 for 20 random nonzero x per field.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for field in [
            Field::prime(2).unwrap(),
            Field::prime(7).unwrap(),
            Field::new(2, 2, None).unwrap(),
            Field::new(3, 2, None).unwrap(),
            Field::new(2, 4, None).unwrap(),
        ] {
            let q = field.order();
            let mut checked = 0;
            while checked < 20 {
                let x = field.nth_element(rng.gen_range(0..q));
                if x.is_zero() {
                    continue;
                }
                assert!(x.pow(q - 1).is_one(), "Fermat fails in {field:?}");
                checked += 1;
            }
        }
    }

    #[test]
    fn tower_gf4_over_gf2_squared() {
        // GF(16) as GF(4)[y]/(h) for the smallest irreducible quadratic h.
        let gf4 = Field::new(2, 2, None).unwrap();
        let gf16 = Field::extension_of_degree(&gf4, 2).unwrap();
        assert_eq!(gf16.order(), 16);
        assert_eq!(gf16.abs_degree(), 4);
        let g = FFElem::generator(&gf16).unwrap();
        assert!(g.pow(15).is_one());
        assert!(!g.pow(5).is_one() || !g.pow(3).is_one());
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let gf8 = Field::new(2, 3, None).unwrap();
        for x in gf8.elements() {
            let y = x.pth_root();
            assert_eq!(y.pow(2), x);
        }
    }

    #[test]
    fn embedding_preserves_arithmetic() {
        let gf2 = Field::prime(2).unwrap();
        let gf4 = Field::new(2, 2, None).unwrap();
        let one = FFElem::one(&gf2);
        let e = one.embed_into(&gf4).unwrap();
        assert!(e.is_one());
        assert!(one.add(&one).embed_into(&gf4).unwrap().is_zero());
    }
}
