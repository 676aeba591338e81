//! Univariate factorization over finite fields and multiplicative orders.
//!
//! The factorization pipeline is squarefree decomposition, then
//! distinct-degree splitting, then equal-degree splitting. Splitting
//! elements are drawn from a fixed enumeration of the polynomial ring, so
//! the factor list for a given input is deterministic across runs.

use std::sync::Arc;

use super::field::{FFElem, Field};
use super::intfactor;
use super::poly::FFPoly;
use super::Error;

/// Irreducibility test for a nonzero polynomial: f of degree n is
/// irreducible iff x^(q^n) = x mod f and gcd(x^(q^(n/r)) - x, f) = 1 for
/// every prime r dividing n.
pub fn is_irreducible(f: &FFPoly) -> Result<bool, Error> {
    let n = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let field = f.field();
    let q = field.order() as u128;
    let x = FFPoly::monomial(field, 1);
    for (r, _) in intfactor::factor(n as u64) {
        let e = (n as u64 / r) as u32;
        let xq = x.pow_mod(q.pow(e), f)?;
        let g = xq.sub(&x).gcd(f);
        match g {
            Ok(g) if g.is_one() => {}
            Ok(_) => return Ok(false),
            // x^(q^e) - x = 0 mod f means f divides it, a fortiori reducible here
            Err(Error::BothZero) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    let xf = x.pow_mod(q.pow(n as u32), f)?;
    Ok(xf == x.div_rem(f)?.1)
}

/// Factors a nonzero polynomial into monic irreducibles with
/// multiplicities, sorted by (degree, coefficient order). The product of
/// factor^multiplicity equals the monic part of the input.
pub fn ff_factor(f: &FFPoly) -> Result<Vec<(FFPoly, u32)>, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out: Vec<(FFPoly, u32)> = Vec::new();
    let g = f.monic();
    if g.degree() > Some(0) {
        // The radical is the product of the distinct irreducible factors;
        // each factor's multiplicity in g is then recovered by division.
        let radical = g.squarefree_part()?;
        for irred in factor_squarefree(&radical)? {
            let mut mult = 0u32;
            let mut rest = g.clone();
            while irred.divides(&rest) {
                rest = rest.exact_div(&irred);
                mult += 1;
            }
            out.push((irred, mult));
        }
    }
    out.sort_by(|(a, _), (b, _)| {
        a.degree().cmp(&b.degree()).then_with(|| poly_key(a).cmp(&poly_key(b)))
    });
    Ok(out)
}

/// Deterministic sort key: coefficients as element indices, low degree first.
fn poly_key(f: &FFPoly) -> Vec<u64> {
    f.coeffs().iter().map(elem_index).collect()
}

fn elem_index(e: &FFElem) -> u64 {
    match e.as_prime_int() {
        Some(v) => v,
        None => {
            let q = e.field().base().unwrap().order();
            e.coords().unwrap().iter().rev().fold(0, |acc, c| acc * q + elem_index(c))
        }
    }
}

/// Factors a monic squarefree polynomial into monic irreducibles.
fn factor_squarefree(f: &FFPoly) -> Result<Vec<FFPoly>, Error> {
    let field = f.field();
    let q = field.order() as u128;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FFPoly::monomial(field, 1);

    // Distinct-degree: gcd with x^(q^d) - x collects all degree-d factors.
    let mut d = 1u32;
    let mut xq = x.clone();
    while rest.degree().unwrap_or(0) >= 2 * d as usize {
        xq = xq.pow_mod(q, &rest)?;
        let g = xq.sub(&x).gcd(&rest).unwrap_or_else(|_| rest.clone());
        if !g.is_one() {
            equal_degree_split(&g, d as usize, &mut out)?;
            rest = rest.exact_div(&g);
            xq = xq.div_rem(&rest).map(|(_, r)| r).unwrap_or(xq);
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) >= 1 {
        out.push(rest);
    }
    Ok(out)
}

/// Splits a product of distinct monic irreducibles of common degree `d`.
fn equal_degree_split(f: &FFPoly, d: usize, out: &mut Vec<FFPoly>) -> Result<(), Error> {
    if f.degree() == Some(d) {
        out.push(f.clone());
        return Ok(());
    }
    let split = find_splitter(f, d)?;
    equal_degree_split(&split, d, out)?;
    equal_degree_split(&f.exact_div(&split), d, out)?;
    Ok(())
}

/// Finds a proper monic factor of `f` (a product of at least two distinct
/// irreducibles of degree `d`) by scanning splitting candidates in a fixed
/// order: for odd q the Cantor-Zassenhaus power map, for q = 2^m the
/// absolute trace map.
fn find_splitter(f: &FFPoly, d: usize) -> Result<FFPoly, Error> {
    let field = f.field();
    let q = field.order() as u128;
    let p = field.characteristic();
    for b in candidate_polys(field, f.degree().unwrap()) {
        let g = if p != 2 {
            let e = (q.pow(d as u32) - 1) / 2;
            let h = b.pow_mod(e, f)?;
            match h.sub(&FFPoly::one(field)).gcd(f) {
                Ok(g) => g,
                Err(Error::BothZero) => continue,
                Err(e) => return Err(e),
            }
        } else {
            // Trace over GF(2): b + b^2 + b^4 + ... has 2^(md-1) roots in
            // the degree-d splitting pieces, so its gcd with f is proper
            // for about half the candidates.
            let m = field.abs_degree() as usize * d;
            let mut acc = FFPoly::zero(field);
            let mut t = b.div_rem(f)?.1;
            for _ in 0..m {
                acc = acc.add(&t);
                t = t.mul(&t).div_rem(f)?.1;
            }
            match acc.gcd(f) {
                Ok(g) => g,
                Err(Error::BothZero) => continue,
                Err(e) => return Err(e),
            }
        };
        if !g.is_one() && g.degree() < f.degree() {
            return Ok(g);
        }
    }
    unreachable!("every reducible equal-degree input admits a splitting candidate")
}

/// All nonconstant polynomials of degree < bound, smallest index first.
/// The index digits in base q are the coefficients, constant term first.
fn candidate_polys(field: &Arc<Field>, bound: usize) -> impl Iterator<Item = FFPoly> {
    let q = field.order();
    let field = Arc::clone(field);
    (q..q.saturating_pow(bound as u32)).filter_map(move |idx| {
        let mut rem = idx;
        let mut coeffs = Vec::new();
        while rem > 0 {
            coeffs.push(field.nth_element(rem % q));
            rem /= q;
        }
        let p = FFPoly::new(&field, coeffs);
        (p.degree().unwrap_or(0) >= 1).then_some(p)
    })
}

/// Multiplicative order of the class of x in GF(q)\[x\]/(h) for a monic
/// irreducible h with h(0) != 0: the order of a root of h in GF(q^deg h)*.
///
/// Computed by factoring q^(deg h) - 1 and descending through its prime
/// factors.
pub fn order_of_root(h: &FFPoly) -> Result<u64, Error> {
    let deg = h.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Err(Error::NotIrreducible);
    }
    if h.coeff(0).is_zero() {
        return Err(Error::ZeroRoot);
    }
    if !is_irreducible(h)? {
        return Err(Error::NotIrreducible);
    }
    let field = h.field();
    let group = field
        .order_checked()
        .and_then(|q| q.checked_pow(deg as u32))
        .ok_or(Error::Overflow)?
        - 1;
    let x = FFPoly::monomial(field, 1);
    let mut ord = group;
    for (prime, _) in intfactor::factor(group) {
        while ord % prime == 0 && x.pow_mod((ord / prime) as u128, h)?.is_one() {
            ord /= prime;
        }
    }
    debug_assert!(x.pow_mod(ord as u128, h)?.is_one());
    Ok(ord)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> Arc<Field> {
        Field::prime(p).unwrap()
    }

    #[test]
    fn factor_spec_examples() {
        let f2 = gf(2);
        // x^2 + x = x(x+1)
        let f = FFPoly::from_ints(&f2, &[0, 1, 1]);
        let factors = ff_factor(&f).unwrap();
        assert_eq!(
            factors,
            vec![
                (FFPoly::from_ints(&f2, &[0, 1]), 1),
                (FFPoly::from_ints(&f2, &[1, 1]), 1)
            ]
        );
        // x^2 + 1 irreducible over GF(3)
        let f3 = gf(3);
        let f = FFPoly::from_ints(&f3, &[1, 0, 1]);
        assert_eq!(ff_factor(&f).unwrap(), vec![(f.clone(), 1)]);
        // x^2 - 5x + 6 = (x-2)(x-3) over GF(7); deterministic order puts
        // x-3 = x+4 before x-2 = x+5
        let f7 = gf(7);
        let f = FFPoly::from_ints(&f7, &[6, -5, 1]);
        let factors = ff_factor(&f).unwrap();
        assert_eq!(
            factors,
            vec![
                (FFPoly::from_ints(&f7, &[-3, 1]), 1),
                (FFPoly::from_ints(&f7, &[-2, 1]), 1)
            ]
        );
        assert!(matches!(ff_factor(&FFPoly::zero(&f7)), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn factor_reassembles_random_polynomials() {
        // 100 random polynomials of degree <= 8 over GF(2), GF(3), GF(7), GF(4).
        let fields = [
            gf(2),
            gf(3),
            gf(7),
            Field::new(2, 2, None).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_facade);
        for trial in 0..100 {
            let field = &fields[trial % fields.len()];
            let q = field.order();
            let deg = rng.gen_range(1..=8);
            let mut coeffs: Vec<FFElem> = (0..=deg)
                .map(|_| field.nth_element(rng.gen_range(0..q)))
                .collect();
            if coeffs.iter().all(FFElem::is_zero) {
                coeffs[0] = FFElem::one(field);
            }
            let f = FFPoly::new(field, coeffs);
            if f.is_zero() {
                continue;
            }
            let factors = ff_factor(&f).unwrap();
            let mut prod = FFPoly::one(field);
            for (g, m) in &factors {
                assert!(g.is_monic());
                assert!(is_irreducible(g).unwrap(), "non-irreducible factor {g:?} of {f:?}");
                prod = prod.mul(&g.pow(*m as u64));
            }
            assert_eq!(prod, f.monic(), "reassembly failed for {f:?}");
            // factors pairwise distinct
            for i in 0..factors.len() {
                for j in (i + 1)..factors.len() {
                    assert_ne!(factors[i].0, factors[j].0);
                }
            }
        }
    }

    #[test]
    fn factor_over_gf4_tower() {
        let gf4 = Field::new(2, 2, None).unwrap();
        // x^2 + x + 1 splits over GF(4) into two linears.
        let f = FFPoly::from_ints(&gf4, &[1, 1, 1]);
        let factors = ff_factor(&f).unwrap();
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
    }

    #[test]
    fn order_of_root_spec_examples() {
        let f7 = gf(7);
        // x - 6: root 6 has order 2 in GF(7)*
        assert_eq!(order_of_root(&FFPoly::from_ints(&f7, &[-6, 1])).unwrap(), 2);
        // x - 1: identity
        assert_eq!(order_of_root(&FFPoly::from_ints(&f7, &[-1, 1])).unwrap(), 1);
        // x^2 + x + 1 over GF(2): cube roots of unity in GF(4)
        let f2 = gf(2);
        assert_eq!(order_of_root(&FFPoly::from_ints(&f2, &[1, 1, 1])).unwrap(), 3);
        // h(0) = 0 is rejected
        assert!(matches!(
            order_of_root(&FFPoly::from_ints(&f7, &[0, 1])),
            Err(Error::ZeroRoot)
        ));
        // reducible input is rejected
        assert!(matches!(
            order_of_root(&FFPoly::from_ints(&f7, &[6, -5, 1])),
            Err(Error::NotIrreducible)
        ));
    }

    #[test]
    fn order_of_root_matches_bruteforce() {
        // Against direct power enumeration whenever q^deg - 1 <= 10^4.
        for field in [gf(2), gf(3), gf(7), Field::new(2, 2, None).unwrap()] {
            let q = field.order();
            for deg in 1..=3usize {
                let group = q.pow(deg as u32) - 1;
                if group > 10_000 {
                    continue;
                }
                // Enumerate monic irreducibles of this degree with h(0) != 0.
                let x = FFPoly::monomial(&field, 1);
                for idx in 0..q.pow(deg as u32) {
                    let mut rem = idx;
                    let mut coeffs = Vec::new();
                    for _ in 0..deg {
                        coeffs.push(field.nth_element(rem % q));
                        rem /= q;
                    }
                    coeffs.push(FFElem::one(&field));
                    let h = FFPoly::new(&field, coeffs);
                    if h.coeff(0).is_zero() || !is_irreducible(&h).unwrap() {
                        continue;
                    }
                    let fast = order_of_root(&h).unwrap();
                    let mut acc = x.div_rem(&h).unwrap().1;
                    let mut brute = 1u64;
                    while !acc.is_one() {
                        acc = acc.mul(&x).div_rem(&h).unwrap().1;
                        brute += 1;
                        assert!(brute <= group);
                    }
                    assert_eq!(fast, brute, "order mismatch for {h:?}");
                    assert_eq!(group % fast, 0);
                }
            }
        }
    }
}
