//! Extraction of spectral data from a matrix over F_q\[t\].
//!
//! The pipeline:
//! 1. chi = charpoly(A); Newton polygon of chi gives the valuation split
//!    of the eigenvalues and the growth exponent R.
//! 2. Root-of-unity eigenvalues are the nonzero constant roots of chi:
//!    common roots of all t-degree slices, i.e. roots of the slice gcd
//!    over GF(q). Multiplicities come from exact division in F_q\[t\]\[X\].
//! 3. The residual polynomial of the slope-0 segment has the residues of
//!    all unit eigenvalues as roots; dividing out the root-of-unity part
//!    leaves the residues of the non-root-of-unity unit eigenvalues.
//! 4. For each irreducible residue factor, the polygon of chi shifted by
//!    a root (constructed in the tower GF(q^deg) when the factor is not
//!    linear) yields the magnitudes |eta - residue| = q^(-w), one per
//!    eigenvalue in the class.
//!
//! Every stage cross-checks its counts against the polygon; a failure
//! surfaces as [`Error::InternalInconsistency`] rather than a wrong
//! answer.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::Zero;

use super::{Error, RouClass, SpectralData, UnitClass};
use crate::funcfield::{BiPoly, PolyMatrix};
use crate::gfq::{ff_factor, order_of_root, FFElem, FFPoly, Field};
use crate::newton::{newton_polygon, residual_polynomial, root_valuations, unit_residue_valuations};

fn inconsistent<T>(msg: impl Into<String>) -> Result<T, Error> {
    Err(Error::InternalInconsistency(msg.into()))
}

/// Full spectral extraction; see the module docs for the pipeline.
pub fn spectral_data(a: &PolyMatrix) -> Result<SpectralData, Error> {
    let field = a.field().clone();
    let q = field.order();
    let p = field.characteristic();
    let e = field.abs_degree();
    let dim = a.dim();
    if dim == 0 {
        return Ok(SpectralData {
            q,
            p,
            e,
            dim,
            r_exponent: 0,
            rou: vec![],
            unit_nonrou: vec![],
            zero_eigen_multiplicity: 0,
            big_eigen_count: 0,
            small_eigen_count: 0,
        });
    }

    let chi = a.charpoly();
    let polygon = newton_polygon(&chi).map_err(|e| Error::InternalInconsistency(e.to_string()))?;
    let spectrum = root_valuations(&polygon);

    let r = spectrum.big_root_exponent();
    if !r.is_integer() || r < Rational64::zero() {
        return inconsistent("growth exponent is not a nonnegative integer");
    }
    let r_exponent = r.to_integer() as u64;
    let unit_count = spectrum.unit_count();
    let big_eigen_count: usize = spectrum
        .entries
        .iter()
        .filter(|(v, _)| *v < Rational64::zero())
        .map(|(_, m)| m)
        .sum();
    let small_eigen_count: usize = spectrum
        .entries
        .iter()
        .filter(|(v, _)| *v > Rational64::zero())
        .map(|(_, m)| m)
        .sum();

    // Stage 2: root-of-unity eigenvalues via the slice gcd.
    let rou_factors = rou_factors(&chi)?;
    let mut rou_map: BTreeMap<u64, usize> = BTreeMap::new();
    for f in &rou_factors {
        *rou_map.entry(f.order).or_insert(0) += f.multiplicity as usize * f.degree;
    }

    // Stage 3: residues of the remaining unit eigenvalues.
    let residual =
        residual_polynomial(&chi).map_err(|e| Error::InternalInconsistency(e.to_string()))?;
    let mut rou_part = FFPoly::one(&field);
    for f in &rou_factors {
        rou_part = rou_part.mul(&f.poly.pow(f.multiplicity as u64));
    }
    if !rou_part.divides(&residual) {
        return inconsistent("root-of-unity part does not divide the residual polynomial");
    }
    let nonrou_residues = residual.exact_div(&rou_part);

    // Stage 4: orders and maximal-ideal magnitudes per residue class.
    let mut unit_map: BTreeMap<(u64, Rational64), usize> = BTreeMap::new();
    if nonrou_residues.degree().unwrap_or(0) >= 1 {
        let factors = ff_factor(&nonrou_residues)
            .map_err(|e| Error::InternalInconsistency(e.to_string()))?;
        for (h, mult) in factors {
            let class = unit_class_valuations(&chi, &h, &rou_factors)?;
            if class.valuations.len() != mult as usize {
                return inconsistent(format!(
                    "residue class of {h:?} has {} magnitudes, expected {mult}",
                    class.valuations.len()
                ));
            }
            let delta = h.degree().unwrap();
            for w in class.valuations {
                if w <= Rational64::zero() {
                    return inconsistent("unit-class magnitude exponent is not positive");
                }
                *unit_map.entry((class.order, w)).or_insert(0) += delta;
            }
        }
    }

    let rou: Vec<RouClass> =
        rou_map.into_iter().map(|(order, multiplicity)| RouClass { order, multiplicity }).collect();
    let unit_nonrou: Vec<UnitClass> = unit_map
        .into_iter()
        .map(|((order, eta1_exponent), multiplicity)| UnitClass {
            order,
            eta1_exponent,
            multiplicity,
        })
        .collect();

    // The unit eigenvalues must be exactly covered by the two lists.
    let covered: usize = rou.iter().map(|c| c.multiplicity).sum::<usize>()
        + unit_nonrou.iter().map(|c| c.multiplicity).sum::<usize>();
    if covered != unit_count {
        return inconsistent(format!(
            "unit eigenvalue count mismatch: polygon says {unit_count}, classes cover {covered}"
        ));
    }
    // Orders are multiplicative orders in GF(q^delta)*, hence coprime to p.
    for c in &rou {
        if c.order % p == 0 {
            return inconsistent("root-of-unity order divisible by the characteristic");
        }
    }
    for c in &unit_nonrou {
        if c.order % p == 0 {
            return inconsistent("unit-class order divisible by the characteristic");
        }
    }

    Ok(SpectralData {
        q,
        p,
        e,
        dim,
        r_exponent,
        rou,
        unit_nonrou,
        zero_eigen_multiplicity: spectrum.zero_roots,
        big_eigen_count,
        small_eigen_count,
    })
}

struct RouFactor {
    poly: FFPoly,
    degree: usize,
    multiplicity: u32,
    order: u64,
}

/// Finds the irreducible polynomials over GF(q) whose roots are the
/// root-of-unity eigenvalues, with their eigenvalue multiplicities.
///
/// A constant alpha in the algebraic closure is a root of chi iff it is a
/// common root of every t-degree slice of chi; the nonzero such alpha are
/// exactly the root-of-unity eigenvalues. The eigenvalue multiplicity of
/// the roots of an irreducible h is the largest k with h^k dividing chi in
/// F_q\[t\]\[X\].
fn rou_factors(chi: &BiPoly) -> Result<Vec<RouFactor>, Error> {
    let field = chi.field();
    let mut g: Option<FFPoly> = None;
    for m in 0..=chi.max_t_degree().unwrap_or(0) {
        let slice = chi.t_slice(m);
        if slice.is_zero() {
            continue;
        }
        g = Some(match g {
            None => slice.monic(),
            Some(acc) => {
                acc.gcd(&slice).map_err(|e| Error::InternalInconsistency(e.to_string()))?
            }
        });
        if g.as_ref().is_some_and(FFPoly::is_one) {
            break;
        }
    }
    let mut g = g.ok_or_else(|| {
        Error::InternalInconsistency("characteristic polynomial has no nonzero slice".into())
    })?;
    // Discard the constant root 0: strip X factors.
    while !g.is_zero() && g.degree() > Some(0) && g.coeff(0).is_zero() {
        g = g.exact_div(&FFPoly::monomial(field, 1));
    }
    if g.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let factors = ff_factor(&g).map_err(|e| Error::InternalInconsistency(e.to_string()))?;
    let mut out = Vec::new();
    for (h, _) in factors {
        let lifted = BiPoly::from_x_poly(&h);
        let mut mult = 0u32;
        let mut rest = chi.clone();
        while lifted.divides(&rest) {
            rest = rest.exact_div(&lifted);
            mult += 1;
        }
        if mult == 0 {
            return inconsistent("slice-gcd factor does not divide the characteristic polynomial");
        }
        let order =
            order_of_root(&h).map_err(|e| Error::InternalInconsistency(e.to_string()))?;
        out.push(RouFactor { degree: h.degree().unwrap(), poly: h, multiplicity: mult, order });
    }
    Ok(out)
}

struct UnitClassValuations {
    order: u64,
    valuations: Vec<Rational64>,
}

/// For one irreducible residue factor h over GF(q), computes the common
/// residue order and the multiset of magnitudes v(eta - residue) over the
/// eigenvalues eta whose residue is a fixed root of h. Linear factors stay
/// in GF(q); higher-degree factors shift inside the tower GF(q)[y]/(h),
/// where the class of y is a root of h by construction.
fn unit_class_valuations(
    chi: &BiPoly,
    h: &FFPoly,
    rou_factors: &[RouFactor],
) -> Result<UnitClassValuations, Error> {
    let field = chi.field();
    let order = order_of_root(h).map_err(|e| Error::InternalInconsistency(e.to_string()))?;
    // Roots of h that are themselves eigenvalues are exactly the case
    // h = some root-of-unity factor; their multiplicity must be stripped
    // before reading the shifted polygon.
    let strip = rou_factors
        .iter()
        .find(|f| &f.poly == h)
        .map(|f| f.multiplicity as usize)
        .unwrap_or(0);
    let delta = h.degree().unwrap();
    let valuations = if delta == 1 {
        let zeta = h.coeff(0).neg(); // h = X + a, root -a
        unit_residue_valuations(chi, &zeta, strip)
            .map_err(|e| Error::InternalInconsistency(e.to_string()))?
    } else {
        let ext: Arc<Field> = Field::extension(field, h.clone())
            .map_err(|e| Error::InternalInconsistency(e.to_string()))?;
        let zeta = FFElem::generator(&ext)
            .map_err(|e| Error::InternalInconsistency(e.to_string()))?;
        let lifted = chi.lift_to(&ext).map_err(|e| Error::InternalInconsistency(e.to_string()))?;
        unit_residue_valuations(&lifted, &zeta, strip)
            .map_err(|e| Error::InternalInconsistency(e.to_string()))?
    };
    Ok(UnitClassValuations { order, valuations })
}
