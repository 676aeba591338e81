//! Newton polygons of elements of F_q\[t\]\[X\] with respect to the valuation
//! v = -deg_t.
//!
//! Convention, fixed here and relied on everywhere downstream: the polygon
//! is the lower convex hull of the points (i, -deg_t c_i) over the nonzero
//! X-coefficients c_i, and a hull segment of slope s and horizontal width w
//! accounts for exactly w roots (in the algebraic closure, with
//! multiplicity) of valuation -s.

use num_rational::Rational64;
use num_traits::Zero;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::funcfield::{self, bipoly_shift, BiPoly};
use crate::gfq::{FFElem, FFPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("shifted polynomial has X-multiplicity {found}, expected {expected}")]
    StripMismatch { expected: usize, found: usize },
    #[error("operands belong to different fields")]
    FieldMismatch,
}

impl From<funcfield::Error> for Error {
    fn from(_: funcfield::Error) -> Error {
        Error::FieldMismatch
    }
}

/// One maximal straight piece of the lower hull.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub slope: Rational64,
    pub width: usize,
}

/// The Newton polygon of a nonzero element of F_q\[t\]\[X\].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// (i, -deg_t c_i) for each nonzero coefficient, in increasing i.
    pub points: Vec<(usize, i64)>,
    /// Lower-hull vertices, a subset of `points` with strictly increasing
    /// slopes between consecutive entries.
    pub hull: Vec<(usize, i64)>,
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Multiplicity of the root X = 0, i.e. the index of the first nonzero
    /// coefficient.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.points[0].0
    }

    /// The slope-0 segment together with its hull level, if present.
    pub fn slope_zero_segment(&self) -> Option<(usize, usize, i64)> {
        for (k, seg) in self.segments.iter().enumerate() {
            if seg.slope.is_zero() {
                let (i0, y0) = self.hull[k];
                let (i1, _) = self.hull[k + 1];
                return Some((i0, i1, y0));
            }
        }
        None
    }
}

/// Builds the Newton polygon of a nonzero bivariate polynomial.
pub fn newton_polygon(chi: &BiPoly) -> Result<NewtonPolygon, Error> {
    if chi.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let points: Vec<(usize, i64)> = chi
        .coeffs_x()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.degree().map(|d| (i, -(d as i64))))
        .collect();
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &p in &points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            Segment { slope: Rational64::new(y1 - y0, (x1 - x0) as i64), width: x1 - x0 }
        })
        .collect();
    Ok(NewtonPolygon { points, hull, segments })
}

/// Cross product (b - a) x (c - a); positive when b lies strictly below the
/// chord from a to c.
fn cross(a: (usize, i64), b: (usize, i64), c: (usize, i64)) -> i64 {
    let (ax, ay) = (a.0 as i64, a.1);
    let (bx, by) = (b.0 as i64, b.1);
    let (cx, cy) = (c.0 as i64, c.1);
    (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
}

/// Root valuations read off the polygon: one entry per segment, valuation
/// -slope with multiplicity = width, plus the X = 0 root count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationSpectrum {
    /// (valuation, multiplicity), in increasing valuation order.
    pub entries: Vec<(Rational64, usize)>,
    pub zero_roots: usize,
}

impl ValuationSpectrum {
    /// Total count of negative-valuation roots weighted by -valuation;
    /// an integer by the lattice-point property of the hull, and the
    /// exponent R with r(A) = q^R when applied to a characteristic
    /// polynomial.
    pub fn big_root_exponent(&self) -> Rational64 {
        self.entries
            .iter()
            .filter(|(v, _)| *v < Rational64::zero())
            .map(|(v, m)| -*v * Rational64::from_integer(*m as i64))
            .sum()
    }

    /// Width of the valuation-0 part: the number of unit roots.
    pub fn unit_count(&self) -> usize {
        self.entries.iter().filter(|(v, _)| v.is_zero()).map(|(_, m)| m).sum()
    }
}

pub fn root_valuations(polygon: &NewtonPolygon) -> ValuationSpectrum {
    let mut entries: Vec<(Rational64, usize)> =
        polygon.segments.iter().map(|s| (-s.slope, s.width)).collect();
    entries.sort_by_key(|a| a.0);
    ValuationSpectrum { entries, zero_roots: polygon.zero_root_multiplicity() }
}

/// The reduction of the slope-0 segment: the polynomial over GF(q) whose
/// roots are the residues of the unit roots of chi. Returns the constant 1
/// when chi has no slope-0 segment.
pub fn residual_polynomial(chi: &BiPoly) -> Result<FFPoly, Error> {
    let polygon = newton_polygon(chi)?;
    let field = chi.field();
    let Some((i0, i1, y0)) = polygon.slope_zero_segment() else {
        return Ok(FFPoly::one(field));
    };
    let level = (-y0) as usize;
    let coeffs: Vec<FFElem> = (i0..=i1).map(|i| chi.coeff_x(i).coeff(level)).collect();
    let res = FFPoly::new(field, coeffs);
    debug_assert_eq!(res.degree(), Some(i1 - i0));
    debug_assert!(!res.coeff(0).is_zero());
    Ok(res)
}

/// Valuations v(root - shift) > 0, one per root of chi congruent to
/// `shift` modulo the maximal ideal and distinct from it, as a sorted
/// multiset. `known_multiplicity` is the number of roots literally equal
/// to `shift`; the shifted polynomial must vanish to exactly that order at
/// X = 0.
pub fn unit_residue_valuations(
    chi: &BiPoly,
    shift: &FFElem,
    known_multiplicity: usize,
) -> Result<Vec<Rational64>, Error> {
    assert!(!shift.is_zero(), "residues of unit roots are nonzero");
    let shifted = bipoly_shift(chi, shift)?;
    let polygon = newton_polygon(&shifted)?;
    let found = polygon.zero_root_multiplicity();
    if found != known_multiplicity {
        return Err(Error::StripMismatch { expected: known_multiplicity, found });
    }
    let spectrum = root_valuations(&polygon);
    let mut out = Vec::new();
    for (v, m) in spectrum.entries {
        if v > Rational64::zero() {
            out.extend(std::iter::repeat_n(v, m));
        }
    }
    out.sort();
    Ok(out)
}

impl Serialize for NewtonPolygon {
    /// Serializes as {points, hull, segments:[{slope:"a/b", width}]}.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Segs<'a>(&'a [Segment]);
        impl Serialize for Segs<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for s in self.0 {
                    let mut m = std::collections::BTreeMap::new();
                    m.insert(
                        "slope".to_string(),
                        serde_json::Value::String(format!("{}/{}", s.slope.numer(), s.slope.denom())),
                    );
                    m.insert("width".to_string(), serde_json::Value::from(s.width));
                    seq.serialize_element(&m)?;
                }
                seq.end()
            }
        }
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("points", &self.points)?;
        map.serialize_entry("hull", &self.hull)?;
        map.serialize_entry("segments", &Segs(&self.segments))?;
        map.end()
    }
}
