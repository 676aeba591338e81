//! Exact power-series expansion of the zeta function, from the
//! fixed-point counts (formal exponential) and from a closed form
//! (generalized binomial products), plus the normalized coefficient
//! window c_k = N_k / q^(Rk) handed to the dichotomy diagnostics.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};

use super::{ClosedForm, Error, NkSequence, SpectralData};
use crate::dichotomy::{Q, RadicalField, SeriesWindow};

/// Exact rational Maclaurin coefficients of the zeta function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaSeries {
    pub coeffs: Vec<Q>,
}

/// coefficients c_0..c_{terms-1} of exp(sum_k N_k z^k / k), via the
/// derivative recurrence n f_n = sum_{j=1}^{n} N_j f_{n-j}. Division by n
/// is safe: the coefficients live in Q.
pub fn zeta_series(n: &NkSequence, terms: usize) -> Result<ZetaSeries, Error> {
    if terms == 0 {
        return Ok(ZetaSeries { coeffs: vec![] });
    }
    if terms - 1 > n.kmax() {
        return Err(Error::InsufficientTerms { needed: terms - 1, available: n.kmax() });
    }
    let q = n.q();
    let mut coeffs: Vec<Q> = Vec::with_capacity(terms);
    coeffs.push(Q::one());
    for m in 1..terms {
        let mut acc = Q::zero();
        for j in 1..=m {
            let nj = n.get(j);
            if nj.is_zero() {
                continue;
            }
            acc += Q::from_integer(BigInt::from(nj.to_biguint(q))) * &coeffs[m - j];
        }
        coeffs.push(acc / Q::from_integer(BigInt::from(m)));
    }
    Ok(ZetaSeries { coeffs })
}

/// coefficients c_0..c_{terms-1} of the closed-form product
/// prod_L (1 - (q^R z)^L)^(a_L), each factor expanded by the binomial
/// recurrence b_{n+1} = b_n (n - a) / (n + 1).
pub fn closed_form_series(c: &ClosedForm, q: u64, terms: usize) -> ZetaSeries {
    let mut out = vec![Q::zero(); terms];
    if terms == 0 {
        return ZetaSeries { coeffs: out };
    }
    out[0] = Q::one();
    let qr = BigInt::from(q).pow(c.r_exponent.try_into().expect("desk-scale exponent"));
    for &(l, alpha) in &c.combined {
        let l = l as usize;
        // (1 - u^L)^alpha with u = q^R z: nonzero only at z^(L n), where
        // the coefficient is b_n (q^R)^(L n).
        let alpha_q = Q::new(BigInt::from(*alpha.numer()), BigInt::from(*alpha.denom()));
        let mut factor = vec![Q::zero(); terms];
        let mut b = Q::one();
        let mut power = Q::one(); // (q^R)^(L n)
        let qr_l = Q::from_integer(qr.pow(l.try_into().expect("desk-scale lcm")));
        let mut idx = 0usize;
        let mut n = 0u64;
        while idx < terms {
            factor[idx] = &b * &power;
            // advance to n+1
            b = b * (Q::from_integer(BigInt::from(n)) - &alpha_q)
                / Q::from_integer(BigInt::from(n + 1));
            power *= &qr_l;
            n += 1;
            idx += l;
        }
        out = mul_truncated(&out, &factor, terms);
    }
    ZetaSeries { coeffs: out }
}

fn mul_truncated(a: &[Q], b: &[Q], terms: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); terms];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= terms {
                break;
            }
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// The radical index s for the window of c_k values: the least s with
/// every c_k in Q(p^(1/s)). Computed as the lcm of the denominators of
/// e * eta1_exponent over the unit classes (q = p^e turns q-exponents
/// into p-exponents); 1 when there are no unit classes.
pub fn radical_index(s: &SpectralData) -> u32 {
    let mut idx = 1u64;
    for c in &s.unit_nonrou {
        let scaled = c.eta1_exponent * Rational64::from_integer(s.e as i64);
        idx = idx.lcm(&(*scaled.denom() as u64));
    }
    idx.try_into().expect("desk-scale radical index")
}

/// The window (0, c_1, ..., c_kmax) of normalized fixed-point counts
/// c_k = N_k / q^(Rk), as exact elements of Q(p^(1/s)). Values come from
/// the spectral formula, so the master-oracle equivalence is the
/// guarantee that they match the determinants.
pub fn dichotomy_coefficients(
    s: &SpectralData,
    kmax: u64,
) -> Result<SeriesWindow, crate::dichotomy::Error> {
    let field = RadicalField::new(s.p, radical_index(s))?;
    let mut coeffs = Vec::with_capacity(kmax as usize + 1);
    coeffs.push(field.zero());
    for k in 1..=kmax {
        match s.c_exponent_q(k) {
            None => coeffs.push(field.zero()),
            Some(eq) => {
                // p-exponent = e * q-exponent
                let ep = Q::new(
                    BigInt::from(*eq.numer() * s.e as i64),
                    BigInt::from(*eq.denom()),
                );
                coeffs.push(field.p_power(&ep));
            }
        }
    }
    Ok(SeriesWindow::new(field, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dichotomy::{q_int, q_ratio};
    use crate::funcfield::PolyMatrix;
    use crate::gfq::Field;
    use crate::zeta::{classify, nk_formula, spectral_data, NkValue, ZetaVerdict};
    use std::sync::Arc;

    fn gf(p: u64) -> Arc<Field> {
        Field::prime(p).unwrap()
    }

    fn diag_6_2() -> PolyMatrix {
        let f7 = gf(7);
        PolyMatrix::from_int_rows(&f7, &[vec![vec![6], vec![]], vec![vec![], vec![2]]]).unwrap()
    }

    #[test]
    fn series_example_diag_6_2() {
        let a = diag_6_2();
        let n = NkSequence::compute(&a, 8);
        let series = zeta_series(&n, 6).unwrap();
        assert_eq!(
            series.coeffs,
            vec![q_int(1), q_int(1), q_ratio(1, 2), q_ratio(1, 6), q_ratio(1, 24), q_ratio(5, 24)]
        );
    }

    #[test]
    fn series_all_zero_counts() {
        let n = NkSequence::from_values(7, vec![NkValue::Zero; 8]);
        let series = zeta_series(&n, 6).unwrap();
        assert_eq!(series.coeffs[0], q_int(1));
        assert!(series.coeffs[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn series_geometric() {
        // A = [t] over GF(2): N_k = 2^k, zeta = 1/(1-2z)
        let f2 = gf(2);
        let a = PolyMatrix::from_int_rows(&f2, &[vec![vec![0, 1]]]).unwrap();
        let n = NkSequence::compute(&a, 6);
        let series = zeta_series(&n, 5).unwrap();
        assert_eq!(series.coeffs, vec![q_int(1), q_int(2), q_int(4), q_int(8), q_int(16)]);
    }

    #[test]
    fn insufficient_terms_is_reported() {
        let n = NkSequence::from_values(2, vec![NkValue::QPow(1); 4]);
        assert!(matches!(
            zeta_series(&n, 6),
            Err(Error::InsufficientTerms { needed: 5, available: 4 })
        ));
    }

    #[test]
    fn closed_form_series_basics() {
        use crate::zeta::SubsetFactor;
        // (1-z)^(-1)
        let cf = ClosedForm {
            r_exponent: 0,
            subset_factors: vec![],
            combined: vec![(1, Rational64::from_integer(-1))],
        };
        let s = closed_form_series(&cf, 7, 4);
        assert_eq!(s.coeffs, vec![q_int(1); 4]);
        // (1-z^2)^(1/2): 1, 0, -1/2, 0, -1/8, ...
        let cf = ClosedForm {
            r_exponent: 0,
            subset_factors: vec![SubsetFactor {
                indices: vec![0],
                lcm: 2,
                exponent: Rational64::new(1, 2),
            }],
            combined: vec![(2, Rational64::new(1, 2))],
        };
        let s = closed_form_series(&cf, 7, 5);
        assert_eq!(
            s.coeffs,
            vec![q_int(1), q_int(0), q_ratio(-1, 2), q_int(0), q_ratio(-1, 8)]
        );
    }

    #[test]
    fn closed_form_matches_exponential_diag_6_2() {
        let a = diag_6_2();
        let s = spectral_data(&a).unwrap();
        let ZetaVerdict::Algebraic { closed_form, .. } = classify(&s) else {
            panic!("diag(6,2) must be algebraic");
        };
        let n = NkSequence::compute(&a, 64);
        let from_counts = zeta_series(&n, 64).unwrap();
        let from_form = closed_form_series(&closed_form, s.q, 64);
        assert_eq!(from_counts, from_form);
    }

    #[test]
    fn closed_form_matches_exponential_diag_t_6() {
        // diag(t, 6)/GF(7): zeta = (1-7z)^(-1) (1-(7z)^2)^(1/2), which is
        // ((1+7z)/(1-7z))^(1/2).
        let f7 = gf(7);
        let a = PolyMatrix::from_int_rows(&f7, &[vec![vec![0, 1], vec![]], vec![vec![], vec![6]]])
            .unwrap();
        let s = spectral_data(&a).unwrap();
        let ZetaVerdict::Algebraic { closed_form, rational } = classify(&s) else {
            panic!("diag(t,6) must be algebraic");
        };
        assert!(!rational);
        assert_eq!(
            closed_form.combined,
            vec![(1, Rational64::from_integer(-1)), (2, Rational64::new(1, 2))]
        );
        let n = NkSequence::compute(&a, 40);
        assert_eq!(zeta_series(&n, 40).unwrap(), closed_form_series(&closed_form, 7, 40));
    }

    #[test]
    fn dichotomy_window_companion() {
        // c_k = 2^(-2^(v_2(k))): 1/2, 1/4, 1/2, 1/16, 1/2, 1/4, ...
        let f2 = gf(2);
        let a = PolyMatrix::from_int_rows(&f2, &[vec![vec![], vec![0, 1]], vec![vec![1], vec![0, 1]]])
            .unwrap();
        let s = spectral_data(&a).unwrap();
        assert_eq!(radical_index(&s), 1);
        let w = dichotomy_coefficients(&s, 16).unwrap();
        let rats = w.to_rationals().unwrap();
        assert!(rats[0].is_zero());
        for k in 1..=16u64 {
            let v = 1u64 << super::super::padic_valuation(k, 2);
            assert_eq!(rats[k as usize], Q::new(BigInt::one(), BigInt::from(2u64).pow(v as u32)));
        }
    }

    #[test]
    fn dichotomy_window_zero_one_pattern() {
        let a = diag_6_2();
        let s = spectral_data(&a).unwrap();
        let w = dichotomy_coefficients(&s, 12).unwrap();
        let rats = w.to_rationals().unwrap();
        for k in 1..=12usize {
            let expect = if k % 2 != 0 && k % 3 != 0 { q_int(1) } else { q_int(0) };
            assert_eq!(rats[k], expect, "k = {k}");
        }
    }

    #[test]
    fn dichotomy_window_all_ones_for_pure_growth() {
        // A = [t]: N_k = q^k exactly, so c_k = 1 throughout.
        let f2 = gf(2);
        let a = PolyMatrix::from_int_rows(&f2, &[vec![vec![0, 1]]]).unwrap();
        let s = spectral_data(&a).unwrap();
        let rats = dichotomy_coefficients(&s, 10).unwrap().to_rationals().unwrap();
        assert!(rats[1..].iter().all(|c| *c == q_int(1)));
    }

    #[test]
    fn formula_matches_oracle_on_worked_examples() {
        for (a, kmax) in [
            (diag_6_2(), 20u64),
            ({
                let f2 = gf(2);
                PolyMatrix::from_int_rows(&f2, &[vec![vec![], vec![0, 1]], vec![vec![1], vec![0, 1]]])
                    .unwrap()
            }, 20),
        ] {
            let s = spectral_data(&a).unwrap();
            for k in 1..=kmax {
                assert_eq!(nk_formula(&s, k).unwrap(), super::super::nk_oracle(&a, k), "k={k}");
            }
        }
    }
}
