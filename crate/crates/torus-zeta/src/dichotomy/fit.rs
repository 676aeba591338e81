//! Minimal linear-recurrence fitting for finite windows, the finite-window
//! counterpart of polynomial-exponential rank, and the binomial-basis
//! expansion with its growth bound.

use num_traits::{One, Signed, Zero};

use super::qpoly::{q_int, Q, QPoly};
use super::window::SeriesWindow;
use super::Error;

/// A fitted minimal recurrence for a window u_0..u_L.
///
/// `r` is the least length of a constant-coefficient linear recurrence
/// reproducing the whole window (r = window length when nothing shorter
/// works, which can only be a vacuous fit). For a proper fit, r equals the
/// polynomial-exponential rank s + sum deg P_i of the window and the
/// representation u_n = sum P_i(n) a_i^n is unique; `s_roots` counts the
/// distinct characteristic roots. The fit is a genuine
/// polynomial-exponential representation only when charpoly(0) != 0.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceFit {
    pub r: usize,
    pub s_roots: usize,
    /// Monic characteristic polynomial of degree r.
    pub charpoly: QPoly,
    /// 2r <= window length; proper fits are unique.
    pub proper: bool,
}

/// Fits the minimal recurrence by increasing-rank search with an exact
/// linear solve at each candidate length. Rational windows only.
pub fn fit_polyexp(w: &SeriesWindow) -> Result<RecurrenceFit, Error> {
    let u = w.to_rationals()?;
    Ok(fit_rationals(&u))
}

/// Core fit on a rational window.
pub fn fit_rationals(u: &[Q]) -> RecurrenceFit {
    let len = u.len();
    for r in 0..=len {
        if let Some(coeffs) = try_recurrence(u, r) {
            // charpoly = X^r - c_{r-1} X^{r-1} - ... - c_0
            let mut cp = coeffs.iter().map(|c| -c.clone()).collect::<Vec<Q>>();
            cp.push(Q::one());
            let charpoly = QPoly::new(cp);
            let s_roots = if r == 0 { 0 } else { charpoly.distinct_root_count() };
            return RecurrenceFit { r, s_roots, charpoly, proper: 2 * r <= len };
        }
    }
    unreachable!("r = window length always fits vacuously")
}

/// Finds c_0..c_{r-1} with u_{n+r} = sum c_i u_{n+i} for all n, if any.
/// Gaussian elimination; free variables are set to zero, so the result is
/// deterministic (and unique whenever the fit is proper).
fn try_recurrence(u: &[Q], r: usize) -> Option<Vec<Q>> {
    let len = u.len();
    if r == 0 {
        return u.iter().all(Zero::is_zero).then(Vec::new);
    }
    if r >= len {
        return Some(vec![Q::zero(); r]); // vacuous: no constraining rows
    }
    let rows = len - r;
    let mut aug: Vec<Vec<Q>> = (0..rows)
        .map(|n| {
            let mut row: Vec<Q> = (0..r).map(|i| u[n + i].clone()).collect();
            row.push(u[n + r].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..r {
        let Some(piv) = (rank..rows).find(|&row| !aug[row][col].is_zero()) else {
            continue;
        };
        aug.swap(rank, piv);
        let inv = aug[rank][col].recip();
        for x in aug[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for row in 0..rows {
            if row != rank && !aug[row][col].is_zero() {
                let f = aug[row][col].clone();
                for j in 0..=r {
                    let sub = &f * &aug[rank][j];
                    aug[row][j] -= sub;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    for row in rank..rows {
        if !aug[row][r].is_zero() {
            return None; // inconsistent
        }
    }
    let mut c = vec![Q::zero(); r];
    for (row, &col) in pivot_cols.iter().enumerate() {
        c[col] = aug[row][r].clone();
    }
    Some(c)
}

/// Regenerates a window of the given length from a fit's recurrence and
/// the first r window entries. Used to cross-check minimality.
pub fn regenerate(fit: &RecurrenceFit, seed: &[Q], len: usize) -> Vec<Q> {
    let r = fit.r;
    assert!(seed.len() >= r.min(len));
    let mut u: Vec<Q> = seed[..r.min(len)].to_vec();
    while u.len() < len {
        let n = u.len() - r;
        let mut acc = Q::zero();
        for i in 0..r {
            // recurrence coefficients are -charpoly[i]
            acc -= fit.charpoly.coeff(i) * u[n + i].clone();
        }
        u.push(acc);
    }
    u
}

/// The coefficients of P in the binomial basis P(z) = sum alpha_i C(z, i),
/// obtained from forward differences, together with the growth bound
/// |alpha_i| <= M 2^i i! where M = max |P(i)| over i = 0..deg P.
#[derive(Debug, Clone)]
pub struct BinomialBasis {
    pub alphas: Vec<Q>,
    /// max |P(i)| over the first deg P + 1 integers.
    pub max_abs: Q,
    pub bound_holds: bool,
}

pub fn binomial_basis(p: &QPoly) -> BinomialBasis {
    let d = p.degree().unwrap_or(0);
    let mut values: Vec<Q> = (0..=d as i64).map(|i| p.eval_int(i)).collect();
    let max_abs = values.iter().map(Signed::abs).max().unwrap_or_else(Q::zero);
    // alpha_i is the i-th forward difference at 0.
    let mut alphas = Vec::with_capacity(d + 1);
    for i in 0..=d {
        alphas.push(values[0].clone());
        if i < d {
            for j in 0..d - i {
                values[j] = &values[j + 1] - &values[j];
            }
        }
    }
    let mut bound_holds = true;
    let mut pow2_fact = Q::one(); // 2^i * i!
    for (i, a) in alphas.iter().enumerate() {
        if i > 0 {
            pow2_fact = pow2_fact * q_int(2) * q_int(i as i64);
        }
        if a.abs() > &max_abs * &pow2_fact {
            bound_holds = false;
        }
    }
    BinomialBasis { alphas, max_abs, bound_holds }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dichotomy::qpoly::q_ratio;

    fn window(vals: Vec<Q>) -> SeriesWindow {
        SeriesWindow::from_rationals(vals)
    }

    #[test]
    fn fit_two_exponentials() {
        // u_n = 2^n + 3^n: r = 2, charpoly X^2 - 5X + 6, two roots
        let u: Vec<Q> = (0..10u32).map(|n| q_int((2i64).pow(n) + (3i64).pow(n))).collect();
        let fit = fit_polyexp(&window(u)).unwrap();
        assert_eq!(fit.r, 2);
        assert_eq!(fit.s_roots, 2);
        assert_eq!(fit.charpoly, QPoly::from_ints(&[6, -5, 1]));
        assert!(fit.proper);
    }

    #[test]
    fn fit_polynomial_times_exponential() {
        // u_n = n 2^n: charpoly (X-2)^2, one distinct root
        let u: Vec<Q> = (0..10i64).map(|n| q_int(n * (1i64 << n))).collect();
        let fit = fit_polyexp(&window(u)).unwrap();
        assert_eq!(fit.r, 2);
        assert_eq!(fit.s_roots, 1);
        assert_eq!(fit.charpoly, QPoly::from_ints(&[4, -4, 1]));
    }

    #[test]
    fn fit_zero_window() {
        let fit = fit_polyexp(&window(vec![Q::zero(); 7])).unwrap();
        assert_eq!(fit.r, 0);
        assert_eq!(fit.s_roots, 0);
        assert!(fit.proper);
    }

    #[test]
    fn fit_minimality_and_refit() {
        let u: Vec<Q> = (0..12u32).map(|n| q_int((2i64).pow(n) + (3i64).pow(n))).collect();
        let fit = fit_rationals(&u);
        // no recurrence of length r-1 reproduces the window
        assert!(try_recurrence(&u, fit.r - 1).is_none());
        // refitting the regenerated sequence returns the identical fit
        let regen = regenerate(&fit, &u, 12);
        assert_eq!(regen, u);
        assert_eq!(fit_rationals(&regen), fit);
    }

    #[test]
    fn proper_fits_are_elimination_order_independent() {
        // A reversed-order solver must land on the identical fit for
        // proper windows (the minimal proper representation is unique).
        fn fit_reversed(u: &[Q]) -> (usize, QPoly) {
            let len = u.len();
            for r in 0..=len {
                if r == 0 {
                    if u.iter().all(num_traits::Zero::is_zero) {
                        return (0, QPoly::one());
                    }
                    continue;
                }
                if r >= len {
                    let mut cp = vec![Q::zero(); r];
                    cp.push(Q::one());
                    return (r, QPoly::new(cp));
                }
                let rows = len - r;
                let mut aug: Vec<Vec<Q>> = (0..rows)
                    .map(|n| {
                        let mut row: Vec<Q> = (0..r).map(|i| u[n + i].clone()).collect();
                        row.push(u[n + r].clone());
                        aug_reverse(&mut row);
                        row
                    })
                    .collect();
                // eliminate columns right-to-left on the reversed rows
                let mut pivots = Vec::new();
                let mut rank = 0usize;
                for col in 0..r {
                    let Some(p) = (rank..rows).find(|&row| !aug[row][col + 1].is_zero()) else {
                        continue;
                    };
                    aug.swap(rank, p);
                    let inv = aug[rank][col + 1].recip();
                    for x in aug[rank].iter_mut() {
                        *x = &*x * &inv;
                    }
                    for row in 0..rows {
                        if row != rank && !aug[row][col + 1].is_zero() {
                            let f = aug[row][col + 1].clone();
                            for j in 0..=r {
                                let sub = &f * &aug[rank][j];
                                aug[row][j] -= sub;
                            }
                        }
                    }
                    pivots.push(col);
                    rank += 1;
                }
                if (rank..rows).any(|row| !aug[row][0].is_zero()) {
                    continue;
                }
                let mut c = vec![Q::zero(); r];
                for (row, &col) in pivots.iter().enumerate() {
                    // column col+1 held u[n + (r-1-col)]
                    c[r - 1 - col] = aug[row][0].clone();
                }
                let mut cp: Vec<Q> = c.iter().map(|x| -x.clone()).collect();
                cp.push(Q::one());
                return (r, QPoly::new(cp));
            }
            unreachable!()
        }
        fn aug_reverse(row: &mut [Q]) {
            row.reverse();
        }

        for u in [
            (0..12u32).map(|n| q_int((2i64).pow(n) + (3i64).pow(n))).collect::<Vec<Q>>(),
            (0..12i64).map(|n| q_int(n * n + 1)).collect(),
            (0..10i64).map(|n| q_int((-2i64).pow(n as u32))).collect(),
        ] {
            let forward = fit_rationals(&u);
            assert!(forward.proper);
            let (r, cp) = fit_reversed(&u);
            assert_eq!((r, cp), (forward.r, forward.charpoly.clone()));
        }
    }

    #[test]
    fn improper_fallback() {
        // (0, 0, 1) admits nothing shorter than the full window length.
        let fit = fit_rationals(&[Q::zero(), Q::zero(), Q::one()]);
        assert_eq!(fit.r, 3);
        assert!(!fit.proper);
    }

    #[test]
    fn binomial_basis_examples() {
        // z^2 = C(z,1) + 2 C(z,2)
        let b = binomial_basis(&QPoly::from_ints(&[0, 0, 1]));
        assert_eq!(b.alphas, vec![q_int(0), q_int(1), q_int(2)]);
        assert!(b.bound_holds);
        // constant 1
        let b = binomial_basis(&QPoly::from_ints(&[1]));
        assert_eq!(b.alphas, vec![q_int(1)]);
        assert!(b.bound_holds);
        // z^3 = C(z,1) + 6 C(z,2) + 6 C(z,3)
        let b = binomial_basis(&QPoly::from_ints(&[0, 0, 0, 1]));
        assert_eq!(b.alphas, vec![q_int(0), q_int(1), q_int(6), q_int(6)]);
        assert!(b.bound_holds);
        // rational coefficients work too
        let b = binomial_basis(&QPoly::new(vec![q_ratio(1, 2), q_ratio(-3, 4)]));
        assert_eq!(b.alphas[0], q_ratio(1, 2));
        assert!(b.bound_holds);
    }
}
