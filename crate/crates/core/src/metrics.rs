//! Heights, lengths and the univariate Mahler measure.
//!
//! For an integral polynomial `f = Σ f_β x^β`:
//! `h(f) = log max |f_β|`, `h1(f) = log Σ |f_β|`, `m(f) = ∫ log|f|` over the torus.
//! Logs are natural. Comparisons that matter for certificates are made on the exact
//! integers `max |f_β|` and `Σ |f_β|`; the floating-point logs are for reporting.

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{int_pow, log_abs_int, log_abs_rat, MultiPoly, UniPoly};
use crate::error::{Error, Result};
use crate::roots;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeightReport {
    pub h: f64,
    pub h1: f64,
    pub degree: u64,
    /// Positive integer the input was multiplied by to make it integral (1 for ℤ input).
    #[serde(serialize_with = "crate::arith::ser_bigint")]
    pub clearing_factor: BigInt,
}

pub fn height_report(f: &MultiPoly) -> Result<HeightReport> {
    if f.is_zero() {
        return Err(Error::UndefinedHeight);
    }
    let (c, g) = f.clear_denominators();
    Ok(HeightReport {
        h: log_abs_int(&g.abs_max()),
        h1: log_abs_int(&g.abs_sum()),
        degree: g.degree().unwrap_or(0),
        clearing_factor: c,
    })
}

pub fn height(f: &MultiPoly) -> Result<f64> {
    height_report(f).map(|r| r.h)
}

pub fn length(f: &MultiPoly) -> Result<f64> {
    height_report(f).map(|r| r.h1)
}

pub fn height_uni(f: &UniPoly) -> Result<f64> {
    height(&f.to_multi(1, 0))
}

pub fn length_uni(f: &UniPoly) -> Result<f64> {
    length(&f.to_multi(1, 0))
}

/// `h(f) ≤ h1(f) ≤ h(f) + deg(f)·log(n+1)`, checked on exact integers:
/// `H ≤ L ≤ H·(n+1)^deg`.
pub fn check_height_length_ineq(f: &MultiPoly) -> bool {
    if f.is_zero() || !f.is_integral() {
        return false;
    }
    let big_h = f.abs_max();
    let big_l = f.abs_sum();
    let deg = f.degree().unwrap_or(0);
    let cap = &big_h * int_pow(&BigInt::from(f.nvars() as u64 + 1), deg);
    big_h <= big_l && big_l <= cap
}

/// Encloses `m(f) = log|f_d| + Σ log max(1, |ξ|)` (Jensen's formula) in an interval
/// of width at most `tol`.
pub fn mahler_estimate_uni(f: &UniPoly, tol: f64) -> Result<(f64, f64)> {
    if f.is_zero() {
        return Err(Error::UndefinedHeight);
    }
    let base = log_abs_rat(&f.leading());
    let ests = roots::roots_with_radii(f)?;
    // group overlapping disks; every component with k disks holds k roots
    let n = ests.len();
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut Vec<usize>, i: usize) -> usize {
        if c[i] != i {
            let r = find(c, c[i]);
            c[i] = r;
        }
        c[i]
    }
    for i in 0..n {
        for j in i + 1..n {
            if (ests[i].value - ests[j].value).norm() <= ests[i].radius + ests[j].radius {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a] = b;
            }
        }
    }
    let mut lo = base;
    let mut hi = base;
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut comp, i);
        groups.entry(r).or_default().push(i);
    }
    for members in groups.values() {
        let inner = members.iter().map(|&i| ests[i].value.norm() - ests[i].radius).fold(f64::INFINITY, f64::min);
        let outer = members.iter().map(|&i| ests[i].value.norm() + ests[i].radius).fold(0.0, f64::max);
        let k = members.len() as f64;
        lo += k * inner.max(1.0).ln();
        hi += k * outer.max(1.0).ln();
    }
    let width = hi - lo;
    if !(width <= tol) {
        return Err(Error::NumericFailure { achieved_width: width });
    }
    Ok((lo, hi))
}

/// `Σ |c|` over the coefficients, as an exact integer (for integral input).
pub fn abs_sum(f: &MultiPoly) -> BigInt {
    f.abs_sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn height_and_length_examples() {
        let f = MultiPoly::from_int_terms(1, &[(&[2], 3), (&[1], -5)]);
        assert!(approx(height(&f).unwrap(), 5f64.ln()));
        assert!(approx(length(&f).unwrap(), 8f64.ln()));

        let one = MultiPoly::from_int(1, 1);
        assert_eq!(height(&one).unwrap(), 0.0);
        assert_eq!(length(&one).unwrap(), 0.0);

        let g = MultiPoly::from_int_terms(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)]);
        assert_eq!(height(&g).unwrap(), 0.0);
        assert!(approx(length(&g).unwrap(), 3f64.ln()));
    }

    #[test]
    fn zero_has_no_height() {
        assert_eq!(height(&MultiPoly::zero(2)), Err(Error::UndefinedHeight));
    }

    #[test]
    fn rational_input_reports_clearing_factor() {
        let f = MultiPoly::from_terms(1, [(crate::ExponentVec::new(vec![1]), crate::BigRat::new(1.into(), 2.into()))]);
        let r = height_report(&f).unwrap();
        assert_eq!(r.clearing_factor, BigInt::from(2));
        assert_eq!(r.h, 0.0);
    }

    #[test]
    fn sandwich_on_constants_and_full_simplex() {
        assert!(check_height_length_ineq(&MultiPoly::from_int(3, -7)));
        // Σ of all monomials of degree ≤ 3 in 2 variables: 10 terms, L = 10 ≤ 1·3^3
        let full =
            MultiPoly::from_terms(2, crate::ExponentVec::simplex(2, 3).into_iter().map(|e| (e, crate::arith::rat(1))));
        assert_eq!(full.abs_sum(), BigInt::from(10));
        assert!(check_height_length_ineq(&full));
    }

    #[test]
    fn mahler_examples() {
        let (lo, hi) = mahler_estimate_uni(&UniPoly::from_ints(&[-2, 1]), 1e-9).unwrap();
        assert!(lo <= 2f64.ln() + 1e-12 && 2f64.ln() - 1e-12 <= hi);
        let (lo, hi) = mahler_estimate_uni(&UniPoly::from_ints(&[1, 0, 1]), 1e-9).unwrap();
        assert!(lo <= 1e-12 && -1e-12 <= hi);
    }

    #[test]
    fn mahler_matches_circle_quadrature() {
        // f = 2x - 3: Jensen gives log 3; compare with trapezoidal integration of log|f| on |z| = 1
        let f = UniPoly::from_ints(&[-3, 2]);
        let (lo, hi) = mahler_estimate_uni(&f, 1e-9).unwrap();
        let n = 4096;
        let quad: f64 = (0..n)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                f.eval_complex(num_complex::Complex64::from_polar(1.0, t)).norm().ln()
            })
            .sum::<f64>()
            / n as f64;
        assert!((quad - 3f64.ln()).abs() < 1e-9);
        assert!(lo - 1e-9 <= quad && quad <= hi + 1e-9);
    }
}
