//! Global residues on the affine line.
//!
//! `Res[g dx / f^{α+1}]` is the sum of the local residues at the roots of `f`,
//! equivalently minus the residue at infinity. Everything here is exact.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{int_rat_pow, rat_pow, BigRat, UniPoly};
use crate::certify::TheoremId;
use crate::error::{Error, Result};
use crate::linalg;

/// An exact residue together with the denominator its integrality theorem promises.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidueValue {
    #[serde(serialize_with = "crate::arith::ser_bigrat")]
    pub value: BigRat,
    pub alpha: Vec<u32>,
    /// `ζ` with `ζ·value ∈ ℤ`. Rational because the exponent can be negative.
    #[serde(serialize_with = "crate::arith::ser_bigrat")]
    pub certified_denominator: BigRat,
    pub system: Vec<String>,
    pub theorem: TheoremId,
}

impl ResidueValue {
    pub fn is_certified_integral(&self) -> bool {
        (&self.certified_denominator * &self.value).is_integer()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SylvesterWitness {
    pub sigma: BigInt,
    pub p0: UniPoly,
    pub p1: UniPoly,
}

fn require_nonconstant(f: &UniPoly) -> Result<usize> {
    match f.degree() {
        Some(d) if d >= 1 => Ok(d),
        _ => Err(Error::InvalidSystem(format!("expected a nonconstant polynomial, got {f}"))),
    }
}

/// Splits `f = F / c` with `F` integral.
fn integral_part(f: &UniPoly) -> (BigRat, UniPoly) {
    let (c, p) = f.clear_denominators();
    (BigRat::from_integer(c), p)
}

/// Table `ϱ(j', α')` for `j' ≤ j`, `α' ≤ α`, by the recursion from the vanishing
/// relation `Σ_i f_i ϱ(j+i, α) = ϱ(j, α−1)`.
fn rho_table(f: &UniPoly, j: usize, alpha: u32) -> Vec<Vec<BigRat>> {
    let d = f.degree().expect("nonconstant");
    let fd_inv = f.leading().recip();
    let scaled: Vec<BigRat> = (0..d).map(|i| f.coeff(i) * &fd_inv).collect();
    let mut table: Vec<Vec<BigRat>> = Vec::with_capacity(alpha as usize + 1);
    for a in 0..=alpha as usize {
        let start = (a + 1) * d - 1;
        let mut row = vec![BigRat::zero(); j + 1];
        if start <= j {
            row[start] = rat_pow(&fd_inv, a as i64 + 1);
        }
        for jj in start + 1..=j {
            let mut acc = if a > 0 { &table[a - 1][jj - d] * &fd_inv } else { BigRat::zero() };
            for i in 1..=d {
                let prev = &row[jj - i];
                if !prev.is_zero() && !scaled[d - i].is_zero() {
                    acc -= &scaled[d - i] * prev;
                }
            }
            row[jj] = acc;
        }
        table.push(row);
    }
    table
}

/// `ϱ_f(j, α) = Res[x^j dx / f^{α+1}]`.
pub fn rho_monomial(f: &UniPoly, j: usize, alpha: u32) -> Result<BigRat> {
    require_nonconstant(f)?;
    let (c, f) = integral_part(f);
    let t = rho_table(&f, j, alpha);
    Ok(&t[alpha as usize][j] * rat_pow(&c, alpha as i64 + 1))
}

fn residue_poly_raw(f: &UniPoly, g: &UniPoly, alpha: u32) -> BigRat {
    let Some(e) = g.degree() else {
        return BigRat::zero();
    };
    let d = f.degree().unwrap();
    if e + 1 < (alpha as usize + 1) * d {
        return BigRat::zero();
    }
    let t = rho_table(f, e, alpha);
    let row = &t[alpha as usize];
    g.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| c * &row[j]).sum()
}

/// `Res[g dx / f^{α+1}]` with the certificate `f_d^{e+1−(α+1)(d−1)}·value ∈ ℤ`.
pub fn residue_poly(f: &UniPoly, g: &UniPoly, alpha: u32) -> Result<ResidueValue> {
    let d = require_nonconstant(f)?;
    let (cf, fi) = integral_part(f);
    let (cg, gi) = integral_part(g);
    let raw = residue_poly_raw(&fi, &gi, alpha);
    let value = raw * rat_pow(&cf, alpha as i64 + 1) / &cg;
    let e = gi.degree().unwrap_or(0) as i64;
    let exp = e + 1 - (alpha as i64 + 1) * (d as i64 - 1);
    let zeta = int_rat_pow(&fi.leading_int(), exp) * &cg / rat_pow(&cf, alpha as i64 + 1);
    Ok(ResidueValue {
        value,
        alpha: vec![alpha],
        certified_denominator: zeta,
        system: vec![f.to_string()],
        theorem: TheoremId::ResiduePoly,
    })
}

/// First `count` coefficients `c_l` of `f^{−α−1} = Σ_l c_l x^{−(α+1)d−l}` at infinity.
///
/// Computed by inverting `f·x^{−d}` as a power series in `t = 1/x` and raising the
/// result to the `(α+1)`-th power.
pub fn laurent_coeffs(f: &UniPoly, alpha: u32, count: usize) -> Result<Vec<BigRat>> {
    let d = require_nonconstant(f)?;
    // f·x^{−d} = Σ_i f_{d−i} t^i
    let a: Vec<BigRat> = (0..count.min(d + 1)).map(|i| f.coeff(d - i)).collect();
    let inv0 = a[0].recip();
    let mut s: Vec<BigRat> = Vec::with_capacity(count);
    for k in 0..count {
        if k == 0 {
            s.push(inv0.clone());
            continue;
        }
        let mut acc = BigRat::zero();
        for i in 1..=k.min(d) {
            if i < a.len() && !a[i].is_zero() {
                acc += &a[i] * &s[k - i];
            }
        }
        s.push(-acc * &inv0);
    }
    let mut out = vec![BigRat::zero(); count];
    if count > 0 {
        out[0] = BigRat::one();
    }
    for _ in 0..=alpha {
        let mut next = vec![BigRat::zero(); count];
        for (i, x) in out.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in s.iter().enumerate().take(count - i) {
                next[i + j] += x * y;
            }
        }
        out = next;
    }
    Ok(out)
}

/// Coefficients `p_α` (each of degree `< d`) with `p = Σ_α p_α f^α`, for
/// `α = 0..=⌊deg p / d⌋`.
pub fn fadic_expansion(f: &UniPoly, p: &UniPoly) -> Result<Vec<UniPoly>> {
    let d = require_nonconstant(f)?;
    let len = p.degree().unwrap_or(0) / d + 1;
    let mut out = Vec::with_capacity(len);
    let mut rest = p.clone();
    for _ in 0..len {
        let (q, r) = rest.div_rem(f)?;
        out.push(r);
        rest = q;
    }
    debug_assert!(rest.is_zero());
    Ok(out)
}

/// Sylvester matrix: `deg f1` shifted rows of `f0`, then `deg f0` shifted rows of `f1`,
/// coefficients listed from the leading one.
pub fn sylvester_matrix(f0: &UniPoly, f1: &UniPoly) -> Vec<Vec<BigInt>> {
    let d0 = f0.degree().unwrap_or(0);
    let d1 = f1.degree().unwrap_or(0);
    let n = d0 + d1;
    let mut rows = Vec::with_capacity(n);
    for (f, deg, shifts) in [(f0, d0, d1), (f1, d1, d0)] {
        let c = f.int_coeffs();
        for k in 0..shifts {
            let mut row = vec![BigInt::zero(); n];
            for i in 0..=deg {
                row[k + i] = c[deg - i].clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// `σ = det Syl(f0, f1)` and `p0, p1 ∈ ℤ[x]` with `σ = p0·f0 + p1·f1`.
pub fn sylvester_bezout(f0: &UniPoly, f1: &UniPoly) -> Result<SylvesterWitness> {
    if f0.is_zero() || f1.is_zero() {
        return Err(Error::InvalidSystem("zero polynomial in Bezout identity".into()));
    }
    if !f0.is_integral() || !f1.is_integral() {
        return Err(Error::Unsupported("Bezout witness needs integer coefficients".into()));
    }
    let d0 = f0.degree().unwrap();
    let d1 = f1.degree().unwrap();
    if d0 == 0 && d1 == 0 {
        return Err(Error::InvalidSystem("both polynomials are constant".into()));
    }
    let s = sylvester_matrix(f0, f1);
    let sigma = linalg::det_int(&s);
    if sigma.is_zero() {
        return Err(Error::NotCoprime);
    }
    let n = d0 + d1;
    let st: Vec<Vec<BigRat>> =
        (0..n).map(|c| (0..n).map(|r| BigRat::from_integer(s[r][c].clone())).collect()).collect();
    let mut rhs = vec![BigRat::zero(); n];
    rhs[n - 1] = BigRat::one();
    let (_, q) = linalg::solve_rat(&st, &rhs)?;
    let sig = BigRat::from_integer(sigma.clone());
    let to_poly = |high_to_low: &[BigRat]| {
        let mut c: Vec<BigRat> = high_to_low.iter().map(|x| x * &sig).collect();
        c.reverse();
        UniPoly::from_coeffs(c)
    };
    let p0 = to_poly(&q[..d1]);
    let p1 = to_poly(&q[d1..]);
    debug_assert!(p0.is_integral() && p1.is_integral());
    Ok(SylvesterWitness { sigma, p0, p1 })
}

/// `Res[(g/f0) dx / f^{α+1}]` for `f0` coprime with `f`, with the certificate
/// `σ(f,f0)^{α+1}·f_d^{e+α+1}·value ∈ ℤ`.
pub fn residue_rational(f: &UniPoly, f0: &UniPoly, g: &UniPoly, alpha: u32) -> Result<ResidueValue> {
    require_nonconstant(f)?;
    if f0.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (cf, fi) = integral_part(f);
    let (c0, f0i) = integral_part(f0);
    let (cg, gi) = integral_part(g);
    let sigma = sylvester_bezout(&fi, &f0i)?.sigma;
    let w = sylvester_bezout(&f0i, &fi.pow(alpha + 1))?;
    let raw = residue_poly_raw(&fi, &(&w.p0 * &gi), alpha) / BigRat::from_integer(w.sigma);
    // g/f0 / f^{α+1} = (gi/cg)·c0/f0i · cf^{α+1}/fi^{α+1}
    let scale = &c0 * rat_pow(&cf, alpha as i64 + 1) / &cg;
    let value = raw * &scale;
    let e = gi.degree().unwrap_or(0) as i64;
    let zeta = int_rat_pow(&sigma, alpha as i64 + 1) * int_rat_pow(&fi.leading_int(), e + alpha as i64 + 1) / &scale;
    Ok(ResidueValue {
        value,
        alpha: vec![alpha],
        certified_denominator: zeta,
        system: vec![f.to_string(), f0.to_string()],
        theorem: TheoremId::RationalResidue,
    })
}
