//! Certified denominators and size bounds.
//!
//! Each certificate assembles the denominator `ζ` of the relevant statement, tests
//! `ζ·value ∈ ℤ` exactly, and compares `|ζ·value|` (or the height/length of `ζ·p`
//! for polynomial results) with the right-hand side. Right-hand sides here are
//! products of integer powers, so the comparison is made on exact integers; the
//! logarithms in the report are for reading only. A float pre-screen with a wide
//! margin short-circuits the exact comparison when the answer is not close.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::arith::{int_pow, int_rat_pow, log_abs_int, log_abs_rat, BigRat, ExponentVec, MultiPoly, UniPoly};
use crate::eliminate::{self, EliminationWitness};
use crate::error::{Error, Result};
use crate::residue_sep::{self, SeparatedSystem};
use crate::residue_uni;
use crate::trace_weil;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    MonomialResidue,
    ResiduePoly,
    Laurent,
    RationalResidue,
    Fadic,
    Bezout,
    SeparatedResidue,
    MultiLaurent,
    Ffadic,
    Elimination,
    Weil,
    HeightLength,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::MonomialResidue,
        TheoremId::ResiduePoly,
        TheoremId::Laurent,
        TheoremId::RationalResidue,
        TheoremId::Fadic,
        TheoremId::Bezout,
        TheoremId::SeparatedResidue,
        TheoremId::MultiLaurent,
        TheoremId::Ffadic,
        TheoremId::Elimination,
        TheoremId::Weil,
        TheoremId::HeightLength,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::MonomialResidue => "monomial-residue",
            TheoremId::ResiduePoly => "residue-poly",
            TheoremId::Laurent => "laurent",
            TheoremId::RationalResidue => "rational-residue",
            TheoremId::Fadic => "fadic",
            TheoremId::Bezout => "bezout",
            TheoremId::SeparatedResidue => "separated-residue",
            TheoremId::MultiLaurent => "multi-laurent",
            TheoremId::Ffadic => "ffadic",
            TheoremId::Elimination => "elimination",
            TheoremId::Weil => "weil",
            TheoremId::HeightLength => "height-length",
        }
    }

    /// Hard certificates bound the computed quantity itself; the others audit a
    /// witness or a bound whose constant is not pinned to this implementation's
    /// output, so a failure there is a finding rather than a bug.
    pub fn is_hard(self) -> bool {
        matches!(
            self,
            TheoremId::MonomialResidue
                | TheoremId::ResiduePoly
                | TheoremId::Laurent
                | TheoremId::RationalResidue
                | TheoremId::SeparatedResidue
                | TheoremId::MultiLaurent
                | TheoremId::HeightLength
        )
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown theorem id '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCertificate {
    pub theorem: TheoremId,
    pub inputs_digest: String,
    #[serde(serialize_with = "crate::arith::ser_bigrat")]
    pub zeta: BigRat,
    /// `ζ·value ∈ ℤ` (and, for witness audits, the structural checks).
    pub integrality: bool,
    pub measured_log: f64,
    pub bound_log: f64,
    pub pass: bool,
    pub slack: f64,
    pub hard: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// `Π base_k^{exp_k}`.
#[derive(Clone, Debug, Default)]
pub struct PowerProduct(Vec<(BigInt, u64)>);

impl PowerProduct {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn times(mut self, base: impl Into<BigInt>, exp: u64) -> Self {
        let base = base.into();
        if exp > 0 && !base.is_one() {
            self.0.push((base, exp));
        }
        self
    }

    pub fn log(&self) -> f64 {
        self.0.iter().map(|(b, e)| *e as f64 * log_abs_int(b)).sum()
    }

    pub fn exact(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, (b, e)| acc * int_pow(b, *e))
    }

    /// `|x| ≤ self`, exactly.
    pub fn bounds(&self, x: &BigRat) -> bool {
        le_exact(x, self)
    }
}

/// `measured ≤ bound`, exact. Float logs decide only when they are far apart.
fn le_exact(measured: &BigRat, bound: &PowerProduct) -> bool {
    if measured.is_zero() {
        return true;
    }
    let (ml, bl) = (log_abs_rat(measured), bound.log());
    let margin = 1e-6 * (1.0 + ml.abs().max(bl.abs()));
    if ml + margin < bl {
        return true;
    }
    if ml > bl + margin {
        return false;
    }
    measured.abs() <= BigRat::from_integer(bound.exact())
}

pub fn digest(theorem: TheoremId, parts: &[String]) -> String {
    let mut h = Sha256::new();
    h.update(theorem.as_str().as_bytes());
    for p in parts {
        h.update(b"|");
        h.update(p.as_bytes());
    }
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn finish(
    theorem: TheoremId,
    parts: &[String],
    zeta: BigRat,
    integrality: bool,
    measured: &BigRat,
    bound: &PowerProduct,
    note: Option<String>,
) -> BoundCertificate {
    let measured_log = log_abs_rat(measured);
    let bound_log = bound.log();
    let within = le_exact(measured, bound);
    BoundCertificate {
        theorem,
        inputs_digest: digest(theorem, parts),
        zeta,
        integrality,
        measured_log,
        bound_log,
        pass: integrality && within,
        slack: bound_log - measured_log,
        hard: theorem.is_hard(),
        note,
    }
}

fn require_integral_uni(ps: &[&UniPoly]) -> Result<()> {
    if ps.iter().all(|p| p.is_integral()) {
        Ok(())
    } else {
        Err(Error::Unsupported("certificates need integer coefficients".into()))
    }
}

fn require_integral_multi(ps: &[&MultiPoly]) -> Result<()> {
    if ps.iter().all(|p| p.is_integral()) {
        Ok(())
    } else {
        Err(Error::Unsupported("certificates need integer coefficients".into()))
    }
}

fn len_u(p: &UniPoly) -> BigInt {
    p.abs_sum()
}

fn ht_u(p: &UniPoly) -> BigInt {
    p.abs_max()
}

fn u64_of(x: i64) -> u64 {
    x.max(0) as u64
}

/// `f_d^{j+1−(α+1)(d−1)}·ϱ_f(j,α) ∈ ℤ`, `|·| ≤ H(f)^{j+1−(α+1)d}·2^{j−d+1}`.
pub fn certify_monomial(f: &UniPoly, j: usize, alpha: u32, value: &BigRat) -> Result<BoundCertificate> {
    require_integral_uni(&[f])?;
    let d = f.degree().filter(|&d| d > 0).ok_or_else(|| Error::InvalidSystem("constant f".into()))? as i64;
    let (j, a) = (j as i64, alpha as i64);
    let zeta = int_rat_pow(&f.leading_int(), j + 1 - (a + 1) * (d - 1));
    let scaled = &zeta * value;
    let bound = PowerProduct::new().times(ht_u(f), u64_of(j + 1 - (a + 1) * d)).times(2, u64_of(j - d + 1));
    let parts = [f.to_string(), j.to_string(), alpha.to_string(), value.to_string()];
    Ok(finish(TheoremId::MonomialResidue, &parts, zeta, scaled.is_integer(), &scaled, &bound, None))
}

/// `f_d^{e+1−(α+1)(d−1)}·Res ∈ ℤ`, `|·| ≤ L(g)·H(f)^{e+1−(α+1)d}·2^{e−d+1}`.
pub fn certify_residue_poly(f: &UniPoly, g: &UniPoly, alpha: u32, value: &BigRat) -> Result<BoundCertificate> {
    require_integral_uni(&[f, g])?;
    let d = f.degree().filter(|&d| d > 0).ok_or_else(|| Error::InvalidSystem("constant f".into()))? as i64;
    let e = g.degree().unwrap_or(0) as i64;
    let a = alpha as i64;
    let zeta = int_rat_pow(&f.leading_int(), e + 1 - (a + 1) * (d - 1));
    let scaled = &zeta * value;
    let bound =
        PowerProduct::new().times(len_u(g), 1).times(ht_u(f), u64_of(e + 1 - (a + 1) * d)).times(2, u64_of(e - d + 1));
    let parts = [f.to_string(), g.to_string(), alpha.to_string(), value.to_string()];
    Ok(finish(TheoremId::ResiduePoly, &parts, zeta, scaled.is_integer(), &scaled, &bound, None))
}

/// `f_d^{l+α+1}·c_{f,α,l} ∈ ℤ`, `|·| ≤ H(f)^l·2^{l+αd}`.
pub fn certify_laurent(f: &UniPoly, alpha: u32, l: usize, value: &BigRat) -> Result<BoundCertificate> {
    require_integral_uni(&[f])?;
    let d = f.degree().filter(|&d| d > 0).ok_or_else(|| Error::InvalidSystem("constant f".into()))? as u64;
    let zeta = int_rat_pow(&f.leading_int(), l as i64 + alpha as i64 + 1);
    let scaled = &zeta * value;
    let bound = PowerProduct::new().times(ht_u(f), l as u64).times(2, l as u64 + alpha as u64 * d);
    let parts = [f.to_string(), alpha.to_string(), l.to_string(), value.to_string()];
    Ok(finish(TheoremId::Laurent, &parts, zeta, scaled.is_integer(), &scaled, &bound, None))
}

/// `σ(f,f0)^{α+1} f_d^{e+α+1}·Res[(g/f0)dx/f^{α+1}] ∈ ℤ`, bounded by
/// `L(g)·L(f0)^{(α+1)d−1}·L(f)^{e+(α+1)d0}·2^{e+αd}`.
pub fn certify_rational(
    f: &UniPoly,
    f0: &UniPoly,
    g: &UniPoly,
    alpha: u32,
    value: &BigRat,
) -> Result<BoundCertificate> {
    require_integral_uni(&[f, f0, g])?;
    let d = f.degree().filter(|&d| d > 0).ok_or_else(|| Error::InvalidSystem("constant f".into()))? as u64;
    let d0 = f0.degree().ok_or(Error::DivisionByZero)? as u64;
    let e = g.degree().unwrap_or(0) as u64;
    let a = alpha as u64;
    let sigma = residue_uni::sylvester_bezout(f, f0)?.sigma;
    let zeta = int_rat_pow(&sigma, a as i64 + 1) * int_rat_pow(&f.leading_int(), (e + a + 1) as i64);
    let scaled = &zeta * value;
    let bound = PowerProduct::new()
        .times(len_u(g), 1)
        .times(len_u(f0), (a + 1) * d - 1)
        .times(len_u(f), e + (a + 1) * d0)
        .times(2, e + a * d);
    let parts = [f.to_string(), f0.to_string(), g.to_string(), alpha.to_string(), value.to_string()];
    Ok(finish(TheoremId::RationalResidue, &parts, zeta, scaled.is_integer(), &scaled, &bound, None))
}

/// `f_d^{e+1−α(d−1)}·p_{f,α} ∈ ℤ[x]`, `L(·) ≤ L(p)·L(f)^{e−αd}·2^e` as stated.
///
/// The stated bound can fail (e.g. `p` constant, `|f_d| > 1`); the note then reports
/// [`fadic_repaired_bound`], which follows from bounding each coefficient as a residue.
pub fn certify_fadic(f: &UniPoly, p: &UniPoly, alpha: u32, coeff: &UniPoly) -> Result<BoundCertificate> {
    require_integral_uni(&[f, p])?;
    let d = f.degree().filter(|&d| d > 0).ok_or_else(|| Error::InvalidSystem("constant f".into()))? as i64;
    let e = p.degree().unwrap_or(0) as i64;
    let a = alpha as i64;
    let zeta = int_rat_pow(&f.leading_int(), e + 1 - a * (d - 1));
    let scaled = coeff.scale(&zeta);
    let integral = scaled.is_integral();
    let measured = if integral { BigRat::from_integer(scaled.abs_sum()) } else { BigRat::zero() };
    let bound = PowerProduct::new().times(len_u(p), 1).times(len_u(f), u64_of(e - a * d)).times(2, e as u64);
    let note = repair_note(&measured, &bound, &fadic_repaired_bound(f, p, alpha));
    let parts = [f.to_string(), p.to_string(), alpha.to_string(), coeff.to_string()];
    Ok(finish(TheoremId::Fadic, &parts, zeta, integral, &measured, &bound, note))
}

/// `L(p)·L(f)·H(f)^{e−αd}·2^{e+1}`, bounding `L(f_d^{e+1−α(d−1)}·p_{f,α})`.
pub fn fadic_repaired_bound(f: &UniPoly, p: &UniPoly, alpha: u32) -> PowerProduct {
    let d = f.degree().unwrap_or(0) as i64;
    let e = p.degree().unwrap_or(0) as i64;
    PowerProduct::new()
        .times(len_u(p), 1)
        .times(len_u(f), 1)
        .times(ht_u(f), u64_of(e - alpha as i64 * d))
        .times(2, e as u64 + 1)
}

fn repair_note(measured: &BigRat, stated: &PowerProduct, repaired: &PowerProduct) -> Option<String> {
    if le_exact(measured, stated) {
        return None;
    }
    let verdict = if le_exact(measured, repaired) { "holds" } else { "fails" };
    Some(format!("stated length bound exceeded; repaired bound (log {:.4}) {verdict}", repaired.log()))
}

/// Degree bounds of the witness; `|σ|, L(p_i)L(f_i) ≤ L(f0)^{d1} L(f1)^{d0}`.
pub fn certify_bezout(f0: &UniPoly, f1: &UniPoly, w: &residue_uni::SylvesterWitness) -> Result<BoundCertificate> {
    require_integral_uni(&[f0, f1])?;
    let d0 = f0.degree().unwrap_or(0);
    let d1 = f1.degree().unwrap_or(0);
    let identity = &(&w.p0 * f0) + &(&w.p1 * f1) == UniPoly::constant(BigRat::from_integer(w.sigma.clone()));
    let degs = [(&w.p0, d0), (&w.p1, d1)].iter().all(|(p, di)| p.degree().is_none_or(|k| k + di < d0 + d1));
    let measured = [w.sigma.abs(), len_u(&w.p0) * len_u(f0), len_u(&w.p1) * len_u(f1)].into_iter().max().unwrap();
    let bound = PowerProduct::new().times(len_u(f0), d1 as u64).times(len_u(f1), d0 as u64);
    let parts = [f0.to_string(), f1.to_string()];
    Ok(finish(
        TheoremId::Bezout,
        &parts,
        BigRat::one(),
        identity && degs && w.p0.is_integral() && w.p1.is_integral(),
        &BigRat::from_integer(measured),
        &bound,
        None,
    ))
}

fn sys_parts(sys: &SeparatedSystem) -> String {
    sys.describe().join(";")
}

/// `Π f_{i,d_i}^{e+n−⟨α+1,d⟩+α_i+1}·Res ∈ ℤ`, `|·| ≤ L(g)·(Π H(f_i))^{e+n−⟨α+1,d⟩}·2^{e−|d|+n}`.
pub fn certify_separated(
    sys: &SeparatedSystem,
    g: &MultiPoly,
    alpha: &ExponentVec,
    value: &BigRat,
) -> Result<BoundCertificate> {
    require_integral_multi(&[g])?;
    require_integral_uni(&sys.polys().iter().collect::<Vec<_>>())?;
    let n = sys.n() as i64;
    let e = g.degree().unwrap_or(0) as i64;
    let d = sys.degrees();
    let inner = residue_sep::jacobi_threshold(&d, alpha, sys.n()) + n;
    let zeta = sys
        .leading_coeffs()
        .iter()
        .zip(alpha.as_slice())
        .map(|(lc, &a)| int_rat_pow(lc, e + n - inner + a as i64 + 1))
        .fold(BigRat::one(), |acc, x| acc * x);
    let scaled = &zeta * value;
    let exp = u64_of(e + n - inner);
    let mut bound = PowerProduct::new().times(g.abs_sum(), 1);
    for f in sys.polys() {
        bound = bound.times(ht_u(f), exp);
    }
    let dsum: i64 = d.iter().map(|&x| x as i64).sum();
    bound = bound.times(2, u64_of(e - dsum + n));
    let parts = [sys_parts(sys), g.to_string(), alpha.to_string(), value.to_string()];
    Ok(finish(TheoremId::SeparatedResidue, &parts, zeta, scaled.is_integer(), &scaled, &bound, None))
}

/// `Π f_{i,d_i}^{l_i+α_i+1}·c_{f,α,l} ∈ ℤ`, `|·| ≤ Π H(f_i)^{l_i}·2^{|l|+⟨α,d⟩}`.
pub fn certify_multi_laurent(
    sys: &SeparatedSystem,
    alpha: &ExponentVec,
    l: &ExponentVec,
    value: &BigRat,
) -> Result<BoundCertificate> {
    require_integral_uni(&sys.polys().iter().collect::<Vec<_>>())?;
    let zeta = sys
        .leading_coeffs()
        .iter()
        .enumerate()
        .map(|(i, lc)| int_rat_pow(lc, l.get(i) as i64 + alpha.get(i) as i64 + 1))
        .fold(BigRat::one(), |acc, x| acc * x);
    let scaled = &zeta * value;
    let mut bound = PowerProduct::new();
    for (i, f) in sys.polys().iter().enumerate() {
        bound = bound.times(ht_u(f), l.get(i) as u64);
    }
    bound = bound.times(2, l.total() + alpha.dot(&sys.degrees()));
    let parts = [sys_parts(sys), alpha.to_string(), l.to_string(), value.to_string()];
    Ok(finish(TheoremId::MultiLaurent, &parts, zeta, scaled.is_integer(), &scaled, &bound, None))
}

/// `Π f_{i,d_i}^{e_i+1−α_i(d_i−1)}·p_α ∈ ℤ[x]` with `e_i = deg_{x_i} p`, and
/// `L(·) ≤ L(p)·Π L(f_i)^{e_i−α_i d_i}·2^{|e|}`.
pub fn certify_ffadic(
    sys: &SeparatedSystem,
    p: &MultiPoly,
    alpha: &ExponentVec,
    coeff: &MultiPoly,
) -> Result<BoundCertificate> {
    require_integral_multi(&[p])?;
    let d = sys.degrees();
    let e: Vec<i64> = (0..sys.n()).map(|i| p.degree_in(i).unwrap_or(0) as i64).collect();
    let zeta = sys
        .leading_coeffs()
        .iter()
        .enumerate()
        .map(|(i, lc)| int_rat_pow(lc, e[i] + 1 - alpha.get(i) as i64 * (d[i] as i64 - 1)))
        .fold(BigRat::one(), |acc, x| acc * x);
    let scaled = coeff.scale(&zeta);
    let integral = scaled.is_integral();
    let measured = if integral { BigRat::from_integer(scaled.abs_sum()) } else { BigRat::zero() };
    let mut bound = PowerProduct::new().times(p.abs_sum(), 1);
    for (i, f) in sys.polys().iter().enumerate() {
        bound = bound.times(len_u(f), u64_of(e[i] - alpha.get(i) as i64 * d[i] as i64));
    }
    bound = bound.times(2, e.iter().map(|&x| x as u64).sum());
    let note = repair_note(&measured, &bound, &ffadic_repaired_bound(sys, p, alpha));
    let parts = [sys_parts(sys), p.to_string(), alpha.to_string(), coeff.to_string()];
    Ok(finish(TheoremId::Ffadic, &parts, zeta, integral, &measured, &bound, note))
}

/// `L(p)·Π L(f_i)·H(f_i)^{e_i−α_i d_i}·2^{e_i+1}`, the product form of
/// [`fadic_repaired_bound`].
pub fn ffadic_repaired_bound(sys: &SeparatedSystem, p: &MultiPoly, alpha: &ExponentVec) -> PowerProduct {
    let mut bound = PowerProduct::new().times(p.abs_sum(), 1);
    for (i, f) in sys.integral_polys().iter().enumerate() {
        let e = p.degree_in(i).unwrap_or(0) as i64;
        let d = f.degree().unwrap_or(0) as i64;
        bound = bound.times(len_u(f), 1).times(ht_u(f), u64_of(e - alpha.get(i) as i64 * d)).times(2, e as u64 + 1);
    }
    bound
}

/// Audit of an elimination witness: membership, the degree box, and
/// `H(φ), H(a_i)·H(f_i) ≤ Π H(f_j)^{D/d_j}·(2(n+2)(n+1)²)^{D(n+1)}`.
pub fn certify_elimination(w: &EliminationWitness, fs: &[MultiPoly]) -> Result<BoundCertificate> {
    require_integral_multi(&fs.iter().collect::<Vec<_>>())?;
    let n = fs.len() as u64;
    let member = eliminate::verify_membership(w, fs)?;
    let boxed = eliminate::within_degree_box(w, fs);
    let big_d = w.degree_box;
    let mut measured = w.phi.abs_max();
    for (a, f) in w.cofactors.iter().zip(fs) {
        if !a.is_zero() {
            measured = measured.max(a.abs_max() * f.abs_max());
        }
    }
    let mut bound = PowerProduct::new();
    for f in fs {
        bound = bound.times(f.abs_max(), big_d / f.degree().unwrap_or(1));
    }
    bound = bound.times(2 * (n + 2) * (n + 1) * (n + 1), big_d * (n + 1));
    let mut parts: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
    parts.push(w.var.to_string());
    parts.push(w.phi.to_string());
    let note = Some("witness audit: the bound is proved for some witness, not necessarily this one".to_string());
    Ok(finish(
        TheoremId::Elimination,
        &parts,
        BigRat::one(),
        member && boxed,
        &BigRat::from_integer(measured),
        &bound,
        note,
    ))
}

/// `ϑ^E g_α ∈ ℤ[x]` with `ϑ = Π f_{i,d_i}`, `E = e+|d|+(|α|+1)(nD+1)`, and
/// `H(ϑ^E g_α) ≤ L(p)·(Π H(f_j)^{D/d_j}·(n+2)^{3(n+2)D})^{E·n}`.
pub fn certify_weil(
    sys: &SeparatedSystem,
    p: &MultiPoly,
    alpha: &ExponentVec,
    coeff: &MultiPoly,
) -> Result<BoundCertificate> {
    require_integral_multi(&[p])?;
    let n = sys.n() as u64;
    let d = sys.degrees();
    let big_d: u64 = d.iter().map(|&x| x as u64).product();
    let e = p.degree().unwrap_or(0);
    let dsum: u64 = d.iter().map(|&x| x as u64).sum();
    let big_e = e + dsum + (alpha.total() + 1) * (n * big_d + 1);
    let theta: BigInt = sys.leading_coeffs().iter().product();
    let zeta = int_rat_pow(&theta, big_e as i64);
    let scaled = coeff.scale(&zeta);
    let integral = scaled.is_integral();
    let measured = if integral { BigRat::from_integer(scaled.abs_max()) } else { BigRat::zero() };
    let mut bound = PowerProduct::new().times(p.abs_sum(), 1);
    for (f, &di) in sys.polys().iter().zip(&d) {
        bound = bound.times(ht_u(f), big_d / di as u64 * big_e * n);
    }
    bound = bound.times(n + 2, 3 * (n + 2) * big_d * big_e * n);
    let parts = [sys_parts(sys), p.to_string(), alpha.to_string(), coeff.to_string()];
    Ok(finish(TheoremId::Weil, &parts, zeta, integral, &measured, &bound, None))
}

/// `H ≤ L ≤ H·(n+1)^{deg}`.
pub fn certify_height_length(f: &MultiPoly) -> Result<BoundCertificate> {
    require_integral_multi(&[f])?;
    if f.is_zero() {
        return Err(Error::UndefinedHeight);
    }
    let h = f.abs_max();
    let l = f.abs_sum();
    let bound = PowerProduct::new().times(h.clone(), 1).times(f.nvars() as u64 + 1, f.degree().unwrap_or(0));
    Ok(finish(TheoremId::HeightLength, &[f.to_string()], BigRat::one(), h <= l, &BigRat::from_integer(l), &bound, None))
}

/// Every inputs bundle a certificate can be built from; [`certify`] computes the
/// result itself and then certifies it.
#[derive(Clone, Debug)]
pub enum CertInput {
    Monomial { f: UniPoly, j: usize, alpha: u32 },
    ResiduePoly { f: UniPoly, g: UniPoly, alpha: u32 },
    Laurent { f: UniPoly, alpha: u32, l: usize },
    Rational { f: UniPoly, f0: UniPoly, g: UniPoly, alpha: u32 },
    Fadic { f: UniPoly, p: UniPoly, alpha: u32 },
    Bezout { f0: UniPoly, f1: UniPoly },
    Separated { sys: SeparatedSystem, g: MultiPoly, alpha: ExponentVec },
    MultiLaurent { sys: SeparatedSystem, alpha: ExponentVec, l: ExponentVec },
    Ffadic { sys: SeparatedSystem, p: MultiPoly, alpha: ExponentVec },
    Elimination { fs: Vec<MultiPoly>, var: usize },
    Weil { sys: SeparatedSystem, p: MultiPoly, alpha: ExponentVec },
    HeightLength { f: MultiPoly },
}

impl CertInput {
    pub fn theorem(&self) -> TheoremId {
        match self {
            CertInput::Monomial { .. } => TheoremId::MonomialResidue,
            CertInput::ResiduePoly { .. } => TheoremId::ResiduePoly,
            CertInput::Laurent { .. } => TheoremId::Laurent,
            CertInput::Rational { .. } => TheoremId::RationalResidue,
            CertInput::Fadic { .. } => TheoremId::Fadic,
            CertInput::Bezout { .. } => TheoremId::Bezout,
            CertInput::Separated { .. } => TheoremId::SeparatedResidue,
            CertInput::MultiLaurent { .. } => TheoremId::MultiLaurent,
            CertInput::Ffadic { .. } => TheoremId::Ffadic,
            CertInput::Elimination { .. } => TheoremId::Elimination,
            CertInput::Weil { .. } => TheoremId::Weil,
            CertInput::HeightLength { .. } => TheoremId::HeightLength,
        }
    }

    /// Canonical text of the inputs, for findings.
    pub fn describe(&self) -> BTreeMap<&'static str, String> {
        let mut m = BTreeMap::new();
        match self {
            CertInput::Monomial { f, j, alpha } => {
                m.insert("f", f.to_string());
                m.insert("j", j.to_string());
                m.insert("alpha", alpha.to_string());
            }
            CertInput::ResiduePoly { f, g, alpha } => {
                m.insert("f", f.to_string());
                m.insert("g", g.to_string());
                m.insert("alpha", alpha.to_string());
            }
            CertInput::Laurent { f, alpha, l } => {
                m.insert("f", f.to_string());
                m.insert("alpha", alpha.to_string());
                m.insert("l", l.to_string());
            }
            CertInput::Rational { f, f0, g, alpha } => {
                m.insert("f", f.to_string());
                m.insert("f0", f0.to_string());
                m.insert("g", g.to_string());
                m.insert("alpha", alpha.to_string());
            }
            CertInput::Fadic { f, p, alpha } => {
                m.insert("f", f.to_string());
                m.insert("p", p.to_string());
                m.insert("alpha", alpha.to_string());
            }
            CertInput::Bezout { f0, f1 } => {
                m.insert("f0", f0.to_string());
                m.insert("f1", f1.to_string());
            }
            CertInput::Separated { sys, g, alpha } => {
                m.insert("system", sys_parts(sys));
                m.insert("g", g.to_string());
                m.insert("alpha", alpha.to_string());
            }
            CertInput::MultiLaurent { sys, alpha, l } => {
                m.insert("system", sys_parts(sys));
                m.insert("alpha", alpha.to_string());
                m.insert("l", l.to_string());
            }
            CertInput::Ffadic { sys, p, alpha } | CertInput::Weil { sys, p, alpha } => {
                m.insert("system", sys_parts(sys));
                m.insert("p", p.to_string());
                m.insert("alpha", alpha.to_string());
            }
            CertInput::Elimination { fs, var } => {
                m.insert("system", fs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(";"));
                m.insert("var", (var + 1).to_string());
            }
            CertInput::HeightLength { f } => {
                m.insert("f", f.to_string());
            }
        }
        m
    }
}

/// Computes the result for `input` and certifies it.
pub fn certify(input: &CertInput) -> Result<BoundCertificate> {
    match input {
        CertInput::Monomial { f, j, alpha } => {
            let v = residue_uni::rho_monomial(f, *j, *alpha)?;
            certify_monomial(f, *j, *alpha, &v)
        }
        CertInput::ResiduePoly { f, g, alpha } => {
            let v = residue_uni::residue_poly(f, g, *alpha)?.value;
            certify_residue_poly(f, g, *alpha, &v)
        }
        CertInput::Laurent { f, alpha, l } => {
            let c = residue_uni::laurent_coeffs(f, *alpha, l + 1)?;
            certify_laurent(f, *alpha, *l, &c[*l])
        }
        CertInput::Rational { f, f0, g, alpha } => {
            let v = residue_uni::residue_rational(f, f0, g, *alpha)?.value;
            certify_rational(f, f0, g, *alpha, &v)
        }
        CertInput::Fadic { f, p, alpha } => {
            let e = residue_uni::fadic_expansion(f, p)?;
            let c = e.get(*alpha as usize).cloned().unwrap_or_else(UniPoly::zero);
            certify_fadic(f, p, *alpha, &c)
        }
        CertInput::Bezout { f0, f1 } => {
            let w = residue_uni::sylvester_bezout(f0, f1)?;
            certify_bezout(f0, f1, &w)
        }
        CertInput::Separated { sys, g, alpha } => {
            let v = residue_sep::residue_separated(sys, g, alpha)?.value;
            certify_separated(sys, g, alpha, &v)
        }
        CertInput::MultiLaurent { sys, alpha, l } => {
            let c = residue_sep::multivariate_laurent(sys, alpha, l.total())?;
            certify_multi_laurent(sys, alpha, l, &c[l])
        }
        CertInput::Ffadic { sys, p, alpha } => {
            let e = residue_sep::ffadic_expansion(sys, p)?;
            let c = e.get(alpha).cloned().unwrap_or_else(|| MultiPoly::zero(sys.n()));
            certify_ffadic(sys, p, alpha, &c)
        }
        CertInput::Elimination { fs, var } => {
            let w = eliminate::eliminate_variable(fs, *var)?;
            certify_elimination(&w, fs)
        }
        CertInput::Weil { sys, p, alpha } => {
            let w = trace_weil::weil_expand(&sys.as_multi(), p)?;
            let c = w.coeffs.get(alpha).cloned().unwrap_or_else(|| MultiPoly::zero(sys.n()));
            certify_weil(sys, p, alpha, &c)
        }
        CertInput::HeightLength { f } => certify_height_length(f),
    }
}

/// Random instances for audits. Coefficients are uniform in `[−H, H]`, leading
/// coefficients nonzero.
pub mod random {
    use super::*;

    pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        r.set_stream(stream);
        r
    }

    fn nonzero(rng: &mut ChaCha8Rng, h: i64) -> i64 {
        let h = h.max(1);
        loop {
            let c = rng.gen_range(-h..=h);
            if c != 0 {
                return c;
            }
        }
    }

    /// Degree exactly `d`.
    pub fn unipoly(rng: &mut ChaCha8Rng, d: usize, h: i64) -> UniPoly {
        let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-h..=h)).collect();
        c.push(nonzero(rng, h));
        UniPoly::from_ints(&c)
    }

    /// Degree uniform in `lo..=hi`.
    pub fn unipoly_in(rng: &mut ChaCha8Rng, lo: usize, hi: usize, h: i64) -> UniPoly {
        let d = rng.gen_range(lo..=hi);
        unipoly(rng, d, h)
    }

    /// Degree at most `d`, possibly zero.
    pub fn unipoly_upto(rng: &mut ChaCha8Rng, d: usize, h: i64) -> UniPoly {
        let c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-h..=h)).collect();
        UniPoly::from_ints(&c)
    }

    /// Up to `terms` random monomials of total degree `≤ d`, plus one of degree exactly `d`.
    pub fn multipoly(rng: &mut ChaCha8Rng, n: usize, d: u64, h: i64, terms: usize) -> MultiPoly {
        let mons = ExponentVec::simplex(n, d);
        let mut p = MultiPoly::zero(n);
        for _ in 0..terms {
            let e = mons[rng.gen_range(0..mons.len())].clone();
            p.add_term(e, BigRat::from_integer(rng.gen_range(-h..=h).into()));
        }
        let top: Vec<&ExponentVec> = mons.iter().filter(|e| e.total() == d).collect();
        let e = top[rng.gen_range(0..top.len())].clone();
        let c = p.coeff(&e);
        p.add_term(e, -c + BigRat::from_integer(nonzero(rng, h).into()));
        p
    }

    pub fn separated(rng: &mut ChaCha8Rng, n: usize, max_d: usize, h: i64) -> SeparatedSystem {
        SeparatedSystem::new((0..n).map(|_| unipoly_in(rng, 1, max_d, h)).collect()).unwrap()
    }

    pub fn exponent(rng: &mut ChaCha8Rng, n: usize, max_total: u64) -> ExponentVec {
        let all = ExponentVec::simplex(n, max_total);
        all[rng.gen_range(0..all.len())].clone()
    }

    /// A random instance for `theorem`, sized by `max_degree` and `max_height`.
    pub fn instance(rng: &mut ChaCha8Rng, theorem: TheoremId, max_degree: usize, max_height: i64) -> CertInput {
        let md = max_degree.max(1);
        let h = max_height.max(1);
        match theorem {
            TheoremId::MonomialResidue => {
                let f = unipoly_in(rng, 1, md, h);
                CertInput::Monomial { f, j: rng.gen_range(0..=3 * md + 4), alpha: rng.gen_range(0..=3) }
            }
            TheoremId::ResiduePoly => {
                let f = unipoly_in(rng, 1, md, h);
                let e = rng.gen_range(0..=3 * md);
                CertInput::ResiduePoly { f, g: unipoly(rng, e, h), alpha: rng.gen_range(0..=3) }
            }
            TheoremId::Laurent => CertInput::Laurent {
                f: unipoly_in(rng, 1, md, h),
                alpha: rng.gen_range(0..=3),
                l: rng.gen_range(0..=12),
            },
            TheoremId::RationalResidue => loop {
                let f = unipoly_in(rng, 1, md, h);
                let f0 = unipoly_in(rng, 0, md, h);
                if residue_uni::sylvester_bezout(&f, &f0).is_err() {
                    continue;
                }
                let g = unipoly_in(rng, 0, 2 * md, h);
                break CertInput::Rational { f, f0, g, alpha: rng.gen_range(0..=2) };
            },
            TheoremId::Fadic => {
                let f = unipoly_in(rng, 1, md, h);
                let e = rng.gen_range(0..=3 * md);
                let alpha = rng.gen_range(0..=(e / f.degree().unwrap()) as u32);
                CertInput::Fadic { f, p: unipoly(rng, e, h), alpha }
            }
            TheoremId::Bezout => loop {
                let f0 = unipoly_in(rng, 1, md, h);
                let f1 = unipoly_in(rng, 1, md, h);
                if residue_uni::sylvester_bezout(&f0, &f1).is_ok() {
                    break CertInput::Bezout { f0, f1 };
                }
            },
            TheoremId::SeparatedResidue => {
                let n = rng.gen_range(1..=3);
                let sys = separated(rng, n, md.min(3), h);
                let e = rng.gen_range(0..=9);
                let terms = rng.gen_range(1..=6);
                CertInput::Separated { sys, g: multipoly(rng, n, e, h, terms), alpha: exponent(rng, n, 3) }
            }
            TheoremId::MultiLaurent => {
                let n = rng.gen_range(1..=3);
                let sys = separated(rng, n, md.min(3), h);
                CertInput::MultiLaurent { sys, alpha: exponent(rng, n, 3), l: exponent(rng, n, 6) }
            }
            TheoremId::Ffadic => {
                let n = rng.gen_range(1..=2);
                let sys = separated(rng, n, md.min(3), h);
                let e = rng.gen_range(0..=6);
                let terms = rng.gen_range(1..=5);
                let p = multipoly(rng, n, e, h, terms);
                let alpha = exponent(rng, n, 2);
                CertInput::Ffadic { sys, p, alpha }
            }
            TheoremId::Elimination => loop {
                let n = 2;
                let fs: Vec<MultiPoly> = (0..n)
                    .map(|_| {
                        let d = rng.gen_range(1..=md.min(2)) as u64;
                        let t = rng.gen_range(2..=5);
                        multipoly(rng, n, d, h, t)
                    })
                    .collect();
                let var = rng.gen_range(0..n);
                if eliminate::eliminate_variable(&fs, var).is_ok() {
                    break CertInput::Elimination { fs, var };
                }
            },
            TheoremId::Weil => {
                let n = rng.gen_range(1..=2);
                let sys = separated(rng, n, md.min(3), h);
                let e = rng.gen_range(0..=8);
                let terms = rng.gen_range(1..=5);
                let p = multipoly(rng, n, e, h, terms);
                let alpha = exponent(rng, n, 3);
                CertInput::Weil { sys, p, alpha }
            }
            TheoremId::HeightLength => {
                let n = rng.gen_range(1..=3);
                let e = rng.gen_range(0..=md as u64);
                let terms = rng.gen_range(1..=8);
                CertInput::HeightLength { f: multipoly(rng, n, e, h, terms) }
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub index: usize,
    pub inputs: BTreeMap<&'static str, String>,
    pub certificate: BoundCertificate,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SlackStats {
    pub count: usize,
    pub min: Option<f64>,
    pub median: Option<f64>,
    pub max: Option<f64>,
}

impl SlackStats {
    pub fn from_values(mut v: Vec<f64>) -> Self {
        v.retain(|x| x.is_finite());
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if v.is_empty() {
            return SlackStats::default();
        }
        SlackStats { count: v.len(), min: v.first().copied(), median: Some(v[v.len() / 2]), max: v.last().copied() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub theorem: TheoremId,
    pub samples: usize,
    pub seed: u64,
    pub passes: usize,
    pub hard: bool,
    pub slack: SlackStats,
    pub findings: Vec<Finding>,
    /// `(index, slack)` per sample with a finite slack.
    #[serde(skip)]
    pub slack_rows: Vec<(usize, f64)>,
}

/// Certifies `samples` random instances; sample `i` uses stream `i` of the seed, so
/// the report does not depend on scheduling.
pub fn audit(theorem: TheoremId, samples: usize, seed: u64, max_degree: usize, max_height: i64) -> Result<AuditReport> {
    let results: Vec<(usize, CertInput, BoundCertificate)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut r = random::rng(seed, i as u64);
            let input = random::instance(&mut r, theorem, max_degree, max_height);
            let cert = certify(&input)?;
            Ok((i, input, cert))
        })
        .collect::<Result<_>>()?;
    let passes = results.iter().filter(|(_, _, c)| c.pass).count();
    let slack_rows: Vec<(usize, f64)> =
        results.iter().filter(|(_, _, c)| c.slack.is_finite()).map(|(i, _, c)| (*i, c.slack)).collect();
    let findings = results
        .iter()
        .filter(|(_, _, c)| !c.pass)
        .map(|(i, input, c)| Finding { index: *i, inputs: input.describe(), certificate: c.clone() })
        .collect();
    Ok(AuditReport {
        theorem,
        samples,
        seed,
        passes,
        hard: theorem.is_hard(),
        slack: SlackStats::from_values(slack_rows.iter().map(|r| r.1).collect()),
        findings,
        slack_rows,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SlackRow {
    pub slice: String,
    pub stats: SlackStats,
    pub failures: usize,
}

/// Slack statistics per parameter slice. `generator` returns the slice label and
/// the inputs for sample `i`.
pub fn sharpness_scan<F>(generator: F, budget: usize, seed: u64) -> Result<Vec<SlackRow>>
where
    F: Fn(&mut ChaCha8Rng) -> (String, CertInput) + Sync,
{
    let results: Vec<(String, BoundCertificate)> = (0..budget)
        .into_par_iter()
        .map(|i| {
            let mut r = random::rng(seed, i as u64);
            let (slice, input) = generator(&mut r);
            certify(&input).map(|c| (slice, c))
        })
        .collect::<Result<_>>()?;
    let mut by_slice: BTreeMap<String, (Vec<f64>, usize)> = BTreeMap::new();
    for (s, c) in results {
        let entry = by_slice.entry(s).or_default();
        entry.0.push(c.slack);
        if !c.pass {
            entry.1 += 1;
        }
    }
    Ok(by_slice
        .into_iter()
        .map(|(slice, (v, failures))| SlackRow { slice, stats: SlackStats::from_values(v), failures })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn ids_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
        }
        assert!(matches!("nope".parse::<TheoremId>(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn closed_form_instance_passes() {
        // f = 2x^2 − 3x, g = x^6, α = 1
        let f = up(&[0, -3, 2]);
        let g = up(&[0, 0, 0, 0, 0, 0, 1]);
        let v = residue_uni::residue_poly(&f, &g, 1).unwrap().value;
        let c = certify_residue_poly(&f, &g, 1, &v).unwrap();
        assert!(c.integrality && c.pass && c.slack >= 0.0, "{c:?}");
    }

    #[test]
    fn zero_height_separated_bound() {
        let sys = SeparatedSystem::new(vec![up(&[0, 0, 1]), up(&[0, 0, 0, 1])]).unwrap();
        let g = MultiPoly::from_int_terms(2, &[(&[1, 2], 3), (&[4, 2], 1)]);
        let a = ExponentVec::new(vec![0, 0]);
        let v = residue_sep::residue_separated(&sys, &g, &a).unwrap().value;
        assert_eq!(v, rat(3));
        let c = certify_separated(&sys, &g, &a, &v).unwrap();
        // h1(g) + (e − |d| + n) log 2 with e = 6
        assert!((c.bound_log - (4f64.ln() + 3.0 * 2f64.ln())).abs() < 1e-12);
        assert!(c.pass);
    }

    #[test]
    fn geometric_laurent() {
        for l in 0..8 {
            let c = certify(&CertInput::Laurent { f: up(&[-1, 1]), alpha: 0, l }).unwrap();
            assert_eq!(c.zeta, rat(1));
            assert!(c.pass && c.slack >= 0.0);
        }
    }

    #[test]
    fn tampered_value_fails() {
        let f = up(&[1, 0, 2]);
        let g = up(&[0, 0, 0, 1]);
        let v = residue_uni::residue_poly(&f, &g, 0).unwrap().value;
        assert!(certify_residue_poly(&f, &g, 0, &v).unwrap().pass);
        let bad = &v + BigRat::new(1.into(), 7.into());
        assert!(!certify_residue_poly(&f, &g, 0, &bad).unwrap().integrality);
        let huge = &v + rat(1000);
        assert!(!certify_residue_poly(&f, &g, 0, &huge).unwrap().pass);
    }

    #[test]
    fn linear_pair_elimination_audit() {
        let fs = vec![
            MultiPoly::from_int_terms(2, &[(&[1, 0], 1), (&[0, 1], 1)]),
            MultiPoly::from_int_terms(2, &[(&[1, 0], 1), (&[0, 1], -1)]),
        ];
        let c = certify(&CertInput::Elimination { fs, var: 0 }).unwrap();
        assert!(c.pass && c.slack > 5.0);
        assert!(!c.hard);
    }

    #[test]
    fn constant_numerator_breaks_the_stated_fadic_bound() {
        // p = 19, f_d = -9: ζ·p_0 = -171 against the stated 19
        let f = up(&[-16, 2, -14, -9]);
        let p = up(&[19]);
        let c = certify(&CertInput::Fadic { f: f.clone(), p: p.clone(), alpha: 0 }).unwrap();
        assert!(c.integrality && !c.pass);
        assert!(c.note.unwrap().ends_with("holds"));
        assert!(fadic_repaired_bound(&f, &p, 0).bounds(&BigRat::from_integer(171.into())));
    }

    #[test]
    fn audit_is_deterministic() {
        let a = audit(TheoremId::ResiduePoly, 40, 7, 4, 20).unwrap();
        let b = audit(TheoremId::ResiduePoly, 40, 7, 4, 20).unwrap();
        assert_eq!(a.passes, 40);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn every_theorem_audits_cleanly_on_a_small_batch() {
        for t in TheoremId::ALL {
            let r = audit(t, 12, 3, 3, 10).unwrap();
            if t.is_hard() {
                assert_eq!(r.passes, 12, "{t}: {:?}", r.findings.first());
            }
            for f in &r.findings {
                assert!(f.certificate.integrality, "{t}: {f:?}");
                assert!(f.certificate.note.as_deref().is_none_or(|n| n.ends_with("holds")), "{t}: {f:?}");
            }
        }
    }
}
