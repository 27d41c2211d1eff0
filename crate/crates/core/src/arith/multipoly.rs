use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::{gcd_all, lcm_all, rat_to_f64, BigRat, ExponentVec, UniPoly};
use crate::error::{Error, Result};
use crate::linalg;

/// Sparse polynomial over ℚ in a fixed number of variables.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration order
/// is deterministic. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<ExponentVec, BigRat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRat::one())
    }

    pub fn constant(nvars: usize, c: BigRat) -> Self {
        Self::monomial(ExponentVec::zeros(nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRat::from_integer(c.into()))
    }

    /// The coordinate function `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(ExponentVec::unit(nvars, i), BigRat::one())
    }

    pub fn monomial(exp: ExponentVec, c: BigRat) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        MultiPoly { nvars, terms }
    }

    /// Builds a polynomial from (exponent, coefficient) pairs; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (ExponentVec, BigRat)>>(nvars: usize, it: I) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars, "exponent length does not match variable count");
            p.add_term(e, c);
        }
        p
    }

    pub fn from_int_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(nvars, terms.iter().map(|(e, c)| (ExponentVec::from(*e), BigRat::from_integer((*c).into()))))
    }

    pub fn add_term(&mut self, e: ExponentVec, c: BigRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.total() == 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVec, &BigRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn support(&self) -> impl Iterator<Item = &ExponentVec> {
        self.terms.keys()
    }

    /// `coeff_β(p)`; zero when `β ∉ supp(p)`.
    pub fn coeff(&self, e: &ExponentVec) -> BigRat {
        self.terms.get(e).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn constant_term(&self) -> BigRat {
        self.coeff(&ExponentVec::zeros(self.nvars))
    }

    /// Total degree; `None` is the "minus infinity" of the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.total()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.get(var)).max()
    }

    /// Indices of the variables that occur in the support.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.keys().any(|e| e.get(i) > 0)).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn check_nvars(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_nvars(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_nvars(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_nvars(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &BigRat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &ExponentVec, c: &BigRat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, a)| (e.add(m), a * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        MultiPoly::from_terms(
            self.nvars,
            self.terms.iter().filter(|(e, _)| e.get(var) > 0).map(|(e, c)| {
                let k = e.get(var);
                let mut v = e.as_slice().to_vec();
                v[var] -= 1;
                (ExponentVec::new(v), c * BigRat::from_integer(BigInt::from(k)))
            }),
        )
    }

    pub fn eval(&self, point: &[BigRat]) -> BigRat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, k) in e.nonzero() {
                for _ in 0..k {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| e.nonzero().fold(Complex64::new(rat_to_f64(c), 0.0), |t, (i, k)| t * point[i].powu(k)))
            .sum()
    }

    /// Sum of `|c|·Π max(1,|ξ_i|)^{β_i}` over the terms: a scale for numeric residual tests.
    pub fn magnitude_at(&self, point: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.nonzero().fold(rat_to_f64(c).abs(), |t, (i, k)| t * point[i].norm().max(1.0).powi(k as i32))
            })
            .sum()
    }

    /// Substitutes `x_i ↦ images[i]`; all images must share one variable count.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars);
        let m = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(p.nvars), p.clone()]).collect();
        let mut acc = MultiPoly::zero(m);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(m, c.clone());
            for (i, k) in e.nonzero() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Renames variables: variable `i` becomes variable `map[i]` of a `new_nvars`-variable ring.
    pub fn embed(&self, new_nvars: usize, map: &[usize]) -> MultiPoly {
        assert_eq!(map.len(), self.nvars);
        MultiPoly::from_terms(
            new_nvars,
            self.terms.iter().map(|(e, c)| {
                let mut v = vec![0u32; new_nvars];
                for (i, k) in e.nonzero() {
                    v[map[i]] += k;
                }
                (ExponentVec::new(v), c.clone())
            }),
        )
    }

    /// `p ∘ ℓ` with `ℓ(x) = M·x + b`. Fails with a singularity error when `M` is not invertible.
    pub fn substitute_affine(&self, m: &[Vec<BigRat>], b: &[BigRat]) -> Result<MultiPoly> {
        let n = self.nvars;
        if m.len() != n || b.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension { expected: n, found: m.len() });
        }
        if linalg::det_rat(m).is_zero() {
            return Err(Error::Singular);
        }
        let images: Vec<MultiPoly> = (0..n)
            .map(|i| {
                let mut img = MultiPoly::constant(n, b[i].clone());
                for (j, mij) in m[i].iter().enumerate() {
                    img.add_term(ExponentVec::unit(n, j), mij.clone());
                }
                img
            })
            .collect();
        Ok(self.compose(&images))
    }

    /// Returns the univariate polynomial when only `var` occurs.
    pub fn to_uni(&self, var: usize) -> Option<UniPoly> {
        let mut coeffs = Vec::new();
        for (e, c) in &self.terms {
            if e.nonzero().any(|(i, _)| i != var) {
                return None;
            }
            let k = e.get(var) as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigRat::zero());
            }
            coeffs[k] = c.clone();
        }
        Some(UniPoly::from_coeffs(coeffs))
    }

    /// Positive gcd of the (integral) coefficients.
    pub fn content(&self) -> BigInt {
        assert!(self.is_integral());
        gcd_all(self.terms.values().map(|c| c.numer()))
    }

    /// `self = int_part / factor` with `factor > 0` the least common denominator.
    pub fn clear_denominators(&self) -> (BigInt, MultiPoly) {
        let l = lcm_all(self.terms.values().map(|c| c.denom()));
        (l.clone(), self.scale(&BigRat::from_integer(l)))
    }

    /// Primitive integral part (sign unchanged).
    pub fn primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let (_, p) = self.clear_denominators();
        let c = p.content();
        p.scale(&BigRat::new(BigInt::one(), c))
    }

    /// Sum of absolute coefficient values (integral polynomials).
    pub fn abs_sum(&self) -> BigInt {
        assert!(self.is_integral());
        self.terms.values().map(|c| c.numer().abs()).sum()
    }

    /// Maximum absolute coefficient (integral polynomials).
    pub fn abs_max(&self) -> BigInt {
        assert!(self.is_integral());
        self.terms.values().map(|c| c.numer().abs()).max().unwrap_or_else(BigInt::zero)
    }

    /// Terms in printing order: total degree descending, then exponent descending.
    pub fn sorted_terms(&self) -> Vec<(&ExponentVec, &BigRat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.total().cmp(&a.0.total()).then_with(|| b.0.cmp(a.0)));
        v
    }

    pub fn default_var_names(nvars: usize) -> Vec<String> {
        if nvars == 1 {
            vec!["x".to_string()]
        } else {
            (1..=nvars).map(|i| format!("x{i}")).collect()
        }
    }

    /// Canonical text form, e.g. `3*x1^2*x2 - x1 + 1`.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || e.total() == 0 {
                factors.push(a.to_string());
            }
            for (i, k) in e.nonzero() {
                if k == 1 {
                    factors.push(names[i].clone());
                } else {
                    factors.push(format!("{}^{}", names[i], k));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut acc: BTreeMap<ExponentVec, BigRat> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.add(e2);
                let c = c1 * c2;
                match acc.entry(e) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += c;
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly { nvars: self.nvars, terms: acc }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&Self::default_var_names(self.nvars)))
    }
}
