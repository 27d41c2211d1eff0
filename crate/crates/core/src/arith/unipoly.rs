use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::{gcd_all, lcm_all, rat_to_f64, BigRat, ExponentVec, MultiPoly};
use crate::error::{Error, Result};

/// Dense univariate polynomial over ℚ; `coeffs[i]` is the coefficient of `x^i`.
/// The last stored coefficient is never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn x() -> Self {
        Self::monomial(1, BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(k: usize, c: BigRat) -> Self {
        let mut v = vec![BigRat::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Coefficients listed from the constant term upward.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigRat::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|c| BigRat::from_integer(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRat {
        self.coeffs.last().cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients; panics if some coefficient is not integral.
    pub fn int_coeffs(&self) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "non-integral coefficient {c}");
                c.numer().clone()
            })
            .collect()
    }

    pub fn leading_int(&self) -> BigInt {
        let l = self.leading();
        assert!(l.is_integer());
        l.numer().clone()
    }

    pub fn scale(&self, c: &BigRat) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, k: u32) -> UniPoly {
        let mut acc = UniPoly::one();
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

    /// Euclidean division: `self = q·f + r` with `deg r < deg f`.
    pub fn div_rem(&self, f: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let df = f.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.leading().recip();
        let mut r = self.coeffs.clone();
        let dp = match self.degree() {
            Some(d) if d >= df => d,
            _ => return Ok((UniPoly::zero(), self.clone())),
        };
        let mut q = vec![BigRat::zero(); dp - df + 1];
        for k in (0..=dp - df).rev() {
            let c = &r[k + df] * &lead_inv;
            if !c.is_zero() {
                for (i, fi) in f.coeffs.iter().enumerate() {
                    r[k + i] -= &c * fi;
                }
            }
            q[k] = c;
        }
        r.truncate(df);
        Ok((UniPoly::from_coeffs(q), UniPoly::from_coeffs(r)))
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        self.coeffs.iter().rev().fold(BigRat::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + rat_to_f64(c))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(rat_to_f64).collect()
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::from_coeffs(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigRat::from_integer(BigInt::from(i))).collect(),
        )
    }

    /// Embeds as a polynomial in variable `var` of an `nvars`-variable ring.
    pub fn to_multi(&self, nvars: usize, var: usize) -> MultiPoly {
        MultiPoly::from_terms(
            nvars,
            self.coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0u32; nvars];
                e[var] = i as u32;
                (ExponentVec::new(e), c.clone())
            }),
        )
    }

    /// Positive gcd of the integer coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        gcd_all(self.int_coeffs().iter())
    }

    /// Splits a rational polynomial as `self = int_part / factor` with `factor > 0`
    /// the least common denominator.
    pub fn clear_denominators(&self) -> (BigInt, UniPoly) {
        let l = lcm_all(self.coeffs.iter().map(|c| c.denom()));
        (l.clone(), self.scale(&BigRat::from_integer(l)))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let (_, p) = self.clear_denominators();
        let c = p.content();
        let mut q = p.scale(&BigRat::new(BigInt::one(), c));
        if q.leading().is_negative() {
            q = -q;
        }
        q
    }

    /// Sum of absolute values of the coefficients (the exponential of the length).
    pub fn abs_sum(&self) -> BigInt {
        self.int_coeffs().iter().map(|c| c.abs()).sum()
    }

    /// Maximum absolute coefficient (the exponential of the height).
    pub fn abs_max(&self) -> BigInt {
        self.int_coeffs().iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_multi(1, 0))
    }
}
