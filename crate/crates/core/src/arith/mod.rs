//! Exact scalars and polynomial arithmetic over ℤ and ℚ.
//!
//! Scalars are `num-bigint`/`num-rational` values; `BigRational` is always
//! kept in lowest terms with a positive denominator, which is what the
//! integrality certificates rely on.

mod exponent;
mod multipoly;
mod unipoly;

pub use exponent::ExponentVec;
pub use multipoly::MultiPoly;
pub use unipoly::UniPoly;

pub use num_bigint::BigInt;
pub use num_rational::BigRational as BigRat;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn rat(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_pow(base: &BigInt, exp: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// `base^exp` for a signed exponent. Panics on `0^negative`.
pub fn rat_pow(base: &BigRat, exp: i64) -> BigRat {
    let numer = int_pow(base.numer(), exp.unsigned_abs());
    let denom = int_pow(base.denom(), exp.unsigned_abs());
    if exp >= 0 {
        BigRat::new(numer, denom)
    } else {
        assert!(!numer.is_zero(), "zero raised to a negative power");
        BigRat::new(denom, numer)
    }
}

pub fn int_rat_pow(base: &BigInt, exp: i64) -> BigRat {
    rat_pow(&BigRat::from_integer(base.clone()), exp)
}

/// Natural log of `|n|`; `-inf` for zero. Accurate to f64 precision for any size.
pub fn log_abs_int(n: &BigInt) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigInt = n.abs() >> shift;
    top.to_f64().unwrap().ln() + (shift as f64) * std::f64::consts::LN_2
}

pub fn log_abs_rat(q: &BigRat) -> f64 {
    if q.is_zero() {
        return f64::NEG_INFINITY;
    }
    log_abs_int(q.numer()) - log_abs_int(q.denom())
}

pub fn rat_to_f64(q: &BigRat) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let sign = if q.is_negative() { -1.0 } else { 1.0 };
    sign * log_abs_rat(q).exp()
}

/// Greatest common divisor of a sequence of integers (non-negative, zero for empty input).
pub fn gcd_all<'a, I: IntoIterator<Item = &'a BigInt>>(items: I) -> BigInt {
    let mut g = BigInt::zero();
    for x in items {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g
}

pub fn lcm_all<'a, I: IntoIterator<Item = &'a BigInt>>(items: I) -> BigInt {
    items.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Determinant of a square matrix of polynomials by cofactor expansion along the first row.
pub fn poly_det(m: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let n = m.len();
    match n {
        0 => MultiPoly::one(nvars),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = MultiPoly::zero(nvars);
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MultiPoly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][col] * &poly_det(&minor, nvars);
                if col % 2 == 0 {
                    acc = &acc + &term;
                } else {
                    acc = &acc - &term;
                }
            }
            acc
        }
    }
}

/// Serializes an integer as a decimal string (JSON numbers lose precision).
pub fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn ser_bigrat<S: serde::Serializer>(v: &BigRat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_powers() {
        assert_eq!(rat_pow(&rat(2), 3), rat(8));
        assert_eq!(rat_pow(&rat(2), -3), rat_frac(1, 8));
        assert_eq!(rat_pow(&rat_frac(-2, 3), -1), rat_frac(-3, 2));
        assert_eq!(rat_pow(&rat(0), 0), rat(1));
    }

    #[test]
    fn log_of_huge_integers() {
        let n = int_pow(&BigInt::from(3), 5000);
        let expected = 5000.0 * 3f64.ln();
        assert!((log_abs_int(&n) - expected).abs() < 1e-9 * expected);
        assert_eq!(log_abs_int(&BigInt::zero()), f64::NEG_INFINITY);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }
}
