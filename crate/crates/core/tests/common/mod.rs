//! Generators and independent oracles shared by the integration tests and the
//! acceptance harness.
#![allow(dead_code)]

use global_residues::arith::{int_pow, BigRat, ExponentVec, MultiPoly, UniPoly};
use global_residues::certify::random;
use global_residues::eliminate;
use global_residues::residue_sep::SeparatedSystem;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64, d: i64) -> BigRat {
    BigRat::new(n.into(), d.into())
}

pub fn up(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c)
}

pub fn mp(n: usize, t: &[(&[u32], i64)]) -> MultiPoly {
    MultiPoly::from_int_terms(n, t)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    random::rng(seed, 0)
}

/// Residue of `g dx / f^{α+1}` as the `x^{-1}` coefficient at infinity, from the
/// power series of `1/f^{α+1}` in `t = 1/x` computed directly from `F = f^{α+1}`.
pub fn series_residue(f: &UniPoly, g: &UniPoly, alpha: u32) -> BigRat {
    let mut big_f = vec![BigRat::one()];
    for _ in 0..=alpha {
        let mut next = vec![BigRat::zero(); big_f.len() + f.coeffs().len() - 1];
        for (i, a) in big_f.iter().enumerate() {
            for (j, b) in f.coeffs().iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        big_f = next;
    }
    let dd = big_f.len() - 1;
    let Some(e) = g.degree() else {
        return BigRat::zero();
    };
    if e + 1 < dd {
        return BigRat::zero();
    }
    let m = e + 1 - dd;
    // F(x) = x^D Σ_i F_{D−i} t^i; invert the series
    let a: Vec<BigRat> = (0..=dd).map(|i| big_f[dd - i].clone()).collect();
    let mut s = vec![a[0].recip()];
    for k in 1..=m {
        let mut acc = BigRat::zero();
        for i in 1..=k.min(dd) {
            acc += &a[i] * &s[k - i];
        }
        s.push(-acc / &a[0]);
    }
    (dd - 1..=e).map(|k| &g.coeff(k) * &s[k + 1 - dd]).sum()
}

/// `Σ g(ξ)/f'(ξ)` over the roots of a squarefree `f`, in floating point.
pub fn root_sum(f: &UniPoly, g: &UniPoly) -> Option<f64> {
    let rs = global_residues::roots::roots_with_radii(f).ok()?;
    let df = f.derivative();
    let mut s = num_complex::Complex64::new(0.0, 0.0);
    for r in rs {
        s += g.eval_complex(r.value) / df.eval_complex(r.value);
    }
    Some(s.re)
}

/// Squarefree polynomial of degree exactly `d` (checked through the resultant with
/// its derivative).
pub fn squarefree(r: &mut ChaCha8Rng, d: usize, h: i64) -> UniPoly {
    loop {
        let f = random::unipoly(r, d, h);
        if d == 1 || global_residues::residue_uni::sylvester_bezout(&f, &f.derivative()).is_ok() {
            return f;
        }
    }
}

/// Separated system with squarefree entries, so all zeros are simple.
pub fn simple_separated(r: &mut ChaCha8Rng, n: usize, max_d: usize, h: i64) -> SeparatedSystem {
    SeparatedSystem::new(
        (0..n)
            .map(|_| {
                let d = r.gen_range(1..=max_d);
                squarefree(r, d, h)
            })
            .collect(),
    )
    .unwrap()
}

/// Dense polynomial of total degree exactly `d` with every monomial present.
pub fn dense(r: &mut ChaCha8Rng, n: usize, d: u64, h: i64) -> MultiPoly {
    let mut p = MultiPoly::zero(n);
    for e in ExponentVec::simplex(n, d) {
        let c = loop {
            let c = r.gen_range(-h..=h);
            if c != 0 || e.total() < d {
                break c;
            }
        };
        p.add_term(e, BigRat::from_integer(c.into()));
    }
    p
}

/// Generic dense system with the given degrees, retried until zero-dimensional.
pub fn generic_system(r: &mut ChaCha8Rng, degs: &[u64], h: i64) -> Vec<MultiPoly> {
    let n = degs.len();
    loop {
        let fs: Vec<MultiPoly> = degs.iter().map(|&d| dense(r, n, d, h)).collect();
        if eliminate::eliminate_variable(&fs, 0).is_ok() {
            return fs;
        }
    }
}

/// Integer matrix with determinant ±1 built from elementary operations.
pub fn unimodular(r: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    if n == 1 {
        m[0][0] = if r.gen_bool(0.5) { 1 } else { -1 };
        return m;
    }
    for _ in 0..3 * n {
        let i = r.gen_range(0..n);
        let j = (i + r.gen_range(1..n)) % n;
        let c = r.gen_range(-2..=2);
        for k in 0..n {
            m[i][k] += c * m[j][k];
        }
    }
    if r.gen_bool(0.5) {
        m.swap(0, n - 1);
    }
    m
}

pub fn det_i64(m: &[Vec<i64>]) -> i64 {
    let big: Vec<Vec<num_bigint::BigInt>> = m.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
    i64::try_from(global_residues::linalg::det_int(&big)).unwrap()
}

pub fn to_rat_matrix(m: &[Vec<i64>]) -> Vec<Vec<BigRat>> {
    m.iter().map(|r| r.iter().map(|&x| BigRat::from_integer(x.into())).collect()).collect()
}

/// `Σ |φ_k| max(1, |ξ|)^k`: the size of `φ(ξ)` up to cancellation, and not
/// degenerate when a root sits at the origin.
pub fn eval_scale(p: &UniPoly, z: num_complex::Complex64) -> f64 {
    let r = z.norm().max(1.0);
    p.to_f64_coeffs().iter().enumerate().map(|(k, c)| c.abs() * r.powi(k as i32)).sum()
}

/// Closed form `C·H3·H2^{e+1−(α+1)d} / H1^{e+1−(α+1)(d−1)}`.
pub fn closed_form(c: &num_bigint::BigInt, d: u64, alpha: u64, e: u64, h: (i64, i64, i64)) -> BigRat {
    let num = c * h.2 * int_pow(&h.1.into(), e + 1 - (alpha + 1) * d);
    let den = int_pow(&h.0.into(), e + 1 - (alpha + 1) * (d - 1));
    BigRat::new(num, den)
}

/// Random polynomial of total degree at most `max_e` (the degree itself is random).
pub fn poly_upto(r: &mut ChaCha8Rng, n: usize, max_e: u64, h: i64, terms: usize) -> MultiPoly {
    let e = r.gen_range(0..=max_e);
    random::multipoly(r, n, e, h, terms)
}
