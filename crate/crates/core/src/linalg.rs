//! Exact linear algebra: Bareiss determinants, rational solves, and a sparse
//! fraction-free echelon basis with combination tracking.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::BigRat;
use crate::error::{Error, Result};

/// Bareiss fraction-free determinant of an integer matrix.
pub fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Determinant of a rational matrix (denominators cleared row by row, then Bareiss).
pub fn det_rat(m: &[Vec<BigRat>]) -> BigRat {
    let mut scale = BigInt::one();
    let rows: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            scale *= &l;
            row.iter().map(|c| (c * BigRat::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    BigRat::new(det_int(&rows), scale)
}

/// Solves the square system `A·x = b` exactly. Returns `(det A, x)`; fails when `A` is singular.
pub fn solve_rat(a: &[Vec<BigRat>], b: &[BigRat]) -> Result<(BigRat, Vec<BigRat>)> {
    let n = a.len();
    let mut m: Vec<Vec<BigRat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut det = BigRat::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Err(Error::Singular);
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= &m[k][k];
        let inv = m[k][k].recip();
        for j in k..=n {
            m[k][j] = &m[k][j] * &inv;
        }
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let f = m[i][k].clone();
                for j in k..=n {
                    let t = &f * &m[k][j];
                    m[i][j] -= t;
                }
            }
        }
    }
    Ok((det, m.into_iter().map(|mut r| r.pop().unwrap()).collect()))
}

/// Sparse integer vector: (index, nonzero value) pairs sorted by index.
pub type SparseVec = Vec<(usize, BigInt)>;

fn axpby(a: &BigInt, x: &SparseVec, b: &BigInt, y: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, b * &y[j].1));
            j += 1;
        } else {
            let v = a * &x[i].1 + b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

const MOD_P: u64 = 0x1fff_ffff_ffff_ffff; // 2^61 − 1

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD_P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn reduce_mod(v: &BigInt) -> u64 {
    let m = BigInt::from(MOD_P);
    let r = v.mod_floor(&m);
    r.iter_u64_digits().next().unwrap_or(0)
}

/// Which of `rows`, taken in order, are linearly independent of their
/// predecessors modulo the prime `2^61 − 1`. Independence mod p implies
/// independence over ℚ.
pub fn independent_rows_mod_p(rows: &[SparseVec], ncols: usize) -> Vec<bool> {
    let mut basis: HashMap<usize, Vec<u64>> = HashMap::new();
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let mut v = vec![0u64; ncols];
        for (k, x) in r {
            v[*k] = reduce_mod(x);
        }
        let mut independent = false;
        for col in 0..ncols {
            if v[col] == 0 {
                continue;
            }
            match basis.get(&col) {
                Some(b) => {
                    let c = v[col];
                    for (vi, bi) in v[col..].iter_mut().zip(&b[col..]) {
                        if *bi != 0 {
                            *vi = (*vi + MOD_P - mulmod(c, *bi)) % MOD_P;
                        }
                    }
                }
                None => {
                    let inv = powmod(v[col], MOD_P - 2);
                    for vi in v[col..].iter_mut() {
                        *vi = mulmod(*vi, inv);
                    }
                    basis.insert(col, v);
                    independent = true;
                    break;
                }
            }
        }
        out.push(independent);
    }
    out
}

#[derive(Clone, Debug)]
pub struct EchelonRow {
    pub entries: SparseVec,
    /// Integer combination of the inserted generators that produces `entries`.
    pub combination: SparseVec,
}

/// Incremental echelon basis over ℤ, built with fraction-free row operations and
/// per-row content stripping. Column index order is pivot priority: the pivot of a
/// row is its smallest index.
#[derive(Default)]
pub struct FractionFreeEchelon {
    rows: HashMap<usize, EchelonRow>,
    inserted: usize,
}

impl FractionFreeEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts the next generator; returns the pivot index if it was independent.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let gen = self.inserted;
        self.inserted += 1;
        let mut row = EchelonRow { entries: v, combination: vec![(gen, BigInt::one())] };
        loop {
            let Some((lead, lead_val)) = row.entries.first().cloned() else {
                return None;
            };
            match self.rows.get(&lead) {
                None => {
                    strip_content(&mut row);
                    self.rows.insert(lead, row);
                    return Some(lead);
                }
                Some(basis) => {
                    let piv = &basis.entries[0].1;
                    let g = piv.gcd(&lead_val);
                    let a = piv / &g;
                    let b = -(&lead_val / &g);
                    row.entries = axpby(&a, &row.entries, &b, &basis.entries);
                    row.combination = axpby(&a, &row.combination, &b, &basis.combination);
                    strip_content(&mut row);
                }
            }
        }
    }

    pub fn row_with_pivot(&self, pivot: usize) -> Option<&EchelonRow> {
        self.rows.get(&pivot)
    }

    pub fn pivots(&self) -> impl Iterator<Item = &usize> {
        self.rows.keys()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn strip_content(row: &mut EchelonRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.entries.iter().chain(&row.combination) {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, v) in row.entries.iter_mut().chain(row.combination.iter_mut()) {
        *v = &*v / &g;
    }
    if row.entries.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in row.entries.iter_mut().chain(row.combination.iter_mut()) {
            *v = -&*v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn bareiss_matches_hand_values() {
        assert_eq!(det_int(&ints(&[&[1, 2], &[3, 4]])), BigInt::from(-2));
        assert_eq!(det_int(&ints(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det_int(&ints(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])), BigInt::from(6));
        assert_eq!(det_int(&ints(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]])), BigInt::zero());
        assert_eq!(det_int(&ints(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(det_int(&[]), BigInt::one());
    }

    #[test]
    fn rational_solve() {
        let a = vec![vec![rat(2), rat(1)], vec![rat(1), rat(3)]];
        let (det, x) = solve_rat(&a, &[rat(3), rat(5)]).unwrap();
        assert_eq!(det, rat(5));
        assert_eq!(x, vec![BigRat::new(4.into(), 5.into()), BigRat::new(7.into(), 5.into())]);
        let sing = vec![vec![rat(1), rat(1)], vec![rat(1), rat(1)]];
        assert_eq!(solve_rat(&sing, &[rat(0), rat(1)]), Err(Error::Singular));
    }

    #[test]
    fn echelon_tracks_combinations() {
        let v = |pairs: &[(usize, i64)]| -> SparseVec { pairs.iter().map(|&(i, x)| (i, BigInt::from(x))).collect() };
        let gens = vec![v(&[(0, 2), (1, 1)]), v(&[(0, 4), (2, 3)]), v(&[(1, 2), (2, -3)])];
        let mut e = FractionFreeEchelon::new();
        assert_eq!(e.insert(gens[0].clone()), Some(0));
        assert_eq!(e.insert(gens[1].clone()), Some(1));
        // third generator is a combination of the first two
        assert_eq!(e.insert(gens[2].clone()), None);
        for row in e.rows.values() {
            let mut acc: Vec<BigInt> = vec![BigInt::zero(); 3];
            for (g, c) in &row.combination {
                for (i, x) in &gens[*g] {
                    acc[*i] += c * x;
                }
            }
            let mut dense = vec![BigInt::zero(); 3];
            for (i, x) in &row.entries {
                dense[*i] = x.clone();
            }
            assert_eq!(acc, dense);
        }
    }
}
