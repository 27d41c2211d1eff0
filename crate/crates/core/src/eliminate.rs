//! Elimination witnesses `φ_l = Σ_i a_{l,i} f_i` with `φ_l ∈ ℤ[x_l]`, found by exact
//! linear algebra inside the degree box `deg φ_l ≤ D`, `deg a_{l,i} + d_i ≤ D`,
//! `D = Π d_j`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::arith::{BigRat, ExponentVec, MultiPoly, UniPoly};
use crate::error::{Error, Result};
use crate::linalg::{self, FractionFreeEchelon, SparseVec};
use crate::residue_sep::SeparatedSystem;

pub use crate::certify::certify_elimination;

#[derive(Clone, Debug, PartialEq)]
pub struct EliminationWitness {
    pub var: usize,
    /// Nonzero, primitive, positive leading coefficient.
    pub phi: UniPoly,
    pub cofactors: Vec<MultiPoly>,
    /// Leading coefficient of `phi`; `phi / clearing_factor` is the monic eliminant.
    pub clearing_factor: BigInt,
    /// `D = Π d_j`.
    pub degree_box: u64,
}

impl EliminationWitness {
    pub fn phi_multi(&self) -> MultiPoly {
        self.phi.to_multi(self.cofactors.first().map_or(1, |a| a.nvars()), self.var)
    }
}

pub(crate) fn check_square_system(fs: &[MultiPoly]) -> Result<Vec<u64>> {
    let n = fs.len();
    if n == 0 {
        return Err(Error::InvalidSystem("empty system".into()));
    }
    let mut degs = Vec::with_capacity(n);
    for (i, f) in fs.iter().enumerate() {
        if f.nvars() != n {
            return Err(Error::Dimension { expected: n, found: f.nvars() });
        }
        match f.degree() {
            Some(d) if d >= 1 => degs.push(d),
            _ => return Err(Error::InvalidSystem(format!("f{} is constant", i + 1))),
        }
    }
    Ok(degs)
}

/// Minimal-degree witness for variable `l` (0-based).
pub fn eliminate_variable(fs: &[MultiPoly], l: usize) -> Result<EliminationWitness> {
    let degs = check_square_system(fs)?;
    let n = fs.len();
    if l >= n {
        return Err(Error::Dimension { expected: n, found: l + 1 });
    }
    let big_d: u64 = degs.iter().product();
    if let Some(sys) = SeparatedSystem::detect(fs) {
        // (f_1(x_1), …, f_n(x_n)) ∩ ℚ[x_l] = (f_l)
        return Ok(separated_witness(&sys, l, big_d));
    }

    // integral forms F_i = c_i f_i
    let mut ints = Vec::with_capacity(n);
    let mut clears = Vec::with_capacity(n);
    for f in fs {
        let (c, p) = f.clear_denominators();
        ints.push(p);
        clears.push(c);
    }

    // columns: monomials other than powers of x_l (higher degree first), then x_l^D … x_l^0
    let mut others: Vec<ExponentVec> =
        ExponentVec::simplex(n, big_d).into_iter().filter(|e| e.nonzero().any(|(i, _)| i != l)).collect();
    others.sort_by(|a, b| b.total().cmp(&a.total()).then(a.cmp(b)));
    let mut index: HashMap<ExponentVec, usize> = HashMap::with_capacity(others.len() + big_d as usize + 1);
    for (k, e) in others.iter().enumerate() {
        index.insert(e.clone(), k);
    }
    let pure_start = others.len();
    for k in 0..=big_d {
        let mut e = vec![0u32; n];
        e[l] = (big_d - k) as u32;
        index.insert(ExponentVec::new(e), pure_start + k as usize);
    }

    let mut generators: Vec<(usize, ExponentVec)> = Vec::new();
    let mut rows: Vec<SparseVec> = Vec::new();
    for (i, f) in ints.iter().enumerate() {
        let int_terms: Vec<(&ExponentVec, BigInt)> = f.terms().map(|(e, c)| (e, c.numer().clone())).collect();
        for m in ExponentVec::simplex(n, big_d - degs[i]) {
            let mut v: SparseVec = int_terms.iter().map(|(e, c)| (index[&e.add(&m)], c.clone())).collect();
            v.sort_by_key(|(k, _)| *k);
            generators.push((i, m));
            rows.push(v);
        }
    }
    // rows dependent on their predecessors add nothing to the span but are
    // expensive to reduce exactly; a modular pass finds them first
    let keep = linalg::independent_rows_mod_p(&rows, pure_start + big_d as usize + 1);
    let mut echelon = FractionFreeEchelon::new();
    let mut kept: Vec<usize> = Vec::new();
    for (g, v) in rows.into_iter().enumerate() {
        if keep[g] {
            kept.push(g);
            echelon.insert(v);
        }
    }

    let best = echelon.pivots().copied().filter(|&p| p >= pure_start).max();
    let Some(pivot) = best else {
        return Err(Error::NotZeroDimensional { var: l, bound: big_d });
    };
    let row = echelon.row_with_pivot(pivot).expect("pivot present");

    let mut phi_coeffs = vec![BigRat::zero(); (big_d + 1) as usize];
    for (k, c) in &row.entries {
        debug_assert!(*k >= pure_start);
        phi_coeffs[(big_d as usize) - (k - pure_start)] = BigRat::from_integer(c.clone());
    }
    let mut phi = UniPoly::from_coeffs(phi_coeffs);
    let mut cofactors = vec![MultiPoly::zero(n); n];
    for (g, c) in &row.combination {
        let (i, m) = &generators[kept[*g]];
        cofactors[*i].add_term(m.clone(), BigRat::from_integer(c * &clears[*i]));
    }

    // primitive over (phi, cofactors) jointly, positive leading coefficient
    let mut g = phi.content();
    for a in &cofactors {
        g = num_integer::Integer::gcd(&g, &a.content());
    }
    let mut scale = BigRat::from_integer(g).recip();
    if phi.leading().is_negative() {
        scale = -scale;
    }
    phi = phi.scale(&scale);
    for a in cofactors.iter_mut() {
        *a = a.scale(&scale);
    }
    let clearing_factor = phi.leading_int();
    Ok(EliminationWitness { var: l, phi, cofactors, clearing_factor, degree_box: big_d })
}

fn separated_witness(sys: &SeparatedSystem, l: usize, big_d: u64) -> EliminationWitness {
    let n = sys.n();
    let f = sys.poly(l);
    // primitive jointly with the constant cofactor, as in the general path
    let (c, big_f) = f.clear_denominators();
    let g = num_integer::Integer::gcd(&big_f.content(), &c);
    let mut scale = BigRat::new(c, g);
    if f.leading().is_negative() {
        scale = -scale;
    }
    let phi = f.scale(&scale);
    let mut cofactors = vec![MultiPoly::zero(n); n];
    cofactors[l] = MultiPoly::constant(n, scale);
    EliminationWitness { var: l, clearing_factor: phi.leading_int(), phi, cofactors, degree_box: big_d }
}

/// Witnesses for every variable, computed in parallel.
pub fn eliminate_all(fs: &[MultiPoly]) -> Result<Vec<EliminationWitness>> {
    check_square_system(fs)?;
    (0..fs.len()).into_par_iter().map(|l| eliminate_variable(fs, l)).collect()
}

/// `φ_l − Σ a_{l,i} f_i == 0` exactly.
pub fn verify_membership(w: &EliminationWitness, fs: &[MultiPoly]) -> Result<bool> {
    let n = fs.len();
    if w.cofactors.len() != n {
        return Err(Error::Dimension { expected: n, found: w.cofactors.len() });
    }
    let mut acc = w.phi.to_multi(n, w.var);
    for (a, f) in w.cofactors.iter().zip(fs) {
        a.check_nvars(f)?;
        if f.nvars() != n {
            return Err(Error::Dimension { expected: n, found: f.nvars() });
        }
        acc = acc.try_sub(&a.try_mul(f)?)?;
    }
    Ok(acc.is_zero())
}

/// Degree-box check: `deg φ ≤ D` and `deg a_i + d_i ≤ D` for nonzero cofactors.
pub fn within_degree_box(w: &EliminationWitness, fs: &[MultiPoly]) -> bool {
    let d = w.degree_box;
    w.phi.degree().is_some_and(|k| k as u64 <= d)
        && w.cofactors.iter().zip(fs).all(|(a, f)| match a.degree() {
            None => true,
            Some(k) => k + f.degree().unwrap_or(0) <= d,
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(n: usize, t: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_int_terms(n, t)
    }

    #[test]
    fn linear_pair() {
        let fs = vec![mp(2, &[(&[1, 0], 1), (&[0, 1], 1)]), mp(2, &[(&[1, 0], 1), (&[0, 1], -1)])];
        let w = eliminate_variable(&fs, 0).unwrap();
        assert_eq!(w.phi, UniPoly::from_ints(&[0, 2]));
        assert_eq!(w.cofactors, vec![MultiPoly::from_int(2, 1), MultiPoly::from_int(2, 1)]);
        assert!(verify_membership(&w, &fs).unwrap());
        assert!(within_degree_box(&w, &fs));
    }

    #[test]
    fn separated_is_returned_as_is() {
        let fs = vec![mp(2, &[(&[2, 0], 1)]), mp(2, &[(&[0, 2], 1)])];
        let w = eliminate_variable(&fs, 1).unwrap();
        assert_eq!(w.phi, UniPoly::from_ints(&[0, 0, 1]));
        assert_eq!(w.cofactors[1], MultiPoly::from_int(2, 1));
        assert!(w.cofactors[0].is_zero());
        let fs = vec![mp(3, &[(&[1, 0, 0], 1)]), mp(3, &[(&[0, 1, 0], 1)]), mp(3, &[(&[0, 0, 1], 1)])];
        for l in 0..3 {
            let w = eliminate_variable(&fs, l).unwrap();
            assert_eq!(w.phi, UniPoly::x());
        }
    }

    #[test]
    fn tampering_breaks_membership() {
        let fs = vec![mp(2, &[(&[1, 0], 1), (&[0, 1], 1)]), mp(2, &[(&[1, 0], 1), (&[0, 1], -1)])];
        let mut w = eliminate_variable(&fs, 0).unwrap();
        w.cofactors[0] = &w.cofactors[0] + &MultiPoly::from_int(2, 1);
        assert!(!verify_membership(&w, &fs).unwrap());
        w.cofactors.pop();
        assert!(matches!(verify_membership(&w, &fs), Err(Error::Dimension { .. })));
    }

    #[test]
    fn positive_dimensional_is_rejected() {
        // f1 = f2 = x1 x2: the common zero set is the union of the axes
        let f = mp(2, &[(&[1, 1], 1)]);
        let fs = vec![f.clone(), f];
        assert!(matches!(eliminate_variable(&fs, 0), Err(Error::NotZeroDimensional { .. })));
    }

    #[test]
    fn circle_and_line() {
        // x^2 + y^2 − 5, x − y − 1: zeros (2,1), (−1,−2); over ℤ the eliminant keeps the factor 2
        let fs = vec![
            mp(2, &[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -5)]),
            mp(2, &[(&[1, 0], 1), (&[0, 1], -1), (&[0, 0], -1)]),
        ];
        let w = eliminate_variable(&fs, 0).unwrap();
        assert_eq!(w.phi, UniPoly::from_ints(&[-4, -2, 2]));
        assert!(verify_membership(&w, &fs).unwrap());
        let w = eliminate_variable(&fs, 1).unwrap();
        assert_eq!(w.phi, UniPoly::from_ints(&[-4, 2, 2]));
    }
}
