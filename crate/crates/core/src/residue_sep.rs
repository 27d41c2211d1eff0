//! Residues on affine n-space against systems in separated variables,
//! `f_i ∈ ℤ[x_i]`, reduced to coefficient extraction through the multivariate
//! Laurent expansion of `Π f_i^{−α_i−1}`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::arith::{int_rat_pow, rat_pow, BigRat, ExponentVec, MultiPoly, UniPoly};
use crate::certify::TheoremId;
use crate::error::{Error, Result};
use crate::residue_uni::{self, ResidueValue};

/// `f_i ∈ ℚ[x_i]`, all nonconstant. Stored as `F_i / c_i` with `F_i` integral.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparatedSystem {
    polys: Vec<UniPoly>,
    integral: Vec<UniPoly>,
    scales: Vec<BigRat>,
}

impl SeparatedSystem {
    pub fn new(polys: Vec<UniPoly>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::InvalidSystem("empty system".into()));
        }
        let mut integral = Vec::with_capacity(polys.len());
        let mut scales = Vec::with_capacity(polys.len());
        for (i, f) in polys.iter().enumerate() {
            if f.degree().unwrap_or(0) == 0 {
                return Err(Error::InvalidSystem(format!("f{} is constant", i + 1)));
            }
            let (c, p) = f.clear_denominators();
            integral.push(p);
            scales.push(BigRat::from_integer(c));
        }
        Ok(SeparatedSystem { polys, integral, scales })
    }

    /// Accepts `f_i` given as polynomials in n variables, each involving only `x_i`.
    pub fn from_multi(fs: &[MultiPoly]) -> Result<Self> {
        let n = fs.len();
        let mut polys = Vec::with_capacity(n);
        for (i, f) in fs.iter().enumerate() {
            if f.nvars() != n {
                return Err(Error::Dimension { expected: n, found: f.nvars() });
            }
            if f.used_vars().iter().any(|&v| v != i) {
                return Err(Error::InvalidSystem(format!("f{} is not a polynomial in x{} alone", i + 1, i + 1)));
            }
            polys.push(f.to_uni(i).expect("checked"));
        }
        Self::new(polys)
    }

    /// `Some` when every `f_i` involves only `x_i` and is nonconstant.
    pub fn detect(fs: &[MultiPoly]) -> Option<Self> {
        Self::from_multi(fs).ok()
    }

    pub fn n(&self) -> usize {
        self.polys.len()
    }

    pub fn polys(&self) -> &[UniPoly] {
        &self.polys
    }

    pub fn poly(&self, i: usize) -> &UniPoly {
        &self.polys[i]
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.polys.iter().map(|f| f.degree().unwrap() as u32).collect()
    }

    /// Leading coefficients of the integral forms `F_i`.
    pub fn leading_coeffs(&self) -> Vec<num_bigint::BigInt> {
        self.integral.iter().map(|f| f.leading_int()).collect()
    }

    pub fn integral_polys(&self) -> &[UniPoly] {
        &self.integral
    }

    pub fn as_multi(&self) -> Vec<MultiPoly> {
        let n = self.n();
        self.polys.iter().enumerate().map(|(i, f)| f.to_multi(n, i)).collect()
    }

    pub fn describe(&self) -> Vec<String> {
        self.as_multi().iter().map(|f| f.to_string()).collect()
    }

    fn check_alpha(&self, alpha: &ExponentVec) -> Result<()> {
        if alpha.len() != self.n() {
            return Err(Error::Dimension { expected: self.n(), found: alpha.len() });
        }
        Ok(())
    }

    /// `Π c_i^{α_i+1}`: the factor relating residues against `f` and against `F`.
    fn scale_factor(&self, alpha: &ExponentVec) -> BigRat {
        self.scales
            .iter()
            .zip(alpha.as_slice())
            .map(|(c, &a)| rat_pow(c, a as i64 + 1))
            .fold(BigRat::one(), |acc, x| acc * x)
    }
}

/// `Res[g dx / (x_1^{m_1}, …, x_n^{m_n})] = coeff_{m−1}(g)`.
pub fn residue_pure_powers(g: &MultiPoly, m: &ExponentVec) -> Result<BigRat> {
    if m.len() != g.nvars() {
        return Err(Error::Dimension { expected: g.nvars(), found: m.len() });
    }
    if m.as_slice().contains(&0) {
        return Err(Error::InvalidExponent(format!("pure-power exponent {m} has a zero entry")));
    }
    let shifted = ExponentVec::new(m.as_slice().iter().map(|&v| v - 1).collect());
    Ok(g.coeff(&shifted))
}

/// Univariate Laurent tables for the integral forms, `count` entries each.
fn laurent_tables(sys: &SeparatedSystem, alpha: &ExponentVec, counts: &[usize]) -> Result<Vec<Vec<BigRat>>> {
    sys.integral
        .iter()
        .zip(alpha.as_slice())
        .zip(counts)
        .map(|((f, &a), &c)| residue_uni::laurent_coeffs(f, a, c))
        .collect()
}

/// `c_{f,α,l} = Π_i c_{f_i,α_i,l_i}` for all `|l| ≤ bound`.
pub fn multivariate_laurent(
    sys: &SeparatedSystem,
    alpha: &ExponentVec,
    bound: u64,
) -> Result<BTreeMap<ExponentVec, BigRat>> {
    sys.check_alpha(alpha)?;
    let n = sys.n();
    let tables = laurent_tables(sys, alpha, &vec![bound as usize + 1; n])?;
    let scale = sys.scale_factor(alpha);
    Ok(ExponentVec::simplex(n, bound)
        .into_iter()
        .map(|l| {
            let c = l.as_slice().iter().enumerate().fold(scale.clone(), |acc, (i, &li)| acc * &tables[i][li as usize]);
            (l, c)
        })
        .collect())
}

/// `⟨α+1, d⟩ − n`: residues of forms with `deg g` strictly below this vanish.
pub fn jacobi_threshold(d: &[u32], alpha: &ExponentVec, n: usize) -> i64 {
    d.iter().zip(alpha.as_slice()).map(|(&di, &a)| (a as i64 + 1) * di as i64).sum::<i64>() - n as i64
}

fn separated_raw(sys: &SeparatedSystem, g: &MultiPoly, alpha: &ExponentVec) -> Result<BigRat> {
    let n = sys.n();
    let Some(e) = g.degree() else {
        return Ok(BigRat::zero());
    };
    let d = sys.degrees();
    let bound = e as i64 + n as i64 - (jacobi_threshold(&d, alpha, n) + n as i64);
    if bound < 0 {
        return Ok(BigRat::zero());
    }
    // offsets (α_i+1)d_i − 1: a term x^β of g contributes c_{β − offset}
    let offset: Vec<u32> = d.iter().zip(alpha.as_slice()).map(|(&di, &a)| (a + 1) * di - 1).collect();
    let mut counts = vec![0usize; n];
    let mut hits = Vec::new();
    for (beta, c) in g.terms() {
        if beta.as_slice().iter().zip(&offset).all(|(&b, &o)| b >= o) {
            let l: Vec<usize> = beta.as_slice().iter().zip(&offset).map(|(&b, &o)| (b - o) as usize).collect();
            for i in 0..n {
                counts[i] = counts[i].max(l[i] + 1);
            }
            hits.push((l, c));
        }
    }
    if hits.is_empty() {
        return Ok(BigRat::zero());
    }
    let tables = laurent_tables(sys, alpha, &counts)?;
    let mut acc = BigRat::zero();
    for (l, c) in hits {
        let mut t = c.clone();
        for i in 0..n {
            t *= &tables[i][l[i]];
            if t.is_zero() {
                break;
            }
        }
        acc += t;
    }
    Ok(acc * sys.scale_factor(alpha))
}

/// `Res[g dx / f^{α+1}]` for a separated system, with the certificate
/// `Π_i f_{i,d_i}^{e+n−⟨α+1,d⟩+α_i+1} · value ∈ ℤ`.
///
/// The sum over Laurent indices runs over the support of `g`: each monomial
/// meets exactly one `l`, and every such `l` satisfies `|l| ≤ e − ⟨α+1,d⟩ + n`.
pub fn residue_separated(sys: &SeparatedSystem, g: &MultiPoly, alpha: &ExponentVec) -> Result<ResidueValue> {
    sys.check_alpha(alpha)?;
    if g.nvars() != sys.n() {
        return Err(Error::Dimension { expected: sys.n(), found: g.nvars() });
    }
    let (cg, gi) = g.clear_denominators();
    let cg = BigRat::from_integer(cg);
    let value = separated_raw(sys, &gi, alpha)? / &cg;
    let n = sys.n() as i64;
    let e = gi.degree().unwrap_or(0) as i64;
    let inner = jacobi_threshold(&sys.degrees(), alpha, sys.n()) + n;
    let zeta = sys
        .leading_coeffs()
        .iter()
        .zip(alpha.as_slice())
        .map(|(lc, &a)| int_rat_pow(lc, e + n - inner + a as i64 + 1))
        .fold(BigRat::one(), |acc, x| acc * x)
        * &cg
        / sys.scale_factor(alpha);
    Ok(ResidueValue {
        value,
        alpha: alpha.as_slice().to_vec(),
        certified_denominator: zeta,
        system: sys.describe(),
        theorem: TheoremId::SeparatedResidue,
    })
}

/// The Laurent sum taken over the full simplex `|l| ≤ bound`, for any `bound`.
/// Agrees with [`residue_separated`] once `bound ≥ e − ⟨α+1,d⟩ + n`.
pub fn residue_separated_truncated(
    sys: &SeparatedSystem,
    g: &MultiPoly,
    alpha: &ExponentVec,
    bound: u64,
) -> Result<BigRat> {
    let coeffs = multivariate_laurent(sys, alpha, bound)?;
    let base: Vec<u32> = sys.degrees().iter().zip(alpha.as_slice()).map(|(&d, &a)| (a + 1) * d).collect();
    let mut acc = BigRat::zero();
    for (l, c) in coeffs {
        if c.is_zero() {
            continue;
        }
        let m = ExponentVec::new(base.iter().zip(l.as_slice()).map(|(b, li)| b + li).collect());
        acc += c * residue_pure_powers(g, &m)?;
    }
    Ok(acc)
}

/// `p = Σ_α p_α f^α` with `deg_{x_i} p_α < d_i`, built monomial by monomial from
/// univariate f-adic expansions. Zero coefficients are omitted.
pub fn ffadic_expansion(sys: &SeparatedSystem, p: &MultiPoly) -> Result<BTreeMap<ExponentVec, MultiPoly>> {
    let n = sys.n();
    if p.nvars() != n {
        return Err(Error::Dimension { expected: n, found: p.nvars() });
    }
    let mut cache: HashMap<(usize, u32), Vec<UniPoly>> = HashMap::new();
    let mut out: BTreeMap<ExponentVec, MultiPoly> = BTreeMap::new();
    for (beta, c) in p.terms() {
        let mut factors: Vec<&Vec<UniPoly>> = Vec::with_capacity(n);
        for i in 0..n {
            let key = (i, beta.get(i));
            if !cache.contains_key(&key) {
                let mono = UniPoly::monomial(key.1 as usize, BigRat::one());
                cache.insert(key, residue_uni::fadic_expansion(sys.poly(i), &mono)?);
            }
        }
        for i in 0..n {
            factors.push(&cache[&(i, beta.get(i))]);
        }
        let upper: Vec<u32> = factors.iter().map(|f| f.len() as u32 - 1).collect();
        for a in ExponentVec::boxed(&upper) {
            let mut term = MultiPoly::constant(n, c.clone());
            for i in 0..n {
                let u = &factors[i][a.get(i) as usize];
                if u.is_zero() {
                    term = MultiPoly::zero(n);
                    break;
                }
                term = &term * &u.to_multi(n, i);
            }
            if term.is_zero() {
                continue;
            }
            let slot = out.entry(a).or_insert_with(|| MultiPoly::zero(n));
            *slot = &*slot + &term;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// `Σ_α p_α Π f_i^{α_i}`.
pub fn ffadic_reconstruct(sys: &SeparatedSystem, expansion: &BTreeMap<ExponentVec, MultiPoly>) -> MultiPoly {
    let fs = sys.as_multi();
    let mut acc = MultiPoly::zero(sys.n());
    for (a, q) in expansion {
        let mut t = q.clone();
        for (i, &ai) in a.as_slice().iter().enumerate() {
            if ai > 0 {
                t = &t * &fs[i].pow(ai);
            }
        }
        acc = &acc + &t;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn sys(polys: &[&[i64]]) -> SeparatedSystem {
        SeparatedSystem::new(polys.iter().map(|c| UniPoly::from_ints(c)).collect()).unwrap()
    }

    fn ev(v: &[u32]) -> ExponentVec {
        ExponentVec::new(v.to_vec())
    }

    #[test]
    fn pure_power_examples() {
        let g = MultiPoly::from_int_terms(2, &[(&[1, 1], 1)]);
        assert_eq!(residue_pure_powers(&g, &ev(&[2, 2])).unwrap(), rat(1));
        let g = MultiPoly::from_int_terms(2, &[(&[1, 0], 1)]);
        assert_eq!(residue_pure_powers(&g, &ev(&[1, 1])).unwrap(), rat(0));
        let g = MultiPoly::from_int_terms(2, &[(&[0, 0], 7), (&[3, 1], 2)]);
        assert_eq!(residue_pure_powers(&g, &ev(&[1, 1])).unwrap(), rat(7));
        assert!(matches!(residue_pure_powers(&g, &ev(&[0, 1])), Err(Error::InvalidExponent(_))));
    }

    #[test]
    fn laurent_product_structure() {
        let s = sys(&[&[0, 1], &[0, 1]]);
        let c = multivariate_laurent(&s, &ev(&[0, 0]), 3).unwrap();
        for (l, v) in &c {
            assert_eq!(*v, if l.total() == 0 { rat(1) } else { rat(0) });
        }
        let s = sys(&[&[-1, 1], &[1, 0, 2]]);
        let c = multivariate_laurent(&s, &ev(&[1, 0]), 4).unwrap();
        let u0 = residue_uni::laurent_coeffs(s.poly(0), 1, 5).unwrap();
        let u1 = residue_uni::laurent_coeffs(s.poly(1), 0, 5).unwrap();
        for (l, v) in &c {
            assert_eq!(*v, &u0[l.get(0) as usize] * &u1[l.get(1) as usize]);
        }
    }

    #[test]
    fn separated_examples() {
        let s = sys(&[&[0, 0, 1], &[0, 0, 1]]);
        let g = MultiPoly::from_int_terms(2, &[(&[1, 1], 1)]);
        let r = residue_separated(&s, &g, &ev(&[0, 0])).unwrap();
        assert_eq!(r.value, rat(1));
        assert!(r.is_certified_integral());
        // deg g = 1 < ⟨α+1,d⟩ − n = 2
        let g = MultiPoly::from_int_terms(2, &[(&[1, 0], 5), (&[0, 0], 1)]);
        assert_eq!(residue_separated(&s, &g, &ev(&[0, 0])).unwrap().value, rat(0));
    }

    #[test]
    fn thresholds() {
        assert_eq!(jacobi_threshold(&[2, 2], &ev(&[0, 0]), 2), 2);
        assert_eq!(jacobi_threshold(&[1, 1, 1], &ev(&[0, 0, 0]), 3), 0);
    }

    #[test]
    fn ffadic_example() {
        let s = sys(&[&[0, 0, 1], &[0, 0, 1]]);
        let p = MultiPoly::from_int_terms(2, &[(&[3, 1], 1)]);
        let e = ffadic_expansion(&s, &p).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[&ev(&[1, 0])], MultiPoly::from_int_terms(2, &[(&[1, 1], 1)]));
        assert_eq!(ffadic_reconstruct(&s, &e), p);

        let low = MultiPoly::from_int_terms(2, &[(&[1, 1], 3), (&[0, 0], 2)]);
        let e = ffadic_expansion(&s, &low).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[&ev(&[0, 0])], low);
    }

    #[test]
    fn rejects_non_separated() {
        let f = vec![
            MultiPoly::from_int_terms(2, &[(&[1, 0], 1), (&[0, 1], 1)]),
            MultiPoly::from_int_terms(2, &[(&[0, 1], 1)]),
        ];
        assert!(matches!(SeparatedSystem::from_multi(&f), Err(Error::InvalidSystem(_))));
        assert!(SeparatedSystem::new(vec![UniPoly::from_ints(&[3])]).is_err());
    }
}
