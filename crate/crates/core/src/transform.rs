//! Reduction of residues against a general zero-dimensional system on affine space
//! to the separated engine, through the transformation law.
//!
//! Elimination gives `φ = A·f` with `φ_l ∈ ℤ[x_l]`. With `s = |α|` and
//! `a_l = Σ_i a_{l,i} u_i`, the multiplier `G` is the coefficient of `u^α` in
//! `det(A)·Π_l Σ_{k=0}^{s} φ_l^k a_l^{s−k}`, and
//! `Res[g dx / f^{α+1}] = Res[g·G dx / φ^{s+1}]`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;

use crate::arith::{poly_det, BigRat, ExponentVec, MultiPoly, UniPoly};
use crate::eliminate::{self, check_square_system};
use crate::error::{Error, Result};
use crate::residue_sep::{self, SeparatedSystem};
use crate::residue_uni::ResidueValue;
use crate::roots;

/// `A·f = φ` with every `φ_l` a nonzero polynomial in `x_l` alone.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformData {
    pub source: Vec<MultiPoly>,
    pub phis: Vec<UniPoly>,
    /// Row `l` holds the cofactors `a_{l,1..n}`.
    pub matrix: Vec<Vec<MultiPoly>>,
}

impl TransformData {
    pub fn new(source: Vec<MultiPoly>, phis: Vec<UniPoly>, matrix: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let td = TransformData { source, phis, matrix };
        td.validate()?;
        Ok(td)
    }

    pub fn from_elimination(fs: &[MultiPoly]) -> Result<Self> {
        let ws = eliminate::eliminate_all(fs)?;
        let phis = ws.iter().map(|w| w.phi.clone()).collect();
        let matrix = ws.into_iter().map(|w| w.cofactors).collect();
        Self::new(fs.to_vec(), phis, matrix)
    }

    pub fn n(&self) -> usize {
        self.source.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.phis.len() != n || self.matrix.len() != n || self.matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidTransform("matrix shape does not match the system".into()));
        }
        for (l, (row, phi)) in self.matrix.iter().zip(&self.phis).enumerate() {
            if phi.is_zero() {
                return Err(Error::InvalidTransform(format!("phi{} is zero", l + 1)));
            }
            let mut acc = phi.to_multi(n, l);
            for (a, f) in row.iter().zip(&self.source) {
                acc = acc
                    .try_sub(&a.try_mul(f).map_err(|e| Error::InvalidTransform(e.to_string()))?)
                    .map_err(|e| Error::InvalidTransform(e.to_string()))?;
            }
            if !acc.is_zero() {
                return Err(Error::InvalidTransform(format!("row {} does not satisfy A·f = phi", l + 1)));
            }
        }
        Ok(())
    }

    pub fn det(&self) -> MultiPoly {
        poly_det(&self.matrix, self.n())
    }

    /// `Some(l)` when `φ_l` is a nonzero constant: the system then has no common zeros.
    pub fn empty_fiber(&self) -> Option<usize> {
        self.phis.iter().position(|p| p.is_constant())
    }

    pub fn target(&self) -> Result<SeparatedSystem> {
        SeparatedSystem::new(self.phis.clone())
    }
}

/// Product that drops every term whose `u`-part (variables `n..2n`) exceeds `cap`.
fn mul_capped(a: &MultiPoly, b: &MultiPoly, n: usize, cap: &[u32]) -> MultiPoly {
    let mut out: BTreeMap<ExponentVec, BigRat> = BTreeMap::new();
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            let e = ea.add(eb);
            if (0..n).any(|i| e.get(n + i) > cap[i]) {
                continue;
            }
            *out.entry(e).or_insert_with(BigRat::zero) += ca * cb;
        }
    }
    MultiPoly::from_terms(a.nvars(), out)
}

/// `G = coeff_{u^α}(det(A)·Π_l Σ_{k=0}^{|α|} φ_l^k a_l^{|α|−k})`, a polynomial in `x`.
pub fn build_transform_multiplier(td: &TransformData, alpha: &ExponentVec) -> Result<MultiPoly> {
    td.validate()?;
    let n = td.n();
    if alpha.len() != n {
        return Err(Error::Dimension { expected: n, found: alpha.len() });
    }
    let s = alpha.total() as u32;
    let cap = alpha.as_slice();
    let xmap: Vec<usize> = (0..n).collect();
    let mut h = td.det().embed(2 * n, &xmap);
    for l in 0..n {
        let phi = td.phis[l].to_multi(2 * n, l);
        let mut a_l = MultiPoly::zero(2 * n);
        for (i, a) in td.matrix[l].iter().enumerate() {
            let u = MultiPoly::var(2 * n, n + i);
            a_l = &a_l + &(&a.embed(2 * n, &xmap) * &u);
        }
        let mut phi_pows = vec![MultiPoly::one(2 * n)];
        let mut a_pows = vec![MultiPoly::one(2 * n)];
        for k in 1..=s as usize {
            phi_pows.push(&phi_pows[k - 1] * &phi);
            a_pows.push(mul_capped(&a_pows[k - 1], &a_l, n, cap));
        }
        let mut factor = MultiPoly::zero(2 * n);
        for k in 0..=s as usize {
            factor = &factor + &(&phi_pows[k] * &a_pows[s as usize - k]);
        }
        h = mul_capped(&h, &factor, n, cap);
    }
    Ok(MultiPoly::from_terms(
        n,
        h.terms()
            .filter(|(e, _)| (0..n).all(|i| e.get(n + i) == cap[i]))
            .map(|(e, c)| (ExponentVec::new(e.as_slice()[..n].to_vec()), c.clone())),
    ))
}

/// A system prepared once for repeated residue queries.
#[derive(Clone, Debug)]
pub enum Transform {
    Separated(SeparatedSystem),
    General { data: TransformData, target: Option<SeparatedSystem> },
}

impl Transform {
    pub fn new(fs: &[MultiPoly]) -> Result<Self> {
        check_square_system(fs)?;
        if let Some(sys) = SeparatedSystem::detect(fs) {
            return Ok(Transform::Separated(sys));
        }
        Self::forced(fs)
    }

    /// Always runs elimination, even for separated input.
    pub fn forced(fs: &[MultiPoly]) -> Result<Self> {
        let data = TransformData::from_elimination(fs)?;
        let target = if data.empty_fiber().is_some() { None } else { Some(data.target()?) };
        Ok(Transform::General { data, target })
    }

    pub fn residue(&self, g: &MultiPoly, alpha: &ExponentVec) -> Result<ResidueValue> {
        match self {
            Transform::Separated(sys) => residue_sep::residue_separated(sys, g, alpha),
            Transform::General { data, target } => {
                let n = data.n();
                if g.nvars() != n {
                    return Err(Error::Dimension { expected: n, found: g.nvars() });
                }
                if alpha.len() != n {
                    return Err(Error::Dimension { expected: n, found: alpha.len() });
                }
                let system: Vec<String> = data.source.iter().map(|f| f.to_string()).collect();
                let Some(target) = target else {
                    return Ok(ResidueValue {
                        value: BigRat::zero(),
                        alpha: alpha.as_slice().to_vec(),
                        certified_denominator: num_traits::One::one(),
                        system,
                        theorem: crate::certify::TheoremId::SeparatedResidue,
                    });
                };
                let gmult = build_transform_multiplier(data, alpha)?;
                let s = alpha.total() as u32;
                let mut r = residue_sep::residue_separated(target, &(g * &gmult), &ExponentVec::new(vec![s; n]))?;
                r.alpha = alpha.as_slice().to_vec();
                r.system = system;
                Ok(r)
            }
        }
    }

    /// Residue values for several numerators at one `α`, sharing the multiplier.
    pub fn residues(&self, gs: &[MultiPoly], alpha: &ExponentVec) -> Result<Vec<BigRat>> {
        match self {
            Transform::Separated(sys) => {
                gs.iter().map(|g| residue_sep::residue_separated(sys, g, alpha).map(|r| r.value)).collect()
            }
            Transform::General { target: None, .. } => Ok(vec![BigRat::zero(); gs.len()]),
            Transform::General { data, target: Some(target) } => {
                let n = data.n();
                let gmult = build_transform_multiplier(data, alpha)?;
                let s = ExponentVec::new(vec![alpha.total() as u32; n]);
                gs.iter()
                    .map(|g| {
                        g.check_nvars(&gmult)?;
                        residue_sep::residue_separated(target, &(g * &gmult), &s).map(|r| r.value)
                    })
                    .collect()
            }
        }
    }
}

/// `Res[g dx / f^{α+1}]` for a zero-dimensional system; separated input skips elimination.
pub fn residue_general(fs: &[MultiPoly], g: &MultiPoly, alpha: &ExponentVec) -> Result<ResidueValue> {
    Transform::new(fs)?.residue(g, alpha)
}

#[derive(Clone, Debug)]
pub struct LocalSum {
    pub value: Complex64,
    /// `Σ |g(ξ)/det J(ξ)|`, the scale for relative comparisons.
    pub abs_sum: f64,
    pub zeros: usize,
    /// The polished common zeros.
    pub points: Vec<Vec<Complex64>>,
}

impl LocalSum {
    /// `|exact − value| ≤ tol·max(abs_sum, 1)`.
    pub fn agrees_with(&self, exact: &BigRat, tol: f64) -> bool {
        let x = crate::arith::rat_to_f64(exact);
        (self.value - Complex64::new(x, 0.0)).norm() <= tol * self.abs_sum.max(1.0)
    }
}

fn complex_solve(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<(Complex64, Vec<Complex64>)> {
    let n = b.len();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].norm().partial_cmp(&a[j][k].norm()).unwrap())?;
        if a[p][k].norm() == 0.0 {
            return None;
        }
        if p != k {
            a.swap(p, k);
            b.swap(p, k);
            det = -det;
        }
        det *= a[k][k];
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                let t = f * a[k][j];
                a[i][j] -= t;
            }
            let t = f * b[k];
            b[i] -= t;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let s: Complex64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some((det, x))
}

fn jacobian(fs: &[MultiPoly]) -> Vec<Vec<MultiPoly>> {
    let n = fs.len();
    fs.iter().map(|f| (0..n).map(|j| f.derivative(j)).collect()).collect()
}

fn eval_matrix(m: &[Vec<MultiPoly>], z: &[Complex64]) -> Vec<Vec<Complex64>> {
    m.iter().map(|r| r.iter().map(|p| p.eval_complex(z)).collect()).collect()
}

fn distinct_roots(p: &UniPoly) -> Result<Vec<Complex64>> {
    let mut rs = roots::find_roots(&p.to_f64_coeffs()).map_err(|e| Error::OracleUnavailable(e.to_string()))?;
    roots::polish(p, &mut rs);
    let mut out: Vec<Complex64> = Vec::new();
    for r in rs {
        if !out.iter().any(|q| (q - r).norm() <= 1e-6 * r.norm().max(1.0)) {
            out.push(r);
        }
    }
    Ok(out)
}

/// `Σ_ξ g(ξ)/det Jf(ξ)` over numerically located common zeros (simple zeros only).
/// Separated systems use products of univariate roots; general systems pair the
/// roots of the eliminants and keep the tuples where the system vanishes.
pub fn numeric_local_sum_oracle(fs: &[MultiPoly], g: &MultiPoly) -> Result<LocalSum> {
    check_square_system(fs)?;
    let n = fs.len();
    let candidates: Vec<Vec<Complex64>> = if let Some(sys) = SeparatedSystem::detect(fs) {
        let per: Vec<Vec<Complex64>> = sys.polys().iter().map(distinct_roots).collect::<Result<_>>()?;
        for (f, rs) in sys.polys().iter().zip(&per) {
            if rs.len() != f.degree().unwrap() {
                return Err(Error::OracleUnavailable("repeated univariate root".into()));
            }
        }
        ExponentVec::boxed(&per.iter().map(|r| r.len() as u32 - 1).collect::<Vec<_>>())
            .into_iter()
            .map(|idx| (0..n).map(|i| per[i][idx.get(i) as usize]).collect())
            .collect()
    } else {
        let ws = eliminate::eliminate_all(fs).map_err(|e| Error::OracleUnavailable(e.to_string()))?;
        let phis: Vec<UniPoly> = ws.into_iter().map(|w| w.phi).collect();
        return numeric_local_sum_with_eliminants(fs, g, &phis);
    };
    local_sum_from_candidates(fs, g, candidates)
}

/// [`numeric_local_sum_oracle`] for a general system whose eliminants are already
/// known (`phis[l]` vanishes on the `x_l`-coordinates of every common zero).
pub fn numeric_local_sum_with_eliminants(fs: &[MultiPoly], g: &MultiPoly, phis: &[UniPoly]) -> Result<LocalSum> {
    check_square_system(fs)?;
    let n = fs.len();
    if phis.len() != n {
        return Err(Error::Dimension { expected: n, found: phis.len() });
    }
    let candidates: Vec<Vec<Complex64>> = {
        if phis.iter().any(|p| p.is_constant()) {
            return Ok(LocalSum { value: Complex64::new(0.0, 0.0), abs_sum: 0.0, zeros: 0, points: Vec::new() });
        }
        let per: Vec<Vec<Complex64>> = phis.iter().map(distinct_roots).collect::<Result<_>>()?;
        let combos: usize = per.iter().map(Vec::len).product();
        if combos > 1_000_000 {
            return Err(Error::OracleUnavailable(format!("{combos} root tuples to test")));
        }
        let mut zs: Vec<Vec<Complex64>> = Vec::new();
        let mut covered: Vec<Vec<bool>> = per.iter().map(|r| vec![false; r.len()]).collect();
        for idx in ExponentVec::boxed(&per.iter().map(|r| r.len() as u32 - 1).collect::<Vec<_>>()) {
            let z: Vec<Complex64> = (0..n).map(|i| per[i][idx.get(i) as usize]).collect();
            if fs.iter().all(|f| f.eval_complex(&z).norm() <= 1e-6 * f.magnitude_at(&z)) {
                for (i, c) in covered.iter_mut().enumerate() {
                    c[idx.get(i) as usize] = true;
                }
                zs.push(z);
            }
        }
        if covered.iter().flatten().any(|c| !c) {
            return Err(Error::OracleUnavailable("an eliminant root has no matching zero".into()));
        }
        zs
    };
    local_sum_from_candidates(fs, g, candidates)
}

fn local_sum_from_candidates(fs: &[MultiPoly], g: &MultiPoly, candidates: Vec<Vec<Complex64>>) -> Result<LocalSum> {
    let n = fs.len();
    let jac = jacobian(fs);
    let mut zeros: Vec<Vec<Complex64>> = Vec::new();
    for mut z in candidates {
        for _ in 0..30 {
            let fv: Vec<Complex64> = fs.iter().map(|f| -f.eval_complex(&z)).collect();
            let Some((_, dz)) = complex_solve(eval_matrix(&jac, &z), fv) else {
                break;
            };
            let step: f64 = dz.iter().map(|d| d.norm()).sum();
            for (zi, di) in z.iter_mut().zip(&dz) {
                *zi += di;
            }
            if step <= 1e-15 * z.iter().map(|c| c.norm()).fold(1.0, f64::max) {
                break;
            }
        }
        if !fs.iter().all(|f| f.eval_complex(&z).norm() <= 1e-9 * f.magnitude_at(&z)) {
            return Err(Error::OracleUnavailable("Newton polish did not converge".into()));
        }
        let dup = zeros.iter().any(|w| w.iter().zip(&z).all(|(a, b)| (a - b).norm() <= 1e-7 * b.norm().max(1.0)));
        if !dup {
            zeros.push(z);
        }
    }

    let mut value = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    for z in &zeros {
        let jm = eval_matrix(&jac, z);
        let scale: f64 = jac.iter().flatten().map(|p| p.magnitude_at(z)).fold(0.0, f64::max);
        let (det, _) = complex_solve(jm, vec![Complex64::new(0.0, 0.0); n])
            .ok_or_else(|| Error::OracleUnavailable("singular Jacobian".into()))?;
        if det.norm() <= 1e-8 * scale.powi(n as i32) {
            return Err(Error::OracleUnavailable("near-singular Jacobian".into()));
        }
        let t = g.eval_complex(z) / det;
        value += t;
        abs_sum += t.norm();
    }
    Ok(LocalSum { value, abs_sum, zeros: zeros.len(), points: zeros })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};

    fn mp(n: usize, t: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_int_terms(n, t)
    }

    fn ev(v: &[u32]) -> ExponentVec {
        ExponentVec::new(v.to_vec())
    }

    fn linear_pair() -> Vec<MultiPoly> {
        vec![mp(2, &[(&[1, 0], 1), (&[0, 1], 1)]), mp(2, &[(&[1, 0], 1), (&[0, 1], -1)])]
    }

    #[test]
    fn multiplier_examples() {
        let fs = linear_pair();
        let td = TransformData::from_elimination(&fs).unwrap();
        assert_eq!(build_transform_multiplier(&td, &ev(&[0, 0])).unwrap(), td.det());
        assert_eq!(td.det(), MultiPoly::from_int(2, -2));

        let x = vec![mp(1, &[(&[1], 1)])];
        let td = TransformData::new(x.clone(), vec![UniPoly::x()], vec![vec![MultiPoly::from_int(1, 1)]]).unwrap();
        assert_eq!(build_transform_multiplier(&td, &ev(&[1])).unwrap(), MultiPoly::from_int(1, 1));

        let sep = vec![mp(2, &[(&[1, 0], 1)]), mp(2, &[(&[0, 1], 1)])];
        let td = TransformData::new(
            sep,
            vec![UniPoly::from_ints(&[0, 3]), UniPoly::from_ints(&[0, 5])],
            vec![
                vec![MultiPoly::from_int(2, 3), MultiPoly::zero(2)],
                vec![MultiPoly::zero(2), MultiPoly::from_int(2, 5)],
            ],
        )
        .unwrap();
        assert_eq!(build_transform_multiplier(&td, &ev(&[0, 0])).unwrap(), MultiPoly::from_int(2, 15));
    }

    #[test]
    fn invalid_transform_is_rejected() {
        let fs = linear_pair();
        let bad = TransformData::new(
            fs,
            vec![UniPoly::x(), UniPoly::x()],
            vec![
                vec![MultiPoly::from_int(2, 1), MultiPoly::zero(2)],
                vec![MultiPoly::zero(2), MultiPoly::from_int(2, 1)],
            ],
        );
        assert!(matches!(bad, Err(Error::InvalidTransform(_))));
    }

    #[test]
    fn linear_pair_residue() {
        let fs = linear_pair();
        let r = residue_general(&fs, &MultiPoly::from_int(2, 1), &ev(&[0, 0])).unwrap();
        assert_eq!(r.value, rat_frac(-1, 2));
        let o = numeric_local_sum_oracle(&fs, &MultiPoly::from_int(2, 1)).unwrap();
        assert!(o.agrees_with(&r.value, 1e-12));
    }

    #[test]
    fn separated_bypass_equals_pipeline() {
        let fs = vec![mp(2, &[(&[2, 0], 1), (&[0, 0], -2)]), mp(2, &[(&[0, 2], 3), (&[0, 1], 1), (&[0, 0], -1)])];
        let g = mp(2, &[(&[3, 2], 2), (&[1, 1], -1), (&[4, 0], 1), (&[0, 0], 5)]);
        let forced = Transform::forced(&fs).unwrap();
        for a in ExponentVec::simplex(2, 2) {
            let direct = residue_general(&fs, &g, &a).unwrap().value;
            assert_eq!(forced.residue(&g, &a).unwrap().value, direct, "alpha {a}");
        }
    }

    #[test]
    fn two_point_oracle() {
        let fs = vec![mp(2, &[(&[2, 0], 1), (&[0, 0], -1)]), mp(2, &[(&[0, 1], 1), (&[0, 0], -1)])];
        let g = mp(2, &[(&[1, 0], 1)]);
        let o = numeric_local_sum_oracle(&fs, &g).unwrap();
        assert_eq!(o.zeros, 2);
        assert!(o.agrees_with(&rat(1), 1e-12));
        assert_eq!(residue_general(&fs, &g, &ev(&[0, 0])).unwrap().value, rat(1));
    }

    #[test]
    fn circle_line_matches_oracle() {
        let fs = vec![
            mp(2, &[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -5)]),
            mp(2, &[(&[1, 0], 1), (&[0, 1], -1), (&[0, 0], -1)]),
        ];
        let g = mp(2, &[(&[2, 1], 1), (&[0, 0], 3)]);
        let exact = residue_general(&fs, &g, &ev(&[0, 0])).unwrap().value;
        let o = numeric_local_sum_oracle(&fs, &g).unwrap();
        assert_eq!(o.zeros, 2);
        assert!(o.agrees_with(&exact, 1e-9), "{exact} vs {:?}", o.value);
    }

    #[test]
    fn folding_powers_into_the_system() {
        let f1 = mp(2, &[(&[1, 0], 1), (&[0, 1], 2), (&[0, 0], -1)]);
        let f2 = mp(2, &[(&[1, 1], 1), (&[0, 1], 1), (&[0, 0], 1)]);
        let g = mp(2, &[(&[2, 1], 1), (&[1, 0], 3), (&[0, 0], 1)]);
        let kept = residue_general(&[f1.clone(), f2.clone()], &g, &ev(&[1, 0])).unwrap().value;
        let folded = residue_general(&[f1.pow(2), f2], &g, &ev(&[0, 0])).unwrap().value;
        assert_eq!(kept, folded);
    }
}
