//! Weil expansions `p = Σ_α g_α f^α` and trace polynomials.
//!
//! Kernels `h_{i,j}(x,z)` satisfy `f_i(z) − f_i(x) = Σ_j h_{i,j}(x,z)(z_j − x_j)`, and
//! `g_α(x) = Res_z[p(z)·det h(x,z) dz / f(z)^{α+1}]`, taken coefficientwise in `x`.
//! Variables `0..n` are `x`, variables `n..2n` are `z`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::{poly_det, ExponentVec, MultiPoly};
use crate::eliminate::check_square_system;
use crate::error::{Error, Result};
use crate::residue_sep::{self, SeparatedSystem};
use crate::transform::Transform;

pub const PROPERNESS_NOTE: &str = "proper-map assumption not independently verified";

#[derive(Clone, Debug, PartialEq)]
pub struct WeilExpansion {
    pub source: MultiPoly,
    pub system: Vec<MultiPoly>,
    /// Nonzero coefficients only.
    pub coeffs: BTreeMap<ExponentVec, MultiPoly>,
    /// True when the system was not separated and went through elimination.
    pub general_path: bool,
}

impl WeilExpansion {
    pub fn reconstruct(&self) -> MultiPoly {
        let n = self.system.len();
        let mut acc = MultiPoly::zero(n);
        for (a, g) in &self.coeffs {
            let mut t = g.clone();
            for (i, k) in a.nonzero() {
                t = &t * &self.system[i].pow(k);
            }
            acc = &acc + &t;
        }
        acc
    }
}

/// `f(x_1..x_{j}, z_{j+1}..z_n)`-style mixing: variable `k` of `f` goes to `x_k` when
/// `pick_x(k)`, else to `z_k`.
fn mixed(f: &MultiPoly, n: usize, pick_x: impl Fn(usize) -> bool) -> MultiPoly {
    let map: Vec<usize> = (0..n).map(|k| if pick_x(k) { k } else { n + k }).collect();
    f.embed(2 * n, &map)
}

/// `h_{i,j} = (f_i(x_{<j}, z_{≥j}) − f_i(x_{≤j}, z_{>j})) / (z_j − x_j)`.
pub fn divided_difference_kernels(fs: &[MultiPoly]) -> Result<Vec<Vec<MultiPoly>>> {
    let n = fs.len();
    for f in fs {
        if f.nvars() != n {
            return Err(Error::Dimension { expected: n, found: f.nvars() });
        }
    }
    let mut out = Vec::with_capacity(n);
    for f in fs {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            // with t in slot j: Σ_k C_k t^k ↦ Σ_k C_k Σ_{a+b=k−1} z_j^a x_j^b
            let base = mixed(f, n, |k| k < j);
            let mut h = MultiPoly::zero(2 * n);
            for (e, c) in base.terms() {
                let k = e.get(n + j);
                if k == 0 {
                    continue;
                }
                let mut rest = e.as_slice().to_vec();
                rest[n + j] = 0;
                for a in 0..k {
                    let mut m = rest.clone();
                    m[n + j] += a;
                    m[j] += k - 1 - a;
                    h.add_term(ExponentVec::new(m), c.clone());
                }
            }
            row.push(h);
        }
        // f_i(z) − f_i(x) = Σ_j h_{i,j}(z_j − x_j)
        let mut check = &mixed(f, n, |_| false) - &mixed(f, n, |_| true);
        for (j, h) in row.iter().enumerate() {
            let diff = &MultiPoly::var(2 * n, n + j) - &MultiPoly::var(2 * n, j);
            check = &check - &(h * &diff);
        }
        if !check.is_zero() {
            return Err(Error::Internal("divided-difference identity failed".into()));
        }
        out.push(row);
    }
    Ok(out)
}

/// Splits `P(x, z)` as `Σ_β x^β P_β(z)` with `P_β` renamed to the first `n` variables.
fn split_by_x(p: &MultiPoly, n: usize) -> BTreeMap<ExponentVec, MultiPoly> {
    let mut out: BTreeMap<ExponentVec, MultiPoly> = BTreeMap::new();
    for (e, c) in p.terms() {
        let beta = ExponentVec::new(e.as_slice()[..n].to_vec());
        let gamma = ExponentVec::new(e.as_slice()[n..].to_vec());
        out.entry(beta).or_insert_with(|| MultiPoly::zero(n)).add_term(gamma, c.clone());
    }
    out
}

/// Levels `s = |α|` that can carry nonzero coefficients on the general path:
/// the first `s` with `deg P + deg det A − |δ| + n < s·min_l(δ_l − m_l)` and every
/// level after it vanish (`δ_l = deg φ_l`, `m_l = max_i deg a_{l,i}`).
fn general_level_cap(t: &Transform, deg_p: u64) -> Result<u64> {
    let Transform::General { data, target } = t else {
        return Err(Error::Internal("separated system on the general path".into()));
    };
    if target.is_none() {
        return Ok(0);
    }
    let n = data.n() as i64;
    let delta: Vec<i64> = data.phis.iter().map(|p| p.degree().unwrap() as i64).collect();
    let m: Vec<i64> =
        data.matrix.iter().map(|row| row.iter().filter_map(|a| a.degree()).max().unwrap_or(0) as i64).collect();
    let gap = delta.iter().zip(&m).map(|(d, m)| d - m).min().unwrap();
    if gap <= 0 {
        return Err(Error::Unsupported("no vanishing level for this elimination matrix".into()));
    }
    let lhs = deg_p as i64 + data.det().degree().unwrap_or(0) as i64 - delta.iter().sum::<i64>() + n;
    // smallest s with lhs < s·gap
    let s = if lhs < 0 { 0 } else { lhs / gap + 1 };
    Ok(s as u64)
}

/// Coefficients `g_α` of the Weil expansion of `p` along `f`, with the identity
/// `Σ g_α f^α = p` checked before returning.
pub fn weil_expand(fs: &[MultiPoly], p: &MultiPoly) -> Result<WeilExpansion> {
    check_square_system(fs)?;
    let n = fs.len();
    if p.nvars() != n {
        return Err(Error::Dimension { expected: n, found: p.nvars() });
    }
    let kernels = divided_difference_kernels(fs)?;
    let det = poly_det(&kernels, 2 * n);
    let zmap: Vec<usize> = (n..2 * n).collect();
    let form = &p.embed(2 * n, &zmap) * &det;
    let parts = split_by_x(&form, n);
    let deg_z = parts.values().filter_map(|q| q.degree()).max();

    let transform = Transform::new(fs)?;
    let general_path = matches!(transform, Transform::General { .. });
    let alphas: Vec<ExponentVec> = match (&transform, deg_z) {
        (_, None) => Vec::new(),
        (Transform::Separated(sys), Some(e)) => {
            let d = sys.degrees();
            let room = e as i64 - d.iter().map(|&x| x as i64).sum::<i64>() + n as i64;
            if room < 0 {
                Vec::new()
            } else {
                let upper: Vec<u32> = d.iter().map(|&di| (room as u32) / di).collect();
                ExponentVec::boxed(&upper).into_iter().filter(|a| a.dot(&d) as i64 <= room).collect()
            }
        }
        (t, Some(e)) => {
            let cap = general_level_cap(t, e)?;
            if cap == 0 {
                Vec::new()
            } else {
                ExponentVec::simplex(n, cap - 1)
            }
        }
    };

    let betas: Vec<&ExponentVec> = parts.keys().collect();
    let numerators: Vec<MultiPoly> = parts.values().cloned().collect();
    let mut coeffs = BTreeMap::new();
    for a in alphas {
        let values = transform.residues(&numerators, &a)?;
        let mut g = MultiPoly::zero(n);
        for (beta, v) in betas.iter().zip(values) {
            if !v.is_zero() {
                g.add_term((*beta).clone(), v);
            }
        }
        if !g.is_zero() {
            coeffs.insert(a, g);
        }
    }
    let w = WeilExpansion { source: p.clone(), system: fs.to_vec(), coeffs, general_path };
    if w.reconstruct() != *p {
        return Err(if general_path {
            Error::Unsupported(format!("Weil reconstruction failed ({PROPERNESS_NOTE})"))
        } else {
            Error::Internal("Weil reconstruction failed for a separated system".into())
        });
    }
    Ok(w)
}

/// `Θ(y) = Σ_α Res[g·Π f_i′ dx / f^{α+1}]·y^α` over `⟨α, d⟩ ≤ deg g`.
pub fn trace_polynomial(sys: &SeparatedSystem, g: &MultiPoly) -> Result<MultiPoly> {
    let n = sys.n();
    if g.nvars() != n {
        return Err(Error::Dimension { expected: n, found: g.nvars() });
    }
    let Some(e) = g.degree() else {
        return Ok(MultiPoly::zero(n));
    };
    let jac =
        sys.polys().iter().enumerate().fold(MultiPoly::one(n), |acc, (i, f)| &acc * &f.derivative().to_multi(n, i));
    let form = g * &jac;
    let d = sys.degrees();
    let upper: Vec<u32> = d.iter().map(|&di| (e as u32) / di).collect();
    let mut theta = MultiPoly::zero(n);
    for a in ExponentVec::boxed(&upper).into_iter().filter(|a| a.dot(&d) <= e) {
        let v = residue_sep::residue_separated(sys, &form, &a)?.value;
        if !v.is_zero() {
            theta.add_term(a, v);
        }
    }
    Ok(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, UniPoly};

    fn mp(n: usize, t: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_int_terms(n, t)
    }

    #[test]
    fn kernel_examples() {
        let k = divided_difference_kernels(&[mp(1, &[(&[2], 1)])]).unwrap();
        assert_eq!(k[0][0], mp(2, &[(&[1, 0], 1), (&[0, 1], 1)]));
        let k = divided_difference_kernels(&[mp(1, &[(&[1], 1)])]).unwrap();
        assert_eq!(k[0][0], MultiPoly::from_int(2, 1));
        let fs = vec![mp(2, &[(&[2, 1], 3), (&[0, 2], -1), (&[1, 0], 1)]), mp(2, &[(&[1, 1], 1), (&[0, 0], 2)])];
        assert_eq!(divided_difference_kernels(&fs).unwrap().len(), 2);
    }

    #[test]
    fn univariate_weil_is_fadic() {
        let fs = vec![mp(1, &[(&[2], 1)])];
        let p = mp(1, &[(&[3], 1), (&[1], 1)]);
        let w = weil_expand(&fs, &p).unwrap();
        assert_eq!(w.coeffs.len(), 2);
        assert_eq!(w.coeffs[&ExponentVec::new(vec![0])], mp(1, &[(&[1], 1)]));
        assert_eq!(w.coeffs[&ExponentVec::new(vec![1])], mp(1, &[(&[1], 1)]));
    }

    #[test]
    fn coordinate_system_gives_taylor() {
        let fs = vec![mp(2, &[(&[1, 0], 1)]), mp(2, &[(&[0, 1], 1)])];
        let p = mp(2, &[(&[2, 1], 4), (&[0, 3], -1), (&[0, 0], 7)]);
        let w = weil_expand(&fs, &p).unwrap();
        for (a, g) in &w.coeffs {
            assert_eq!(*g, MultiPoly::constant(2, p.coeff(a)));
        }
        assert_eq!(w.coeffs.len(), 3);
    }

    #[test]
    fn general_path_reconstructs() {
        let fs = vec![mp(2, &[(&[1, 0], 1), (&[0, 1], 1)]), mp(2, &[(&[1, 0], 1), (&[0, 1], -1)])];
        let p = mp(2, &[(&[2, 1], 1), (&[1, 0], 3), (&[0, 0], -2)]);
        let w = weil_expand(&fs, &p).unwrap();
        assert!(w.general_path);
        assert_eq!(w.reconstruct(), p);
    }

    #[test]
    fn trace_examples() {
        let coords = SeparatedSystem::new(vec![UniPoly::x(), UniPoly::x()]).unwrap();
        let g = mp(2, &[(&[2, 1], 3), (&[0, 0], 1)]);
        assert_eq!(trace_polynomial(&coords, &g).unwrap(), g);

        let sys =
            SeparatedSystem::new(vec![UniPoly::from_ints(&[1, 0, 1]), UniPoly::from_ints(&[-2, 3, 0, 1])]).unwrap();
        assert_eq!(trace_polynomial(&sys, &MultiPoly::one(2)).unwrap(), MultiPoly::from_int(2, 6));

        let sq = SeparatedSystem::new(vec![UniPoly::from_ints(&[0, 0, 1])]).unwrap();
        let theta = trace_polynomial(&sq, &mp(1, &[(&[2], 1)])).unwrap();
        assert_eq!(theta, &MultiPoly::constant(1, rat(2)) * &mp(1, &[(&[1], 1)]));
    }
}
