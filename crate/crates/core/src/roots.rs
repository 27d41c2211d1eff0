//! Numeric complex roots of univariate polynomials (Aberth–Ehrlich iteration)
//! with inclusion radii. Used by the Mahler-measure estimate and the numeric
//! local-sum oracle; exact computations never depend on it.

use num_complex::Complex64;

use crate::arith::UniPoly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct RootEstimate {
    pub value: Complex64,
    /// Radius of a disk around `value` that is guaranteed (up to the floating-point
    /// error model of [`eval_with_error`]) to meet the root set.
    pub radius: f64,
}

fn eval(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn eval_deriv(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `|p(z)|` plus a running bound on the Horner rounding error.
pub fn eval_with_error(coeffs: &[f64], z: Complex64) -> f64 {
    let p = eval(coeffs, z);
    let r = z.norm();
    let mut bound = 0.0;
    for (k, &c) in coeffs.iter().enumerate() {
        bound += c.abs() * r.powi(k as i32) * (4 * k + 2) as f64;
    }
    p.norm() + bound * f64::EPSILON
}

/// Approximates all complex roots of a polynomial with `f64` coefficients (low to high).
pub fn find_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.last() == Some(&0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    let cauchy = 1.0 + c[..n].iter().map(|a| (a / lead).abs()).fold(0.0, f64::max);
    let start_radius = cauchy.min(1e6).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(start_radius * 0.9, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();

    let mut converged = false;
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = eval_deriv(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let denom = Complex64::new(1.0, 0.0) - ratio * sum;
            let step = if denom.norm() == 0.0 || !denom.is_finite() { ratio } else { ratio / denom };
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        // multiple roots converge slowly; accept if residuals are small
        let scale: f64 = c.iter().map(|a| a.abs()).sum();
        let worst =
            z.iter().map(|&zi| eval(&c, zi).norm() / (scale * zi.norm().max(1.0).powi(n as i32))).fold(0.0, f64::max);
        if !(worst < 1e-10) {
            return Err(Error::NumericFailure { achieved_width: worst });
        }
    }
    Ok(z)
}

/// Roots with inclusion radii `r_i = n·|p(z_i)| / |lead·Π_{j≠i}(z_i − z_j)|`.
pub fn roots_with_radii(p: &UniPoly) -> Result<Vec<RootEstimate>> {
    let coeffs = p.to_f64_coeffs();
    let z = find_roots(&coeffs)?;
    let n = z.len();
    let lead = *coeffs.last().unwrap_or(&1.0);
    Ok((0..n)
        .map(|i| {
            let prod: f64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).norm()).product();
            let resid = eval_with_error(&coeffs, z[i]);
            let radius = if prod == 0.0 { f64::INFINITY } else { n as f64 * resid / (lead.abs() * prod) };
            RootEstimate { value: z[i], radius }
        })
        .collect())
}

/// Polishes approximate roots of an exact polynomial with a few Newton steps.
pub fn polish(p: &UniPoly, roots: &mut [Complex64]) {
    let c = p.to_f64_coeffs();
    for z in roots.iter_mut() {
        for _ in 0..3 {
            let (v, dv) = eval_deriv(&c, *z);
            if dv.norm() == 0.0 {
                break;
            }
            let step = v / dv;
            if !step.is_finite() {
                break;
            }
            *z -= step;
        }
    }
}
