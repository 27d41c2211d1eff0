//! Residues against a separated system `f_i(x_i)`, the vanishing below the degree
//! threshold, and the trace polynomial.

use global_residues::arith::{ExponentVec, MultiPoly, UniPoly};
use global_residues::certify::certify_separated;
use global_residues::residue_sep::{jacobi_threshold, residue_separated, SeparatedSystem};
use global_residues::trace_weil::trace_polynomial;

fn main() -> global_residues::Result<()> {
    let sys = SeparatedSystem::new(vec![UniPoly::from_ints(&[-2, 0, 1]), UniPoly::from_ints(&[1, 1, 0, 2])])?;
    let alpha = ExponentVec::new(vec![1, 0]);
    let t = jacobi_threshold(&sys.degrees(), &alpha, 2);
    println!("forms of degree < {t} have residue 0");

    let below = MultiPoly::from_int_terms(2, &[(&[2, 1], 5), (&[0, 0], 1)]);
    println!("deg 3: {}", residue_separated(&sys, &below, &alpha)?.value);

    let g = MultiPoly::from_int_terms(2, &[(&[5, 2], 1), (&[1, 2], -3)]);
    let r = residue_separated(&sys, &g, &alpha)?;
    let c = certify_separated(&sys, &g, &alpha, &r.value)?;
    println!("Res = {}  ζ = {}  certificate pass={}", r.value, r.certified_denominator, c.pass);

    // Θ(y) = Σ_α Res[g Π f_i' dx / f^{α+1}] y^α
    let sys = SeparatedSystem::new(vec![UniPoly::from_ints(&[-1, 0, 1]), UniPoly::from_ints(&[-4, 0, 1])])?;
    let g = MultiPoly::from_int_terms(2, &[(&[2, 0], 1), (&[0, 2], 1)]);
    println!("trace of x1^2 + x2^2: {}", trace_polynomial(&sys, &g)?);
    Ok(())
}
