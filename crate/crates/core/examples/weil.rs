//! Expansion `p = Σ g_α f^α` from divided-difference kernels, with the exponent
//! certificate on a separated system.

use global_residues::arith::{MultiPoly, UniPoly};
use global_residues::certify::certify_weil;
use global_residues::residue_sep::SeparatedSystem;
use global_residues::trace_weil::weil_expand;

fn main() -> global_residues::Result<()> {
    let sys = SeparatedSystem::new(vec![UniPoly::from_ints(&[-2, 0, 1]), UniPoly::from_ints(&[1, 3])])?;
    let p = MultiPoly::from_int_terms(2, &[(&[3, 2], 1), (&[1, 0], -4), (&[0, 0], 7)]);
    let w = weil_expand(&sys.as_multi(), &p)?;
    for (a, g) in &w.coeffs {
        let c = certify_weil(&sys, &p, a, g)?;
        println!("g_{a} = {g}   certificate pass={}", c.pass);
    }
    println!("reconstructs p: {}", w.reconstruct() == p);

    // a system that is not separated goes through elimination first
    let fs = vec![
        MultiPoly::from_int_terms(2, &[(&[1, 1], 1), (&[0, 0], -1)]),
        MultiPoly::from_int_terms(2, &[(&[1, 0], 1), (&[0, 1], 1)]),
    ];
    let w = weil_expand(&fs, &p)?;
    println!("general system: {} coefficients, reconstructs p: {}", w.coeffs.len(), w.reconstruct() == p);
    Ok(())
}
