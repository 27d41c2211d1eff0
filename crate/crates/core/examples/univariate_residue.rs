//! Residue of `g dx / f^{α+1}` on the line, with its integrality certificate.

use global_residues::arith::UniPoly;
use global_residues::certify::certify_residue_poly;
use global_residues::residue_uni::{residue_poly, rho_monomial};

fn main() -> global_residues::Result<()> {
    // f = 2x² − 3x, g = x⁶, α = 1
    let f = UniPoly::from_ints(&[0, -3, 2]);
    let g = UniPoly::from_ints(&[0, 0, 0, 0, 0, 0, 1]);
    let r = residue_poly(&f, &g, 1)?;
    println!("Res[x^6 dx / (2x^2-3x)^2] = {}", r.value);
    println!("certified denominator ζ = {}  (ζ·value integral: {})", r.certified_denominator, r.is_certified_integral());

    let cert = certify_residue_poly(&f, &g, 1, &r.value)?;
    println!("bound check: pass={} slack={:.3} (log scale)", cert.pass, cert.slack);

    // the residue of a monomial is the recursion value ϱ(j, α)
    for j in 0..8 {
        println!("  rho({j}, 1) = {}", rho_monomial(&f, j, 1)?);
    }
    Ok(())
}
