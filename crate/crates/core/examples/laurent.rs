//! Laurent coefficients of `1/f^{α+1}` at infinity, checked against the monomial
//! residue recursion.

use global_residues::arith::UniPoly;
use global_residues::certify::certify_laurent;
use global_residues::residue_uni::{laurent_coeffs, rho_monomial};

fn main() -> global_residues::Result<()> {
    let f = UniPoly::from_ints(&[1, -1, 3]); // 3x² − x + 1
    let alpha = 1;
    let d = 2;
    let c = laurent_coeffs(&f, alpha, 10)?;
    for (l, cl) in c.iter().enumerate() {
        let rho = rho_monomial(&f, l + (alpha as usize + 1) * d - 1, alpha)?;
        let cert = certify_laurent(&f, alpha, l, cl)?;
        println!("c_{l:<2} = {cl:<16} recursion agrees: {:<5} certificate: {}", &rho == cl, cert.pass);
    }
    Ok(())
}
