//! Residue of a rational form `(g/f0) dx / f^{α+1}` with `f0` coprime to `f`.

use global_residues::arith::UniPoly;
use global_residues::certify::certify_rational;
use global_residues::residue_uni::residue_rational;

fn main() -> global_residues::Result<()> {
    let f = UniPoly::from_ints(&[-2, 0, 1]); // x² − 2
    let f0 = UniPoly::from_ints(&[1, 1]); // x + 1
    let g = UniPoly::from_ints(&[0, 0, 0, 1]); // x³
    for alpha in 0..3 {
        let r = residue_rational(&f, &f0, &g, alpha)?;
        let c = certify_rational(&f, &f0, &g, alpha, &r.value)?;
        println!("alpha={alpha}: {}  ζ={}  certificate pass={}", r.value, r.certified_denominator, c.pass);
    }
    // shared root: rejected
    let bad = residue_rational(&UniPoly::from_ints(&[-1, 0, 1]), &f0, &g, 0);
    println!("x^2-1 against 1/(x+1): {bad:?}");
    Ok(())
}
