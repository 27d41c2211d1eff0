//! f-adic digits `p = Σ p_α f^α`, and the length audit with its repaired bound.

use global_residues::arith::UniPoly;
use global_residues::certify::{certify_fadic, fadic_repaired_bound};
use global_residues::residue_uni::fadic_expansion;

fn main() -> global_residues::Result<()> {
    let f = UniPoly::from_ints(&[1, 0, 1]); // x² + 1
    let p = UniPoly::from_ints(&[3, 0, 0, 0, 0, 2, 1]); // x⁶ + 2x⁵ + 3
    for (a, digit) in fadic_expansion(&f, &p)?.iter().enumerate() {
        println!("p_{a} = {digit}");
    }

    // a constant numerator against a cubic exceeds the stated length bound
    let f = UniPoly::from_ints(&[-16, 2, -14, -9]);
    let p = UniPoly::from_ints(&[19]);
    let digits = fadic_expansion(&f, &p)?;
    let c = certify_fadic(&f, &p, 0, &digits[0])?;
    println!("stated bound pass={} note={:?}", c.pass, c.note);
    println!("repaired bound = {}", fadic_repaired_bound(&f, &p, 0).exact());
    Ok(())
}
