//! Integer Bézout identity `σ = p0 f0 + p1 f1` from the Sylvester matrix.

use global_residues::arith::UniPoly;
use global_residues::certify::certify_bezout;
use global_residues::residue_uni::sylvester_bezout;

fn main() -> global_residues::Result<()> {
    let f0 = UniPoly::from_ints(&[-1, 0, 2]); // 2x² − 1
    let f1 = UniPoly::from_ints(&[3, 1, 0, 1]); // x³ + x + 3
    let w = sylvester_bezout(&f0, &f1)?;
    println!("sigma = {}\np0 = {}\np1 = {}", w.sigma, w.p0, w.p1);
    println!("check: p0 f0 + p1 f1 = {}", &(&w.p0 * &f0) + &(&w.p1 * &f1));
    let c = certify_bezout(&f0, &f1, &w)?;
    println!("audit pass={} slack={:.3}", c.pass, c.slack);
    Ok(())
}
