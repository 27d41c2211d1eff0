//! Heights, lengths and the Mahler measure of integral polynomials.

use global_residues::arith::{MultiPoly, UniPoly};
use global_residues::certify::certify_height_length;
use global_residues::metrics::{check_height_length_ineq, height_report, mahler_estimate_uni};

fn main() -> global_residues::Result<()> {
    let f = MultiPoly::from_int_terms(2, &[(&[3, 0], 4), (&[1, 2], -7), (&[0, 0], 2)]);
    let h = height_report(&f)?;
    println!("h = {:.4}  h1 = {:.4}  degree {}", h.h, h.h1, h.degree);
    println!("h <= h1 <= h + deg log(n+1): {}", check_height_length_ineq(&f));
    println!("certificate pass={}", certify_height_length(&f)?.pass);

    let u = UniPoly::from_ints(&[2, -3, 0, 4]);
    let (lo, hi) = mahler_estimate_uni(&u, 1e-9)?;
    println!("m({u}) in [{lo:.10}, {hi:.10}]");
    Ok(())
}
