//! Eliminants `φ_l(x_l) = Σ a_{l,i} f_i` inside the degree box, with their audit.

use global_residues::arith::MultiPoly;
use global_residues::eliminate::{certify_elimination, eliminate_all, verify_membership, within_degree_box};

fn main() -> global_residues::Result<()> {
    // x y − 2, x² + y² − 5
    let fs = vec![
        MultiPoly::from_int_terms(2, &[(&[1, 1], 1), (&[0, 0], -2)]),
        MultiPoly::from_int_terms(2, &[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -5)]),
    ];
    for w in eliminate_all(&fs)? {
        println!("x{}: phi = {}", w.var + 1, w.phi);
        for (i, a) in w.cofactors.iter().enumerate() {
            println!("   a_{} = {a}", i + 1);
        }
        let c = certify_elimination(&w, &fs)?;
        println!(
            "   membership {}  degree box {}  height audit {}",
            verify_membership(&w, &fs)?,
            within_degree_box(&w, &fs),
            c.pass
        );
    }
    Ok(())
}
