//! Residue against a non-separated system through the transformation law, compared
//! with a floating-point sum over the common zeros.

use global_residues::arith::{ExponentVec, MultiPoly};
use global_residues::transform::{numeric_local_sum_oracle, Transform};

fn main() -> global_residues::Result<()> {
    // x² + y² − 5, x − y − 1: zeros (2, 1) and (−1, −2)
    let fs = vec![
        MultiPoly::from_int_terms(2, &[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -5)]),
        MultiPoly::from_int_terms(2, &[(&[1, 0], 1), (&[0, 1], -1), (&[0, 0], -1)]),
    ];
    let t = Transform::new(&fs)?;
    if let Transform::General { data, .. } = &t {
        for (l, phi) in data.phis.iter().enumerate() {
            println!("phi_{} = {phi}", l + 1);
        }
        println!("det A = {}", data.det());
    }
    let g = MultiPoly::from_int_terms(2, &[(&[3, 0], 1), (&[0, 1], 2)]);
    let zero = ExponentVec::zeros(2);
    let exact = t.residue(&g, &zero)?;
    let numeric = numeric_local_sum_oracle(&fs, &g)?;
    println!("exact {}  numeric {:.12}  over {} zeros", exact.value, numeric.value.re, numeric.zeros);

    for a in [vec![1, 0], vec![1, 1]] {
        let a = ExponentVec::new(a);
        println!("alpha {a}: {}", t.residue(&g, &a)?.value);
    }
    Ok(())
}
