//! Random certificate audits and a slack scan by parameter slice.

use global_residues::certify::{audit, random, sharpness_scan, CertInput, TheoremId};
use rand::Rng;

fn main() -> global_residues::Result<()> {
    for t in TheoremId::ALL {
        let rep = audit(t, 200, 7, 4, 20)?;
        println!(
            "{:<18} {:>3}/{} pass  hard={:<5}  median slack {:.2}",
            t.as_str(),
            rep.passes,
            rep.samples,
            rep.hard,
            rep.slack.median.unwrap_or(f64::NAN)
        );
    }

    // how tight is the univariate residue bound as the degree grows?
    let rows = sharpness_scan(
        |r| {
            let d = r.gen_range(1..=4usize);
            let f = random::unipoly(r, d, 20);
            let g = random::unipoly(r, 8, 20);
            (format!("deg f = {d}"), CertInput::ResiduePoly { f, g, alpha: 1 })
        },
        400,
        11,
    )?;
    for row in rows {
        let s = &row.stats;
        let (min, med) = (s.min.unwrap_or(f64::NAN), s.median.unwrap_or(f64::NAN));
        println!("{:<10} n={:<4} min {min:.2} median {med:.2} failures {}", row.slice, s.count, row.failures);
    }
    Ok(())
}
