//! Drives the command-line front end in-process and reads its JSON back.

use global_residues::cli::parse::{parse, print, VarMode};
use global_residues::cli::run;

fn main() {
    let p = parse("-(x + 2*y)^2 + 3", &VarMode::Letters(vec!['x', 'y'])).expect("parses");
    println!("parsed and printed: {}", print(&p, &["x".into(), "y".into()]));

    for argv in [
        vec!["residues", "residue1", "-f", "x^2-1", "-g", "x^3", "--alpha", "1"],
        vec!["residues", "--vars", "x,y", "residue-general", "--system", "x^2+y^2-5; x-y-1", "-g", "x^3"],
        vec!["residues", "residue1", "-f", "x^-1", "-g", "1"],
    ] {
        let out = run(argv.clone());
        println!("$ {}\nexit {}\n{}", argv[1..].join(" "), out.code, out.stdout);
    }
}
