//! Acceptance harness: one PASS/FAIL line per criterion, with the runtime budget
//! enforced. Exits non-zero on any failure.

mod common;

use std::time::{Duration, Instant};

use common::*;
use global_residues::arith::{binomial, BigRat, ExponentVec, MultiPoly, UniPoly};
use global_residues::certify::{self, random};
use global_residues::eliminate;
use global_residues::residue_sep::{self, SeparatedSystem};
use global_residues::residue_uni;
use global_residues::trace_weil;
use global_residues::transform::{self, Transform};
use num_traits::Zero;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: global_residues::Error) -> String {
    e.to_string()
}

fn closed_form_poly(d: usize, h1: i64, h2: i64) -> UniPoly {
    // H1 x^d − H2 x^{d−1}
    let mut c = vec![0i64; d + 1];
    c[d] = h1;
    c[d - 1] -= h2;
    up(&c)
}

/// Closed-form example: pick the binomial by the series oracle, then check the grid.
fn closed_form_example() -> Outcome {
    let candidates: [(&str, fn(u64, u64, u64) -> u64); 2] = [
        ("binom(e-(a+1)(d-1), a)", |d, a, e| e - (a + 1) * (d - 1)),
        ("binom(e-(a+1)d, a)", |d, a, e| e - (a + 1) * d),
    ];
    let mut hits = [0usize; 2];
    let mut points = 0;
    for d in 1..=3u64 {
        for a in 0..=3u64 {
            for e in (a + 1) * d..=10 {
                points += 1;
                let f = closed_form_poly(d as usize, 2, 3);
                let g = UniPoly::monomial(e as usize, BigRat::from_integer(5.into()));
                let oracle = series_residue(&f, &g, a as u32);
                for (k, (_, top)) in candidates.iter().enumerate() {
                    if closed_form(&binomial(top(d, a, e), a), d, a, e, (2, 3, 5)) == oracle {
                        hits[k] += 1;
                    }
                }
            }
        }
    }
    let pick =
        (0..2).find(|&k| hits[k] == points).ok_or_else(|| format!("no candidate matches the oracle: {hits:?}"))?;
    let top = candidates[pick].1;
    let mut checked = 0;
    for d in 1..=3u64 {
        for a in 0..=3u64 {
            for e in (a + 1) * d..=10 {
                for h1 in 1..=5i64 {
                    for h2 in h1..=5i64 {
                        for h3 in 1..=5i64 {
                            let f = closed_form_poly(d as usize, h1, h2);
                            let g = UniPoly::monomial(e as usize, BigRat::from_integer(h3.into()));
                            let got = residue_uni::residue_poly(&f, &g, a as u32).map_err(err)?.value;
                            let want = closed_form(&binomial(top(d, a, e), a), d, a, e, (h1, h2, h3));
                            ensure(got == want, || format!("d={d} a={a} e={e} H=({h1},{h2},{h3}): {got} != {want}"))?;
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("C = {} ({}/{} oracle points), {checked} grid points exact", candidates[pick].0, hits[pick], points))
}

fn nonzero_lead(r: &mut rand_chacha::ChaCha8Rng, d: usize, h: i64) -> UniPoly {
    random::unipoly(r, d, h)
}

/// The recursion and the Laurent inversion agree.
fn recursion_vs_laurent() -> Outcome {
    let mut r = rng(2);
    let mut compared = 0;
    for _ in 0..1000 {
        let d = r.gen_range(1..=6);
        let f = nonzero_lead(&mut r, d, 10);
        let a = r.gen_range(0..=4u32);
        let lau = residue_uni::laurent_coeffs(&f, a, 13).map_err(err)?;
        for (l, c) in lau.iter().enumerate() {
            let j = l + (a as usize + 1) * d - 1;
            let rho = residue_uni::rho_monomial(&f, j, a).map_err(err)?;
            ensure(&rho == c, || format!("f={f} a={a} l={l}: rho {rho} != laurent {c}"))?;
            compared += 1;
        }
    }
    Ok(format!("1000 polynomials, {compared} coefficients equal"))
}

/// Univariate integrality and length certificates.
fn univariate_certificates() -> Outcome {
    let mut r = rng(3);
    let mut fails = 0;
    for _ in 0..10_000 {
        let d = r.gen_range(1..=5);
        let f = nonzero_lead(&mut r, d, 50);
        let e = r.gen_range(0..=12);
        let g = random::unipoly(&mut r, e, 50);
        let a = r.gen_range(0..=3u32);
        let v = residue_uni::residue_poly(&f, &g, a).map_err(err)?;
        if !certify::certify_residue_poly(&f, &g, a, &v.value).map_err(err)?.pass || !v.is_certified_integral() {
            fails += 1;
        }
        let j = r.gen_range(0..=12);
        let rho = residue_uni::rho_monomial(&f, j, a).map_err(err)?;
        if !certify::certify_monomial(&f, j, a, &rho).map_err(err)?.pass {
            fails += 1;
        }
    }
    let mut rational = 0;
    while rational < 1000 {
        let k = r.gen_range(1..=4);
        let f = nonzero_lead(&mut r, k, 50);
        let k = r.gen_range(1..=3);
        let f0 = nonzero_lead(&mut r, k, 50);
        let g = random::unipoly_upto(&mut r, 8, 50);
        let a = r.gen_range(0..=2u32);
        let Ok(v) = residue_uni::residue_rational(&f, &f0, &g, a) else {
            continue;
        };
        rational += 1;
        if !certify::certify_rational(&f, &f0, &g, a, &v.value).map_err(err)?.pass || !v.is_certified_integral() {
            fails += 1;
        }
    }
    ensure(fails == 0, || format!("{fails} certificate failures"))?;
    Ok("10000 residue-poly + 10000 monomial-residue + 1000 rational-residue certificates, 0 failures".into())
}

/// Separated certificates on a fixed grid, and the vanishing below the threshold.
fn separated_certificates() -> Outcome {
    let mut r = rng(4);
    let mut instances = 0;
    let mut zeros = 0;
    for n in 1..=3usize {
        for degs in ExponentVec::boxed(&vec![2; n]) {
            let degs: Vec<usize> = degs.as_slice().iter().map(|&k| k as usize + 1).collect();
            for alpha in ExponentVec::simplex(n, 3) {
                let sys = SeparatedSystem::new(degs.iter().map(|&d| random::unipoly(&mut r, d, 20)).collect()).unwrap();
                let e = r.gen_range(0..=9);
                let g = random::multipoly(&mut r, n, e, 20, 6);
                let v = residue_sep::residue_separated(&sys, &g, &alpha).map_err(err)?;
                let c = certify::certify_separated(&sys, &g, &alpha, &v.value).map_err(err)?;
                ensure(c.pass && v.is_certified_integral(), || format!("{sys:?} g={g} a={alpha}: {:?}", c.note))?;
                instances += 1;
                let t = residue_sep::jacobi_threshold(&sys.degrees(), &alpha, n);
                for e in 0..t.clamp(0, 10) as u64 {
                    let g = random::multipoly(&mut r, n, e, 20, 6);
                    let v = residue_sep::residue_separated(&sys, &g, &alpha).map_err(err)?;
                    ensure(v.value.is_zero(), || format!("deg {e} < {t} but residue {}", v.value))?;
                    zeros += 1;
                }
            }
        }
    }
    ensure(instances >= 500, || format!("only {instances} grid instances"))?;
    Ok(format!("{instances} grid instances certified, {zeros} below-threshold residues exactly 0"))
}

struct Sys {
    label: String,
    fs: Vec<MultiPoly>,
    separated: Option<SeparatedSystem>,
}

fn systems_n2() -> Vec<Sys> {
    let mut r = rng(5);
    let mut out = Vec::new();
    for i in 0..30 {
        let sys = simple_separated(&mut r, 2, 3, 5);
        out.push(Sys { label: format!("separated#{i}"), fs: sys.as_multi(), separated: Some(sys) });
    }
    for (i, degs) in [[1u64, 1], [1, 2], [2, 2]].iter().cycle().take(30).enumerate() {
        out.push(Sys { label: format!("dense{degs:?}#{i}"), fs: generic_system(&mut r, degs, 5), separated: None });
    }
    out
}

fn systems_n3() -> Vec<Sys> {
    let mut r = rng(6);
    let mut out = Vec::new();
    for degs in [[1u64, 1, 1], [1, 1, 2], [1, 2, 2], [2, 2, 2], [1, 2, 3], [1, 3, 3], [2, 2, 3], [2, 3, 3]] {
        // not pre-screened: the criterion itself requires elimination to succeed
        let fs = degs.iter().map(|&d| dense(&mut r, 3, d, 5)).collect();
        out.push(Sys { label: format!("dense{degs:?}"), fs, separated: None });
    }
    for i in 0..4 {
        let sys = if i == 0 {
            SeparatedSystem::new((0..3).map(|_| squarefree(&mut r, 3, 5)).collect()).unwrap()
        } else {
            simple_separated(&mut r, 3, 3, 5)
        };
        out.push(Sys { label: format!("separated{:?}#{i}", sys.degrees()), fs: sys.as_multi(), separated: Some(sys) });
    }
    out
}

/// Transformation-law pipeline on n = 2 against the numeric oracle and the
/// separated formula.
fn transformation_law(systems: &[Sys]) -> Outcome {
    let mut r = rng(55);
    let mut numeric = 0;
    let mut skipped = 0;
    let mut exact = 0;
    for s in systems {
        let t = Transform::forced(&s.fs).map_err(err)?;
        ensure(matches!(t, Transform::General { .. }), || {
            format!("{}: forced transform skipped elimination", s.label)
        })?;
        for _ in 0..2 {
            let k = r.gen_range(0..=3);
            let g = random::multipoly(&mut r, 2, k, 5, 5);
            let v = t.residue(&g, &ExponentVec::zeros(2)).map_err(err)?.value;
            match transform::numeric_local_sum_oracle(&s.fs, &g) {
                Ok(o) => {
                    ensure(o.agrees_with(&v, 1e-9), || format!("{}: g={g} exact {v} vs numeric {}", s.label, o.value))?;
                    numeric += 1;
                }
                Err(_) => skipped += 1,
            }
        }
        if let Some(sys) = &s.separated {
            for alpha in ExponentVec::simplex(2, 2) {
                let k = r.gen_range(0..=8);
                let g = random::multipoly(&mut r, 2, k, 5, 6);
                let got = t.residue(&g, &alpha).map_err(err)?.value;
                let want = residue_sep::residue_separated(sys, &g, &alpha).map_err(err)?.value;
                ensure(got == want, || format!("{}: a={alpha} g={g}: {got} != {want}", s.label))?;
                exact += 1;
            }
        }
    }
    ensure(numeric >= 50, || format!("only {numeric} numeric comparisons ({skipped} skipped)"))?;
    Ok(format!(
        "{} systems: {numeric} numeric matches at 1e-9 ({skipped} oracle skips), {exact} exact separated matches",
        systems.len()
    ))
}

/// Elimination witnesses: membership, degree box, numeric vanishing, height audit.
fn elimination(systems: &[&Sys]) -> Outcome {
    let mut witnesses = 0;
    let mut vanish = 0;
    let mut findings = Vec::new();
    for s in systems {
        let ws = eliminate::eliminate_all(&s.fs).map_err(|e| format!("{}: {e}", s.label))?;
        let phis: Vec<UniPoly> = ws.iter().map(|w| w.phi.clone()).collect();
        let one = MultiPoly::one(s.fs.len());
        let oracle = match &s.separated {
            Some(_) => transform::numeric_local_sum_oracle(&s.fs, &one).ok(),
            None => transform::numeric_local_sum_with_eliminants(&s.fs, &one, &phis).ok(),
        };
        for w in &ws {
            ensure(eliminate::verify_membership(w, &s.fs).map_err(err)?, || format!("{}: membership", s.label))?;
            ensure(eliminate::within_degree_box(w, &s.fs), || format!("{}: degree box", s.label))?;
            ensure(w.phi.degree().unwrap_or(0) as u64 <= w.degree_box, || format!("{}: deg phi > D", s.label))?;
            if let Some(o) = &oracle {
                for p in &o.points {
                    let z = p[w.var];
                    let val = w.phi.eval_complex(z).norm();
                    let scale = eval_scale(&w.phi, z);
                    ensure(val <= 1e-6 * scale, || format!("{}: |phi(xi)| = {val:e}, scale {scale:e}", s.label))?;
                    vanish += 1;
                }
            }
            let c = eliminate::certify_elimination(w, &s.fs).map_err(err)?;
            if !c.pass {
                findings.push(format!("{} x{}", s.label, w.var + 1));
            }
            witnesses += 1;
        }
    }
    ensure(findings.is_empty(), || format!("height audit findings: {findings:?}"))?;
    Ok(format!("{} systems, {witnesses} witnesses, {vanish} numeric vanishing checks, 0 audit findings", systems.len()))
}

/// Bergman–Weil expansion: reconstruction, n = 1 agreement, certificate.
fn weil_expansion() -> Outcome {
    let mut r = rng(7);
    let mut certs = 0;
    for _ in 0..1000 {
        let n = r.gen_range(1..=2);
        let sys = random::separated(&mut r, n, 3, 20);
        let k = r.gen_range(0..=8);
        let p = random::multipoly(&mut r, n, k, 20, 8);
        let w = trace_weil::weil_expand(&sys.as_multi(), &p).map_err(err)?;
        ensure(w.reconstruct() == p, || format!("{sys:?} p={p}: reconstruction differs"))?;
        if n == 1 {
            let pu = p.to_uni(0).unwrap();
            let fad = residue_uni::fadic_expansion(sys.poly(0), &pu).map_err(err)?;
            for (k, c) in fad.iter().enumerate() {
                let got =
                    w.coeffs.get(&ExponentVec::new(vec![k as u32])).cloned().unwrap_or_else(|| MultiPoly::zero(1));
                ensure(got == c.to_multi(1, 0), || format!("f-adic coefficient {k} differs for p={p}"))?;
            }
            ensure(w.coeffs.keys().all(|a| (a.get(0) as usize) < fad.len()), || "extra coefficients".into())?;
        }
        for (a, g) in &w.coeffs {
            let c = certify::certify_weil(&sys, &p, a, g).map_err(err)?;
            ensure(c.pass, || format!("{sys:?} p={p} a={a}: weil certificate fails"))?;
            certs += 1;
        }
    }
    Ok(format!("1000 expansions reconstructed, {certs} coefficient certificates"))
}

fn compose_affine(p: &MultiPoly, m: &[Vec<i64>], b: &[i64]) -> MultiPoly {
    let b: Vec<BigRat> = b.iter().map(|&x| BigRat::from_integer(x.into())).collect();
    p.substitute_affine(&to_rat_matrix(m), &b).unwrap()
}

/// Ideal invariance and affine-change invariance.
fn invariance() -> Outcome {
    let mut r = rng(8);
    for i in 0..500 {
        let n = r.gen_range(1..=2);
        let alpha = random::exponent(&mut r, n, 2);
        let k = r.gen_range(0..=8);
        let g = random::multipoly(&mut r, n, k, 10, 6);
        let (fs, base) = if n == 2 && i % 5 == 0 {
            let fs = generic_system(&mut r, &[1, 2], 5);
            let v = transform::residue_general(&fs, &g, &alpha).map_err(err)?.value;
            (fs, v)
        } else {
            let sys = random::separated(&mut r, n, 3, 10);
            let v = residue_sep::residue_separated(&sys, &g, &alpha).map_err(err)?.value;
            (sys.as_multi(), v)
        };
        let mut member = MultiPoly::zero(n);
        for (i, f) in fs.iter().enumerate() {
            let k = r.gen_range(0..=3);
            let a = random::multipoly(&mut r, n, k, 5, 4);
            member = &member + &(&a * &f.pow(alpha.get(i) + 1));
        }
        let shifted = transform::residue_general(&fs, &(&g + &member), &alpha).map_err(err)?.value;
        let alone = transform::residue_general(&fs, &member, &alpha).map_err(err)?.value;
        ensure(shifted == base && alone.is_zero(), || {
            format!("ideal invariance fails: {base} vs {shifted}, member {alone}")
        })?;
    }
    for _ in 0..500 {
        let n = r.gen_range(1..=2);
        let sys = random::separated(&mut r, n, 2, 10);
        let alpha = random::exponent(&mut r, n, 1);
        let k = r.gen_range(0..=6);
        let g = random::multipoly(&mut r, n, k, 10, 6);
        let m = unimodular(&mut r, n);
        let b: Vec<i64> = (0..n).map(|_| r.gen_range(-3..=3)).collect();
        let det = det_i64(&m);
        let fs: Vec<MultiPoly> = sys.as_multi().iter().map(|f| compose_affine(f, &m, &b)).collect();
        let gt = compose_affine(&g, &m, &b).scale(&BigRat::from_integer(det.into()));
        let want = residue_sep::residue_separated(&sys, &g, &alpha).map_err(err)?.value;
        let got = transform::residue_general(&fs, &gt, &alpha).map_err(err)?.value;
        ensure(got == want, || format!("affine invariance fails for M={m:?} b={b:?}: {got} != {want}"))?;
    }
    Ok("500 ideal-invariance + 500 affine-invariance instances exact".into())
}

fn main() {
    let n2 = systems_n2();
    let criteria: Vec<(u32, &str, Duration, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, "closed-form example", Duration::from_secs(10), Box::new(closed_form_example)),
        (2, "recursion vs Laurent", Duration::from_secs(30), Box::new(recursion_vs_laurent)),
        (3, "univariate certificates", Duration::from_secs(120), Box::new(univariate_certificates)),
        (4, "separated certificates and vanishing", Duration::from_secs(60), Box::new(separated_certificates)),
        (5, "transformation law", Duration::from_secs(60), Box::new(|| transformation_law(&n2))),
        (
            6,
            "elimination",
            Duration::from_secs(120),
            Box::new(|| {
                let n3 = systems_n3();
                elimination(&n2.iter().chain(n3.iter()).collect::<Vec<_>>())
            }),
        ),
        (7, "Bergman-Weil expansion", Duration::from_secs(60), Box::new(weil_expansion)),
        (8, "invariance", Duration::from_secs(120), Box::new(invariance)),
    ];
    let only: Option<u32> = std::env::args().nth(1).and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let start = Instant::now();
        let res = run();
        let took = start.elapsed();
        let (ok, detail) = match res {
            Ok(d) if took <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {id} {name}: {detail} [{:.2}s / {}s]",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
