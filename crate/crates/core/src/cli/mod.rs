//! Command-line front end: argument parsing, dispatch and JSON records.
//!
//! Exit codes: 0 success, 2 parse or usage error, 3 domain error (not coprime,
//! not zero-dimensional, …), 4 a hard certificate failed.

pub mod parse;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{BigRat, ExponentVec, MultiPoly, UniPoly};
use crate::certify::{self, BoundCertificate, TheoremId};
use crate::eliminate::{self, EliminationWitness};
use crate::error::{Error, Result};
use crate::residue_sep::{self, SeparatedSystem};
use crate::residue_uni;
use crate::trace_weil;
use crate::transform::{self, Transform};
use parse::{parse_alpha, parse_many, split_system, Parsed, VarMode};

/// Environment variable naming a directory for audit findings and slack tables.
pub const AUDIT_DIR_ENV: &str = "RESIDUES_AUDIT_DIR";

#[derive(Parser, Debug)]
#[command(name = "residues", version, about = "Exact global residues over Q, with certificates")]
pub struct Cli {
    /// Indented JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Report wall-clock time in `timing_ms` (otherwise null, so output is reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Declared variable letters, in order, e.g. `x,y`.
    #[arg(long, global = true)]
    pub vars: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Res[g dx / f^(alpha+1)] for univariate f, g.
    Residue1 {
        #[arg(short = 'f')]
        f: String,
        #[arg(short = 'g')]
        g: String,
        #[arg(long, default_value_t = 0)]
        alpha: u32,
    },
    /// Res[(g/f0) dx / f^(alpha+1)] with f, f0 coprime.
    ResidueRational {
        #[arg(short = 'f')]
        f: String,
        #[arg(long)]
        f0: String,
        #[arg(short = 'g')]
        g: String,
        #[arg(long, default_value_t = 0)]
        alpha: u32,
    },
    /// Residue against a separated system `f1(x1);…;fn(xn)`.
    ResidueSep {
        #[arg(long)]
        system: String,
        #[arg(short = 'g')]
        g: String,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Residue against any zero-dimensional system, through elimination.
    ResidueGeneral {
        #[arg(long)]
        system: String,
        #[arg(short = 'g')]
        g: String,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Coefficients of 1/f^(alpha+1) at infinity.
    Laurent {
        #[arg(short = 'f')]
        f: String,
        #[arg(long, default_value_t = 0)]
        alpha: u32,
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
    /// p = sum p_a f^a with deg p_a < deg f.
    Fadic {
        #[arg(short = 'f')]
        f: String,
        #[arg(short = 'p')]
        p: String,
    },
    /// sigma = p0 f0 + p1 f1 from the Sylvester matrix.
    Bezout {
        #[arg(long)]
        f0: String,
        #[arg(long)]
        f1: String,
    },
    /// Eliminant phi(x_l) in the ideal, with cofactors.
    Eliminate {
        #[arg(long)]
        system: String,
        /// 1-based variable index.
        #[arg(long)]
        var: usize,
    },
    /// p = sum g_a f^a from divided-difference kernels.
    Weil {
        #[arg(long)]
        system: String,
        #[arg(short = 'p')]
        p: String,
    },
    /// Trace polynomial of g over a separated system.
    Trace {
        #[arg(long)]
        system: String,
        #[arg(short = 'g')]
        g: String,
    },
    /// Certify random instances of one theorem.
    Audit {
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = 20)]
        max_height: i64,
    },
    /// Runs the built-in worked examples.
    Selftest,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueRecord {
    pub num: String,
    pub den: String,
}

impl From<&BigRat> for ValueRecord {
    fn from(v: &BigRat) -> Self {
        ValueRecord { num: v.numer().to_string(), den: v.denom().to_string() }
    }
}

impl ValueRecord {
    pub fn to_rat(&self) -> Option<BigRat> {
        Some(BigRat::new(self.num.parse::<BigInt>().ok()?, self.den.parse::<BigInt>().ok()?))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorRecord {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResultRecord {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub value: Option<ValueRecord>,
    pub certificate: Option<BoundCertificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<BoundCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
    pub timing_ms: Option<f64>,
}

impl ResultRecord {
    fn new(command: &str) -> Self {
        ResultRecord {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            value: None,
            certificate: None,
            certificates: Vec::new(),
            output: None,
            error: None,
            timing_ms: None,
        }
    }

    fn input(&mut self, k: &str, v: impl Into<String>) {
        self.inputs.insert(k.to_string(), v.into());
    }

    fn hard_failure(&self) -> bool {
        self.certificate.iter().chain(&self.certificates).any(|c| c.hard && !c.pass)
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Dimension { .. } => "dimension",
        Error::DivisionByZero => "division-by-zero",
        Error::Singular => "singular",
        Error::InvalidSystem(_) => "invalid-system",
        Error::InvalidExponent(_) => "invalid-exponent",
        Error::NotCoprime => "not-coprime",
        Error::NotZeroDimensional { .. } => "not-zero-dimensional",
        Error::UndefinedHeight => "undefined-height",
        Error::NumericFailure { .. } => "numeric-failure",
        Error::InvalidTransform(_) => "invalid-transform",
        Error::OracleUnavailable(_) => "oracle-unavailable",
        Error::Parse { .. } => "parse",
        Error::Unsupported(_) => "unsupported",
        Error::Internal(_) => "internal",
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Unsupported(_) => 2,
        _ => 3,
    }
}

/// Exit code plus the text for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let name = command_name(&cli.command);
    let mut rec = ResultRecord::new(name);
    let result = VarMode::from_flag(cli.vars.as_deref()).and_then(|mode| dispatch(&cli.command, &mode, &mut rec));
    let mut stderr = String::new();
    let code = match result {
        Ok(()) if rec.hard_failure() => 4,
        Ok(()) => 0,
        Err(RunError::Hard) => 4,
        Err(RunError::Lib(e)) => {
            stderr = format!("error: {e}\n");
            rec.error = Some(ErrorRecord { kind: error_kind(&e), message: e.to_string() });
            exit_code(&e)
        }
    };
    if cli.timing {
        rec.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let mut stdout = if cli.pretty {
        serde_json::to_string_pretty(&rec).expect("serializable")
    } else {
        serde_json::to_string(&rec).expect("serializable")
    };
    stdout.push('\n');
    Outcome { code, stdout, stderr }
}

impl VarMode {
    fn from_flag(flag: Option<&str>) -> std::result::Result<VarMode, RunError> {
        let Some(s) = flag else {
            return Ok(VarMode::Auto);
        };
        let mut letters = Vec::new();
        for t in s.split(',').map(str::trim) {
            let mut cs = t.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) if c.is_ascii_lowercase() && !letters.contains(&c) => letters.push(c),
                _ => return Err(Error::Parse { pos: 0, msg: format!("bad --vars entry '{t}'") }.into()),
            }
        }
        Ok(VarMode::Letters(letters))
    }
}

enum RunError {
    Lib(Error),
    /// Audit with hard-certificate findings; the record is already filled in.
    Hard,
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Lib(e)
    }
}

type Run = std::result::Result<(), RunError>;

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Residue1 { .. } => "residue1",
        Command::ResidueRational { .. } => "residue-rational",
        Command::ResidueSep { .. } => "residue-sep",
        Command::ResidueGeneral { .. } => "residue-general",
        Command::Laurent { .. } => "laurent",
        Command::Fadic { .. } => "fadic",
        Command::Bezout { .. } => "bezout",
        Command::Eliminate { .. } => "eliminate",
        Command::Weil { .. } => "weil",
        Command::Trace { .. } => "trace",
        Command::Audit { .. } => "audit",
        Command::Selftest => "selftest",
    }
}

/// Univariate arguments sharing one variable name.
fn uni_args(srcs: &[&str], mode: &VarMode) -> Result<(Vec<UniPoly>, String)> {
    let parsed = parse_many(srcs, mode, 1)?;
    if parsed.names.len() != 1 {
        return Err(Error::Dimension { expected: 1, found: parsed.names.len() });
    }
    let polys = parsed.polys.iter().map(|p| p.to_uni(0).expect("one variable")).collect();
    Ok((polys, parsed.names[0].clone()))
}

fn show_uni(p: &UniPoly, name: &str) -> String {
    p.to_multi(1, 0).to_string_with(&[name.to_string()])
}

/// The system and the extra expressions after it, over `n = #system` variables.
fn system_args(system: &str, extra: &[&str], mode: &VarMode) -> Result<(Vec<MultiPoly>, Vec<MultiPoly>, Vec<String>)> {
    let sys = split_system(system);
    if sys.is_empty() {
        return Err(Error::InvalidSystem("empty system".into()));
    }
    let n = sys.len();
    let mut all = sys.clone();
    all.extend_from_slice(extra);
    let Parsed { mut polys, names } = parse_many(&all, mode, n)?;
    if names.len() != n {
        return Err(Error::Dimension { expected: n, found: names.len() });
    }
    let rest = polys.split_off(n);
    Ok((polys, rest, names))
}

fn alpha_arg(s: Option<&str>, n: usize) -> Result<ExponentVec> {
    match s {
        Some(s) => parse_alpha(s, n),
        None => Ok(ExponentVec::zeros(n)),
    }
}

fn show_system(fs: &[MultiPoly], names: &[String]) -> String {
    fs.iter().map(|f| f.to_string_with(names)).collect::<Vec<_>>().join("; ")
}

fn dispatch(cmd: &Command, mode: &VarMode, rec: &mut ResultRecord) -> Run {
    match cmd {
        Command::Residue1 { f, g, alpha } => {
            let (ps, x) = uni_args(&[f, g], mode)?;
            let (f, g) = (&ps[0], &ps[1]);
            rec.input("f", show_uni(f, &x));
            rec.input("g", show_uni(g, &x));
            rec.input("alpha", alpha.to_string());
            let r = residue_uni::residue_poly(f, g, *alpha)?;
            rec.value = Some((&r.value).into());
            rec.certificate = Some(certify::certify_residue_poly(f, g, *alpha, &r.value)?);
        }
        Command::ResidueRational { f, f0, g, alpha } => {
            let (ps, x) = uni_args(&[f, f0, g], mode)?;
            let (f, f0, g) = (&ps[0], &ps[1], &ps[2]);
            rec.input("f", show_uni(f, &x));
            rec.input("f0", show_uni(f0, &x));
            rec.input("g", show_uni(g, &x));
            rec.input("alpha", alpha.to_string());
            let r = residue_uni::residue_rational(f, f0, g, *alpha)?;
            rec.value = Some((&r.value).into());
            rec.certificate = Some(certify::certify_rational(f, f0, g, *alpha, &r.value)?);
        }
        Command::ResidueSep { system, g, alpha } => {
            let (fs, rest, names) = system_args(system, &[g], mode)?;
            let sys = SeparatedSystem::from_multi(&fs)?;
            let alpha = alpha_arg(alpha.as_deref(), fs.len())?;
            rec.input("system", show_system(&fs, &names));
            rec.input("g", rest[0].to_string_with(&names));
            rec.input("alpha", alpha.to_string());
            let r = residue_sep::residue_separated(&sys, &rest[0], &alpha)?;
            rec.value = Some((&r.value).into());
            rec.certificate = Some(certify::certify_separated(&sys, &rest[0], &alpha, &r.value)?);
        }
        Command::ResidueGeneral { system, g, alpha } => {
            let (fs, rest, names) = system_args(system, &[g], mode)?;
            let g = &rest[0];
            let alpha = alpha_arg(alpha.as_deref(), fs.len())?;
            rec.input("system", show_system(&fs, &names));
            rec.input("g", g.to_string_with(&names));
            rec.input("alpha", alpha.to_string());
            let t = Transform::new(&fs)?;
            let r = t.residue(g, &alpha)?;
            rec.value = Some((&r.value).into());
            match &t {
                Transform::Separated(sys) => {
                    rec.output = Some(json!({ "path": "separated" }));
                    rec.certificate = Some(certify::certify_separated(sys, g, &alpha, &r.value)?);
                }
                Transform::General { data, target } => {
                    let n = fs.len();
                    let phis: Vec<String> =
                        data.phis.iter().enumerate().map(|(l, p)| p.to_multi(n, l).to_string_with(&names)).collect();
                    rec.output =
                        Some(json!({ "path": "general", "eliminants": phis, "empty_fiber": target.is_none() }));
                    if let Some(target) = target {
                        let gm = &(g * &transform::build_transform_multiplier(data, &alpha)?);
                        let s = ExponentVec::new(vec![alpha.total() as u32; n]);
                        rec.certificate = Some(certify::certify_separated(target, gm, &s, &r.value)?);
                    }
                    for (l, (phi, row)) in data.phis.iter().zip(&data.matrix).enumerate() {
                        let w = EliminationWitness {
                            var: l,
                            phi: phi.clone(),
                            cofactors: row.clone(),
                            clearing_factor: phi.leading_int(),
                            degree_box: fs.iter().map(|f| f.degree().unwrap_or(0)).product(),
                        };
                        rec.certificates.push(certify::certify_elimination(&w, &fs)?);
                    }
                }
            }
        }
        Command::Laurent { f, alpha, count } => {
            let (ps, x) = uni_args(&[f], mode)?;
            let f = &ps[0];
            rec.input("f", show_uni(f, &x));
            rec.input("alpha", alpha.to_string());
            rec.input("count", count.to_string());
            let cs = residue_uni::laurent_coeffs(f, *alpha, *count)?;
            let values: Vec<ValueRecord> = cs.iter().map(ValueRecord::from).collect();
            rec.output = Some(json!({ "coefficients": values }));
            for (l, c) in cs.iter().enumerate() {
                rec.certificates.push(certify::certify_laurent(f, *alpha, l, c)?);
            }
        }
        Command::Fadic { f, p } => {
            let (ps, x) = uni_args(&[f, p], mode)?;
            let (f, p) = (&ps[0], &ps[1]);
            rec.input("f", show_uni(f, &x));
            rec.input("p", show_uni(p, &x));
            let e = residue_uni::fadic_expansion(f, p)?;
            let shown: Vec<String> = e.iter().map(|c| show_uni(c, &x)).collect();
            rec.output = Some(json!({ "coefficients": shown }));
            for (a, c) in e.iter().enumerate() {
                rec.certificates.push(certify::certify_fadic(f, p, a as u32, c)?);
            }
        }
        Command::Bezout { f0, f1 } => {
            let (ps, x) = uni_args(&[f0, f1], mode)?;
            let (f0, f1) = (&ps[0], &ps[1]);
            rec.input("f0", show_uni(f0, &x));
            rec.input("f1", show_uni(f1, &x));
            let w = residue_uni::sylvester_bezout(f0, f1)?;
            rec.value = Some((&BigRat::from_integer(w.sigma.clone())).into());
            rec.output = Some(json!({ "p0": show_uni(&w.p0, &x), "p1": show_uni(&w.p1, &x) }));
            rec.certificate = Some(certify::certify_bezout(f0, f1, &w)?);
        }
        Command::Eliminate { system, var } => {
            let (fs, _, names) = system_args(system, &[], mode)?;
            let n = fs.len();
            if *var == 0 || *var > n {
                return Err(Error::Dimension { expected: n, found: *var }.into());
            }
            rec.input("system", show_system(&fs, &names));
            rec.input("var", names[var - 1].clone());
            let w = eliminate::eliminate_variable(&fs, var - 1)?;
            let cof: Vec<String> = w.cofactors.iter().map(|a| a.to_string_with(&names)).collect();
            rec.output = Some(json!({
                "phi": w.phi_multi().to_string_with(&names),
                "cofactors": cof,
                "degree_box": w.degree_box,
                "membership": eliminate::verify_membership(&w, &fs)?,
            }));
            rec.certificate = Some(certify::certify_elimination(&w, &fs)?);
        }
        Command::Weil { system, p } => {
            let (fs, rest, names) = system_args(system, &[p], mode)?;
            let p = &rest[0];
            rec.input("system", show_system(&fs, &names));
            rec.input("p", p.to_string_with(&names));
            let w = trace_weil::weil_expand(&fs, p)?;
            let coeffs: BTreeMap<String, String> =
                w.coeffs.iter().map(|(a, g)| (a.to_string(), g.to_string_with(&names))).collect();
            let mut out = json!({
                "coefficients": coeffs,
                "general_path": w.general_path,
                "reconstructs": w.reconstruct() == *p,
            });
            if w.general_path {
                out["note"] = json!(trace_weil::PROPERNESS_NOTE);
            } else {
                let sys = SeparatedSystem::from_multi(&fs)?;
                for (a, g) in &w.coeffs {
                    rec.certificates.push(certify::certify_weil(&sys, p, a, g)?);
                }
            }
            rec.output = Some(out);
        }
        Command::Trace { system, g } => {
            let (fs, rest, names) = system_args(system, &[g], mode)?;
            let sys = SeparatedSystem::from_multi(&fs)?;
            rec.input("system", show_system(&fs, &names));
            rec.input("g", rest[0].to_string_with(&names));
            let t = trace_weil::trace_polynomial(&sys, &rest[0])?;
            rec.output = Some(json!({ "trace": t.to_string_with(&names) }));
        }
        Command::Audit { theorem, samples, seed, max_degree, max_height } => {
            let id: TheoremId = theorem.parse()?;
            rec.input("theorem", id.as_str());
            rec.input("samples", samples.to_string());
            rec.input("seed", seed.to_string());
            rec.input("max_degree", max_degree.to_string());
            rec.input("max_height", max_height.to_string());
            let report = certify::audit(id, *samples, *seed, *max_degree, *max_height)?;
            let mut out = serde_json::to_value(&report).expect("serializable");
            if let Some(dir) = std::env::var_os(AUDIT_DIR_ENV) {
                let files = write_audit_files(&PathBuf::from(dir), &report)
                    .map_err(|e| Error::Internal(format!("writing audit files: {e}")))?;
                out["files"] = json!(files);
            }
            rec.output = Some(out);
            if report.hard && !report.findings.is_empty() {
                return Err(RunError::Hard);
            }
        }
        Command::Selftest => {
            let checks = selftest();
            let failed = checks.iter().filter(|c| !c.pass).count();
            rec.output = Some(json!({ "checks": checks, "failed": failed }));
            if failed > 0 {
                return Err(RunError::Hard);
            }
        }
    }
    Ok(())
}

/// Findings as JSON and per-sample slack as CSV, named by theorem and seed.
fn write_audit_files(dir: &std::path::Path, report: &certify::AuditReport) -> std::io::Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let stem = format!("{}-seed{}", report.theorem, report.seed);
    let findings = dir.join(format!("findings-{stem}.json"));
    std::fs::write(&findings, serde_json::to_string_pretty(&report.findings).expect("serializable"))?;
    let mut csv = String::from("index,slack\n");
    for (i, s) in &report.slack_rows {
        csv.push_str(&format!("{i},{s}\n"));
    }
    let slack = dir.join(format!("slack-{stem}.csv"));
    std::fs::write(&slack, csv)?;
    Ok(vec![findings.display().to_string(), slack.display().to_string()])
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<bool>) -> Check {
    match f() {
        Ok(pass) => Check { name, pass, detail: None },
        Err(e) => Check { name, pass: false, detail: Some(e.to_string()) },
    }
}

fn q(n: i64, d: i64) -> BigRat {
    BigRat::new(n.into(), d.into())
}

/// Worked examples with known answers.
pub fn selftest() -> Vec<Check> {
    let u = UniPoly::from_ints;
    let mp = MultiPoly::from_int_terms;
    vec![
        check("monomial x^3 over x^2-1", || {
            Ok(residue_uni::residue_poly(&u(&[-1, 0, 1]), &u(&[0, 0, 0, 1]), 0)?.value == q(1, 1))
        }),
        check("monomial x^j over x^d is the Kronecker delta", || {
            Ok((0..6).all(|j| residue_uni::rho_monomial(&u(&[0, 0, 0, 1]), j, 0).unwrap() == q((j == 2) as i64, 1)))
        }),
        check("geometric Laurent series of 1/(x-1)", || {
            Ok(residue_uni::laurent_coeffs(&u(&[-1, 1]), 0, 6)?.iter().all(|c| *c == q(1, 1)))
        }),
        check("f-adic digits of x^3+x in base x^2", || {
            Ok(residue_uni::fadic_expansion(&u(&[0, 0, 1]), &u(&[0, 1, 0, 1]))? == vec![UniPoly::x(), UniPoly::x()])
        }),
        check("Bezout identity for x, x+1", || {
            let w = residue_uni::sylvester_bezout(&u(&[0, 1]), &u(&[1, 1]))?;
            Ok(&(&w.p0 * &u(&[0, 1])) + &(&w.p1 * &u(&[1, 1])) == UniPoly::constant(BigRat::from_integer(w.sigma)))
        }),
        check("rational residue of dx/(x(x-1)) against x-1", || {
            Ok(residue_uni::residue_rational(&u(&[-1, 1]), &u(&[0, 1]), &u(&[1]), 0)?.value == q(1, 1))
        }),
        check("separated residue of x1 x2^2 over (x1^2, x2^3)", || {
            let sys = SeparatedSystem::new(vec![u(&[0, 0, 1]), u(&[0, 0, 0, 1])])?;
            let g = mp(2, &[(&[1, 2], 3)]);
            Ok(residue_sep::residue_separated(&sys, &g, &ExponentVec::zeros(2))?.value == q(3, 1))
        }),
        check("general residue of dx over x1+x2, x1-x2", || {
            let fs = vec![mp(2, &[(&[1, 0], 1), (&[0, 1], 1)]), mp(2, &[(&[1, 0], 1), (&[0, 1], -1)])];
            Ok(transform::residue_general(&fs, &MultiPoly::one(2), &ExponentVec::zeros(2))?.value == q(-1, 2))
        }),
        check("circle and line: x1 over the two zeros", || {
            let fs = vec![
                mp(2, &[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -5)]),
                mp(2, &[(&[1, 0], 1), (&[0, 1], -1), (&[0, 0], -1)]),
            ];
            let exact = transform::residue_general(&fs, &MultiPoly::var(2, 0), &ExponentVec::zeros(2))?.value;
            Ok(transform::numeric_local_sum_oracle(&fs, &MultiPoly::var(2, 0))?.agrees_with(&exact, 1e-9))
        }),
        check("eliminant of the circle and line", || {
            let fs = vec![
                mp(2, &[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -5)]),
                mp(2, &[(&[1, 0], 1), (&[0, 1], -1), (&[0, 0], -1)]),
            ];
            let w = eliminate::eliminate_variable(&fs, 0)?;
            Ok(eliminate::verify_membership(&w, &fs)? && w.phi == u(&[-4, -2, 2]))
        }),
        check("Weil expansion reconstructs", || {
            let fs = vec![mp(2, &[(&[2, 0], 2), (&[0, 0], -1)]), mp(2, &[(&[0, 3], 1), (&[0, 1], 1)])];
            let p = mp(2, &[(&[3, 4], 1), (&[1, 1], -2), (&[0, 0], 5)]);
            Ok(trace_weil::weil_expand(&fs, &p)?.reconstruct() == p)
        }),
        check("audit batch of residue-poly certificates", || {
            Ok(certify::audit(TheoremId::ResiduePoly, 100, 7, 4, 20)?.findings.is_empty())
        }),
    ]
}
