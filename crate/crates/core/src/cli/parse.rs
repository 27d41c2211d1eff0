//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := int | var | '(' expr ')'
//! var    := 'x' nat | [a-z]
//! ```
//!
//! Variables are either all single letters or all `x<k>`; mixing the two is an error.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::arith::{BigRat, ExponentVec, MultiPoly, UniPoly};
use crate::error::{Error, Result};

pub const MAX_EXPONENT: u64 = 1_000_000;
/// Largest degree a non-monomial power may expand to.
const MAX_EXPANDED_DEGREE: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarMode {
    /// Letters in alphabetical order, or `x<k>` by subscript.
    Auto,
    /// Letters in the given order.
    Letters(Vec<char>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Var {
    Letter(char),
    Indexed(u32),
}

#[derive(Clone, Debug)]
enum Ast {
    Int(BigInt),
    Var(Var),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn describe(&self) -> String {
        match self.src.get(self.pos) {
            None => "end of input".to_string(),
            Some(c) => format!("'{}'", *c as char),
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            Ast::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = Ast::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = Ast::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = Ast::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Ast> {
        let base = self.base()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let Some(d) = self.digits() else {
            return Err(err(
                at,
                format!("expected a nonnegative integer exponent after '^', found {}", self.describe()),
            ));
        };
        let k: u64 = d.parse().unwrap_or(u64::MAX);
        if k > MAX_EXPONENT {
            return Err(err(at, format!("exponent {d} exceeds {MAX_EXPONENT}")));
        }
        Ok(Ast::Pow(Box::new(base), k as u32))
    }

    fn base(&mut self) -> Result<Ast> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(err(self.pos, format!("expected ')', found {}", self.describe())));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                Ok(Ast::Int(d.parse().unwrap()))
            }
            Some(b'x') if self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit) => {
                self.pos += 1;
                let d = self.digits().unwrap();
                match d.parse::<u32>() {
                    Ok(k) if k >= 1 => Ok(Ast::Var(Var::Indexed(k))),
                    _ => Err(err(at, format!("variable subscript must be between 1 and {}", u32::MAX))),
                }
            }
            Some(c) if c.is_ascii_lowercase() => {
                self.pos += 1;
                Ok(Ast::Var(Var::Letter(c as char)))
            }
            _ => Err(err(at, format!("expected a number, variable or '(', found {}", self.describe()))),
        }
    }
}

fn parse_ast(s: &str) -> Result<Ast> {
    if s.trim().is_empty() {
        return Err(err(0, "empty expression"));
    }
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let ast = p.expr()?;
    if p.peek().is_some() {
        return Err(err(p.pos, format!("unexpected {}", p.describe())));
    }
    Ok(ast)
}

fn collect_vars(a: &Ast, out: &mut BTreeSet<Var>) {
    match a {
        Ast::Int(_) => {}
        Ast::Var(v) => {
            out.insert(v.clone());
        }
        Ast::Neg(x) | Ast::Pow(x, _) => collect_vars(x, out),
        Ast::Add(x, y) | Ast::Sub(x, y) | Ast::Mul(x, y) => {
            collect_vars(x, out);
            collect_vars(y, out);
        }
    }
}

fn eval(a: &Ast, n: usize, index: &dyn Fn(&Var) -> usize) -> Result<MultiPoly> {
    Ok(match a {
        Ast::Int(c) => MultiPoly::constant(n, BigRat::from_integer(c.clone())),
        Ast::Var(v) => MultiPoly::var(n, index(v)),
        Ast::Neg(x) => -eval(x, n, index)?,
        Ast::Add(x, y) => &eval(x, n, index)? + &eval(y, n, index)?,
        Ast::Sub(x, y) => &eval(x, n, index)? - &eval(y, n, index)?,
        Ast::Mul(x, y) => &eval(x, n, index)? * &eval(y, n, index)?,
        Ast::Pow(x, k) => {
            let b = eval(x, n, index)?;
            if b.num_terms() > 1 && b.degree().unwrap_or(0) * *k as u64 > MAX_EXPANDED_DEGREE {
                return Err(Error::Unsupported(format!("expansion degree exceeds {MAX_EXPANDED_DEGREE}")));
            }
            b.pow(*k)
        }
    })
}

/// Polynomials over a shared variable set, with the names used for printing.
#[derive(Clone, Debug, PartialEq)]
pub struct Parsed {
    pub polys: Vec<MultiPoly>,
    pub names: Vec<String>,
}

/// Parses several expressions over one variable set of at least `min_vars` variables.
pub fn parse_many(srcs: &[&str], mode: &VarMode, min_vars: usize) -> Result<Parsed> {
    let asts: Vec<Ast> = srcs
        .iter()
        .enumerate()
        .map(|(k, s)| {
            parse_ast(s).map_err(|e| match e {
                Error::Parse { pos, msg } if srcs.len() > 1 => {
                    Error::Parse { pos, msg: format!("{msg} (expression {})", k + 1) }
                }
                e => e,
            })
        })
        .collect::<Result<_>>()?;
    let mut vars = BTreeSet::new();
    for a in &asts {
        collect_vars(a, &mut vars);
    }
    let letters: Vec<char> = vars.iter().filter_map(|v| if let Var::Letter(c) = v { Some(*c) } else { None }).collect();
    let max_sub = vars.iter().filter_map(|v| if let Var::Indexed(k) = v { Some(*k as usize) } else { None }).max();

    let order: Vec<char> = match (mode, max_sub) {
        (_, Some(_)) if !letters.is_empty() => {
            return Err(err(0, "cannot mix single-letter variables with x<k> variables"));
        }
        (VarMode::Letters(decl), Some(_)) if !decl.is_empty() => {
            return Err(err(0, "x<k> variables used with a declared letter list"));
        }
        (_, Some(_)) => Vec::new(),
        (VarMode::Auto, None) => letters,
        (VarMode::Letters(decl), None) => {
            if let Some(c) = letters.iter().find(|c| !decl.contains(c)) {
                return Err(err(0, format!("undeclared variable '{c}'")));
            }
            decl.clone()
        }
    };

    let n = order.len().max(max_sub.unwrap_or(0)).max(min_vars).max(1);
    let names: Vec<String> = if max_sub.is_some() {
        (1..=n).map(|i| format!("x{i}")).collect()
    } else {
        let mut names: Vec<String> = order.iter().map(|c| c.to_string()).collect();
        let mut spare = ('a'..='z').filter(|c| !order.contains(c));
        while names.len() < n {
            names.push(spare.next().map(String::from).unwrap_or_else(|| format!("x{}", names.len() + 1)));
        }
        names
    };
    let index = |v: &Var| match v {
        Var::Letter(c) => order.iter().position(|o| o == c).unwrap(),
        Var::Indexed(k) => *k as usize - 1,
    };
    let polys = asts.iter().map(|a| eval(a, n, &index)).collect::<Result<_>>()?;
    Ok(Parsed { polys, names })
}

pub fn parse(s: &str, mode: &VarMode) -> Result<MultiPoly> {
    Ok(parse_many(&[s], mode, 1)?.polys.remove(0))
}

/// Parses univariate expressions; any single variable name is accepted.
pub fn parse_uni_many(srcs: &[&str]) -> Result<Vec<UniPoly>> {
    let parsed = parse_many(srcs, &VarMode::Auto, 1)?;
    if parsed.names.len() != 1 {
        return Err(Error::Dimension { expected: 1, found: parsed.names.len() });
    }
    Ok(parsed.polys.iter().map(|p| p.to_uni(0).expect("one variable")).collect())
}

pub fn parse_uni(s: &str) -> Result<UniPoly> {
    Ok(parse_uni_many(&[s])?.remove(0))
}

/// `"a1,a2,…"` as an exponent vector of length `n`.
pub fn parse_alpha(s: &str, n: usize) -> Result<ExponentVec> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| err(0, format!("bad exponent entry '{}'", t.trim()))))
        .collect::<Result<_>>()?;
    if parts.len() != n {
        return Err(Error::Dimension { expected: n, found: parts.len() });
    }
    Ok(ExponentVec::new(parts))
}

/// Splits a `;`-separated system.
pub fn split_system(s: &str) -> Vec<&str> {
    s.split(';').map(str::trim).filter(|t| !t.is_empty()).collect()
}

/// Canonical text in the parser's own grammar (integer coefficients).
pub fn print(p: &MultiPoly, names: &[String]) -> String {
    p.to_string_with(names)
}

/// `true` when every coefficient is an integer, so [`print`] output re-parses.
pub fn printable(p: &MultiPoly) -> bool {
    p.terms().all(|(_, c)| c.is_integer())
}
