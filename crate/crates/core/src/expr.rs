//! A small expression language over both word algebras and the
//! evaluators, used by the command-line tool.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | atom
//! atom   := number ['/' number] | 'hbar' | 'H' | 'a' | 'b' | 'x' | 'y'
//!         | ('g' | 'e' | 'E' | 'z') '[' ints ']'
//!         | name '(' args ')' | '(' expr ')'
//! ```
//!
//! `*` is concatenation between words and scaling against numbers.
//! Offsets in parse errors are 1-based byte positions.

use std::fmt;

use num_traits::{One, Zero};

use crate::classical::{self, ClassicalPoly, Mode};
use crate::coeffring::{HPoly, Rational};
use crate::error::{Error, Result};
use crate::eval::{self, QContext, Value};
use crate::freealg::{Index, NCPoly};
use crate::qops;

/// A value of the expression language.
#[derive(Clone, Debug, PartialEq)]
pub enum Val {
    /// A rational scalar, not yet committed to either algebra.
    Scalar(Rational),
    /// An element of `ℌ`.
    Q(NCPoly),
    /// An element of the classical algebra `𝔥`.
    C(ClassicalPoly),
    /// A number produced by an evaluator.
    Num(Value),
    /// A product selector (`star` or `sh`).
    Mode(Mode),
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Scalar(r) => write!(f, "{r}"),
            Val::Q(p) => write!(f, "{p}"),
            Val::C(p) => write!(f, "{p}"),
            Val::Num(v) => write!(f, "{v}"),
            Val::Mode(m) => write!(f, "{m}"),
        }
    }
}

impl Val {
    fn kind(&self) -> &'static str {
        match self {
            Val::Scalar(_) => "scalar",
            Val::Q(_) => "q-word polynomial",
            Val::C(_) => "classical polynomial",
            Val::Num(_) => "number",
            Val::Mode(_) => "mode",
        }
    }

    fn into_q(self) -> Result<NCPoly> {
        match self {
            Val::Q(p) => Ok(p),
            Val::Scalar(r) => Ok(NCPoly::constant(HPoly::constant(r))),
            other => Err(Error::Type(format!("expected a q-word polynomial, got a {}", other.kind()))),
        }
    }

    fn into_c(self) -> Result<ClassicalPoly> {
        match self {
            Val::C(p) => Ok(p),
            Val::Scalar(r) => Ok(ClassicalPoly::one().scale(&r)),
            other => Err(Error::Type(format!("expected a classical polynomial, got a {}", other.kind()))),
        }
    }
}

/// Evaluation settings: the `q` context and the default truncation `M`.
#[derive(Clone, Debug)]
pub struct Env {
    pub ctx: QContext,
    pub m: usize,
}

impl Env {
    pub fn new(ctx: QContext, m: usize) -> Self {
        Env { ctx, m }
    }
}

impl Default for Env {
    fn default() -> Self {
        Env { ctx: QContext::exact(crate::coeffring::rat(1, 2)).expect("1/2 is in (0,1)"), m: 6 }
    }
}

// ---------------------------------------------------------------------------
// syntax

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Name(String),
    Indexed(char, Vec<u32>),
    Call(String, Vec<(usize, Expr)>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn perr<T>(pos: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { offset: pos + 1, message: message.into() })
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => perr(self.pos, format!("expected `{}`, found `{}`", c as char, x as char)),
            None => perr(self.pos, format!("expected `{}`, found end of input", c as char)),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat(b'*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.src.get(start) {
                Some(c) => perr(start, format!("expected an integer, found `{}`", *c as char)),
                None => perr(start, "expected an integer, found end of input"),
            };
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| perr(start, "integer too large"))
    }

    fn atom(&mut self) -> Result<Expr> {
        let start = match self.peek() {
            None => return perr(self.pos, "expected an expression, found end of input"),
            Some(_) => self.pos,
        };
        let c = self.src[start];
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(b')')?;
            return Ok(e);
        }
        if c.is_ascii_digit() {
            let n = self.integer()?;
            if self.eat(b'/') {
                let at = self.pos;
                let d = self.integer()?;
                if d == 0 {
                    return perr(at, "zero denominator");
                }
                return Ok(Expr::Num(Rational::new(n.into(), d.into())));
            }
            return Ok(Expr::Num(Rational::from_integer(n.into())));
        }
        if !(c.is_ascii_alphabetic() || c == b'_') {
            return perr(start, format!("unexpected `{}`", c as char));
        }
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
        match self.peek() {
            Some(b'[') if matches!(name.as_str(), "g" | "e" | "E" | "z") => {
                self.pos += 1;
                let mut parts = Vec::new();
                if !self.eat(b']') {
                    loop {
                        let at = self.pos;
                        let k = self.integer()?;
                        if k == 0 || k > u32::MAX as u64 {
                            return perr(at, "index parts must be positive");
                        }
                        parts.push(k as u32);
                        if self.eat(b']') {
                            break;
                        }
                        self.expect(b',')?;
                    }
                }
                Ok(Expr::Indexed(name.chars().next().unwrap(), parts))
            }
            Some(b'(') => {
                self.pos += 1;
                let mut args = Vec::new();
                if !self.eat(b')') {
                    loop {
                        self.skip_ws();
                        let at = self.pos;
                        args.push((at, self.expr()?));
                        if self.eat(b')') {
                            break;
                        }
                        self.expect(b',')?;
                    }
                }
                Ok(Expr::Call(name, args))
            }
            _ => Ok(Expr::Name(name)),
        }
    }
}

/// Parses a complete expression.
pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(c) => perr(p.pos, format!("unexpected `{}` after expression", c as char)),
    }
}

// ---------------------------------------------------------------------------
// evaluation

fn num_op(a: Value, b: Value, exact: impl Fn(Rational, Rational) -> Rational, float: impl Fn(f64, f64) -> f64) -> Value {
    match (a, b) {
        (Value::Exact(x), Value::Exact(y)) => Value::Exact(exact(x, y)),
        (x, y) => Value::Float(float(x.to_f64(), y.to_f64())),
    }
}

fn add(a: Val, b: Val) -> Result<Val> {
    Ok(match (a, b) {
        (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(x + y),
        (Val::Num(x), Val::Num(y)) => Val::Num(num_op(x, y, |a, b| a + b, |a, b| a + b)),
        (Val::Num(x), Val::Scalar(y)) | (Val::Scalar(y), Val::Num(x)) => {
            Val::Num(num_op(x, Value::Exact(y), |a, b| a + b, |a, b| a + b))
        }
        (a @ Val::C(_), b) | (b, a @ Val::C(_)) => Val::C(&a.into_c()? + &b.into_c()?),
        (a, b) => Val::Q(&a.into_q()? + &b.into_q()?),
    })
}

fn neg(a: Val) -> Result<Val> {
    mul(Val::Scalar(-Rational::one()), a)
}

fn mul(a: Val, b: Val) -> Result<Val> {
    Ok(match (a, b) {
        (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(x * y),
        (Val::Num(x), Val::Num(y)) => Val::Num(num_op(x, y, |a, b| a * b, |a, b| a * b)),
        (Val::Num(x), Val::Scalar(y)) | (Val::Scalar(y), Val::Num(x)) => {
            Val::Num(num_op(x, Value::Exact(y), |a, b| a * b, |a, b| a * b))
        }
        (Val::Scalar(r), Val::Q(p)) | (Val::Q(p), Val::Scalar(r)) => Val::Q(p.scale(&r)),
        (Val::Scalar(r), Val::C(p)) | (Val::C(p), Val::Scalar(r)) => Val::C(p.scale(&r)),
        (Val::Q(p), Val::Q(r)) => Val::Q(&p * &r),
        (Val::C(p), Val::C(r)) => Val::C(&p * &r),
        (a, b) => {
            return Err(Error::Type(format!("cannot multiply a {} by a {}", a.kind(), b.kind())));
        }
    })
}

fn arity(name: &str, args: &[(usize, Expr)], lo: usize, hi: usize) -> Result<()> {
    if args.len() < lo || args.len() > hi {
        let want = if lo == hi { lo.to_string() } else { format!("{lo}..{hi}") };
        return Err(Error::Type(format!("{name} takes {want} argument(s), got {}", args.len())));
    }
    Ok(())
}

fn as_mode(v: Val) -> Result<Mode> {
    match v {
        Val::Mode(m) => Ok(m),
        other => Err(Error::Type(format!("expected `star` or `sh`, got a {}", other.kind()))),
    }
}

fn as_count(v: Val) -> Result<usize> {
    match v {
        Val::Scalar(r) if r.is_integer() && r >= Rational::zero() => {
            Ok(r.to_integer().try_into().map_err(|_| Error::Type("count too large".into()))?)
        }
        other => Err(Error::Type(format!("expected a non-negative integer, got {other}"))),
    }
}

/// Evaluates a parsed expression.
pub fn eval_expr(e: &Expr, env: &Env) -> Result<Val> {
    match e {
        Expr::Num(r) => Ok(Val::Scalar(r.clone())),
        Expr::Neg(a) => neg(eval_expr(a, env)?),
        Expr::Add(a, b) => add(eval_expr(a, env)?, eval_expr(b, env)?),
        Expr::Sub(a, b) => add(eval_expr(a, env)?, neg(eval_expr(b, env)?)?),
        Expr::Mul(a, b) => mul(eval_expr(a, env)?, eval_expr(b, env)?),
        Expr::Name(n) => Ok(match n.as_str() {
            "hbar" => Val::Q(NCPoly::hbar()),
            "H" => Val::Q(NCPoly::h()),
            "a" => Val::Q(NCPoly::letter_a()),
            "b" => Val::Q(NCPoly::letter_b()),
            "x" => Val::C(ClassicalPoly::x()),
            "y" => Val::C(ClassicalPoly::y()),
            "star" => Val::Mode(Mode::Star),
            "sh" => Val::Mode(Mode::Sh),
            _ => return Err(Error::Type(format!("unknown name `{n}`"))),
        }),
        Expr::Indexed(c, parts) => {
            let k = Index(parts.clone());
            Ok(match c {
                'g' => Val::Q(NCPoly::g_index(&k)),
                'e' => Val::Q(NCPoly::e_index(&k)),
                'E' => Val::Q(qops::e_index(&k)),
                _ => Val::C(ClassicalPoly::z(&k)),
            })
        }
        Expr::Call(name, args) => call(name, args, env),
    }
}

fn call(name: &str, args: &[(usize, Expr)], env: &Env) -> Result<Val> {
    let vals = || -> Result<Vec<Val>> { args.iter().map(|(_, a)| eval_expr(a, env)).collect() };
    let ctx = &env.ctx;
    match name {
        "qharm" | "qshuf" | "circ" => {
            arity(name, args, 2, 2)?;
            let mut v = vals()?.into_iter();
            let (a, b) = (v.next().unwrap().into_q()?, v.next().unwrap().into_q()?);
            Ok(Val::Q(match name {
                "qharm" => qops::qharm(&a, &b)?,
                "qshuf" => qops::qshuf(&a, &b),
                _ => qops::circ(&a, &b)?,
            }))
        }
        "psistar" | "psish" => {
            arity(name, args, 1, 1)?;
            let a = vals()?.remove(0).into_q()?;
            Ok(Val::Q(if name == "psistar" { qops::psi_star(&a)? } else { qops::psi_sh(&a)? }))
        }
        "wS" => {
            arity(name, args, 2, 2)?;
            let mut v = vals()?.into_iter();
            let mode = as_mode(v.next().unwrap())?;
            match v.next().unwrap() {
                Val::C(p) => Ok(Val::C(classical::ws_classical(&p, mode)?)),
                other => Ok(Val::Q(qops::ws_q(&other.into_q()?, mode)?)),
            }
        }
        "iota" => {
            arity(name, args, 1, 1)?;
            Ok(Val::C(qops::iota(&vals()?.remove(0).into_q()?)?))
        }
        "harm" | "shuf" => {
            arity(name, args, 2, 2)?;
            let mut v = vals()?.into_iter();
            let (a, b) = (v.next().unwrap(), v.next().unwrap());
            if matches!(a, Val::Q(_)) || matches!(b, Val::Q(_)) {
                return Err(Error::Type(format!("{name} acts on the classical algebra; use q{name} for q-words")));
            }
            let (a, b) = (a.into_c()?, b.into_c()?);
            Ok(Val::C(if name == "harm" { classical::harm(&a, &b)? } else { classical::shuf(&a, &b) }))
        }
        "psi" => {
            arity(name, args, 1, 1)?;
            Ok(Val::C(classical::psi(&vals()?.remove(0).into_c()?)?))
        }
        "ZqM" | "ZM" => {
            arity(name, args, 1, 2)?;
            let mut v = vals()?.into_iter();
            let w = v.next().unwrap();
            let m = v.next().map(as_count).transpose()?.unwrap_or(env.m);
            if name == "ZM" {
                return Ok(Val::Num(Value::Exact(classical::z_m(&w.into_c()?, m as u64)?)));
            }
            Ok(Val::Num(eval::zqm(&w.into_q()?, m, ctx)?))
        }
        "ZSqM" | "ZSM" => {
            arity(name, args, 2, 3)?;
            let mut v = vals()?.into_iter();
            let mode = as_mode(v.next().unwrap())?;
            let w = v.next().unwrap();
            let m = v.next().map(as_count).transpose()?.unwrap_or(env.m);
            if name == "ZSM" {
                return Ok(Val::Num(Value::Exact(classical::zm_s_classical(&w.into_c()?, m as u64, mode)?)));
            }
            Ok(Val::Num(eval::zsqm(&w.into_q()?, m, mode, ctx)?))
        }
        "Zq" => {
            arity(name, args, 1, 1)?;
            // a limit is only ever known to within its tail bound
            let v = eval::zq(&vals()?.remove(0).into_q()?, ctx)?.value;
            Ok(Val::Num(Value::Float(v.to_f64())))
        }
        "T" => {
            arity(name, args, 3, 4)?;
            let mut v = vals()?.into_iter();
            let (a, b, c) = (v.next().unwrap().into_q()?, v.next().unwrap().into_q()?, v.next().unwrap().into_q()?);
            let m = v.next().map(as_count).transpose()?.unwrap_or(env.m);
            Ok(Val::Num(eval::t_qm(&a, &b, &c, m, ctx)?))
        }
        "kontsevich" => {
            arity(name, args, 1, 2)?;
            let mut v = vals()?.into_iter();
            let w = v.next().unwrap().into_q()?;
            let m = v.next().map(as_count).transpose()?.unwrap_or(env.m);
            Ok(Val::Num(eval::kontsevich_zs_star(&w, m, ctx)?))
        }
        _ => Err(Error::Type(format!("unknown function `{name}`"))),
    }
}

/// Parses and evaluates `src`.
pub fn eval_str(src: &str, env: &Env) -> Result<Val> {
    eval_expr(&parse(src)?, env)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::rat;

    fn ev(s: &str) -> Val {
        eval_str(s, &Env::new(QContext::exact(rat(1, 2)).unwrap(), 3)).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(ev("ZqM(g[2])"), Val::Num(Value::Exact(rat(5, 18))));
        assert_eq!(ev("ZqM(qshuf(g[1],g[1]))"), Val::Num(Value::Exact(rat(1, 4))));
        assert_eq!(ev("iota(E[1,3])"), Val::C(ClassicalPoly::z(&Index(vec![1, 3]))));
        assert_eq!(
            eval_str("qharm(g[1],", &Env::default()),
            Err(Error::Parse { offset: 12, message: "expected an expression, found end of input".into() })
        );
    }

    #[test]
    fn arithmetic_and_types() {
        assert_eq!(ev("qharm(g[1], g[1])"), ev("2*g[1]*g[1] + g[2]"));
        assert_eq!(ev("1/2*(e[1] + g[1])"), ev("E[1]"));
        assert_eq!(ev("H"), ev("e[1] - g[1]"));
        assert_eq!(ev("ZqM(g[2]) * 18"), Val::Num(Value::Exact(rat(5, 1))));
        assert_eq!(ev("harm(z[1], z[1])"), ev("2*z[1,1] + z[2]"));
        assert_eq!(ev("wS(sh, e[1])"), ev("e[1] - g[1]"));
        assert!(matches!(eval_str("harm(g[1], g[1])", &Env::default()), Err(Error::Type(_))));
        assert!(matches!(eval_str("g[1] * z[1]", &Env::default()), Err(Error::Type(_))));
        assert!(matches!(eval_str("g[0]", &Env::default()), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!(eval_str("g[1] )", &Env::default()), Err(Error::Parse { offset: 6, .. })));
    }
}
