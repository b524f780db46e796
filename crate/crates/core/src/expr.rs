//! The small formula language used by the catalog data file.
//!
//! Scalar formulas (`-1/(2*(1+a))`, `m >= 2 && n != m`) evaluate to exact
//! rationals, with comparisons giving 0 or 1. Root templates such as
//! `+-e[i]+-e[j] : i in 1..m; j in 1..m; i<j` expand to finite sets of
//! weights.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::weights::{qi, to_i64, BasisLabel, Rational, Weight};

pub type Env = BTreeMap<String, Rational>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(&'static str),
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    const OPS: [&str; 13] = ["==", "!=", "<=", ">=", "&&", "||", "<", ">", "+", "-", "*", "/", "!"];
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && (b[i] as char).is_ascii_digit() {
                i += 1;
            }
            let n = s[st..i].parse().map_err(|_| Error::Parse(format!("number overflow in {s:?}")))?;
            out.push(Tok::Num(n));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && ((b[i] as char).is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push(Tok::Ident(s[st..i].to_string()));
            continue;
        }
        match c {
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            _ => {
                for op in OPS {
                    if s[i..].starts_with(op) {
                        out.push(Tok::Op(op));
                        i += op.len();
                        continue 'outer;
                    }
                }
                return Err(Error::Parse(format!("unexpected {c:?} in {s:?}")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    env: &'a Env,
    src: &'a str,
}

fn truth(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<&'static str> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(o)) => Some(o),
            _ => None,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in {:?}", self.src))
    }

    fn or(&mut self) -> Result<Rational> {
        let mut v = self.and()?;
        while self.peek_op() == Some("||") {
            self.pos += 1;
            let r = self.and()?;
            v = truth(!v.is_zero() || !r.is_zero());
        }
        Ok(v)
    }

    fn and(&mut self) -> Result<Rational> {
        let mut v = self.cmp()?;
        while self.peek_op() == Some("&&") {
            self.pos += 1;
            let r = self.cmp()?;
            v = truth(!v.is_zero() && !r.is_zero());
        }
        Ok(v)
    }

    fn cmp(&mut self) -> Result<Rational> {
        let l = self.sum()?;
        let Some(op) = self.peek_op() else { return Ok(l) };
        if !matches!(op, "==" | "!=" | "<" | "<=" | ">" | ">=") {
            return Ok(l);
        }
        self.pos += 1;
        let r = self.sum()?;
        Ok(truth(match op {
            "==" => l == r,
            "!=" => l != r,
            "<" => l < r,
            "<=" => l <= r,
            ">" => l > r,
            _ => l >= r,
        }))
    }

    fn sum(&mut self) -> Result<Rational> {
        let mut v = self.product()?;
        while let Some(op @ ("+" | "-")) = self.peek_op() {
            self.pos += 1;
            let r = self.product()?;
            if op == "+" {
                v += r;
            } else {
                v -= r;
            }
        }
        Ok(v)
    }

    fn product(&mut self) -> Result<Rational> {
        let mut v = self.unary()?;
        while let Some(op @ ("*" | "/")) = self.peek_op() {
            self.pos += 1;
            let r = self.unary()?;
            if op == "*" {
                v *= r;
            } else {
                if r.is_zero() {
                    return Err(Error::Arithmetic(format!("division by zero in {:?}", self.src)));
                }
                v /= r;
            }
        }
        Ok(v)
    }

    fn unary(&mut self) -> Result<Rational> {
        match self.peek_op() {
            Some("-") => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some("!") => {
                self.pos += 1;
                Ok(truth(self.unary()?.is_zero()))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Rational> {
        let t = self.toks.get(self.pos).cloned().ok_or_else(|| self.err("unexpected end"))?;
        self.pos += 1;
        match t {
            Tok::Num(n) => Ok(qi(n)),
            Tok::Ident(name) => self
                .env
                .get(&name)
                .cloned()
                .ok_or_else(|| self.err(&format!("unbound variable {name}"))),
            Tok::LParen => {
                let v = self.or()?;
                if self.toks.get(self.pos) != Some(&Tok::RParen) {
                    return Err(self.err("missing ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

pub fn eval(src: &str, env: &Env) -> Result<Rational> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        env,
        src,
    };
    let v = p.or()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

pub fn eval_int(src: &str, env: &Env) -> Result<i64> {
    let v = eval(src, env)?;
    to_i64(&v).ok_or_else(|| Error::Parse(format!("{src:?} is not an integer ({v})")))
}

pub fn eval_bool(src: &str, env: &Env) -> Result<bool> {
    Ok(!eval(src, env)?.is_zero())
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Sign {
    Plus,
    Minus,
    Both,
}

#[derive(Debug, Clone)]
struct Term {
    sign: Sign,
    coef: Rational,
    eps: bool,
    index: String,
}

#[derive(Debug, Clone)]
enum Clause {
    Range(String, String, String),
    Cond(String),
    EvenMinus,
    Perp(String),
}

fn parse_terms(body: &str) -> Result<Vec<Term>> {
    let bad = |m: &str| Error::Parse(format!("{m} in template {body:?}"));
    let mut terms = Vec::new();
    let s: Vec<char> = body.chars().filter(|c| !c.is_whitespace()).collect();
    let mut i = 0;
    while i < s.len() {
        let sign = if s[i..].starts_with(&['+', '-']) {
            i += 2;
            Sign::Both
        } else if s[i] == '+' {
            i += 1;
            Sign::Plus
        } else if s[i] == '-' {
            i += 1;
            Sign::Minus
        } else if terms.is_empty() {
            Sign::Plus
        } else {
            return Err(bad("missing sign"));
        };
        let st = i;
        while i < s.len() && (s[i].is_ascii_digit() || s[i] == '/') {
            i += 1;
        }
        let coef = if st == i {
            qi(1)
        } else {
            crate::weights::parse_rational(&s[st..i].iter().collect::<String>())?
        };
        let eps = match s.get(i) {
            Some('e') => true,
            Some('d') => false,
            _ => return Err(bad("expected e[..] or d[..]")),
        };
        i += 1;
        if s.get(i) != Some(&'[') {
            return Err(bad("expected '['"));
        }
        let close = s[i..].iter().position(|&c| c == ']').ok_or_else(|| bad("missing ']'"))? + i;
        let index: String = s[i + 1..close].iter().collect();
        i = close + 1;
        terms.push(Term { sign, coef, eps, index });
    }
    if terms.is_empty() {
        return Err(bad("empty"));
    }
    Ok(terms)
}

/// A parsed root template.
#[derive(Debug, Clone)]
pub struct Template {
    src: String,
    pm: bool,
    terms: Vec<Term>,
    clauses: Vec<Clause>,
}

impl Template {
    pub fn parse(src: &str) -> Result<Self> {
        let (head, tail) = match src.split_once(':') {
            Some((h, t)) => (h.trim(), Some(t)),
            None => (src.trim(), None),
        };
        let (pm, body) = match head.strip_prefix('±') {
            Some(b) => (true, b),
            None => (false, head),
        };
        let terms = parse_terms(body)?;
        let mut clauses = Vec::new();
        for c in tail.into_iter().flat_map(|t| t.split(';')) {
            let c = c.trim();
            if c.is_empty() {
                continue;
            }
            if c == "evenminus" {
                clauses.push(Clause::EvenMinus);
            } else if let Some(w) = c.strip_prefix("perp ") {
                clauses.push(Clause::Perp(w.trim().to_string()));
            } else if let Some(cond) = c.strip_prefix("if ") {
                clauses.push(Clause::Cond(cond.trim().to_string()));
            } else if let Some((var, range)) = c.split_once(" in ") {
                let (lo, hi) = range
                    .split_once("..")
                    .ok_or_else(|| Error::Parse(format!("range needs '..' in {src:?}")))?;
                clauses.push(Clause::Range(var.trim().to_string(), lo.trim().to_string(), hi.trim().to_string()));
            } else {
                clauses.push(Clause::Cond(c.to_string()));
            }
        }
        Ok(Self {
            src: src.to_string(),
            pm,
            terms,
            clauses,
        })
    }

    /// Expands the template under `env`. `gram` is only consulted for
    /// `perp` clauses.
    pub fn expand(&self, env: &Env, pair: &dyn Fn(&Weight, &Weight) -> Rational) -> Result<BTreeSet<Weight>> {
        let mut out = BTreeSet::new();
        let ranges: Vec<&Clause> = self.clauses.iter().filter(|c| matches!(c, Clause::Range(..))).collect();
        self.bind(0, &ranges, &mut env.clone(), pair, &mut out)?;
        Ok(out)
    }

    fn bind(
        &self,
        depth: usize,
        ranges: &[&Clause],
        env: &mut Env,
        pair: &dyn Fn(&Weight, &Weight) -> Rational,
        out: &mut BTreeSet<Weight>,
    ) -> Result<()> {
        if depth == ranges.len() {
            return self.emit(env, pair, out);
        }
        let Clause::Range(var, lo, hi) = ranges[depth] else { unreachable!() };
        let lo = eval_int(lo, env)?;
        let hi = eval_int(hi, env)?;
        for v in lo..=hi {
            env.insert(var.clone(), qi(v));
            self.bind(depth + 1, ranges, env, pair, out)?;
        }
        env.remove(var);
        Ok(())
    }

    fn emit(&self, env: &Env, pair: &dyn Fn(&Weight, &Weight) -> Rational, out: &mut BTreeSet<Weight>) -> Result<()> {
        for c in &self.clauses {
            if let Clause::Cond(e) = c {
                if !eval_bool(e, env)? {
                    return Ok(());
                }
            }
        }
        let mut units = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let idx = eval_int(&t.index, env)?;
            if !(1..=u8::MAX as i64).contains(&idx) {
                return Err(Error::Catalog(format!("index {idx} out of range in {:?}", self.src)));
            }
            let l = if t.eps {
                BasisLabel::Eps(idx as u8)
            } else {
                BasisLabel::Del(idx as u8)
            };
            units.push(Weight::from_pairs([(l, t.coef.clone())]));
        }
        let free: Vec<usize> = (0..self.terms.len()).filter(|&i| self.terms[i].sign == Sign::Both).collect();
        let even_minus = self.clauses.iter().any(|c| matches!(c, Clause::EvenMinus));
        let perps: Vec<Weight> = self
            .clauses
            .iter()
            .filter_map(|c| match c {
                Clause::Perp(w) => Some(w),
                _ => None,
            })
            .map(|w| expand_single(w, env))
            .collect::<Result<_>>()?;
        for mask in 0u32..(1u32 << free.len()) {
            if even_minus && mask.count_ones() % 2 == 1 {
                continue;
            }
            let mut w = Weight::zero();
            for (i, (t, u)) in self.terms.iter().zip(&units).enumerate() {
                let neg = match t.sign {
                    Sign::Plus => false,
                    Sign::Minus => true,
                    Sign::Both => {
                        let bit = free.iter().position(|&f| f == i).unwrap();
                        mask & (1 << bit) != 0
                    }
                };
                if neg {
                    w -= u;
                } else {
                    w += u;
                }
            }
            if w.is_zero() || perps.iter().any(|p| !pair(&w, p).is_zero()) {
                continue;
            }
            if self.pm {
                out.insert(-&w);
            }
            out.insert(w);
        }
        Ok(())
    }
}

/// Expands a template that must produce exactly one weight.
pub fn expand_single(src: &str, env: &Env) -> Result<Weight> {
    let t = Template::parse(src)?;
    let set = t.expand(env, &|_, _| Rational::zero())?;
    if set.len() != 1 {
        return Err(Error::Catalog(format!("{src:?} expands to {} weights, expected one", set.len())));
    }
    Ok(set.into_iter().next().unwrap())
}

/// Expands a list of templates and concatenates the results, keeping
/// first-seen order across templates.
pub fn expand_all(srcs: &[String], env: &Env, pair: &dyn Fn(&Weight, &Weight) -> Rational) -> Result<Vec<Weight>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in srcs {
        for w in Template::parse(s)?.expand(env, pair)? {
            if seen.insert(w.clone()) {
                out.push(w);
            }
        }
    }
    Ok(out)
}
