//! Expression text: generators (`psi1`, `lambda2`, `kappa3`, `c1`, `x`),
//! integer literals, `+ - * / ^`, parentheses and the functions
//!
//! | call | value |
//! |------|-------|
//! | `inverse(c)` | inverse of a class with nonzero constant term |
//! | `whitney_quotient(c, s)` | `c / s` |
//! | `twist(c, r, x)` | Chern class of `E ⊗ L` for `c = c(E)` of rank `r`, `x = c1(L)` |
//! | `sym2(c, r)` | Chern class of the symmetric square |
//! | `ch(c, r, k)` | degree-k Chern character |
//! | `part(p, d)` | degree-d part |
//! | `porteous(n, a, b)` | Porteous class in `psi1..psin`, `lambda1..lambda5` |
//!
//! `a / b` multiplies by the inverse of `b`, which needs a nonzero constant term.

use num_traits::Zero;

use super::chern::{chern_to_character, sym_square_chern, twist_by_line, TotalClass};
use super::poly::{Generator, GradedPoly};
use super::porteous::{porteous_class, standard_inputs};
use super::TautError;
use crate::exactmath::Rational;

/// Default truncation degree.
pub const DEFAULT_TRUNC: u32 = 6;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(num_bigint::BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, TautError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^(),".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(TautError::Parse {
                pos: i,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    trunc: u32,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, TautError> {
        Err(TautError::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), TautError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected {c:?}"))
        }
    }

    fn expr(&mut self) -> Result<GradedPoly, TautError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<GradedPoly, TautError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let pos = self.pos();
                let d = self.unary()?;
                acc = divide(&acc, &d).map_err(|e| match e {
                    TautError::NoConstantTerm(m) => TautError::Parse {
                        pos,
                        msg: format!("cannot divide by {m}: no constant term"),
                    },
                    other => other,
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<GradedPoly, TautError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<GradedPoly, TautError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                let e = u32::try_from(n).or_else(|_| self.err("exponent too large"))?;
                Ok(base.pow(e))
            }
            _ => self.err("exponent must be a non-negative integer literal"),
        }
    }

    fn atom(&mut self) -> Result<GradedPoly, TautError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(GradedPoly::constant(Rational::from_integer(n), self.trunc))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(Tok::Ident(name)) => {
                let pos = self.pos();
                self.at += 1;
                if self.eat('(') {
                    let mut args = Vec::new();
                    if !self.eat(')') {
                        loop {
                            args.push(self.expr()?);
                            if self.eat(')') {
                                break;
                            }
                            self.expect(',')?;
                        }
                    }
                    call(&name, &args, self.trunc).map_err(|e| match e {
                        TautError::Parse { msg, .. } => TautError::Parse { pos, msg },
                        other => other,
                    })
                } else {
                    let g = Generator::parse(&name).map_err(|e| TautError::Parse { pos, msg: e.to_string() })?;
                    Ok(GradedPoly::generator(g, self.trunc))
                }
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected {c:?}")),
            None => self.err("unexpected end of expression"),
        }
    }
}

fn divide(a: &GradedPoly, b: &GradedPoly) -> Result<GradedPoly, TautError> {
    Ok(a.mul(&b.inverse()?))
}

fn small_int(p: &GradedPoly, what: &str) -> Result<u32, TautError> {
    let c = p.constant_term();
    let bad = || TautError::Parse {
        pos: 0,
        msg: format!("{what} must be a non-negative integer, got {p}"),
    };
    if p.terms().any(|(m, _)| !m.is_one()) || !c.is_integer() || c < Rational::zero() {
        return Err(bad());
    }
    u32::try_from(c.to_integer()).map_err(|_| bad())
}

fn arity(name: &str, args: &[GradedPoly], n: usize) -> Result<(), TautError> {
    if args.len() != n {
        return Err(TautError::Parse {
            pos: 0,
            msg: format!("{name} takes {n} arguments, got {}", args.len()),
        });
    }
    Ok(())
}

fn total(p: &GradedPoly, rank: Option<u32>) -> Result<TotalClass, TautError> {
    TotalClass::new(p.clone(), rank)
}

fn call(name: &str, args: &[GradedPoly], trunc: u32) -> Result<GradedPoly, TautError> {
    match name {
        "inverse" => {
            arity(name, args, 1)?;
            args[0].inverse()
        }
        "whitney_quotient" => {
            arity(name, args, 2)?;
            Ok(super::chern::whitney_quotient(&total(&args[0], None)?, &total(&args[1], None)?, trunc)
                .poly()
                .clone())
        }
        "twist" => {
            arity(name, args, 3)?;
            let r = small_int(&args[1], "rank")?;
            Ok(twist_by_line(&total(&args[0], Some(r))?, r, &args[2], trunc)?.poly().clone())
        }
        "sym2" => {
            arity(name, args, 2)?;
            let r = small_int(&args[1], "rank")?;
            Ok(sym_square_chern(&total(&args[0], Some(r))?, r, trunc)?.poly().clone())
        }
        "ch" => {
            arity(name, args, 3)?;
            let r = small_int(&args[1], "rank")?;
            let k = small_int(&args[2], "degree")?;
            let ch = chern_to_character(&total(&args[0], Some(r))?, r, trunc);
            Ok(ch.get(k as usize).cloned().unwrap_or_else(|| GradedPoly::zero(trunc)))
        }
        "part" => {
            arity(name, args, 2)?;
            Ok(args[0].part(small_int(&args[1], "degree")?))
        }
        "porteous" => {
            arity(name, args, 3)?;
            let n = small_int(&args[0], "n")?;
            let (psi, lambda) = standard_inputs(n, trunc);
            porteous_class(&psi, &lambda, small_int(&args[1], "a")?, small_int(&args[2], "b")?, trunc)
        }
        _ => Err(TautError::Parse {
            pos: 0,
            msg: format!("unknown function {name:?}"),
        }),
    }
}

/// Parses and evaluates an expression at truncation degree `trunc`.
pub fn evaluate(text: &str, trunc: u32) -> Result<GradedPoly, TautError> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        at: 0,
        end: text.chars().count(),
        trunc,
    };
    let v = parser.expr()?;
    if parser.at != parser.toks.len() {
        return parser.err("trailing input");
    }
    Ok(v)
}

/// Values assigned to generators, either one at a time (`psi1`) or to a whole
/// family (`psi`). A single-generator assignment wins over its family's.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Assignments {
    single: std::collections::BTreeMap<Generator, GradedPoly>,
    family: std::collections::BTreeMap<String, GradedPoly>,
}

impl Assignments {
    /// Adds `NAME=VALUE`, where `VALUE` is an expression.
    pub fn set(&mut self, spec: &str, trunc: u32) -> Result<(), TautError> {
        let (name, value) = spec.split_once('=').ok_or_else(|| TautError::Parse {
            pos: 0,
            msg: format!("expected NAME=VALUE, got {spec:?}"),
        })?;
        let (name, value) = (name.trim(), evaluate(value, trunc)?);
        if name.chars().all(|c| c.is_ascii_alphabetic()) && Generator::parse(name).is_err() {
            self.family.insert(name.to_string(), value);
        } else {
            self.single.insert(Generator::parse(name)?, value);
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.single.is_empty() && self.family.is_empty()
    }

    pub fn apply(&self, p: &GradedPoly) -> GradedPoly {
        if self.is_empty() {
            return p.clone();
        }
        p.substitute(|g| {
            self.single
                .get(g)
                .or_else(|| self.family.get(g.name()))
                .map(|v| v.with_trunc(p.trunc()))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str) -> String {
        evaluate(s, DEFAULT_TRUNC).unwrap().to_string()
    }

    #[test]
    fn arithmetic() {
        assert_eq!(ev("-1/5*lambda1 + psi1"), "-1/5*lambda1 + psi1");
        assert_eq!(ev("(1 + lambda1)^2"), "lambda1^2 + 2*lambda1 + 1");
        assert_eq!(ev("-x^2"), "-x^2");
        assert_eq!(ev("2 - 3 - 4"), "-5");
        assert_eq!(ev("12/8"), "3/2");
        assert_eq!(evaluate("1/(1+lambda1)", 2).unwrap().to_string(), "lambda1^2 - lambda1 + 1");
        assert_eq!(ev("lambda3*lambda4"), "0");
    }

    #[test]
    fn functions() {
        assert!(ev("porteous(8, 4, 1)").contains("lambda4"));
        assert_eq!(ev("part(twist(1 + c1 + c2, 2, x), 2)"), "c2 + c1*x + x^2");
        assert_eq!(ev("part(sym2(1 + c1 + c2, 2), 1)"), "3*c1");
        assert_eq!(ev("ch(1 + c1 + c2, 2, 2)"), "1/2*c1^2 - c2");
        assert_eq!(
            evaluate("whitney_quotient(1 + lambda1 + lambda2, 1 + 2*psi1)", 2).unwrap().to_string(),
            "lambda2 - 2*lambda1*psi1 + 4*psi1^2 + lambda1 - 2*psi1 + 1"
        );
        assert_eq!(ev("inverse(1 + psi1) * (1 + psi1)"), "1");
    }

    #[test]
    fn errors_carry_positions() {
        for (text, pos) in [("psi1 +", 6), ("psi1 $ 2", 5), ("foo(1)", 0), ("1/psi1", 2), ("lambda7", 0), ("(psi1", 5)] {
            match evaluate(text, 6) {
                Err(TautError::Parse { pos: p, .. }) => assert_eq!(p, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(evaluate("x^y", 6).is_err());
    }

    #[test]
    fn assignments() {
        let mut a = Assignments::default();
        a.set("psi=0", 6).unwrap();
        a.set("lambda1=2*d1", 6).unwrap();
        let p = evaluate("psi1 + psi2*lambda1 + lambda1 + lambda2", 6).unwrap();
        assert_eq!(a.apply(&p).to_string(), "lambda2 + 2*d1");
        assert!(a.set("psi1", 6).is_err());
    }
}
