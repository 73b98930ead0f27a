//! Infix expressions over Q: the shared input syntax for equations, curves
//! and tower payloads.
//!
//! Grammar (ASCII only):
//!
//! ```text
//! equation := expr '=' expr
//! expr     := ['-'|'+'] term (('+'|'-') term)*
//! term     := unary (('*'|'/') unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! atom     := number | ident primes? | '(' expr ')'
//! ```
//!
//! For identifiers declared as dependent variables, `y^(k)` denotes the k-th
//! derivative while `y^k` denotes a power. Elsewhere `^` is always a power
//! with an integer exponent.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::Rat;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rat),
    Var(String),
    /// `name` differentiated `order` times; `order >= 1`.
    Deriv(String, u32),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    /// Every variable name mentioned, including differentiated ones.
    pub fn symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) | Expr::Deriv(v, _) => out.push(v.clone()),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect(out);
                b.collect(out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect(out),
        }
    }

    /// Folds the expression into any structure with ring operations.
    ///
    /// Leaves may be rejected by the algebra; `div` and `pow` may fail on
    /// division by zero.
    pub fn fold<T: Clone>(&self, alg: &impl ExprAlgebra<T>) -> Result<T> {
        Ok(match self {
            Expr::Num(r) => alg.num(r),
            Expr::Var(v) => alg.var(v)?,
            Expr::Deriv(v, k) => alg.deriv(v, *k)?,
            Expr::Add(a, b) => alg.add(&a.fold(alg)?, &b.fold(alg)?),
            Expr::Sub(a, b) => alg.sub(&a.fold(alg)?, &b.fold(alg)?),
            Expr::Mul(a, b) => alg.mul(&a.fold(alg)?, &b.fold(alg)?),
            Expr::Div(a, b) => alg.div(&a.fold(alg)?, &b.fold(alg)?)?,
            Expr::Neg(a) => alg.neg(&a.fold(alg)?),
            Expr::Pow(a, e) => alg.pow(&a.fold(alg)?, *e)?,
        })
    }
}

/// Target of [`Expr::fold`].
pub trait ExprAlgebra<T> {
    fn num(&self, r: &Rat) -> T;
    fn var(&self, name: &str) -> Result<T>;
    fn deriv(&self, name: &str, _order: u32) -> Result<T> {
        Err(Error::usage(format!("derivative of '{name}' is not allowed here")))
    }
    fn add(&self, a: &T, b: &T) -> T;
    fn sub(&self, a: &T, b: &T) -> T;
    fn mul(&self, a: &T, b: &T) -> T;
    fn neg(&self, a: &T) -> T;
    fn div(&self, a: &T, b: &T) -> Result<T>;
    fn pow(&self, a: &T, e: i64) -> Result<T> {
        if e < 0 {
            let inv = self.div(&self.num(&Rat::one()), a)?;
            return self.pow(&inv, -e);
        }
        let mut r = self.num(&Rat::one());
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        Ok(r)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) => write!(f, "{r}"),
            Expr::Var(v) => f.write_str(v),
            Expr::Deriv(v, k) => f.write_str(&deriv_name(v, *k)),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "{a}/{b}"),
            Expr::Neg(a) => write!(f, "-{a}"),
            Expr::Pow(a, e) => write!(f, "({a})^({e})"),
        }
    }
}

/// `u`, `u'`, `u''`, `u'''`, then `u^(k)`.
pub fn deriv_name(v: &str, k: u32) -> String {
    match k {
        0..=3 => format!("{v}{}", "'".repeat(k as usize)),
        _ => format!("{v}^({k})"),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Prime,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eq,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let mut int_part = String::new();
            let mut frac_part = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                int_part.push(chars[i]);
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    frac_part.push(chars[i]);
                    i += 1;
                }
            }
            if int_part.is_empty() && frac_part.is_empty() {
                return Err(syntax(start, "malformed number"));
            }
            let digits = format!("{int_part}{frac_part}");
            let n: BigInt = digits.parse().unwrap();
            let d = num_traits::pow(BigInt::from(10), frac_part.len());
            out.push((start, Tok::Num(Rat::new(n, d))));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                s.push(chars[i]);
                i += 1;
            }
            out.push((start, Tok::Ident(s)));
            continue;
        }
        let t = match c {
            '\'' => Tok::Prime,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Eq,
            _ => return Err(syntax(start, format!("unexpected character '{c}'"))),
        };
        out.push((start, t));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    deriv_vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(syntax(self.here(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(&Tok::Slash) {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat(&Tok::Minus);
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(r)) if r.is_integer() => {
                self.pos += 1;
                let v: i64 = r
                    .to_integer()
                    .try_into()
                    .map_err(|_| syntax(at, "exponent too large"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(syntax(at, "expected an integer exponent")),
        }
    }

    fn signed_int_or_paren(&mut self) -> Result<i64> {
        if self.eat(&Tok::LParen) {
            let k = self.signed_int()?;
            self.expect(&Tok::RParen, "')' after exponent")?;
            Ok(k)
        } else {
            self.signed_int()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let (base, is_dep) = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let at = self.here();
        if self.eat(&Tok::LParen) {
            let k = self.signed_int()?;
            self.expect(&Tok::RParen, "')' after exponent")?;
            // only a bare dependent variable reads `^(k)` as a derivative;
            // y'^(2) stays a power of y'
            if let Some(name) = is_dep {
                if k < 0 {
                    return Err(syntax(at, "derivative order must be non-negative"));
                }
                let d = if k == 0 {
                    Expr::Var(name)
                } else {
                    Expr::Deriv(name, k as u32)
                };
                // u^(4)^2 is the square of the fourth derivative
                if self.eat(&Tok::Caret) {
                    let p = self.signed_int_or_paren()?;
                    return Ok(Expr::Pow(Box::new(d), p));
                }
                return Ok(d);
            }
            return Ok(Expr::Pow(Box::new(base), k));
        }
        let k = self.signed_int()?;
        Ok(Expr::Pow(Box::new(base), k))
    }

    /// Returns the atom and, for a bare dependent variable, its name.
    fn atom(&mut self) -> Result<(Expr, Option<String>)> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok((Expr::Num(r), None))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let mut primes = 0;
                while self.eat(&Tok::Prime) {
                    primes += 1;
                }
                let dep = self.deriv_vars.contains(&name.as_str());
                if primes > 0 && !dep {
                    return Err(syntax(at, format!("'{name}' cannot be differentiated here")));
                }
                Ok(if primes > 0 {
                    (Expr::Deriv(name, primes), None)
                } else if dep {
                    (Expr::Var(name.clone()), Some(name))
                } else {
                    (Expr::Var(name), None)
                })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok((e, None))
            }
            Some(t) => Err(syntax(at, format!("unexpected token {t:?}"))),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

fn parser<'a>(src: &str, deriv_vars: &'a [&'a str]) -> Result<Parser<'a>> {
    Ok(Parser {
        toks: tokenize(src)?,
        pos: 0,
        end: src.chars().count(),
        deriv_vars,
    })
}

/// Parses a single expression.
pub fn parse_expr(src: &str, deriv_vars: &[&str]) -> Result<Expr> {
    let mut p = parser(src, deriv_vars)?;
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.here(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Parses `lhs = rhs` and returns `lhs - rhs`.
pub fn parse_equation(src: &str, deriv_vars: &[&str]) -> Result<Expr> {
    let mut p = parser(src, deriv_vars)?;
    let lhs = p.expr()?;
    if !p.eat(&Tok::Eq) {
        return Err(syntax(p.here(), "expected '=' in equation"));
    }
    let rhs = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.here(), "unexpected trailing input"));
    }
    Ok(match rhs {
        Expr::Num(ref r) if r.is_zero() => lhs,
        rhs => Expr::Sub(Box::new(lhs), Box::new(rhs)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn derivatives_and_powers() {
        let e = parse_expr("y^(2) + y^2 + y'''", &["y"]).unwrap();
        assert_eq!(
            e.symbols(),
            vec!["y".to_string()],
        );
        let Expr::Add(a, b) = e else { panic!() };
        assert_eq!(*b, Expr::Deriv("y".into(), 3));
        let Expr::Add(c, d) = *a else { panic!() };
        assert_eq!(*c, Expr::Deriv("y".into(), 2));
        assert_eq!(*d, Expr::Pow(Box::new(Expr::Var("y".into())), 2));
    }

    #[test]
    fn decimals() {
        assert_eq!(parse_expr("2.5", &[]).unwrap(), Expr::Num(rat(5, 2)));
        assert_eq!(parse_expr("10", &[]).unwrap(), Expr::Num(int(10)));
    }

    #[test]
    fn x_power_in_parens_is_power() {
        assert_eq!(
            parse_expr("x^(2)", &["y"]).unwrap(),
            Expr::Pow(Box::new(Expr::Var("x".into())), 2)
        );
        assert_eq!(
            parse_expr("x^(-1)", &[]).unwrap(),
            Expr::Pow(Box::new(Expr::Var("x".into())), -1)
        );
    }

    #[test]
    fn missing_equals_is_syntax_error() {
        let e = parse_equation("y'' - 3*y", &["y"]).unwrap_err();
        assert!(matches!(e, Error::Syntax { position: 9, .. }), "{e:?}");
    }

    #[test]
    fn stray_character() {
        let e = parse_expr("x # 2", &[]).unwrap_err();
        assert!(matches!(e, Error::Syntax { position: 2, .. }));
    }

    #[test]
    fn prime_on_independent_variable() {
        assert!(parse_expr("x'", &["y"]).is_err());
    }
}
