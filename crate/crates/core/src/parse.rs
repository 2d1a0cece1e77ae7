//! Text syntax for polynomials and forms, e.g. `3/2*x1^2*x3 - x3^2*dx1^dx3`.
//!
//! `*` multiplies (wedges) factors; `^` after a function followed by an
//! integer is a power, otherwise it is a wedge. `dxN` is the differential of
//! the variable `xN`.

use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::forms::{exterior_derivative, wedge, DiffForm};
use crate::linalg::Scalar;
use crate::poly::{Polynomial, UniPoly, VarSet};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    col0: usize,
    end: usize,
}

impl Lexer {
    fn new(src: &str, line: usize, col0: usize) -> Result<Self> {
        let chars: Vec<char> = src.chars().collect();
        let mut toks = Vec::new();
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
                toks.push((Tok::Num(s.parse().expect("digits")), start));
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), start));
            } else if "+-*/^()".contains(c) {
                toks.push((Tok::Sym(c), i));
                i += 1;
            } else {
                return Err(Error::Parse {
                    line,
                    col: col0 + i + 1,
                    msg: format!("unexpected character `{c}`"),
                });
            }
        }
        Ok(Lexer {
            toks,
            pos: 0,
            line,
            col0,
            end: chars.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|(t, _)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let at = self.toks.get(self.pos).map_or(self.end, |(_, c)| *c);
        Err(Error::Parse {
            line: self.line,
            col: self.col0 + at + 1,
            msg: msg.into(),
        })
    }
}

/// Named rational constants that may appear in expressions.
pub type Params = HashMap<String, Scalar>;

struct Parser<'a> {
    lx: Lexer,
    vars: &'a Arc<VarSet>,
    params: Option<&'a Params>,
}

impl Parser<'_> {
    fn expr(&mut self) -> Result<DiffForm> {
        let mut acc = match self.lx.peek() {
            Some(Tok::Sym('-')) => {
                self.lx.next();
                -&self.term()?
            }
            Some(Tok::Sym('+')) => {
                self.lx.next();
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(Tok::Sym(c @ ('+' | '-'))) = self.lx.peek().cloned() {
            self.lx.next();
            let t = self.term()?;
            acc = match acc.try_add(&if c == '+' { t } else { -&t }) {
                Ok(f) => f,
                Err(_) => return self.lx.err("sum of forms of different degrees"),
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<DiffForm> {
        let mut acc = self.factor()?;
        loop {
            match self.lx.peek() {
                Some(Tok::Sym('*')) => {
                    self.lx.next();
                    let f = self.factor()?;
                    acc = self.wedge(&acc, &f)?;
                }
                Some(Tok::Sym('/')) => {
                    self.lx.next();
                    match self.lx.next() {
                        Some(Tok::Num(n)) if !n.is_zero() => {
                            acc = acc.scale(&Scalar::new(1.into(), n));
                        }
                        _ => {
                            self.lx.pos -= 1;
                            return self.lx.err("expected a nonzero integer divisor");
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn wedge(&self, a: &DiffForm, b: &DiffForm) -> Result<DiffForm> {
        wedge(a, b).or_else(|e| self.lx.err(e.to_string()))
    }

    fn factor(&mut self) -> Result<DiffForm> {
        if let Some(Tok::Sym('-')) = self.lx.peek() {
            self.lx.next();
            return Ok(-&self.factor()?);
        }
        let mut acc = self.atom()?;
        while let Some(Tok::Sym('^')) = self.lx.peek() {
            self.lx.next();
            let power = matches!(self.lx.peek(), Some(Tok::Num(_))) && acc.degree() == 0;
            if power {
                let Some(Tok::Num(n)) = self.lx.next() else { unreachable!() };
                let Ok(e) = u32::try_from(n) else {
                    return self.lx.err("exponent too large");
                };
                let p = acc.coefficient(&[]).pow(e);
                acc = DiffForm::function(p);
            } else {
                let f = self.atom()?;
                acc = self.wedge(&acc, &f)?;
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<DiffForm> {
        match self.lx.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.lx.next();
                Ok(DiffForm::function(Polynomial::constant(
                    self.vars,
                    Scalar::from_integer(n),
                )))
            }
            Some(Tok::Ident(name)) => {
                if let Some(i) = self.vars.index_of(&name) {
                    self.lx.next();
                    return Ok(DiffForm::function(Polynomial::var(self.vars, i)));
                }
                if let Some(i) = name.strip_prefix('d').and_then(|v| self.vars.index_of(v)) {
                    self.lx.next();
                    return Ok(DiffForm::dx(self.vars, i));
                }
                if let Some(c) = self.params.and_then(|p| p.get(&name)) {
                    self.lx.next();
                    return Ok(DiffForm::function(Polynomial::constant(self.vars, c.clone())));
                }
                // `d(expr)` applies the exterior derivative.
                if name == "d" && self.lx.peek2() == Some(&Tok::Sym('(')) {
                    self.lx.next();
                    let inner = self.atom()?;
                    return Ok(exterior_derivative(&inner));
                }
                self.lx.err(format!("unknown identifier `{name}`"))
            }
            Some(Tok::Sym('(')) => {
                self.lx.next();
                let e = self.expr()?;
                if self.lx.next() != Some(Tok::Sym(')')) {
                    self.lx.pos -= 1;
                    return self.lx.err("expected `)`");
                }
                Ok(e)
            }
            Some(_) => self.lx.err("unexpected token"),
            None => self.lx.err("unexpected end of input"),
        }
    }
}

/// Parses a form, reporting errors relative to `line` and column offset `col0`.
pub fn parse_form_at(vars: &Arc<VarSet>, src: &str, line: usize, col0: usize) -> Result<DiffForm> {
    parse_form_with(vars, src, None, line, col0)
}

/// Like [`parse_form_at`], resolving unknown identifiers from `params`.
pub fn parse_form_with(
    vars: &Arc<VarSet>,
    src: &str,
    params: Option<&Params>,
    line: usize,
    col0: usize,
) -> Result<DiffForm> {
    let lx = Lexer::new(src, line, col0)?;
    let mut p = Parser { lx, vars, params };
    if p.lx.peek().is_none() {
        return p.lx.err("empty expression");
    }
    let f = p.expr()?;
    if p.lx.peek().is_some() {
        return p.lx.err("trailing input");
    }
    Ok(f)
}

pub fn parse_form(vars: &Arc<VarSet>, src: &str) -> Result<DiffForm> {
    parse_form_at(vars, src, 1, 0)
}

pub fn parse_polynomial_at(vars: &Arc<VarSet>, src: &str, line: usize, col0: usize) -> Result<Polynomial> {
    parse_polynomial_with(vars, src, None, line, col0)
}

pub fn parse_polynomial_with(
    vars: &Arc<VarSet>,
    src: &str,
    params: Option<&Params>,
    line: usize,
    col0: usize,
) -> Result<Polynomial> {
    let f = parse_form_with(vars, src, params, line, col0)?;
    if f.degree() != 0 && !f.is_zero() {
        return Err(Error::Parse {
            line,
            col: col0 + 1,
            msg: "expected a function, found a form".into(),
        });
    }
    Ok(f.coefficient(&[]))
}

pub fn parse_polynomial(vars: &Arc<VarSet>, src: &str) -> Result<Polynomial> {
    parse_polynomial_at(vars, src, 1, 0)
}

/// Parses a polynomial in the curve parameter `t`.
pub fn parse_unipoly_at(src: &str, line: usize, col0: usize) -> Result<UniPoly> {
    let tv = VarSet::new(vec!["t"], vec![1]).expect("single variable");
    let p = parse_polynomial_at(&tv, src, line, col0)?;
    let mut coeffs = Vec::new();
    for (m, c) in p.terms() {
        let e = m.exponents()[0] as usize;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, Scalar::zero());
        }
        coeffs[e] = c.clone();
    }
    Ok(UniPoly::new(coeffs))
}

pub fn parse_unipoly(src: &str) -> Result<UniPoly> {
    parse_unipoly_at(src, 1, 0)
}

/// Parses a rational literal such as `-3/2`.
pub fn parse_scalar(src: &str) -> Result<Scalar> {
    let s = src.trim();
    let bad = || Error::Parse {
        line: 1,
        col: 1,
        msg: format!("invalid rational `{s}`"),
    };
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(n, d))
}
