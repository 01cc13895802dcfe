use std::collections::HashMap;

use num_bigint::BigInt;

use super::polynomial::Polynomial;
use super::ratexpr::RatExpr;
use super::rational::Rational;
use super::space::Space;
use crate::error::{Error, Result};

/// Extra names available to the parser, e.g. `D1` bound to a derivative.
pub type Bindings = HashMap<String, RatExpr>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Num(t.parse().unwrap()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_' || cs[i] == '\'') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    space: &'a Space,
    bindings: &'a Bindings,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatExpr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatExpr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.try_mul(&self.unary()?)?;
            } else if self.eat('/') {
                acc = acc.try_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatExpr> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatExpr> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let e = match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(k)) => {
                    self.pos += 1;
                    Rational::from_integer(k)
                }
                // parenthesised exponent, must fold to an integer constant
                Some(Tok::Op('(')) => self.atom()?.as_constant().ok_or_else(|| Error::Parse("exponent is not a constant".into()))?,
                _ => return Err(Error::Parse("expected integer exponent".into())),
            };
            if !e.is_integer() {
                return Err(Error::Parse(format!("non-integer exponent {e}")));
            }
            let e = i32::try_from(e.to_integer()).map_err(|_| Error::Parse("exponent too large".into()))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatExpr> {
        let nv = self.space.nvars();
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(k)) => {
                self.pos += 1;
                Ok(RatExpr::constant(nv, Rational::from_integer(k)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(v) = self.bindings.get(&name) {
                    return Ok(v.clone());
                }
                match self.space.index_of(&name) {
                    Some(v) => Ok(RatExpr::var(nv, v)),
                    None => Err(Error::Parse(format!("unknown name '{name}'"))),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                Ok(e)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

pub fn parse_expr(space: &Space, bindings: &Bindings, text: &str) -> Result<RatExpr> {
    let mut p = Parser { toks: lex(text)?, pos: 0, space, bindings };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}

pub fn parse_poly(space: &Space, text: &str) -> Result<Polynomial> {
    let e = parse_expr(space, &Bindings::new(), text)?;
    e.as_polynomial().cloned().ok_or_else(|| Error::Parse(format!("'{text}' is not a polynomial")))
}
