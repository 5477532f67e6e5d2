//! Polynomial expressions: `expr := ['+'|'-'] term (('+'|'-') term)*`,
//! `term := factor ('*' factor)*`, `factor := atom ('^' nat)*`,
//! `atom := int ['/' int] | name | '(' expr ')'`. Products keep their order.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::findim::StructAlgebra;
use crate::linalg::Row;
use crate::ring::{Poly, QRing};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num { num: BigInt, den: BigInt, pos: usize },
    Var { name: String, pos: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { position, message: message.into() })
}

impl Parser<'_> {
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

    fn digits(&mut self) -> Option<(BigInt, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Some((s.parse().expect("digits parse"), start))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat(b'-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat(b'+');
            self.term()?
        };
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
        let mut lhs = self.factor()?;
        while self.eat(b'*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while self.eat(b'^') {
            let Some((n, at)) = self.digits() else {
                return err(self.pos, "expected an exponent");
            };
            let Ok(e) = u32::try_from(n) else {
                return err(at, "exponent too large");
            };
            base = Expr::Pow(Box::new(base), e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return err(self.pos, "expected `)`");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let (num, pos) = self.digits().expect("digit present");
                let den = if self.eat(b'/') {
                    match self.digits() {
                        Some((d, _)) => d,
                        None => return err(self.pos, "expected a denominator"),
                    }
                } else {
                    BigInt::one()
                };
                Ok(Expr::Num { num, den, pos })
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii").to_string();
                Ok(Expr::Var { name, pos: start })
            }
            Some(_) => err(self.pos, "expected a number, a name or `(`"),
            None => err(self.pos, "unexpected end of input"),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return err(p.pos, "unexpected trailing input");
    }
    Ok(e)
}

/// Split a comma-separated list at top level, keeping byte offsets for error reporting.
fn split_list(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

fn shifted<T>(r: Result<T>, offset: usize) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { position, message } => Error::Parse { position: position + offset, message },
        other => other,
    })
}

/// Something polynomial expressions can be evaluated in.
pub trait Target {
    type Elem;
    fn scalar(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;
    fn variable(&self, name: &str) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn one(&self) -> Self::Elem;
}

impl Target for QRing {
    type Elem = Poly;

    fn scalar(&self, num: &BigInt, den: &BigInt) -> Result<Poly> {
        Ok(self.constant(self.field().from_ratio(num, den)?))
    }

    fn variable(&self, name: &str) -> Result<Poly> {
        self.var_index(name).map(|i| self.var(i)).ok_or_else(|| Error::UnknownVariable(name.into()))
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        QRing::add(self, a, b)
    }

    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        QRing::sub(self, a, b)
    }

    fn neg(&self, a: &Poly) -> Poly {
        QRing::neg(self, a)
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        QRing::mul(self, a, b)
    }

    fn one(&self) -> Poly {
        QRing::one(self)
    }
}

impl Target for StructAlgebra {
    type Elem = Row;

    fn scalar(&self, num: &BigInt, den: &BigInt) -> Result<Row> {
        let c: Scalar = self.field().from_ratio(num, den)?;
        Ok(self.unit().iter().map(|u| u * &c).collect())
    }

    fn variable(&self, name: &str) -> Result<Row> {
        self.labels()
            .iter()
            .position(|l| l == name)
            .map(|i| self.basis_vector(i))
            .ok_or_else(|| Error::UnknownVariable(name.into()))
    }

    fn add(&self, a: &Row, b: &Row) -> Row {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn sub(&self, a: &Row, b: &Row) -> Row {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    fn neg(&self, a: &Row) -> Row {
        a.iter().map(|x| -x).collect()
    }

    fn mul(&self, a: &Row, b: &Row) -> Row {
        StructAlgebra::mul(self, a, b)
    }

    fn one(&self) -> Row {
        self.unit().clone()
    }
}

impl Expr {
    pub fn eval<T: Target>(&self, target: &T) -> Result<T::Elem> {
        Ok(match self {
            Expr::Num { num, den, pos } => {
                if den.sign() == num_bigint::Sign::NoSign {
                    return err(*pos, "zero denominator");
                }
                target.scalar(num, den)?
            }
            Expr::Var { name, .. } => target.variable(name)?,
            Expr::Neg(a) => target.neg(&a.eval(target)?),
            Expr::Add(a, b) => target.add(&a.eval(target)?, &b.eval(target)?),
            Expr::Sub(a, b) => target.sub(&a.eval(target)?, &b.eval(target)?),
            Expr::Mul(a, b) => target.mul(&a.eval(target)?, &b.eval(target)?),
            Expr::Pow(a, n) => {
                let base = a.eval(target)?;
                let mut acc = target.one();
                for _ in 0..*n {
                    acc = target.mul(&acc, &base);
                }
                acc
            }
        })
    }
}

pub fn parse_in<T: Target>(text: &str, target: &T) -> Result<T::Elem> {
    parse_expr(text)?.eval(target)
}

pub fn parse_poly(text: &str, ring: &QRing) -> Result<Poly> {
    parse_in(text, ring)
}

/// Comma-separated generators; an empty or blank list yields no generators.
pub fn parse_list_in<T: Target>(text: &str, target: &T) -> Result<Vec<T::Elem>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_list(text)
        .into_iter()
        .map(|(off, part)| shifted(parse_in(part, target), off))
        .collect()
}

pub fn parse_poly_list(text: &str, ring: &QRing) -> Result<Vec<Poly>> {
    parse_list_in(text, ring)
}
