//! Text grammar for scalars: integers, `i`, `sqrt(q)`, `+ - * /` and parentheses.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::rational::Rational;
use crate::scalar::Scalar;
use crate::Error;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    I,
    Sqrt,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
}

fn lex(s: &str) -> Result<Vec<Tok>, Error> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < b.len() {
        let c = b[k];
        match c {
            b' ' | b'\t' => k += 1,
            b'0'..=b'9' => {
                let start = k;
                while k < b.len() && b[k].is_ascii_digit() {
                    k += 1;
                }
                let n: i64 = s[start..k]
                    .parse()
                    .map_err(|_| Error::Parse(format!("integer out of range: {}", &s[start..k])))?;
                out.push(Tok::Num(n));
            }
            b'(' => {
                out.push(Tok::LParen);
                k += 1;
            }
            b')' => {
                out.push(Tok::RParen);
                k += 1;
            }
            b'+' => {
                out.push(Tok::Plus);
                k += 1;
            }
            b'-' => {
                out.push(Tok::Minus);
                k += 1;
            }
            b'*' => {
                out.push(Tok::Star);
                k += 1;
            }
            b'/' => {
                out.push(Tok::Slash);
                k += 1;
            }
            _ if s[k..].starts_with("sqrt") => {
                out.push(Tok::Sqrt);
                k += 4;
            }
            b'i' => {
                out.push(Tok::I);
                k += 1;
            }
            _ => return Err(Error::Parse(format!("unexpected character {:?} at {k}", c as char))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), Error> {
        match self.bump() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(Error::Parse(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Scalar, Error> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, Error> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let d = self.unary()?;
                    acc = &acc * &d.inv()?;
                }
                // Implicit product such as `2i` or `3sqrt(2)`.
                Some(Tok::I) | Some(Tok::Sqrt) | Some(Tok::LParen) => {
                    acc = &acc * &self.unary()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar, Error> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Scalar, Error> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Scalar::from_rational(Rational::int(n))),
            Some(Tok::I) => Ok(Scalar::i()),
            Some(Tok::Sqrt) => {
                self.expect(Tok::LParen)?;
                let q = self.expr()?;
                self.expect(Tok::RParen)?;
                let root = q
                    .sqrt_if_expressible()
                    .map_err(|_| Error::Parse(format!("sqrt argument must be rational: {q}")))?;
                root.ok_or_else(|| Error::Parse(format!("sqrt({q}) is not expressible")))
            }
            Some(Tok::LParen) => {
                let v = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

/// Parses a scalar literal such as `3/4*sqrt(3)`, `sqrt(2)/16` or `-i`.
pub fn parse_scalar(s: &str) -> Result<Scalar, Error> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse(String::from("empty scalar")));
    }
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(v)
}
