//! Recursive-descent parser for ring element literals.

use num_bigint::BigInt;

use super::{RingElem, RingSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn err(col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line: 0, col, msg: msg.into() }
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = s.chars().collect();
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
            let text: String = chars[start..i].iter().collect();
            out.push((start + 1, Tok::Int(text.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start + 1, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^(),".contains(c) {
            out.push((i + 1, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(err(i + 1, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    ring: RingSpec,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(self.col(), format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<RingElem> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RingElem> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.checked_mul(&self.unary()?)?;
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let col = self.col();
                self.pos += 1;
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|e| match e {
                    Error::DivisionByZero => err(col, "division by zero"),
                    other => other,
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RingElem> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<RingElem> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let col = self.col();
        let e = match self.peek() {
            Some(Tok::Int(n)) => u32::try_from(n.clone()).map_err(|_| err(col, "exponent too large"))?,
            _ => return Err(err(col, "expected integer exponent")),
        };
        self.pos += 1;
        let p = base.pow(e);
        if neg {
            p.try_inv()
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> Result<RingElem> {
        let col = self.col();
        let tok = self.peek().cloned().ok_or_else(|| err(col, "unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(self.ring.from_bigint(n)),
            Tok::Ident(name) => match name.as_str() {
                "w" | "omega" => self.ring.omega(),
                "i" => self.ring.imag(),
                "sqrt2" => self.ring.sqrt2(),
                _ => Err(err(col, format!("unknown constant `{name}`"))),
            },
            Tok::Sym('(') => {
                let first = self.expr()?;
                if !self.eat(',') {
                    self.expect(')')?;
                    return Ok(first);
                }
                let mut coords = vec![first];
                loop {
                    coords.push(self.expr()?);
                    if !self.eat(',') {
                        break;
                    }
                }
                self.expect(')')?;
                if coords.len() != 4 {
                    return Err(err(col, "coordinate tuples have four entries"));
                }
                let mut acc = coords[0].clone();
                for (k, c) in coords.iter().enumerate().skip(1) {
                    if !c.is_zero() {
                        acc = &acc + &(c * &self.ring.omega()?.pow(k as u32));
                    }
                }
                Ok(acc)
            }
            Tok::Sym(c) => Err(err(col, format!("unexpected `{c}`"))),
        }
    }
}

pub(super) fn parse_elem(ring: RingSpec, s: &str) -> Result<RingElem> {
    let s = s.trim();
    if let Some((lhs, rhs)) = s.split_once("mod") {
        let p: u64 = rhs.trim().parse().map_err(|_| err(lhs.len() + 4, "bad modulus"))?;
        if ring != RingSpec::Prime(p) {
            return Err(Error::RingMismatch { left: ring.name(), right: format!("fp:{p}") });
        }
        return parse_elem(ring, lhs);
    }
    let toks = lex(s)?;
    let mut p = Parser { ring, toks, pos: 0, end: s.chars().count() + 1 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(p.col(), "trailing input"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        let q = RingSpec::Rational;
        assert_eq!(parse_elem(q, "3/4").unwrap().to_string(), "3/4");
        assert_eq!(parse_elem(q, "-(1 + 2)*2").unwrap().to_string(), "-6/1");
        assert_eq!(parse_elem(q, "2^-2").unwrap().to_string(), "1/4");
        let d = RingSpec::Dyadic8;
        assert_eq!(parse_elem(d, "w^4").unwrap(), d.from_i64(-1));
        assert_eq!(parse_elem(d, "1/sqrt2").unwrap(), d.inv_sqrt2().unwrap());
        assert_eq!(parse_elem(d, "i").unwrap(), d.omega().unwrap().pow(2));
        let e = parse_elem(d, "(1,2,3,4)/2^3").unwrap();
        assert_eq!(parse_elem(d, &e.to_string()).unwrap(), e);
        let p = RingSpec::Prime(7);
        assert_eq!(parse_elem(p, "5 mod 7").unwrap(), p.from_i64(5));
        assert_eq!(parse_elem(p, "1/2").unwrap(), p.from_i64(4));
    }

    #[test]
    fn round_trip_every_ring() {
        for ring in [RingSpec::Int, RingSpec::Rational, RingSpec::Cyclo8, RingSpec::Prime(11)] {
            let e = ring.from_i64(-5);
            assert_eq!(parse_elem(ring, &e.to_string()).unwrap(), e);
        }
        let c = RingSpec::Cyclo8;
        let e = parse_elem(c, "(1/3, -2, 0, 5/7)").unwrap();
        assert_eq!(parse_elem(c, &e.to_string()).unwrap(), e);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_elem(RingSpec::Rational, "w"), Err(Error::UnsupportedConstant { .. })));
        assert!(matches!(parse_elem(RingSpec::Int, "1/2"), Err(Error::NotInvertible(_))));
        assert!(matches!(parse_elem(RingSpec::Int, "1 +"), Err(Error::Parse { .. })));
        assert!(matches!(parse_elem(RingSpec::Int, "3 $"), Err(Error::Parse { col: 3, .. })));
        assert!(parse_elem(RingSpec::Rational, "1/0").is_err());
        assert!(parse_elem(RingSpec::Prime(5), "1 mod 7").is_err());
    }
}
