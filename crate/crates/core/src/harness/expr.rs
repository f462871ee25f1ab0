//! Expression language for q-series identities.
//!
//! ```text
//! expr  := term {("+" | "-") term}
//! term  := unary {("*" | "/") unary}
//! unary := "-" unary | pow
//! pow   := atom ["^" ["-"] int]
//! atom  := int | mono | name ["(" arg ")"] | "poch(" arg {"," arg} ";" arg ["," ("inf" | int)] ")" | "(" expr ")"
//! arg   := ["-"] mono
//! mono  := ("w" | "wb") ["q" ["^" int]] | "q" ["^" int]
//! name  := G | H | A | B | C | K | K1..K7 | K4c..K7c | AG(m,i) | ETA(b), optionally suffixed "_sum"
//! ```
//!
//! A bare name is the product side; the `_sum` suffix selects the sum side.

use std::fmt;

use thiserror::Error;

use crate::catalog::{FunctionId, Side};
use crate::exactnum::{BigInt, RootOfUnity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// `ζ q^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono {
    pub zeta: RootOfUnity,
    pub k: usize,
}

impl Mono {
    pub const Q: Mono = Mono { zeta: RootOfUnity::ONE, k: 1 };

    pub fn new(zeta: RootOfUnity, k: usize) -> Self {
        Mono { zeta, k }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.zeta.dsl_prefix())?;
        if self.k == 1 {
            f.write_str("q")
        } else {
            write!(f, "q^{}", self.k)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Mono(Mono),
    Name { id: FunctionId, side: Side, arg: Option<Mono> },
    /// `(a_1, …, a_s; base)_count`, `None` meaning ∞.
    Poch { tops: Vec<Mono>, base: Mono, count: Option<usize> },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    pub fn name(id: FunctionId, side: Side, arg: Option<Mono>) -> Self {
        Expr::Name { id, side, arg }
    }

    pub fn mul(a: Expr, b: Expr) -> Self {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: Expr, b: Expr) -> Self {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Expr, e: i64) -> Self {
        Expr::Pow(Box::new(a), e)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

fn write_side(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Mono(m) => write!(f, "{m}"),
            Expr::Name { id, side, arg } => {
                write!(f, "{id}")?;
                if *side == Side::Sum {
                    f.write_str("_sum")?;
                }
                if let Some(m) = arg {
                    write!(f, "({m})")?;
                }
                Ok(())
            }
            Expr::Poch { tops, base, count } => {
                let tops: Vec<String> = tops.iter().map(|m| m.to_string()).collect();
                write!(f, "poch({};{base}", tops.join(","))?;
                if let Some(n) = count {
                    write!(f, ",{n}")?;
                }
                f.write_str(")")
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                write_side(f, a, 3)
            }
            Expr::Add(a, b) => {
                write_side(f, a, 1)?;
                f.write_str("+")?;
                write_side(f, b, 2)
            }
            Expr::Sub(a, b) => {
                write_side(f, a, 1)?;
                f.write_str("-")?;
                write_side(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_side(f, a, 2)?;
                f.write_str("*")?;
                write_side(f, b, 3)
            }
            Expr::Div(a, b) => {
                write_side(f, a, 2)?;
                f.write_str("/")?;
                write_side(f, b, 3)
            }
            Expr::Pow(a, e) => {
                match **a {
                    Expr::Name { .. } | Expr::Poch { .. } => write!(f, "{a}")?,
                    _ => write!(f, "({a})")?,
                }
                write!(f, "^{e}")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, msg: msg.into() })
    }

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

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.err("integer out of range"))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
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

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::mul(lhs, self.unary()?);
            } else if self.eat(b'/') {
                lhs = Expr::div(lhs, self.unary()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.pow()
    }

    fn pow(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        let e = self.uint()?;
        let e = i64::try_from(e).or_else(|_| self.err("exponent out of range"))?;
        Ok(Expr::pow(base, if neg { -e } else { e }))
    }

    /// `q`, `q^k`, `w`, `wq^k`, `wb`, `wbq^k` after an optional sign.
    fn mono_rest(&mut self, zeta: RootOfUnity, word: &str) -> Result<Mono, ParseError> {
        let (zeta, has_q) = match word {
            "q" => (zeta, true),
            "w" => (zeta.mul(RootOfUnity::OMEGA), false),
            "wb" => (zeta.mul(RootOfUnity::OMEGA_BAR), false),
            "wq" => (zeta.mul(RootOfUnity::OMEGA), true),
            "wbq" => (zeta.mul(RootOfUnity::OMEGA_BAR), true),
            _ => return self.err(format!("expected a monomial, found `{word}`")),
        };
        if !has_q {
            return Ok(Mono::new(zeta, 0));
        }
        if self.src.get(self.pos) == Some(&b'^') {
            self.pos += 1;
            let k = self.uint()?;
            return Ok(Mono::new(zeta, k as usize));
        }
        Ok(Mono::new(zeta, 1))
    }

    fn arg(&mut self) -> Result<Mono, ParseError> {
        let zeta = if self.eat(b'-') { RootOfUnity::NEG_ONE } else { RootOfUnity::ONE };
        let word = self.ident();
        self.mono_rest(zeta, &word)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(BigInt::from(self.uint()?))),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let word = self.ident();
                match word.as_str() {
                    "q" | "w" | "wb" | "wq" | "wbq" => Ok(Expr::Mono(self.mono_rest(RootOfUnity::ONE, &word)?)),
                    "poch" => self.poch(),
                    _ => self.name(start, word),
                }
            }
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
        }
    }

    fn poch(&mut self) -> Result<Expr, ParseError> {
        self.expect(b'(')?;
        let mut tops = vec![self.arg()?];
        while self.eat(b',') {
            tops.push(self.arg()?);
        }
        self.expect(b';')?;
        let base = self.arg()?;
        let mut count = None;
        if self.eat(b',') {
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                count = Some(self.uint()? as usize);
            } else if self.ident() != "inf" {
                return self.err("expected `inf` or a count");
            }
        }
        self.expect(b')')?;
        Ok(Expr::Poch { tops, base, count })
    }

    fn name(&mut self, start: usize, word: String) -> Result<Expr, ParseError> {
        let (word, side) = match word.strip_suffix("_sum") {
            Some(w) => (w.to_string(), Side::Sum),
            None => (word, Side::Product),
        };
        let mut text = word.clone();
        if word == "AG" || word == "ETA" {
            self.expect(b'(')?;
            let mut parts = vec![self.uint()?.to_string()];
            while self.eat(b',') {
                parts.push(self.uint()?.to_string());
            }
            self.expect(b')')?;
            text = format!("{word}({})", parts.join(","));
        }
        let id: FunctionId = text
            .parse()
            .map_err(|e: crate::catalog::CatalogError| ParseError { pos: start, msg: e.to_string() })?;
        let arg = if self.eat(b'(') {
            let m = self.arg()?;
            self.expect(b')')?;
            if m.k == 0 {
                return self.err("substitution needs a positive power of q");
            }
            Some(m)
        } else {
            None
        };
        Ok(Expr::Name { id, side, arg })
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Expr {
        parse_expr(s).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn substitution_nodes() {
        let e = p("G(q^16) + q*H(-q^4)");
        let Expr::Add(a, b) = e else { panic!() };
        assert!(matches!(*a, Expr::Name { arg: Some(Mono { k: 16, .. }), .. }));
        let Expr::Mul(_, h) = *b else { panic!() };
        assert_eq!(*h, Expr::name("H".parse().unwrap(), Side::Product, Some(Mono::new(RootOfUnity::NEG_ONE, 4))));
    }

    #[test]
    fn poch_atoms() {
        assert_eq!(
            p("poch(q;q^1)^-1"),
            Expr::pow(Expr::Poch { tops: vec![Mono::Q], base: Mono::Q, count: None }, -1)
        );
        assert_eq!(
            p("poch(-q, wq^2; q^3, 4)"),
            Expr::Poch {
                tops: vec![Mono::new(RootOfUnity::NEG_ONE, 1), Mono::new(RootOfUnity::OMEGA, 2)],
                base: Mono::new(RootOfUnity::ONE, 3),
                count: Some(4),
            }
        );
        assert_eq!(p("poch(q;q,inf)"), p("poch(q;q)"));
    }

    #[test]
    fn names_and_sides() {
        assert!(matches!(p("K6(q)*K7b(q)"), Expr::Mul(..)));
        assert!(matches!(p("G_sum"), Expr::Name { side: Side::Sum, arg: None, .. }));
        assert!(matches!(p("AG(11,3)(q^8)"), Expr::Name { arg: Some(Mono { k: 8, .. }), .. }));
        assert!(matches!(p("ETA(24)"), Expr::Name { .. }));
        assert_eq!(p("-wbq^2"), Expr::Neg(Box::new(Expr::Mono(Mono::new(RootOfUnity::OMEGA_BAR, 2)))));
    }

    #[test]
    fn errors() {
        for bad in ["", "G(", "Z(q)", "K1c", "poch(q;q", "1 +", "G(q^0)", "q^x", "AG(4,1)", "G)"] {
            assert!(parse_expr(bad).is_err(), "{bad}");
        }
        let e = parse_expr("G + $").unwrap_err();
        assert_eq!(e.pos, 4);
    }

    #[test]
    fn print_roundtrip() {
        for s in [
            "poch(q^8;q^8)/poch(q^2;q^2)*(q*H(-q^4)+G(q^16))",
            "-(q*K2(-q^2)-K1(q^8))/(poch(q^2;q^4)^2*poch(-q^5,-q^13;q^18))",
            "q^2*(-AG(11,3)(-q^2)+AG(11,4)(q^8))",
            "K6*K7c-(q^3)^2-2*-q",
            "a_sum",
        ] {
            if let Ok(e) = parse_expr(s) {
                assert_eq!(p(&e.to_string()), e, "{s} -> {e}");
            }
        }
    }
}
