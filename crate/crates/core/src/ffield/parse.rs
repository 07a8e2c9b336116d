//! Text syntax for field constants, polynomials, rational functions, maps
//! and point literals.
//!
//! Constants use the generator symbol g ("g^2+1"), rational functions the
//! variable t ("(t^2+2*t+1)/(t+2)"), rational maps the variable z over K
//! ("(z^2+t)/z"). Multiplication is explicit ("2*t"). The printers in
//! `poly.rs`/`ratfunc.rs` emit exactly this syntax, so print -> parse is an
//! identity.

use super::{GroundField, Poly, RatFunc};
use crate::error::{FfhError, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Sym(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '0'..='9' => {
                let mut v: u64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(dig) = d.to_digit(10) {
                        v = v
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(dig as u64))
                            .ok_or_else(|| FfhError::parse("integer literal overflows u64"))?;
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Int(v));
            }
            't' | 'g' | 'z' | 'x' | 'y' => {
                out.push(Tok::Sym(c));
                chars.next();
            }
            '+' => {
                out.push(Tok::Plus);
                chars.next();
            }
            '-' => {
                out.push(Tok::Minus);
                chars.next();
            }
            '*' => {
                out.push(Tok::Star);
                chars.next();
            }
            '/' => {
                out.push(Tok::Slash);
                chars.next();
            }
            '^' => {
                out.push(Tok::Caret);
                chars.next();
            }
            '(' => {
                out.push(Tok::LParen);
                chars.next();
            }
            ')' => {
                out.push(Tok::RParen);
                chars.next();
            }
            _ => {
                return Err(FfhError::parse(format!("unexpected character {c:?}")));
            }
        }
    }
    Ok(out)
}

/// Polynomials in z with RatFunc coefficients; little-endian, not trimmed.
#[derive(Clone, Debug)]
struct ZPoly(Vec<RatFunc>);

impl ZPoly {
    fn constant(r: RatFunc) -> ZPoly {
        ZPoly(vec![r])
    }
    fn z(k: &GroundField) -> ZPoly {
        ZPoly(vec![RatFunc::zero(k), RatFunc::one(k)])
    }
    fn trim(mut self) -> ZPoly {
        while self.0.last().map(|c| c.is_zero()) == Some(true) {
            self.0.pop();
        }
        self
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
    fn add(&self, rhs: &ZPoly, k: &GroundField) -> ZPoly {
        let n = self.0.len().max(rhs.0.len());
        let z = RatFunc::zero(k);
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).unwrap_or(&z);
            let b = rhs.0.get(i).unwrap_or(&z);
            out.push(a.add(b, k));
        }
        ZPoly(out).trim()
    }
    fn neg(&self, k: &GroundField) -> ZPoly {
        ZPoly(self.0.iter().map(|c| c.neg(k)).collect())
    }
    fn mul(&self, rhs: &ZPoly, k: &GroundField) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly(vec![]);
        }
        let mut out = vec![RatFunc::zero(k); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b, k), k);
            }
        }
        ZPoly(out).trim()
    }
}

/// A fraction of z-polynomials; the universal value domain for the parser.
#[derive(Clone, Debug)]
pub struct ParsedExpr {
    num: ZPoly,
    den: ZPoly,
}

impl ParsedExpr {
    fn from_zpoly(p: ZPoly, k: &GroundField) -> ParsedExpr {
        ParsedExpr {
            num: p,
            den: ZPoly::constant(RatFunc::one(k)),
        }
    }

    fn add(&self, rhs: &ParsedExpr, k: &GroundField) -> ParsedExpr {
        ParsedExpr {
            num: self.num.mul(&rhs.den, k).add(&rhs.num.mul(&self.den, k), k),
            den: self.den.mul(&rhs.den, k),
        }
    }
    fn neg(&self, k: &GroundField) -> ParsedExpr {
        ParsedExpr {
            num: self.num.neg(k),
            den: self.den.clone(),
        }
    }
    fn mul(&self, rhs: &ParsedExpr, k: &GroundField) -> ParsedExpr {
        ParsedExpr {
            num: self.num.mul(&rhs.num, k),
            den: self.den.mul(&rhs.den, k),
        }
    }
    fn div(&self, rhs: &ParsedExpr, k: &GroundField) -> Result<ParsedExpr> {
        if rhs.num.is_zero() {
            return Err(FfhError::parse("division by zero in expression"));
        }
        Ok(ParsedExpr {
            num: self.num.mul(&rhs.den, k),
            den: self.den.mul(&rhs.num, k),
        })
    }
    fn pow(&self, e: u64, k: &GroundField) -> ParsedExpr {
        let mut acc = ParsedExpr::from_zpoly(ZPoly::constant(RatFunc::one(k)), k);
        for _ in 0..e {
            acc = acc.mul(self, k);
        }
        acc
    }

    /// Extract as an element of K; errors when z survives.
    pub fn into_ratfunc(self, k: &GroundField) -> Result<RatFunc> {
        let num = self.num.trim();
        let den = self.den.trim();
        if num.0.len() > 1 || den.0.len() > 1 {
            return Err(FfhError::parse("unexpected variable z in scalar context"));
        }
        if den.is_zero() {
            return Err(FfhError::parse("division by zero in expression"));
        }
        let n = num.0.first().cloned().unwrap_or(RatFunc::zero(k));
        let d = den.0.first().cloned().unwrap();
        n.div(&d, k)
    }

    /// Extract as a pair (numerator, denominator) of z-polynomials over K.
    pub fn into_map_pair(self, k: &GroundField) -> Result<(Vec<RatFunc>, Vec<RatFunc>)> {
        let num = self.num.trim();
        let den = self.den.trim();
        if den.is_zero() {
            return Err(FfhError::parse("division by zero in map expression"));
        }
        let z = RatFunc::zero(k);
        let mut n = num.0;
        if n.is_empty() {
            n.push(z);
        }
        Ok((n, den.0))
    }
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    k: &'a GroundField,
    allow_z: bool,
    var: char,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }
    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<ParsedExpr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let rhs = self.term()?;
                    acc = acc.add(&rhs, self.k);
                }
                Some(Tok::Minus) => {
                    self.next();
                    let rhs = self.term()?;
                    acc = acc.add(&rhs.neg(self.k), self.k);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ParsedExpr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs, self.k);
                }
                Some(Tok::Slash) => {
                    self.next();
                    let rhs = self.unary()?;
                    acc = acc.div(&rhs, self.k)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<ParsedExpr> {
        if self.peek() == Some(&Tok::Minus) {
            self.next();
            let v = self.unary()?;
            return Ok(v.neg(self.k));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ParsedExpr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            match self.next() {
                Some(Tok::Int(e)) => {
                    if e > 4096 {
                        return Err(FfhError::parse(format!("exponent {e} too large")));
                    }
                    Ok(base.pow(e, self.k))
                }
                _ => Err(FfhError::parse("expected integer exponent after ^")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<ParsedExpr> {
        match self.next() {
            Some(Tok::Int(v)) => Ok(ParsedExpr::from_zpoly(
                ZPoly::constant(RatFunc::constant(self.k, self.k.from_u64(v))),
                self.k,
            )),
            Some(Tok::Sym('t')) => Ok(ParsedExpr::from_zpoly(
                ZPoly::constant(RatFunc::t(self.k)),
                self.k,
            )),
            Some(Tok::Sym('g')) => {
                if self.k.degree() == 1 {
                    return Err(FfhError::parse(
                        "generator symbol g used over a prime field",
                    ));
                }
                Ok(ParsedExpr::from_zpoly(
                    ZPoly::constant(RatFunc::constant(self.k, self.k.generator())),
                    self.k,
                ))
            }
            Some(Tok::Sym(c)) if c == self.var => {
                if !self.allow_z {
                    return Err(FfhError::parse(format!(
                        "variable {c} not allowed in this context"
                    )));
                }
                Ok(ParsedExpr::from_zpoly(ZPoly::z(self.k), self.k))
            }
            Some(Tok::LParen) => {
                let v = self.expr()?;
                if self.next() != Some(Tok::RParen) {
                    return Err(FfhError::parse("missing closing parenthesis"));
                }
                Ok(v)
            }
            other => Err(FfhError::parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn parse_with(s: &str, k: &GroundField, allow_z: bool, var: char) -> Result<ParsedExpr> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(FfhError::parse("empty expression"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        k,
        allow_z,
        var,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(FfhError::parse(format!(
            "trailing input at token {}",
            p.pos
        )));
    }
    Ok(v)
}

pub fn parse_ratfunc(s: &str, k: &GroundField) -> Result<RatFunc> {
    parse_with(s, k, false, 'z')?.into_ratfunc(k)
}

pub fn parse_poly(s: &str, k: &GroundField) -> Result<Poly> {
    parse_ratfunc(s, k)?.as_poly()
}

pub fn parse_elem(s: &str, k: &GroundField) -> Result<super::FFElem> {
    let r = parse_ratfunc(s, k)?;
    let p = r.as_poly()?;
    if !p.is_constant() {
        return Err(FfhError::parse("expected a field constant"));
    }
    Ok(p.coeff(0, k))
}

/// Rational map literal in z over K: returns (numerator, denominator)
/// z-coefficient vectors (little-endian, denominator nonzero).
pub fn parse_map_pair(s: &str, k: &GroundField) -> Result<(Vec<RatFunc>, Vec<RatFunc>)> {
    parse_with(s, k, true, 'z')?.into_map_pair(k)
}

/// Point literal "[a : b]"; returns the raw coordinates.
pub fn parse_point_coords(s: &str, k: &GroundField) -> Result<(RatFunc, RatFunc)> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| FfhError::parse("point literal must be of the form [a : b]"))?;
    // split at the top-level colon
    let mut depth = 0i32;
    let mut split = None;
    for (i, c) in inner.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ':' if depth == 0 => {
                split = Some(i);
                break;
            }
            _ => {}
        }
    }
    let idx = split.ok_or_else(|| FfhError::parse("point literal is missing ':'"))?;
    let a = parse_ratfunc(&inner[..idx], k)?;
    let b = parse_ratfunc(&inner[idx + 1..], k)?;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_spec_syntax() {
        let f3 = GroundField::new(3, 1).unwrap();
        let r = parse_ratfunc("(t^2+2*t+1)/(t+2)", &f3).unwrap();
        // (t+1)^2/(t+2); no common factor
        assert_eq!(r.num().degree(), 2);
        assert_eq!(r.den().degree(), 1);

        let f4 = GroundField::new(2, 2).unwrap();
        let e = parse_elem("g^2+1", &f4).unwrap();
        // g^2 = g+1 mod (g^2+g+1), so g^2+1 = g
        assert_eq!(e, f4.generator());
    }

    #[test]
    fn print_parse_round_trip() {
        let f4 = GroundField::new(2, 2).unwrap();
        for s in [
            "t^2+t+1",
            "(g+1)*t^3+g*t+1",
            "(t^2+g*t)/(t^3+(g+1))",
            "g",
            "0",
            "1",
        ] {
            let r = parse_ratfunc(s, &f4).unwrap();
            let printed = r.to_string_t(&f4);
            let r2 = parse_ratfunc(&printed, &f4).unwrap();
            assert_eq!(r, r2, "round trip through {printed:?}");
        }
    }

    #[test]
    fn parse_map_literal() {
        let f2 = GroundField::new(2, 1).unwrap();
        let (num, den) = parse_map_pair("(z^2+t)/z", &f2).unwrap();
        assert_eq!(num.len(), 3);
        assert_eq!(den.len(), 2);
        assert_eq!(num[0], RatFunc::t(&f2));
        assert!(num[1].is_zero());
        assert_eq!(num[2], RatFunc::one(&f2));
    }

    #[test]
    fn parse_point_literal() {
        let f3 = GroundField::new(3, 1).unwrap();
        let (a, b) = parse_point_coords("[t^2+1 : t]", &f3).unwrap();
        assert_eq!(a.num().degree(), 2);
        assert_eq!(b.num().degree(), 1);
        assert!(parse_point_coords("[t^2+1, t]", &f3).is_err());
    }

    #[test]
    fn rejects_garbage() {
        let f2 = GroundField::new(2, 1).unwrap();
        assert!(parse_ratfunc("t +* 1", &f2).is_err());
        assert!(parse_ratfunc("w^2", &f2).is_err());
        assert!(parse_ratfunc("(t", &f2).is_err());
        assert!(parse_ratfunc("1/0", &f2).is_err());
        assert!(parse_ratfunc("z^2", &f2).is_err());
        assert!(parse_ratfunc("g+1", &f2).is_err()); // prime field has no g
    }
}
