//! Shared reader and writer for the sum-of-products text format used by
//! multivectors and polynomials, e.g. `1/2*e13 - (1+i)*e2*x1^2*y3`.

use crate::error::{Error, Result};
use crate::exactnum::{GaussianRational as Gr, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    X,
    Y,
    Z,
    Zb,
    U,
    Ub,
}

impl VarKind {
    pub fn name(self) -> &'static str {
        match self {
            VarKind::X => "x",
            VarKind::Y => "y",
            VarKind::Z => "z",
            VarKind::Zb => "zb",
            VarKind::U => "u",
            VarKind::Ub => "ub",
        }
    }
}

/// One parsed product: scalar, ordered generator list, and variable powers.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTerm {
    pub coef: Gr,
    pub generators: Vec<usize>,
    pub vars: Vec<(VarKind, usize, u32)>,
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &b in &self.src[..pos.min(self.src.len())] {
            if b == b'\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.location(self.pos);
        Error::parse(line, col, msg)
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

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn number(&mut self) -> Result<Rational> {
        let start = self.pos;
        let int = self.digits();
        if int.is_empty() {
            return Err(self.err("expected a number"));
        }
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            let frac = self.digits();
            if frac.is_empty() {
                return Err(self.err("expected digits after decimal point"));
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
            return text.parse().map_err(|_| self.err("invalid decimal"));
        }
        let mut value: Rational = int.parse().map_err(|_| self.err("invalid integer"))?;
        self.skip_ws();
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            self.skip_ws();
            let den = self.digits();
            if den.is_empty() {
                return Err(self.err("expected denominator"));
            }
            let den: Rational = den.parse().map_err(|_| self.err("invalid denominator"))?;
            value = value.checked_div(&den).ok_or_else(|| self.err("zero denominator"))?;
        }
        Ok(value)
    }

    fn index(&mut self) -> Result<usize> {
        let d = self.digits();
        d.parse::<usize>().map_err(|_| self.err("expected a variable index"))
    }

    fn sum(&mut self, allow_symbols: bool) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            let mut term = self.product(allow_symbols)?;
            if negate {
                term.coef = -term.coef;
            }
            terms.push(term);
            first = false;
        }
        Ok(terms)
    }

    fn product(&mut self, allow_symbols: bool) -> Result<RawTerm> {
        let mut term = RawTerm { coef: Gr::one(), generators: Vec::new(), vars: Vec::new() };
        loop {
            self.factor(&mut term, allow_symbols)?;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(term)
    }

    fn factor(&mut self, term: &mut RawTerm, allow_symbols: bool) -> Result<()> {
        let Some(c) = self.peek() else {
            return Err(self.err("unexpected end of input"));
        };
        match c {
            b'0'..=b'9' => {
                let r = self.number()?;
                term.coef = term.coef.scale(&r);
            }
            b'(' => {
                self.pos += 1;
                let inner = self.sum(false)?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                let mut v = Gr::zero();
                for t in inner {
                    v += &t.coef;
                }
                term.coef = &term.coef * &v;
            }
            b'i' => {
                self.pos += 1;
                term.coef = &term.coef * &Gr::i();
            }
            b'e' if allow_symbols => {
                self.pos += 1;
                match self.src.get(self.pos) {
                    Some(b'(') | Some(b'{') => {
                        let close = if self.src[self.pos] == b'(' { b')' } else { b'}' };
                        self.pos += 1;
                        loop {
                            self.skip_ws();
                            let idx = self.index()?;
                            if idx == 0 {
                                return Err(self.err("generator indices start at 1"));
                            }
                            term.generators.push(idx);
                            match self.peek() {
                                Some(b',') => self.pos += 1,
                                Some(b) if b == close => {
                                    self.pos += 1;
                                    break;
                                }
                                _ => return Err(self.err("expected `,` or closing bracket")),
                            }
                        }
                    }
                    Some(d) if d.is_ascii_digit() => {
                        let ds = self.digits();
                        for ch in ds.bytes() {
                            let idx = (ch - b'0') as usize;
                            if idx == 0 {
                                return Err(self.err("generator indices start at 1"));
                            }
                            term.generators.push(idx);
                        }
                    }
                    _ => return Err(self.err("expected generator indices after `e`")),
                }
            }
            b'x' | b'y' | b'z' | b'u' if allow_symbols => {
                self.pos += 1;
                let barred = self.src.get(self.pos) == Some(&b'b');
                if barred {
                    self.pos += 1;
                }
                let kind = match (c, barred) {
                    (b'x', false) => VarKind::X,
                    (b'y', false) => VarKind::Y,
                    (b'z', false) => VarKind::Z,
                    (b'z', true) => VarKind::Zb,
                    (b'u', false) => VarKind::U,
                    (b'u', true) => VarKind::Ub,
                    _ => return Err(self.err("unknown variable")),
                };
                let idx = self.index()?;
                if idx == 0 {
                    return Err(self.err("variable indices start at 1"));
                }
                let mut pow = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    pow = self.digits().parse().map_err(|_| self.err("expected exponent"))?;
                }
                term.vars.push((kind, idx, pow));
            }
            _ => return Err(self.err(format!("unexpected character `{}`", c as char))),
        }
        Ok(())
    }
}

/// Parses a full expression; every byte must be consumed.
pub fn parse_sum(src: &str) -> Result<Vec<RawTerm>> {
    let mut cur = Cursor { src: src.as_bytes(), pos: 0 };
    if cur.peek().is_none() {
        return Err(cur.err("empty expression"));
    }
    let terms = cur.sum(true)?;
    if cur.peek().is_some() {
        return Err(cur.err("trailing input"));
    }
    Ok(terms)
}

/// Appends one signed term; `factors` are the already rendered symbol factors.
pub fn push_term(out: &mut String, coef: &Gr, factors: &[String]) {
    let first = out.is_empty();
    let (neg, mag) = split_sign(coef);
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let coef_text = if mag.is_one() && !factors.is_empty() { String::new() } else { mag.to_string() };
    let mut parts: Vec<&str> = Vec::new();
    if !coef_text.is_empty() {
        parts.push(&coef_text);
    }
    for f in factors {
        parts.push(f);
    }
    out.push_str(&parts.join("*"));
}

/// Splits off a leading minus sign when the coefficient is real or purely imaginary.
fn split_sign(c: &Gr) -> (bool, Gr) {
    if c.im.is_zero() && c.re.signum() < 0 {
        return (true, -c);
    }
    if c.re.is_zero() && c.im.signum() < 0 {
        return (true, -c);
    }
    (false, c.clone())
}

pub fn render_blade(blade: u32) -> Option<String> {
    if blade == 0 {
        return None;
    }
    let idx: Vec<usize> = (0..32).filter(|i| blade & (1 << i) != 0).map(|i| i + 1).collect();
    if idx.iter().all(|&i| i < 10) {
        Some(format!("e{}", idx.iter().map(|i| i.to_string()).collect::<String>()))
    } else {
        Some(format!("e({})", idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products_and_signs() {
        let t = parse_sum("1/2*e13 - (1+i)*e2*x1^2*y3 + i").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].generators, vec![1, 3]);
        assert_eq!(t[1].coef, "-1-i".parse().unwrap());
        assert_eq!(t[1].vars, vec![(VarKind::X, 1, 2), (VarKind::Y, 3, 1)]);
        assert_eq!(t[2].coef, Gr::i());
    }

    #[test]
    fn reports_position() {
        match parse_sum("x1 +\n  2*q") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 5)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_sum("").is_err());
        assert!(parse_sum("e0").is_err());
    }

    #[test]
    fn long_generator_lists() {
        let t = parse_sum("e(2,11)*zb3*ub1").unwrap();
        assert_eq!(t[0].generators, vec![2, 11]);
        assert_eq!(t[0].vars, vec![(VarKind::Zb, 3, 1), (VarKind::Ub, 1, 1)]);
        assert_eq!(render_blade((1 << 1) | (1 << 10)).unwrap(), "e(2,11)");
    }
}
