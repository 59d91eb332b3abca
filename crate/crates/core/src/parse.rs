//! Text grammar for polynomials.
//!
//! ```text
//! poly   := [sign] term (sign term)*
//! term   := factor ('*'? factor)*
//! factor := atom ('^' integer)?
//! atom   := integer | variable | '(' poly ')'
//! ```
//!
//! Integer coefficients are reduced modulo the characteristic. The printer
//! emits residues in `[0, p)` joined by `+`, which the parser reads back.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::poly::{PolyRing, Polynomial};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a PolyRing,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
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

    fn poly(&mut self) -> Result<Polynomial> {
        let r = self.ring;
        let mut acc = Polynomial::zero();
        let mut negate = false;
        match self.peek() {
            Some(b'+') => self.pos += 1,
            Some(b'-') => {
                self.pos += 1;
                negate = true;
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if negate { r.sub(&acc, &t) } else { r.add(&acc, &t) };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = self.ring.mul(&acc, &f);
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'_' || c == b'(' => {
                    let f = self.factor()?;
                    acc = self.ring.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let e = self.integer_u64()?;
            let e32 = u32::try_from(e).map_err(|_| Error::Syntax {
                pos: start,
                msg: "exponent too large".into(),
            })?;
            // single-term bases take the fast, overflow-checked route
            if base.len() == 1 {
                let (c, m) = base.terms()[0];
                let m = m.checked_pow(e32).ok_or(Error::ExponentOverflow)?;
                let c = self.ring.field().pow(c, e);
                return Ok(self.ring.term(c, m));
            }
            return Ok(self.ring.pow(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.poly()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.ring.field().characteristic() as u64;
                let mut v = 0u64;
                while let Some(&d) = self.src.get(self.pos) {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    v = (v * 10 + (d - b'0') as u64) % p;
                    self.pos += 1;
                }
                Ok(self.ring.constant(v as i64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while let Some(&d) = self.src.get(self.pos) {
                    if !(d.is_ascii_alphanumeric() || d == b'_') {
                        break;
                    }
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.ring.var_index(name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => Err(Error::UnknownVariable {
                        name: name.to_string(),
                        pos: start,
                    }),
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }

    fn integer_u64(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(&d) = self.src.get(self.pos) {
            if !d.is_ascii_digit() {
                break;
            }
            v = match v.checked_mul(10).and_then(|v| v.checked_add((d - b'0') as u64)) {
                Some(v) => v,
                None => return self.err("integer too large"),
            };
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected integer");
        }
        Ok(v)
    }
}

/// Parses `text` into a polynomial of `ring`.
pub fn parse_polynomial(text: &str, ring: &PolyRing) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    if p.peek().is_none() {
        return p.err("empty polynomial");
    }
    let f = p.poly()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(f)
}

/// Prints `f` in the grammar accepted by [`parse_polynomial`].
pub fn format_polynomial(f: &Polynomial, ring: &PolyRing) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let names = ring.var_names();
    let mut out = String::new();
    for (k, &(c, m)) in f.terms().iter().enumerate() {
        if k > 0 {
            out.push('+');
        }
        let mut factors: Vec<String> = Vec::new();
        if c != 1 || m.is_one() {
            factors.push(c.to_string());
        }
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names[i].clone()),
                _ => {
                    let mut s = names[i].clone();
                    let _ = write!(s, "^{e}");
                    factors.push(s);
                }
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}
