//! Parser for genus symbols such as `4_3^-1 3^+1 7^-1` or `2_II^-2`.

use crate::arith;
use crate::error::{Error, Result};
use crate::fqf::{Fqf, JordanComponent};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
    base: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.base + self.pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| {
                self.pos = start;
                self.err("number too large")
            })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }
}

fn component(tok: &str, base: usize) -> Result<JordanComponent> {
    let mut c = Cursor { s: tok.as_bytes(), pos: 0, base };
    let q = c.number()?;
    let Some((p, k)) = arith::prime_power(q) else {
        c.pos = 0;
        return c.err(format!("{q} is not a prime power"));
    };
    let oddity = if c.peek() == Some(b'_') {
        c.pos += 1;
        if p != 2 {
            return c.err("only 2-adic components carry a type");
        }
        if c.s[c.pos..].starts_with(b"II") {
            c.pos += 2;
            None
        } else {
            let t = c.number()?;
            if t > 7 {
                c.pos -= 1;
                return c.err("oddity must be in 0..=7");
            }
            Some(t as u8)
        }
    } else {
        if p == 2 {
            return c.err("2-adic component needs _II or _t");
        }
        None
    };
    c.expect(b'^')?;
    let sign = match c.peek() {
        Some(b'+') => 1,
        Some(b'-') => -1,
        _ => return c.err("expected sign '+' or '-'"),
    };
    c.pos += 1;
    let rank = c.number()?;
    if c.pos != c.s.len() {
        return c.err("trailing characters");
    }
    if rank == 0 || rank > u32::MAX as u64 {
        c.pos -= 1;
        return c.err("rank must be positive");
    }
    let comp = JordanComponent { prime: p, exponent: k, rank: rank as u32, sign, oddity };
    comp.validate().map_err(|e| Error::Parse { pos: base, msg: e.to_string() })?;
    Ok(comp)
}

/// Parses a whitespace separated list of components; `1` is the trivial form.
pub fn parse_symbol(text: &str) -> Result<Fqf> {
    let mut comps = Vec::new();
    let mut seen = Vec::new();
    let trimmed = text.trim();
    if trimmed == "1" {
        return Ok(Fqf::trivial());
    }
    if trimmed.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty symbol".into() });
    }
    let mut offset = 0;
    for tok in text.split_whitespace() {
        let base = offset + text[offset..].find(tok).unwrap();
        offset = base + tok.len();
        let c = component(tok, base)?;
        if seen.contains(&(c.prime, c.exponent)) {
            return Err(Error::Parse { pos: base, msg: "repeated scale".into() });
        }
        seen.push((c.prime, c.exponent));
        comps.push(c);
    }
    Fqf::new(comps)
}
