//! The bundled table of finite symplectic groups with their coinvariant
//! lattice symbols and prime conditions.

mod symbol;

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::legendre;
use crate::error::{Error, Result};
use crate::fqf::Fqf;

pub use symbol::parse_symbol;

const BUILTIN: &str = include_str!("../../data/hm.psv");

/// Primes for which a row is expected to embed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCondition {
    pub any: bool,
    pub primes: Vec<u64>,
    /// `(n/p) = -1` also qualifies.
    pub nonresidue_of: Option<i64>,
}

impl PrimeCondition {
    /// `any`, or clauses joined by ` or `: a comma-separated prime list or
    /// `(n/p)=-1`. Errors carry the byte offset of the offending clause.
    pub fn parse(text: &str) -> Result<Self> {
        let lead = text.len() - text.trim_start().len();
        let t = text.trim();
        let mut c = PrimeCondition { any: false, primes: Vec::new(), nonresidue_of: None };
        if t == "any" {
            c.any = true;
            return Ok(c);
        }
        let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
        let mut offset = lead;
        for part in t.split(" or ") {
            let pos = offset + (part.len() - part.trim_start().len());
            offset += part.len() + 4;
            let part = part.trim();
            if part.is_empty() {
                return Err(err(pos, "empty clause"));
            }
            if let Some(rest) = part.strip_prefix('(') {
                let n = rest
                    .strip_suffix("/p)=-1")
                    .and_then(|n| n.parse::<i64>().ok())
                    .ok_or_else(|| err(pos, "expected (n/p)=-1"))?;
                if c.nonresidue_of.replace(n).is_some() {
                    return Err(err(pos, "more than one residue clause"));
                }
            } else {
                let mut q_off = pos;
                for q in part.split(',') {
                    let q_pos = q_off + (q.len() - q.trim_start().len());
                    q_off += q.len() + 1;
                    let v: u64 = q.trim().parse().map_err(|_| err(q_pos, "expected a prime"))?;
                    if !crate::arith::is_prime(v) {
                        return Err(err(q_pos, "expected a prime"));
                    }
                    c.primes.push(v);
                }
            }
        }
        Ok(c)
    }

    pub fn holds(&self, p: u64) -> bool {
        self.any
            || self.primes.contains(&p)
            || self.nonresidue_of.is_some_and(|n| legendre(n, p) == -1)
    }
}

impl fmt::Display for PrimeCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.any {
            return f.write_str("any");
        }
        let mut parts = Vec::new();
        if !self.primes.is_empty() {
            parts.push(self.primes.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","));
        }
        if let Some(n) = self.nonresidue_of {
            parts.push(format!("({n}/p)=-1"));
        }
        f.write_str(&parts.join(" or "))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HMRecord {
    pub number: u32,
    pub rank: u32,
    pub group: String,
    pub order: u64,
    pub symbol_text: String,
    #[serde(skip)]
    pub symbol: Fqf,
    pub condition: PrimeCondition,
    /// The symbol as first printed, when the 2-adic part was corrected.
    pub original_symbol: Option<String>,
}

fn unquote(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('"').and_then(|s| s.strip_suffix('"')).unwrap_or(s)
}

/// Parses every row it can; failures are returned per line rather than
/// aborting. Duplicate numbers count as failures.
pub fn parse_table_lenient(text: &str) -> (Vec<HMRecord>, Vec<Error>) {
    let mut out: Vec<HMRecord> = Vec::new();
    let mut errors = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match parse_row(line) {
            Ok(r) if out.iter().any(|x| x.number == r.number) => {
                errors.push(Error::Table(format!("line {}: duplicate number {}", lineno + 1, r.number)))
            }
            Ok(r) => out.push(r),
            Err(m) => errors.push(Error::Table(format!("line {}: {m}", lineno + 1))),
        }
    }
    (out, errors)
}

fn parse_row(line: &str) -> std::result::Result<HMRecord, String> {
    let f: Vec<&str> = line.split('|').collect();
    if f.len() != 6 && f.len() != 7 {
        return Err("expected 6 or 7 fields".into());
    }
    let symbol_text = unquote(f[4]).to_string();
    let symbol = parse_symbol(&symbol_text).map_err(|e| e.to_string())?;
    let rank: u32 = f[1].trim().parse().map_err(|_| "bad rank")?;
    if rank > 21 || symbol.length() > rank {
        return Err(format!("rank {rank} is inconsistent with {symbol_text}"));
    }
    let order: u64 = f[3].trim().parse().map_err(|_| "bad order")?;
    if order == 0 {
        return Err("order must be positive".into());
    }
    Ok(HMRecord {
        number: f[0].trim().parse().map_err(|_| "bad number")?,
        rank,
        group: f[2].trim().to_string(),
        order,
        symbol_text,
        symbol,
        condition: PrimeCondition::parse(unquote(f[5])).map_err(|e| e.to_string())?,
        original_symbol: f.get(6).map(|s| unquote(s).to_string()),
    })
}

/// Strict parse: the first bad row is an error.
pub fn parse_table(text: &str) -> Result<Vec<HMRecord>> {
    let (records, mut errors) = parse_table_lenient(text);
    match errors.is_empty() {
        true => Ok(records),
        false => Err(errors.remove(0)),
    }
}

pub fn load_table(path: &Path) -> Result<Vec<HMRecord>> {
    parse_table(&std::fs::read_to_string(path)?)
}

/// The table shipped with the crate.
pub fn builtin_table() -> Vec<HMRecord> {
    parse_table(BUILTIN).expect("bundled table parses")
}

/// Pretty JSON with a trailing newline; field order is fixed so output is
/// byte-stable.
pub fn write_report<T: Serialize>(report: &T, path: &Path) -> Result<()> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    std::fs::write(path, s)?;
    Ok(())
}
