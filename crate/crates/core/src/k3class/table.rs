use rayon::prelude::*;
use serde::Serialize;

use super::embed::{primitively_embeds, EmbeddingQuery};
use crate::arith::primes_in;
use crate::error::Result;
use crate::hmdata::HMRecord;

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub no: u32,
    pub checked_primes: Vec<u64>,
    pub expected: String,
    /// Primes among those checked where the embedding exists, or "any".
    pub computed: String,
    pub pass: bool,
    pub mismatched_primes: Vec<u64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableSummary {
    pub rows: usize,
    pub passed: usize,
    pub failed: usize,
    pub primes: usize,
    pub largest_prime: u64,
    pub parse_errors: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub rows: Vec<RowReport>,
    pub summary: TableSummary,
}

fn row_report(r: &HMRecord, primes: &[u64]) -> RowReport {
    let mut embeds = Vec::new();
    let mut mismatched = Vec::new();
    let mut error = None;
    for &p in primes {
        let res = EmbeddingQuery::new(r.symbol.clone(), r.rank, p, 1).and_then(|q| primitively_embeds(&q));
        match res {
            Ok(c) => {
                if c.embeds {
                    embeds.push(p);
                }
                if c.embeds != r.condition.holds(p) {
                    mismatched.push(p);
                }
            }
            Err(e) => {
                error = Some(format!("p = {p}: {e}"));
                break;
            }
        }
    }
    let computed = if embeds.len() == primes.len() {
        "any".to_string()
    } else {
        embeds.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
    };
    RowReport {
        no: r.number,
        checked_primes: primes.to_vec(),
        expected: r.condition.to_string(),
        computed,
        pass: error.is_none() && mismatched.is_empty(),
        mismatched_primes: mismatched,
        error,
    }
}

/// Compares the embedding decision at `sigma = 1` with each row's prime
/// condition for every odd prime below `prime_bound`.
pub fn reproduce_table(records: &[HMRecord], prime_bound: u64) -> TableReport {
    let primes = primes_in(3, prime_bound);
    let rows: Vec<RowReport> = records.par_iter().map(|r| row_report(r, &primes)).collect();
    let passed = rows.iter().filter(|r| r.pass).count();
    let summary = TableSummary {
        rows: rows.len(),
        passed,
        failed: rows.len() - passed,
        primes: primes.len(),
        largest_prime: primes.last().copied().unwrap_or(0),
        parse_errors: Vec::new(),
    };
    TableReport { rows, summary }
}

#[derive(Clone, Debug, Serialize)]
pub struct TameCheck {
    pub no: u32,
    pub p: u64,
    pub sigma: u32,
    /// `A_S` has trivial p-part.
    pub tame: bool,
    /// Only decided for tame rows; the bound says nothing otherwise.
    pub embeds: Option<bool>,
    pub rank: u32,
    pub bound: i64,
    pub holds: bool,
}

/// A tame embedding into `N_{p,sigma}` forces `rank S <= 22 - 2 sigma`.
pub fn tame_rank_bound_check(p: u64, sigma: u32, record: &HMRecord) -> Result<TameCheck> {
    let tame = record.symbol.length_at(p) == 0;
    let query = EmbeddingQuery::new(record.symbol.clone(), record.rank, p, sigma)?;
    let embeds = if tame { Some(primitively_embeds(&query)?.embeds) } else { None };
    let bound = 22 - 2 * sigma as i64;
    let holds = embeds != Some(true) || record.rank as i64 <= bound;
    Ok(TameCheck { no: record.number, p, sigma, tame, embeds, rank: record.rank, bound, holds })
}
