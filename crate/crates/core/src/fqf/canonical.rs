//! Canonical 2-adic symbols: normalised signs, oddity fusion, sign walking.

use serde::Serialize;

use super::JordanComponent;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalComponent {
    pub prime: u64,
    pub exponent: u32,
    pub rank: u32,
    pub sign: i8,
    /// `None` for type II (and for odd primes).
    pub oddity: Option<u8>,
}

#[derive(Clone, Debug)]
struct Row {
    exp: i64,
    rank: u32,
    sign: i8,
    odd: bool,
    oddity: u8,
}

pub(super) fn canonical(comps: &[JordanComponent]) -> Vec<CanonicalComponent> {
    let mut out: Vec<CanonicalComponent> = Vec::new();
    // a virtual unimodular even component absorbs signs walked down to scale 1
    let mut rows = vec![Row { exp: 0, rank: 2, sign: 1, odd: false, oddity: 0 }];
    for c in comps {
        if c.prime == 2 {
            rows.push(Row {
                exp: c.exponent as i64,
                rank: c.rank,
                sign: c.sign,
                odd: c.oddity.is_some(),
                oddity: c.oddity.unwrap_or(0),
            });
        }
    }
    reduce(&mut rows);
    for r in rows.iter().skip(1) {
        out.push(CanonicalComponent {
            prime: 2,
            exponent: r.exp as u32,
            rank: r.rank,
            sign: r.sign,
            oddity: r.odd.then_some(r.oddity),
        });
    }
    for c in comps.iter().filter(|c| c.prime != 2) {
        out.push(CanonicalComponent {
            prime: c.prime,
            exponent: c.exponent,
            rank: c.rank,
            sign: c.sign,
            oddity: None,
        });
    }
    out
}

/// Maximal runs of odd components at consecutive scales.
fn compartments(rows: &[Row]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < rows.len() {
        if rows[i].odd {
            let mut v = rows[i].exp;
            let mut c = Vec::new();
            while i < rows.len() && rows[i].odd && rows[i].exp == v {
                c.push(i);
                i += 1;
                v += 1;
            }
            out.push(c);
        } else {
            i += 1;
        }
    }
    out
}

/// Maximal runs along which signs may walk.
fn trains(rows: &[Row]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0];
    for i in 1..rows.len() {
        let (prev, now) = (&rows[i - 1], &rows[i]);
        let gap = now.exp - prev.exp;
        let breaks = gap > 2 || (gap == 2 && !(prev.odd && now.odd)) || (!prev.odd && !now.odd);
        if breaks {
            out.push(std::mem::take(&mut cur));
        }
        cur.push(i);
    }
    out.push(cur);
    out
}

fn reduce(rows: &mut [Row]) {
    let comps = compartments(rows);
    for c in &comps {
        let t = c.iter().map(|&i| rows[i].oddity as u32).sum::<u32>() % 8;
        for &i in c {
            rows[i].oddity = 0;
        }
        rows[c[0]].oddity = t as u8;
    }
    for train in trains(rows) {
        for w in (1..train.len()).rev() {
            let i = train[w];
            if rows[i].sign == -1 {
                rows[i].sign = 1;
                rows[i - 1].sign = -rows[i - 1].sign;
                for c in &comps {
                    if c.contains(&i) || c.contains(&(i - 1)) {
                        rows[c[0]].oddity = (rows[c[0]].oddity + 4) % 8;
                    }
                }
            }
        }
    }
}
