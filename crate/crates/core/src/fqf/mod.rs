//! Finite quadratic forms recorded by their Conway-Sloane Jordan components.

mod canonical;
mod jordan;
pub mod overlattice;
mod render;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{self, kron2, legendre_big};
use crate::error::{Error, Result};

pub use canonical::CanonicalComponent;
pub use jordan::{local_components, symbol_of, LocalComponent};

/// One Jordan component `(p^k)^{sign rank}` with, at `p = 2`, the oddity
/// (`None` means type II).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JordanComponent {
    pub prime: u64,
    pub exponent: u32,
    pub rank: u32,
    pub sign: i8,
    pub oddity: Option<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Fqf {
    components: Vec<JordanComponent>,
}

/// Odd 2-adic units (each in {1,3,5,7}) realising the given rank, sign and
/// oddity, if any exist.
pub fn odd_units(rank: u32, sign: i8, oddity: u8) -> Option<Vec<u8>> {
    let n = rank as usize;
    if n == 0 {
        return None;
    }
    let free = n.min(3);
    let mut units = vec![1u8; n];
    let base = (n - free) as i64;
    let mut idx = vec![0usize; free];
    const ODD: [u8; 4] = [1, 3, 5, 7];
    loop {
        let tail: Vec<u8> = idx.iter().map(|&i| ODD[i]).collect();
        let t = (base + tail.iter().map(|&u| u as i64).sum::<i64>()).rem_euclid(8);
        let s: i32 = tail.iter().map(|&u| kron2(u as i64)).product();
        if t == oddity as i64 && s == sign as i32 {
            units[n - free..].copy_from_slice(&tail);
            return Some(units);
        }
        let mut k = 0;
        loop {
            if k == free {
                return None;
            }
            idx[k] += 1;
            if idx[k] < 4 {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

impl JordanComponent {
    pub fn odd(prime: u64, exponent: u32, rank: u32, sign: i8) -> Self {
        Self { prime, exponent, rank, sign, oddity: None }
    }

    pub fn two_even(exponent: u32, rank: u32, sign: i8) -> Self {
        Self { prime: 2, exponent, rank, sign, oddity: None }
    }

    pub fn two_odd(exponent: u32, rank: u32, sign: i8, oddity: u8) -> Self {
        Self { prime: 2, exponent, rank, sign, oddity: Some(oddity % 8) }
    }

    pub fn is_type_ii(&self) -> bool {
        self.prime == 2 && self.oddity.is_none()
    }

    pub fn scale(&self) -> BigInt {
        BigInt::from(self.prime).pow(self.exponent)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidSymbol(format!("{}: {m}", render::component(self))));
        if !arith::is_prime(self.prime) {
            return bad("base is not a prime power");
        }
        if self.exponent == 0 {
            return bad("scale must be at least p");
        }
        if self.rank == 0 {
            return bad("rank must be positive");
        }
        if self.sign != 1 && self.sign != -1 {
            return bad("sign must be +1 or -1");
        }
        if self.prime != 2 {
            if self.oddity.is_some() {
                return bad("oddity is only defined at 2");
            }
            return Ok(());
        }
        match self.oddity {
            None if self.rank % 2 == 1 => bad("type II component must have even rank"),
            None => Ok(()),
            Some(t) if odd_units(self.rank, self.sign, t).is_none() => {
                bad("no odd units realise this rank, sign and oddity")
            }
            Some(_) => Ok(()),
        }
    }

    /// Contribution to the signature mod 8.
    fn signature_term(&self) -> i64 {
        let antisquare = self.exponent % 2 == 1 && self.sign == -1;
        let four = if antisquare { 4 } else { 0 };
        if self.prime == 2 {
            self.oddity.unwrap_or(0) as i64 + four
        } else {
            let q = self.prime.pow(self.exponent) as i64;
            -((self.rank as i64) * (q - 1) + four)
        }
    }

    fn negated(&self) -> Self {
        let mut c = self.clone();
        if self.prime == 2 {
            c.oddity = self.oddity.map(|t| ((8 - t as i64) % 8) as u8);
        } else if self.rank % 2 == 1 && self.prime % 4 == 3 {
            c.sign = -self.sign;
        }
        c
    }
}

impl Fqf {
    /// Builds a form, merging components with equal prime and scale.
    pub fn new(mut components: Vec<JordanComponent>) -> Result<Self> {
        for c in &components {
            c.validate()?;
        }
        components.sort_by_key(|c| (c.prime, c.exponent));
        Ok(Self { components: merge(components) })
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn components(&self) -> &[JordanComponent] {
        &self.components
    }

    pub fn is_trivial(&self) -> bool {
        self.components.is_empty()
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.components.iter().map(|c| c.prime).collect();
        v.dedup();
        v
    }

    pub fn order(&self) -> BigInt {
        self.components
            .iter()
            .map(|c| c.scale().pow(c.rank))
            .fold(BigInt::one(), |a, b| a * b)
    }

    /// Minimal number of generators of the p-part.
    pub fn length_at(&self, p: u64) -> u32 {
        self.components.iter().filter(|c| c.prime == p).map(|c| c.rank).sum()
    }

    /// Minimal number of generators of the whole group.
    pub fn length(&self) -> u32 {
        self.primes().into_iter().map(|p| self.length_at(p)).max().unwrap_or(0)
    }

    pub fn p_part(&self, p: u64) -> Self {
        Self { components: self.components.iter().filter(|c| c.prime == p).cloned().collect() }
    }

    pub fn without(&self, p: u64) -> Self {
        Self { components: self.components.iter().filter(|c| c.prime != p).cloned().collect() }
    }

    /// Signature mod 8 from the oddity formula.
    pub fn signature_mod8(&self) -> u8 {
        self.components.iter().map(|c| c.signature_term()).sum::<i64>().rem_euclid(8) as u8
    }

    pub fn negate(&self) -> Self {
        Self { components: self.components.iter().map(|c| c.negated()).collect() }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut all: Vec<JordanComponent> =
            self.components.iter().chain(other.components.iter()).cloned().collect();
        all.sort_by_key(|c| (c.prime, c.exponent));
        Self { components: merge(all) }
    }

    /// Canonical symbol: odd parts unchanged, the 2-part reduced by oddity
    /// fusion and sign walking.
    pub fn canonical(&self) -> Vec<CanonicalComponent> {
        canonical::canonical(&self.components)
    }

    pub fn isomorphic(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    /// Product of the component signs at `p`.
    pub fn sign_at(&self, p: u64) -> i32 {
        self.components.iter().filter(|c| c.prime == p).map(|c| c.sign as i32).product()
    }
}

fn merge(sorted: Vec<JordanComponent>) -> Vec<JordanComponent> {
    let mut out: Vec<JordanComponent> = Vec::with_capacity(sorted.len());
    for c in sorted {
        match out.last_mut() {
            Some(last) if last.prime == c.prime && last.exponent == c.exponent => {
                last.rank += c.rank;
                last.sign *= c.sign;
                last.oddity = match (last.oddity, c.oddity) {
                    (None, None) => None,
                    (a, b) => Some(((a.unwrap_or(0) + b.unwrap_or(0)) % 8) as u8),
                };
            }
            _ => out.push(c),
        }
    }
    out
}

impl fmt::Display for Fqf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::render(&self.components))
    }
}

/// Existence of an even lattice with signature `(t_plus, t_minus)` and
/// discriminant form `q`.
pub fn nikulin_exists(t_plus: u32, t_minus: u32, q: &Fqf) -> bool {
    let rank = t_plus + t_minus;
    let tau = (t_plus as i64 - t_minus as i64).rem_euclid(8) as u8;
    if tau != q.signature_mod8() {
        return false;
    }
    if rank < q.length() {
        return false;
    }
    let order = q.order();
    let signed = if t_minus % 2 == 1 { -order.clone() } else { order.clone() };
    for p in q.primes() {
        if q.length_at(p) != rank {
            continue;
        }
        let unit = arith::unit_part(&signed, p);
        if p == 2 {
            let scale_two_odd = q
                .components
                .iter()
                .any(|c| c.prime == 2 && c.exponent == 1 && c.oddity.is_some());
            if scale_two_odd {
                continue;
            }
            let u = (unit.abs() % BigInt::from(8)).to_i64().unwrap();
            if kron2(u) != q.sign_at(2) {
                return false;
            }
        } else if legendre_big(&unit, p) != q.sign_at(p) {
            return false;
        }
    }
    true
}
