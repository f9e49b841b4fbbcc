//! Brute-force cross-checks over explicit finite groups. These are slow and
//! only meant for small inputs; the floating-point Gauss sum lives here and
//! nowhere else.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};

use crate::arith::inv_mod;
use crate::error::{Error, Result};
use crate::fqf::{odd_units, symbol_of, Fqf};
use crate::intlat::linalg::{self, RatMat};
use crate::intlat::IntegralLattice;

/// Largest group handled by the brute-force routines.
pub const BRUTE_CAP: u64 = 100_000;

/// A finite quadratic form on `Z/m_1 x ... x Z/m_n` with
/// `q(x) = x^T Q x mod 2` and `b(x, y) = x^T Q y mod 1`.
#[derive(Clone, Debug)]
pub struct ExplicitForm {
    pub moduli: Vec<u64>,
    pub q: Vec<Vec<Rational64>>,
}

fn block(q: &mut Vec<Vec<Rational64>>, moduli: &mut Vec<u64>, m: u64, entries: &[Vec<Rational64>]) {
    let n0 = moduli.len();
    let k = entries.len();
    for row in q.iter_mut() {
        row.extend(std::iter::repeat(Rational64::zero()).take(k));
    }
    for e in entries {
        let mut row = vec![Rational64::zero(); n0 + k];
        row[n0..].copy_from_slice(e);
        q.push(row);
        moduli.push(m);
    }
}

impl ExplicitForm {
    /// A model of the form described by a symbol.
    pub fn of(f: &Fqf) -> Self {
        let mut q: Vec<Vec<Rational64>> = Vec::new();
        let mut moduli = Vec::new();
        for c in f.components() {
            let m = c.prime.pow(c.exponent);
            let mi = m as i64;
            if c.prime != 2 {
                let nr = crate::arith::non_residue(c.prime);
                for i in 0..c.rank {
                    let u = if i + 1 == c.rank && c.sign < 0 { nr } else { 1 };
                    let mut a = inv_mod(u % m, m) as i64;
                    if a % 2 == 1 {
                        a += mi;
                    }
                    block(&mut q, &mut moduli, m, &[vec![Rational64::new(a, mi)]]);
                }
            } else if let Some(t) = c.oddity {
                let units = odd_units(c.rank, c.sign, t).expect("validated component");
                for u in units {
                    let a = inv_mod(u as u64, 2 * m) as i64;
                    block(&mut q, &mut moduli, m, &[vec![Rational64::new(a, mi)]]);
                }
            } else {
                let pairs = c.rank / 2;
                for i in 0..pairs {
                    let z = Rational64::zero();
                    let one = Rational64::new(1, mi);
                    let two = Rational64::new(2, mi);
                    if i + 1 == pairs && c.sign < 0 {
                        block(&mut q, &mut moduli, m, &[vec![two, one], vec![one, two]]);
                    } else {
                        block(&mut q, &mut moduli, m, &[vec![z, one], vec![one, z]]);
                    }
                }
            }
        }
        Self { moduli, q }
    }

    pub fn order(&self) -> Option<u64> {
        self.moduli.iter().try_fold(1u64, |a, &m| a.checked_mul(m))
    }

    pub fn elements(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.order().filter(|&n| n <= BRUTE_CAP).ok_or_else(|| {
            Error::ScopeExceeded(format!("brute force limited to groups of order <= {BRUTE_CAP}"))
        })?;
        Ok((0..n)
            .map(|mut idx| {
                self.moduli
                    .iter()
                    .map(|&m| {
                        let c = idx % m;
                        idx /= m;
                        c as i64
                    })
                    .collect()
            })
            .collect())
    }

    fn raw(&self, x: &[i64], y: &[i64]) -> Rational64 {
        let mut s = Rational64::zero();
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..y.len() {
                if y[j] != 0 && !self.q[i][j].is_zero() {
                    s += self.q[i][j] * Rational64::from_integer(x[i] * y[j]);
                }
            }
        }
        s
    }

    /// `q(x)` in `[0, 2)`.
    pub fn quad(&self, x: &[i64]) -> Rational64 {
        let v = self.raw(x, x);
        let two = Rational64::from_integer(2);
        v - (v / two).floor() * two
    }

    /// `b(x, y)` in `[0, 1)`.
    pub fn bil(&self, x: &[i64], y: &[i64]) -> Rational64 {
        let v = self.raw(x, y);
        v - v.floor()
    }

    fn order_of(&self, x: &[i64]) -> u64 {
        x.iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| m / (c as u64).gcd(&m))
            .fold(1u64, |a, b| a.lcm(&b))
    }
}

/// Signature mod 8 from the Gauss sum `sum exp(pi i q(x)) = sqrt|A| e^{2 pi i tau/8}`.
pub fn brute_force_tau(f: &Fqf) -> Result<u8> {
    let e = ExplicitForm::of(f);
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for x in e.elements()? {
        let v = e.quad(&x);
        let t = std::f64::consts::PI * (*v.numer() as f64) / (*v.denom() as f64);
        re += t.cos();
        im += t.sin();
    }
    let n = e.order().unwrap() as f64;
    let mag = (re * re + im * im).sqrt();
    if (mag - n.sqrt()).abs() > 1e-6 * n.sqrt().max(1.0) {
        return Err(Error::InvalidSymbol(format!("Gauss sum has modulus {mag}, expected {}", n.sqrt())));
    }
    let phase = im.atan2(re) / (std::f64::consts::PI / 4.0);
    let k = phase.round();
    if (phase - k).abs() > 1e-6 {
        return Err(Error::InvalidSymbol(format!("Gauss sum phase {phase} is not a multiple of pi/4")));
    }
    Ok((k as i64).rem_euclid(8) as u8)
}

/// Decides isomorphism by searching for generator images directly.
pub fn brute_force_isomorphic(f1: &Fqf, f2: &Fqf) -> Result<bool> {
    let a = ExplicitForm::of(f1);
    let b = ExplicitForm::of(f2);
    if a.order() != b.order() {
        return Ok(false);
    }
    let elems = b.elements()?;
    let n = a.moduli.len();
    let gens: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let candidates: Vec<Vec<&Vec<i64>>> = gens
        .iter()
        .map(|g| {
            let want_q = a.quad(g);
            let want_o = a.order_of(g);
            elems.iter().filter(|y| b.order_of(y) == want_o && b.quad(y) == want_q).collect()
        })
        .collect();
    let mut chosen: Vec<&Vec<i64>> = Vec::new();
    Ok(search(&a, &b, &gens, &candidates, &mut chosen))
}

fn search<'a>(
    a: &ExplicitForm,
    b: &ExplicitForm,
    gens: &[Vec<i64>],
    cands: &[Vec<&'a Vec<i64>>],
    chosen: &mut Vec<&'a Vec<i64>>,
) -> bool {
    let i = chosen.len();
    if i == gens.len() {
        return true;
    }
    for &y in &cands[i] {
        if (0..i).all(|j| b.bil(y, chosen[j]) == a.bil(&gens[i], &gens[j])) {
            chosen.push(y);
            if search(a, b, gens, cands, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Forms of all even overlattices of `lattice` of p-power index, found by
/// adjoining discriminant-group lifts and testing integrality directly.
pub fn overlattice_forms_by_search(lattice: &IntegralLattice, p: u64) -> Result<Vec<Fqf>> {
    let disc = lattice.discriminant_group()?;
    let n = lattice.rank();
    let g = linalg::to_rat(lattice.gram());
    // generators of the p-part of the discriminant group
    let mut pgens: Vec<(Vec<BigRational>, u64)> = Vec::new();
    for (inv, lift) in disc.invariants.iter().zip(&disc.generators) {
        let d = inv.to_u64().unwrap();
        let v = crate::arith::val_u64(d, p);
        if v == 0 {
            continue;
        }
        let pk = p.pow(v);
        let c = BigRational::from_integer(BigInt::from(d / pk));
        pgens.push((lift.iter().map(|x| x * &c).collect(), pk));
    }
    let total: u64 = pgens.iter().map(|x| x.1).product();
    if total > BRUTE_CAP {
        return Err(Error::ScopeExceeded("p-part too large".into()));
    }
    let mut elements: Vec<Vec<BigRational>> = Vec::new();
    for mut idx in 1..total {
        let mut v = vec![BigRational::zero(); n];
        for (lift, m) in &pgens {
            let c = BigRational::from_integer(BigInt::from(idx % m));
            idx /= m;
            for k in 0..n {
                v[k] += &lift[k] * &c;
            }
        }
        elements.push(v);
    }
    let base: RatMat = linalg::to_rat(&linalg::identity(n));
    let mut seen: HashSet<Vec<Vec<BigRational>>> = HashSet::new();
    seen.insert(base.clone());
    let mut forms = vec![symbol_of(lattice)?];
    let mut layer = vec![base];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for b in &layer {
            for x in &elements {
                let mut rows = b.clone();
                rows.push(x.clone());
                let h = linalg::hnf_rat(&rows);
                if seen.contains(&h) {
                    continue;
                }
                let gram = linalg::congruence(&h, &g);
                let even = gram.iter().enumerate().all(|(i, r)| {
                    r.iter().all(|e| e.is_integer()) && r[i].to_integer().is_even()
                });
                seen.insert(h.clone());
                if !even {
                    continue;
                }
                let gi: Vec<Vec<BigInt>> =
                    gram.iter().map(|r| r.iter().map(|e| e.to_integer()).collect()).collect();
                forms.push(symbol_of(&IntegralLattice::new(gi)?)?);
                next.push(h);
            }
        }
        layer = next;
    }
    Ok(forms)
}
