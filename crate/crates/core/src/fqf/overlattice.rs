//! Induced forms on `H^perp / H` for isotropic subgroups `H` of the p-part of
//! `first + second`, optionally required to meet either summand trivially.

use std::collections::HashSet;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::jordan::p_part_of;
use super::{Fqf, JordanComponent};
use crate::arith::{self, inv_mod, legendre, non_residue};
use crate::error::{Error, Result};
use crate::fp;
use crate::intlat::linalg::{self, RatMat};

/// Largest p-part handled by explicit subgroup enumeration.
pub const EXPLICIT_CAP: u64 = 200_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Gluing {
    /// `H` meets the first summand trivially.
    pub avoid_first: bool,
    /// `H` meets the second summand trivially.
    pub avoid_second: bool,
}

impl Gluing {
    pub const STRICT: Gluing = Gluing { avoid_first: true, avoid_second: true };
    pub const FREE: Gluing = Gluing { avoid_first: false, avoid_second: false };
}

#[derive(Clone, Debug, Serialize)]
pub struct OverlatticeCandidate {
    /// `|H|`.
    pub order: u64,
    /// Generators of `H` in the coordinates of the local model, first
    /// summand's coordinates followed by the second's.
    pub generators: Vec<Vec<u64>>,
    pub form: Fqf,
}

/// Diagonal p-local model: coordinate `i` is `p^{k_i} u_i`.
#[derive(Clone, Debug)]
pub struct LocalModel {
    pub p: u64,
    pub exps: Vec<u32>,
    pub units: Vec<u64>,
}

impl LocalModel {
    pub fn of(q: &Fqf, p: u64) -> Self {
        let nr = non_residue(p);
        let mut exps = Vec::new();
        let mut units = Vec::new();
        for c in q.components().iter().filter(|c| c.prime == p) {
            for i in 0..c.rank {
                exps.push(c.exponent);
                let last = i + 1 == c.rank;
                units.push(if last && c.sign < 0 { nr } else { 1 });
            }
        }
        Self { p, exps, units }
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self {
            p: self.p,
            exps: self.exps.iter().chain(&other.exps).copied().collect(),
            units: self.units.iter().chain(&other.units).copied().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.exps.iter().map(|&k| self.p.pow(k)).collect()
    }

    pub fn group_order(&self) -> Option<u64> {
        self.moduli().into_iter().try_fold(1u64, |a, m| a.checked_mul(m))
    }

    fn top(&self) -> u64 {
        self.p.pow(self.exps.iter().copied().max().unwrap_or(0))
    }

    /// `p^K b(x, y)` modulo `p^K` with `p^K` the exponent of the group.
    pub fn bilinear(&self, x: &[u64], y: &[u64]) -> u64 {
        let top = self.top();
        let mut s: u128 = 0;
        for i in 0..self.dim() {
            let m = self.p.pow(self.exps[i]);
            let w = inv_mod(self.units[i] % m, m) as u128;
            let term = (x[i] as u128 * y[i] as u128 % m as u128) * w % m as u128;
            s += term * (top / m) as u128;
        }
        (s % top as u128) as u64
    }

    /// `q(x)` is zero (odd p, so `q` is determined by `b`).
    pub fn isotropic(&self, x: &[u64]) -> bool {
        self.bilinear(x, x) == 0
    }

    /// Gram matrix of the overlattice generated by the model lattice and
    /// lifts of `gens`.
    pub fn overlattice_gram(&self, gens: &[Vec<u64>]) -> RatMat {
        let n = self.dim();
        let p = self.p;
        let mut rows: RatMat = Vec::new();
        for g in gens {
            rows.push(
                (0..n)
                    .map(|i| {
                        let m = p.pow(self.exps[i]);
                        let w = inv_mod(self.units[i] % m, m);
                        let c = (g[i] % m) * w % m;
                        BigRational::new(BigInt::from(c), BigInt::from(m))
                    })
                    .collect(),
            );
        }
        for i in 0..n {
            let mut e = vec![BigRational::zero(); n];
            e[i] = arith::rat(1);
            rows.push(e);
        }
        let basis = linalg::hnf_rat(&rows);
        let diag: RatMat = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::from_integer(
                                BigInt::from(p).pow(self.exps[i]) * BigInt::from(self.units[i]),
                            )
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        linalg::congruence(&basis, &diag)
    }

    /// The p-part of `H^perp / H`.
    pub fn induced_components(&self, gens: &[Vec<u64>]) -> Result<Vec<JordanComponent>> {
        if gens.is_empty() {
            return Ok(self.components());
        }
        p_part_of(&self.overlattice_gram(gens), self.p)
    }

    fn components(&self) -> Vec<JordanComponent> {
        let mut out: Vec<JordanComponent> = Vec::new();
        for (k, u) in self.exps.iter().zip(&self.units) {
            let s = legendre(*u as i64, self.p) as i8;
            match out.last_mut() {
                Some(c) if c.exponent == *k => {
                    c.rank += 1;
                    c.sign *= s;
                }
                _ => out.push(JordanComponent::odd(self.p, *k, 1, s)),
            }
        }
        out.sort_by_key(|c| c.exponent);
        out
    }
}

fn max_dim(p: u64, max_order: u64) -> usize {
    let mut d = 0;
    let mut o = 1u64;
    while let Some(n) = o.checked_mul(p) {
        if n > max_order {
            break;
        }
        o = n;
        d += 1;
    }
    d
}

fn form_with(first: &Fqf, second: &Fqf, p: u64, comps: Vec<JordanComponent>) -> Fqf {
    let rest = first.without(p).direct_sum(&second.without(p));
    rest.direct_sum(&Fqf { components: {
        let mut c = comps;
        c.sort_by_key(|c| c.exponent);
        c
    } })
}

/// All induced forms, deduplicated up to isomorphism.
pub fn overlattice_forms(
    first: &Fqf,
    second: &Fqf,
    p: u64,
    max_order: u64,
    gluing: Gluing,
) -> Result<Vec<OverlatticeCandidate>> {
    let mut out: Vec<OverlatticeCandidate> = Vec::new();
    let mut seen = HashSet::new();
    for_each_overlattice(first, second, p, max_order, gluing, &mut |c| {
        if seen.insert(c.form.canonical()) {
            out.push(c.clone());
        }
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Same as [`overlattice_forms`] but always enumerating subgroups one by
/// one, never through the graph construction for strict gluing.
pub fn overlattice_forms_explicit(
    first: &Fqf,
    second: &Fqf,
    p: u64,
    max_order: u64,
    gluing: Gluing,
) -> Result<Vec<OverlatticeCandidate>> {
    if p == 2 || !arith::is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let mut out: Vec<OverlatticeCandidate> = Vec::new();
    let mut seen = HashSet::new();
    let (ms, md) = (LocalModel::of(first, p), LocalModel::of(second, p));
    explicit(first, second, &ms, &md, max_order, gluing, &mut |c| {
        if seen.insert(c.form.canonical()) {
            out.push(c.clone());
        }
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Visits every admissible `H` (one representative per orbit in the strict
/// elementary case) until the visitor breaks.
pub fn for_each_overlattice(
    first: &Fqf,
    second: &Fqf,
    p: u64,
    max_order: u64,
    gluing: Gluing,
    visit: &mut dyn FnMut(&OverlatticeCandidate) -> ControlFlow<()>,
) -> Result<()> {
    if p == 2 || !arith::is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let ms = LocalModel::of(first, p);
    let md = LocalModel::of(second, p);
    let elementary_second = md.exps.iter().all(|&k| k == 1);
    if gluing == Gluing::STRICT && elementary_second {
        strict_graphs(first, second, &ms, &md, max_order, visit)
    } else {
        explicit(first, second, &ms, &md, max_order, gluing, visit)
    }
}

/// Graphs of injective anti-isometries from subspaces of `A_first[p]` into
/// the elementary, nondegenerate `A_second`.
fn strict_graphs(
    first: &Fqf,
    second: &Fqf,
    ms: &LocalModel,
    md: &LocalModel,
    max_order: u64,
    visit: &mut dyn FnMut(&OverlatticeCandidate) -> ControlFlow<()>,
) -> Result<()> {
    let p = ms.p;
    let m = ms.dim();
    let nv = md.dim();
    let dmax = max_dim(p, max_order).min(m).min(nv);
    // p b on A_first[p]: only scale-p coordinates pair nontrivially
    let wdiag: Vec<u64> = (0..m)
        .map(|i| if ms.exps[i] == 1 { inv_mod(ms.units[i] % p, p) } else { 0 })
        .collect();
    let vdiag: Vec<u64> = md.units.iter().map(|&v| inv_mod(v % p, p)).collect();
    let disc_v = legendre(md.units.iter().fold(1u64, |a, &v| a * v % p) as i64, p);
    let full = ms.concat(md);
    let mut err = None;
    for d in 0..=dmax {
        let cont = fp::for_each_subspace(m, d, p, &mut |w| {
            let bw: Vec<Vec<u64>> = (0..d)
                .map(|j| (0..d).map(|l| fp::dot_form(&w[j], &wdiag, &w[l], p)).collect())
                .collect();
            let Some(images) = anti_isometry(&bw, &vdiag, disc_v, p) else { return true };
            let gens: Vec<Vec<u64>> = (0..d)
                .map(|j| {
                    let mut g: Vec<u64> =
                        (0..m).map(|i| w[j][i] * p.pow(ms.exps[i] - 1)).collect();
                    g.extend(&images[j]);
                    g
                })
                .collect();
            match full.induced_components(&gens) {
                Ok(comps) => {
                    let cand = OverlatticeCandidate {
                        order: p.pow(d as u32),
                        generators: gens,
                        form: form_with(first, second, p, comps),
                    };
                    visit(&cand).is_continue()
                }
                Err(e) => {
                    err = Some(e);
                    false
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        if !cont {
            break;
        }
    }
    Ok(())
}

/// Witt's criterion for an injective map `W -> V` with `b_V(phi x, phi y) =
/// -b_W(x, y)`, followed by a greedy construction (Witt's extension theorem
/// guarantees every partial solution extends).
fn anti_isometry(bw: &[Vec<u64>], vdiag: &[u64], disc_v: i32, p: u64) -> Option<Vec<Vec<u64>>> {
    let d = bw.len();
    let nv = vdiag.len();
    if d > nv {
        return None;
    }
    let neg: Vec<Vec<u64>> = bw.iter().map(|r| r.iter().map(|&x| (p - x) % p).collect()).collect();
    let nz = fp::diagonal_form(&neg, p);
    let r0 = nz.len();
    let rad = d - r0;
    if r0 + 2 * rad > nv {
        return None;
    }
    if r0 + 2 * rad == nv {
        let disc_w = nz.iter().fold(1u64, |a, &x| a * x % p);
        let hyp = if rad % 2 == 1 { p - 1 } else { 1 };
        if legendre((disc_w * hyp % p) as i64, p) != disc_v {
            return None;
        }
    }
    let mut images: Vec<Vec<u64>> = Vec::with_capacity(d);
    for j in 0..d {
        // linear constraints b_V(y, y_l) = neg[j][l] for l < j
        let a: Vec<Vec<u64>> = images
            .iter()
            .map(|y| (0..nv).map(|i| y[i] * vdiag[i] % p).collect())
            .collect();
        let b: Vec<u64> = (0..j).map(|l| neg[j][l]).collect();
        let (x0, ns) = if j == 0 {
            let id = (0..nv)
                .map(|i| {
                    let mut e = vec![0u64; nv];
                    e[i] = 1;
                    e
                })
                .collect();
            (vec![0u64; nv], id)
        } else {
            fp::solve(&a, &b, nv, p)?
        };
        let k = ns.len();
        let mut coef = vec![0u64; k];
        let found = loop {
            let mut y = x0.clone();
            for (c, v) in coef.iter().zip(&ns) {
                for i in 0..nv {
                    y[i] = (y[i] + c * v[i]) % p;
                }
            }
            if fp::dot_form(&y, vdiag, &y, p) == neg[j][j] && !fp::in_span(&images, &y, p) {
                break Some(y);
            }
            let mut t = 0;
            while t < k {
                coef[t] += 1;
                if coef[t] < p {
                    break;
                }
                coef[t] = 0;
                t += 1;
            }
            if t == k {
                break None;
            }
        };
        images.push(found?);
    }
    Some(images)
}

/// Explicit enumeration of isotropic subgroups of a small p-part.
fn explicit(
    first: &Fqf,
    second: &Fqf,
    ms: &LocalModel,
    md: &LocalModel,
    max_order: u64,
    gluing: Gluing,
    visit: &mut dyn FnMut(&OverlatticeCandidate) -> ControlFlow<()>,
) -> Result<()> {
    let full = ms.concat(md);
    let order = full.group_order().filter(|&o| o <= EXPLICIT_CAP).ok_or_else(|| {
        Error::ScopeExceeded(format!(
            "explicit subgroup enumeration limited to p-parts of order <= {EXPLICIT_CAP}"
        ))
    })?;
    let moduli = full.moduli();
    let n = full.dim();
    let split = ms.dim();
    let decode = |mut idx: u64| -> Vec<u64> {
        let mut v = vec![0u64; n];
        for i in 0..n {
            v[i] = idx % moduli[i];
            idx /= moduli[i];
        }
        v
    };
    let encode = |v: &[u64]| -> u64 {
        let mut idx = 0u64;
        for i in (0..n).rev() {
            idx = idx * moduli[i] + v[i] % moduli[i];
        }
        idx
    };
    let add = |a: &[u64], b: &[u64]| -> Vec<u64> {
        (0..n).map(|i| (a[i] + b[i]) % moduli[i]).collect()
    };
    let admissible = |v: &[u64]| -> bool {
        let in_first = v[split..].iter().all(|&x| x == 0);
        let in_second = v[..split].iter().all(|&x| x == 0);
        let zero = in_first && in_second;
        zero || !((gluing.avoid_first && in_first) || (gluing.avoid_second && in_second))
    };
    let isotropic: Vec<u64> = (1..order).filter(|&i| full.isotropic(&decode(i))).collect();

    struct Sub {
        elems: Vec<u64>,
        gens: Vec<Vec<u64>>,
    }
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let trivial = Sub { elems: vec![0], gens: vec![] };
    seen.insert(trivial.elems.clone());
    let mut layer = vec![trivial];
    let emit = |s: &Sub, visit: &mut dyn FnMut(&OverlatticeCandidate) -> ControlFlow<()>| -> Result<bool> {
        let comps = full.induced_components(&s.gens)?;
        let cand = OverlatticeCandidate {
            order: s.elems.len() as u64,
            generators: s.gens.clone(),
            form: form_with(first, second, full.p, comps),
        };
        Ok(visit(&cand).is_continue())
    };
    if !emit(&layer[0], visit)? {
        return Ok(());
    }
    while !layer.is_empty() {
        let mut next = Vec::new();
        for s in &layer {
            if s.elems.len() as u64 * full.p > max_order {
                continue;
            }
            let members: Vec<Vec<u64>> = s.elems.iter().map(|&e| decode(e)).collect();
            let member_set: HashSet<u64> = s.elems.iter().copied().collect();
            // elements of some <H, y> already built give the same subgroup again
            let mut covered: HashSet<u64> = HashSet::new();
            for &x in &isotropic {
                if member_set.contains(&x) || covered.contains(&x) {
                    continue;
                }
                let xv = decode(x);
                if !admissible(&xv) || s.gens.iter().any(|g| full.bilinear(g, &xv) != 0) {
                    continue;
                }
                // closure of <H, x>
                let mut elems: HashSet<u64> = member_set.clone();
                let mut same: Vec<u64> = Vec::new();
                let mut mult = xv.clone();
                let mut k = 1u64;
                let mut ok = true;
                while ok && !member_set.contains(&encode(&mult)) {
                    for h in &members {
                        let v = add(h, &mult);
                        if !admissible(&v) {
                            ok = false;
                            break;
                        }
                        let e = encode(&v);
                        elems.insert(e);
                        if k % full.p != 0 {
                            same.push(e);
                        }
                    }
                    mult = add(&mult, &xv);
                    k += 1;
                }
                if ok {
                    covered.extend(same);
                }
                if !ok || elems.len() as u64 > max_order {
                    continue;
                }
                let mut sorted: Vec<u64> = elems.into_iter().collect();
                sorted.sort_unstable();
                if seen.insert(sorted.clone()) {
                    let mut gens = s.gens.clone();
                    gens.push(xv);
                    let sub = Sub { elems: sorted, gens };
                    if !emit(&sub, visit)? {
                        return Ok(());
                    }
                    next.push(sub);
                }
            }
        }
        layer = next;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Fqf {
        crate::hmdata::parse_symbol(s).unwrap()
    }

    #[test]
    fn trivial_subgroup_always_present() {
        let q = parse("3^+2");
        let forms = overlattice_forms(&q, &Fqf::trivial(), 3, 9, Gluing::FREE).unwrap();
        assert!(forms.iter().any(|c| c.order == 1 && c.form.isomorphic(&q)));
    }

    #[test]
    fn hyperbolic_plane_kills_to_trivial() {
        // a plane has an isotropic line iff it is split, i.e. -disc is a square
        for s in ["3^+2", "3^-2", "5^+2", "5^-2"] {
            let q = parse(s);
            let p: u64 = if s.starts_with('3') { 3 } else { 5 };
            let split = legendre(-1, p) == q.sign_at(p);
            let forms = overlattice_forms(&q, &Fqf::trivial(), p, p, Gluing::FREE).unwrap();
            assert_eq!(forms.iter().any(|c| c.form.is_trivial()), split, "{s}");
        }
    }

    #[test]
    fn strict_matches_explicit() {
        for (a, b) in [("3^+3", "3^-2"), ("3^+1 9^-1", "3^+2"), ("3^-2", "3^+2"), ("5^+2", "5^-2")] {
            let qa = parse(a);
            let qb = parse(b);
            let p = qa.primes()[0];
            let fast = overlattice_forms(&qa, &qb, p, p * p, Gluing::STRICT).unwrap();
            let mut slow = Vec::new();
            explicit(
                &qa,
                &qb,
                &LocalModel::of(&qa, p),
                &LocalModel::of(&qb, p),
                p * p,
                Gluing::STRICT,
                &mut |c| {
                    slow.push(c.form.canonical());
                    ControlFlow::Continue(())
                },
            )
            .unwrap();
            let fast: HashSet<_> = fast.iter().map(|c| c.form.canonical()).collect();
            let slow: HashSet<_> = slow.into_iter().collect();
            assert_eq!(fast, slow, "{a} + {b}");
        }
    }
}
