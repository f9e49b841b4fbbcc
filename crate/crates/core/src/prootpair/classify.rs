//! Subgroup search for p-root pairs up to conjugacy in `Aut(R)`.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{check_prime, is_pseudo_mod_p, verdict, ProotVerdict};
use crate::error::{Error, Result};
use crate::rootsys::{closure, named_elements, Isometry, IsometryGroup, RootDatum, RootType};

/// Largest automorphism group enumerated in full. Covers `A_m` for `m <= 7`,
/// `D_4`, `D_5`, `D_6` and `E_6` (order 103680).
pub const AUT_CAP: usize = 200_000;

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupClass {
    pub order: usize,
    pub generators: Vec<Isometry>,
    #[serde(skip)]
    pub elements: Vec<Isometry>,
    pub verdict: ProotVerdict,
}

impl SubgroupClass {
    pub fn group(&self) -> IsometryGroup {
        let dim = self.elements.first().map_or(0, |g| g.dim());
        let mut g = IsometryGroup::new(dim, self.generators.clone());
        g.elements = Some(self.elements.clone());
        g
    }
}

/// All pseudo p-root pair classes found, with `complete == false` when the
/// search did not cover every subgroup of `Aut(R)`.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub root_lattice: String,
    pub p: u64,
    pub complete: bool,
    pub note: Option<String>,
    pub classes: Vec<SubgroupClass>,
}

impl Classification {
    /// Classes with `R^H = 0`, i.e. genuine p-root pairs.
    pub fn pairs(&self) -> impl Iterator<Item = &SubgroupClass> {
        self.classes.iter().filter(|c| c.verdict.is_full)
    }
}

/// Aut elements are handled as permutations of the root list; an element is
/// identified by the packed indices of the images of the simple roots.
struct Ctx<'a> {
    r: &'a RootDatum,
    p: u64,
    elems: Vec<Isometry>,
    perms: Vec<Vec<u16>>,
    simple: Vec<usize>,
    index: HashMap<u128, u32>,
    inv: Vec<u32>,
    admissible: Vec<bool>,
    identity: u32,
}

#[derive(Clone)]
struct Sub {
    gens: Vec<u32>,
    set: Vec<u32>,
}

fn root_index(r: &RootDatum, v: &[i64]) -> Result<usize> {
    r.roots.binary_search_by(|x| x.as_slice().cmp(v)).map_err(|_| Error::NotPreserved)
}

impl<'a> Ctx<'a> {
    fn new(r: &'a RootDatum, p: u64, elems: Vec<Isometry>) -> Result<Self> {
        let n = r.rank();
        if n > 16 || r.roots.len() > u16::MAX as usize {
            return Err(Error::ScopeExceeded("root permutation encoding needs rank <= 16".into()));
        }
        let simple: Vec<usize> = (0..n)
            .map(|i| {
                let mut e = vec![0i64; n];
                e[i] = 1;
                root_index(r, &e)
            })
            .collect::<Result<_>>()?;
        let perms: Vec<Vec<u16>> = elems
            .par_iter()
            .map(|g| r.roots.iter().map(|a| root_index(r, &g.apply(a)).map(|k| k as u16)).collect())
            .collect::<Result<_>>()?;
        let pack = |f: &dyn Fn(usize) -> u16| -> u128 {
            simple.iter().enumerate().fold(0u128, |acc, (i, &s)| acc | (f(s) as u128) << (8 * i))
        };
        let index: HashMap<u128, u32> =
            perms.iter().enumerate().map(|(i, pm)| (pack(&|s| pm[s]), i as u32)).collect();
        let info: Vec<(u32, bool)> = perms
            .par_iter()
            .zip(&elems)
            .map(|(pm, g)| {
                let mut invp = vec![0u16; pm.len()];
                for (k, &x) in pm.iter().enumerate() {
                    invp[x as usize] = k as u16;
                }
                (index[&pack(&|s| invp[s])], is_pseudo_mod_p(r, std::slice::from_ref(g), p))
            })
            .collect();
        let (inv, admissible) = info.into_iter().unzip();
        let identity = index[&pack(&|s| s as u16)];
        Ok(Self { r, p, elems, perms, simple, index, inv, admissible, identity })
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let (pa, pb) = (&self.perms[a as usize], &self.perms[b as usize]);
        let key = self
            .simple
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, &s)| acc | (pa[pb[s] as usize] as u128) << (8 * i));
        self.index[&key]
    }

    /// Closure of the generators; `None` once a non-admissible element shows up.
    fn close(&self, gens: &[u32]) -> Option<Vec<u32>> {
        let id = self.identity;
        let mut seen: HashSet<u32> = HashSet::from([id]);
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(g, x);
                if seen.insert(y) {
                    if !self.admissible[y as usize] {
                        return None;
                    }
                    stack.push(y);
                }
            }
        }
        let mut v: Vec<u32> = seen.into_iter().collect();
        v.sort_unstable();
        Some(v)
    }

    fn sub(&self, gens: Vec<u32>, set: Vec<u32>) -> Sub {
        Sub { gens, set }
    }

    /// Every conjugate `s H s^-1` as a sorted element list.
    fn orbit(&self, h: &Sub) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = (0..self.elems.len() as u32)
            .into_par_iter()
            .map(|s| {
                let mut c: Vec<u32> =
                    h.set.iter().map(|&x| self.mul(self.mul(s, x), self.inv[s as usize])).collect();
                c.sort_unstable();
                c
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn pseudo(&self, gens: &[u32]) -> bool {
        let g: Vec<Isometry> = gens.iter().map(|&i| self.elems[i as usize].clone()).collect();
        is_pseudo_mod_p(self.r, &g, self.p)
    }

    /// Extensions `<H, a>` for admissible `a`, one per double coset `H a H`.
    fn extensions(&self, h: &Sub, adm: &[u32]) -> Vec<Sub> {
        let mut covered: HashSet<u32> = h.set.iter().copied().collect();
        let mut out = Vec::new();
        for &a in adm {
            if covered.contains(&a) {
                continue;
            }
            for &x in &h.set {
                let xa = self.mul(x, a);
                for &y in &h.set {
                    covered.insert(self.mul(xa, y));
                }
            }
            let mut gens = h.gens.clone();
            gens.push(a);
            if let Some(set) = self.close(&gens) {
                if self.pseudo(&gens) {
                    out.push(self.sub(gens, set));
                }
            }
        }
        out
    }
}

fn exhaustive(r: &RootDatum, p: u64, elems: Vec<Isometry>) -> Result<Vec<SubgroupClass>> {
    let ctx = Ctx::new(r, p, elems)?;
    let adm: Vec<u32> = (0..ctx.elems.len() as u32).filter(|&i| ctx.admissible[i as usize]).collect();
    let id = ctx.identity;
    let trivial = ctx.sub(Vec::new(), vec![id]);
    let mut classes: Vec<Sub> = vec![trivial.clone()];
    let mut seen: HashSet<Vec<u32>> = HashSet::from([trivial.set.clone()]);
    // conjugates of every class found so far
    let mut frontier = vec![trivial];
    while !frontier.is_empty() {
        let mut cands: Vec<Sub> = frontier.par_iter().flat_map(|h| ctx.extensions(h, &adm)).collect();
        cands.sort_by(|a, b| (a.set.len(), &a.set).cmp(&(b.set.len(), &b.set)));
        let mut next = Vec::new();
        for c in cands {
            if seen.contains(&c.set) {
                continue;
            }
            seen.extend(ctx.orbit(&c));
            classes.push(c.clone());
            next.push(c);
        }
        frontier = next;
    }
    classes.sort_by(|a, b| (a.set.len(), &a.set).cmp(&(b.set.len(), &b.set)));
    classes
        .into_iter()
        .map(|c| {
            let gens: Vec<Isometry> = c.gens.iter().map(|&i| ctx.elems[i as usize].clone()).collect();
            let elements: Vec<Isometry> = c.set.iter().map(|&i| ctx.elems[i as usize].clone()).collect();
            finish(r, p, gens, elements, true)
        })
        .collect()
}

/// Exact verdict for a class; the mod-p screening must agree with it.
fn finish(r: &RootDatum, p: u64, gens: Vec<Isometry>, elements: Vec<Isometry>, screened: bool) -> Result<SubgroupClass> {
    let h = IsometryGroup::new(r.rank(), gens.clone());
    let v = verdict(r, &h, p)?;
    let fast = is_pseudo_mod_p(r, &gens, p);
    if fast != v.is_pseudo || (screened && !v.is_pseudo) {
        return Err(Error::Internal(format!(
            "pseudo test disagrees between HNF membership ({}) and reduction mod {p} ({fast})",
            v.is_pseudo
        )));
    }
    Ok(SubgroupClass { order: elements.len(), generators: gens, elements, verdict: v })
}

/// Permutation `v_i -> v_{perm[i]}` of `A_m`, in simple-root coordinates.
fn permutation_a(perm: &[usize], sign: i64) -> Isometry {
    let m = perm.len() - 1;
    let diff = |a: usize, b: usize| -> Vec<i64> {
        let mut v = vec![0i64; m];
        let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
        for x in v.iter_mut().take(hi).skip(lo) {
            *x = s * sign;
        }
        v
    };
    let images: Vec<Vec<i64>> = (0..m).map(|i| diff(perm[i], perm[i + 1])).collect();
    Isometry::from_images(&images)
}

/// Partitions of `n` into parts that are 1 or a power of `p`, largest first.
fn p_power_cycle_types(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut parts = vec![];
    let mut q = p;
    while q <= n {
        parts.push(q);
        q *= p;
    }
    parts.reverse();
    parts.push(1);
    let mut out = Vec::new();
    fn go(n: usize, parts: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for (i, &k) in parts.iter().enumerate() {
            if k <= n {
                cur.push(k);
                go(n - k, &parts[i..], cur, out);
                cur.pop();
            }
        }
    }
    go(n, &parts, &mut Vec::new(), &mut out);
    out
}

fn cyclic_type_a(r: &RootDatum, m: usize, p: u64) -> Result<Vec<SubgroupClass>> {
    let mut out = Vec::new();
    for ct in p_power_cycle_types(m + 1, p as usize) {
        let mut perm: Vec<usize> = (0..=m).collect();
        let mut start = 0;
        for &k in &ct {
            for i in 0..k {
                perm[start + i] = start + (i + 1) % k;
            }
            start += k;
        }
        for sign in [1, -1] {
            let g = permutation_a(&perm, sign);
            if g.is_identity() {
                continue;
            }
            let elements = closure(m, std::slice::from_ref(&g), AUT_CAP)?;
            out.push(finish(r, p, vec![g], elements, false)?);
        }
    }
    out.retain(|c| c.verdict.is_pseudo);
    Ok(out)
}

fn named_products(r: &RootDatum, p: u64) -> Result<Vec<SubgroupClass>> {
    let named = named_elements(r)?;
    let (a, b) = (named["a"].clone(), named["b"].clone());
    let ab = a.compose(&b);
    let mut out = Vec::new();
    for gens in [vec![a.clone()], vec![b.clone()], vec![ab], vec![a, b]] {
        let elements = closure(r.rank(), &gens, AUT_CAP)?;
        out.push(finish(r, p, gens, elements, false)?);
    }
    out.retain(|c| c.verdict.is_pseudo);
    Ok(out)
}

/// Pseudo p-root pairs on `R` up to `Aut(R)`-conjugacy. The search is
/// exhaustive whenever `Aut(R)` has at most [`AUT_CAP`] elements; otherwise
/// only cyclic signed permutations (type A) or the named elements (`E_8`) are
/// examined and the result is marked incomplete.
pub fn classify(r: &RootDatum, p: u64) -> Result<Classification> {
    check_prime(p)?;
    let label = r.label();
    let partial = |classes, note: &str| Classification {
        root_lattice: label.clone(),
        p,
        complete: false,
        note: Some(note.to_string()),
        classes,
    };
    match r.components.as_slice() {
        [RootType::A(m)] if *m >= 8 => {
            return Ok(partial(cyclic_type_a(r, *m, p)?, "cyclic subgroups of signed permutations with p-power cycle type only"))
        }
        [RootType::E(8)] => return Ok(partial(named_products(r, p)?, "subgroups generated by the named elements a, b only")),
        [RootType::E(7)] => return Ok(partial(Vec::new(), "no subgroup search for E7")),
        _ => {}
    }
    match r.aut_group(AUT_CAP) {
        Ok(g) => {
            let elems = g.elements.unwrap_or_default();
            Ok(Classification { root_lattice: label, p, complete: true, note: None, classes: exhaustive(r, p, elems)? })
        }
        Err(Error::CapExceeded(_)) => Ok(partial(Vec::new(), "automorphism group exceeds the enumeration cap")),
        Err(e) => Err(e),
    }
}
