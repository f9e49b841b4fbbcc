//! p-root pairs `(H, R)`: the lattice `R^#_H` spanned by `pR` and the
//! differences `g(a) - a`, fixed sublattices, and the action on discriminant
//! groups.

mod classify;

pub use classify::{classify, Classification, SubgroupClass, AUT_CAP};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{is_prime, prime_power, rem_i64};
use crate::error::{Error, Result};
use crate::fp::{self, FpMat};
use crate::intlat::linalg::{self, IntMat};
use crate::intlat::{IntegralLattice, Sublattice};
use crate::rootsys::{Isometry, IsometryGroup, RootDatum};

#[derive(Clone, Debug)]
pub struct ProotVerdict {
    pub is_pseudo: bool,
    pub is_full: bool,
    pub sharp_lattice: Sublattice,
    pub witness_root: Option<Vec<i64>>,
    pub fixed_rank: usize,
}

impl ProotVerdict {
    /// `[R : R^#]`, a power of p.
    pub fn sharp_index(&self) -> BigInt {
        linalg::det(&self.sharp_lattice.basis).abs()
    }
}

impl Serialize for ProotVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ProotVerdict", 5)?;
        st.serialize_field("pseudo", &self.is_pseudo)?;
        st.serialize_field("full", &self.is_full)?;
        st.serialize_field("sharp_index", &self.sharp_index().to_u64())?;
        st.serialize_field("witness_root", &self.witness_root)?;
        st.serialize_field("fixed_rank", &self.fixed_rank)?;
        st.end()
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

fn check_group(r: &RootDatum, gens: &[Isometry]) -> Result<()> {
    for g in gens {
        if g.dim() != r.rank() {
            return Err(Error::DimensionMismatch { expected: r.rank(), found: g.dim() });
        }
        if !r.preserves(g) {
            return Err(Error::NotPreserved);
        }
    }
    Ok(())
}

fn apply_big(g: &Isometry, v: &[BigInt]) -> Vec<BigInt> {
    (0..g.dim())
        .map(|i| (0..g.dim()).map(|j| v[j].clone() * g.get(i, j)).sum())
        .collect()
}

fn apply_rat(g: &Isometry, v: &[BigRational]) -> Vec<BigRational> {
    (0..g.dim())
        .map(|i| {
            (0..g.dim()).fold(BigRational::zero(), |acc, j| {
                acc + &v[j] * BigRational::from_integer(BigInt::from(g.get(i, j)))
            })
        })
        .collect()
}

/// Columns of `g - 1`, i.e. the vectors `g(e_j) - e_j`.
fn differences(g: &Isometry) -> Vec<Vec<i64>> {
    let d = g.minus_identity();
    (0..g.dim()).map(|j| (0..g.dim()).map(|i| d[i][j]).collect()).collect()
}

/// `R^#_H` as an HNF sublattice: `pR` plus generator differences, closed
/// under the generators until stable.
pub fn sharp(r: &RootDatum, h: &IsometryGroup, p: u64) -> Result<Sublattice> {
    check_prime(p)?;
    check_group(r, &h.generators)?;
    let n = r.rank();
    let mut rows: IntMat = (0..n)
        .map(|i| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::from(p);
            v
        })
        .collect();
    for g in &h.generators {
        for d in differences(g) {
            rows.push(d.into_iter().map(BigInt::from).collect());
        }
    }
    let mut basis = linalg::hnf(&rows);
    loop {
        let mut ext = basis.clone();
        for b in &basis {
            for g in &h.generators {
                ext.push(apply_big(g, b));
            }
        }
        let next = linalg::hnf(&ext);
        if next == basis {
            break;
        }
        basis = next;
    }
    r.lattice().sublattice(basis)
}

/// `R^# / pR` as a subspace of F_p^n, in RREF.
pub fn sharp_mod_p(gens: &[Isometry], p: u64) -> FpMat {
    let mut basis = fp::Echelon::new(p);
    let mut queue: Vec<Vec<u64>> = gens
        .iter()
        .flat_map(differences)
        .map(|d| d.iter().map(|&x| rem_i64(x, p)).collect())
        .collect();
    while let Some(v) = queue.pop() {
        if !basis.insert(&v) {
            continue;
        }
        let vi: Vec<i64> = v.iter().map(|&x| x as i64).collect();
        for g in gens {
            queue.push(g.apply(&vi).iter().map(|&x| rem_i64(x, p)).collect());
        }
    }
    if basis.dim() == 0 {
        return Vec::new();
    }
    fp::rref(basis.rows(), p).0
}

/// Pseudo test through reduction mod p: a root lies in `R^#` iff its
/// reduction lies in `R^#/pR`.
pub fn is_pseudo_mod_p(r: &RootDatum, gens: &[Isometry], p: u64) -> bool {
    let n = r.rank();
    let v = sharp_mod_p(gens, p);
    if v.is_empty() {
        return true;
    }
    if v.len() == n {
        return false;
    }
    let ann = fp::nullspace(&v, n, p);
    let positive = r.roots.iter().filter(|a| a.iter().all(|&c| c >= 0));
    for a in positive {
        let hit = ann.iter().all(|w| {
            w.iter().zip(a).fold(0u64, |s, (&wi, &ai)| (s + wi * rem_i64(ai, p)) % p) == 0
        });
        if hit {
            return false;
        }
    }
    true
}

/// Saturated kernel of the stacked maps `g - 1`.
pub fn fixed_sublattice(r: &RootDatum, h: &IsometryGroup) -> Result<Sublattice> {
    check_group(r, &h.generators)?;
    let n = r.rank();
    let stacked: IntMat = h
        .generators
        .iter()
        .flat_map(|g| g.minus_identity())
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect();
    let k = linalg::right_kernel(&stacked, n);
    r.lattice().sublattice(k)
}

/// `S_H(R)`, the orthogonal complement of the fixed sublattice.
pub fn covariant_sublattice(r: &RootDatum, h: &IsometryGroup) -> Result<Sublattice> {
    let fixed = fixed_sublattice(r, h)?;
    Ok(r.lattice().orthogonal_complement(&fixed))
}

/// A root of `R` lying in `s`, if any.
pub fn root_in(r: &RootDatum, s: &Sublattice) -> Option<Vec<i64>> {
    positive_roots_by_height(r)
        .into_iter()
        .find(|a| s.contains(&a.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()))
        .cloned()
}

/// Positive roots ordered by height, then by coefficients.
fn positive_roots_by_height(r: &RootDatum) -> Vec<&Vec<i64>> {
    let mut pos: Vec<&Vec<i64>> = r.roots.iter().filter(|a| a.iter().all(|&c| c >= 0)).collect();
    pos.sort_by_key(|a| (a.iter().sum::<i64>(), std::cmp::Reverse((*a).clone())));
    pos
}

pub fn verdict(r: &RootDatum, h: &IsometryGroup, p: u64) -> Result<ProotVerdict> {
    let sharp_lattice = sharp(r, h, p)?;
    let witness_root = root_in(r, &sharp_lattice);
    let fixed_rank = fixed_sublattice(r, h)?.rank();
    let is_pseudo = witness_root.is_none();
    Ok(ProotVerdict { is_pseudo, is_full: is_pseudo && fixed_rank == 0, sharp_lattice, witness_root, fixed_rank })
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscAction {
    pub nontrivial: bool,
    /// A dual vector `x` (ambient coordinates) with `g(x) - x` outside `M`.
    #[serde(serialize_with = "rational_strings")]
    pub witness: Option<Vec<BigRational>>,
    #[serde(serialize_with = "rational_strings")]
    pub difference: Option<Vec<BigRational>>,
}

fn rational_strings<S: Serializer>(v: &Option<Vec<BigRational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).serialize(s)
}

fn in_sublattice(m: &Sublattice, v: &[BigRational]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    if m.basis.is_empty() {
        return false;
    }
    match linalg::solve_left(&linalg::to_rat(&m.basis), v) {
        Some(c) => c.iter().all(|x| x.is_integer()),
        None => false,
    }
}

fn check_preserves(m: &Sublattice, g: &Isometry) -> Result<()> {
    for b in &m.basis {
        let img: Vec<BigRational> = apply_big(g, b).into_iter().map(BigRational::from_integer).collect();
        if !in_sublattice(m, &img) {
            return Err(Error::NotPreserved);
        }
    }
    Ok(())
}

/// `g(x) - x` for a vector `x` of `M^dual`, and whether it leaves `M`.
pub fn disc_action_at(
    ambient: &IntegralLattice,
    m: &Sublattice,
    g: &Isometry,
    x: &[BigRational],
) -> Result<(Vec<BigRational>, bool)> {
    check_preserves(m, g)?;
    let gram = linalg::to_rat(ambient.gram());
    for b in &m.basis {
        let br: Vec<BigRational> = b.iter().cloned().map(BigRational::from_integer).collect();
        if !linalg::bilinear(x, &gram, &br).is_integer() {
            return Err(Error::NotInLattice);
        }
    }
    let d: Vec<BigRational> = apply_rat(g, x).into_iter().zip(x).map(|(a, b)| a - b).collect();
    let outside = !in_sublattice(m, &d);
    Ok((d, outside))
}

/// Whether `g` acts nontrivially on `A_M`, tested on lifts of generators of
/// the discriminant group.
pub fn disc_action_nontrivial(ambient: &IntegralLattice, m: &Sublattice, g: &Isometry) -> Result<DiscAction> {
    check_preserves(m, g)?;
    let disc = ambient.restrict(m).discriminant_group()?;
    for lift in &disc.generators {
        let x: Vec<BigRational> = (0..ambient.rank())
            .map(|k| {
                lift.iter()
                    .zip(&m.basis)
                    .fold(BigRational::zero(), |acc, (c, b)| acc + c * BigRational::from_integer(b[k].clone()))
            })
            .collect();
        let (d, outside) = disc_action_at(ambient, m, g, &x)?;
        if outside {
            return Ok(DiscAction { nontrivial: true, witness: Some(x), difference: Some(d) });
        }
    }
    Ok(DiscAction { nontrivial: false, witness: None, difference: None })
}

#[derive(Clone, Debug, Serialize)]
pub struct PGroupCheck {
    pub order: usize,
    pub weyl_intersection_order: usize,
    pub is_p_group: bool,
}

/// Computes `H ∩ W(R)` and whether its order is a power of `p`.
pub fn p_group_check(r: &RootDatum, h: &mut IsometryGroup, p: u64, cap: usize) -> Result<PGroupCheck> {
    check_prime(p)?;
    check_group(r, &h.generators)?;
    let elems = h.materialize(cap)?;
    let k = elems.iter().filter(|g| r.in_weyl_group(g)).count();
    let is_p_group = k == 1 || prime_power(k as u64).is_some_and(|(q, _)| q == p);
    Ok(PGroupCheck { order: elems.len(), weyl_intersection_order: k, is_p_group })
}

/// `p`-th multiple of the identity basis, the sharp lattice of the trivial group.
pub fn p_times(r: &RootDatum, p: u64) -> Result<Sublattice> {
    let n = r.rank();
    let rows: IntMat = (0..n)
        .map(|i| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::from(p);
            v
        })
        .collect();
    r.lattice().sublattice(rows)
}
