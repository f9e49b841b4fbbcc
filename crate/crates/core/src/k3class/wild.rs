use serde::Serialize;

use crate::arith::{is_prime, val_factorial, val_u64};
use crate::error::{Error, Result};
use crate::hmdata::HMRecord;
use crate::intlat::linalg::IntMat;
use crate::prootpair::disc_action_nontrivial;
use crate::rootsys::{p_cycle, t_sublattice, Isometry, RootDatum, RootType};
use num_bigint::BigInt;

/// Largest rank of the root part `R` of a coinvariant lattice.
pub const MAX_ROOT_RANK: usize = 21;

#[derive(Clone, Debug, Serialize)]
pub struct AllowedComponent {
    pub label: String,
    pub rank: usize,
    /// Upper bound on `nu_p` of a group forming a p-root pair with it.
    pub cap: u32,
    #[serde(skip)]
    pub root_type: RootType,
}

fn comp(t: RootType, cap: u32) -> AllowedComponent {
    AllowedComponent { label: t.to_string(), rank: t.rank(), cap, root_type: t }
}

/// Irreducible root lattices that can occur in a p-root pair coming from a
/// wild action, with their caps. Empty for `p >= 13`, where every
/// symplectic action is tame.
pub fn allowed_components(p: u64) -> Result<Vec<AllowedComponent>> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(match p {
        11 => vec![comp(RootType::A(10), 1)],
        7 => vec![comp(RootType::A(6), 1)],
        5 => vec![comp(RootType::A(4), 1), comp(RootType::E(8), 1)],
        3 => vec![
            comp(RootType::A(2), 1),
            comp(RootType::A(8), 4),
            comp(RootType::D(4), 1),
            comp(RootType::E(6), 4),
            comp(RootType::E(8), 5),
        ],
        _ => Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// `(label, multiplicity)`, in the order of [`allowed_components`].
    pub parts: Vec<(String, usize)>,
    pub rank: usize,
    pub g_r: u32,
    pub g_l: u32,
    /// Table row attaining `g_l`.
    pub g_l_row: Option<u32>,
    pub total: u32,
}

impl Decomposition {
    pub fn label(&self) -> String {
        if self.parts.is_empty() {
            return "0".into();
        }
        self.parts
            .iter()
            .map(|(l, k)| if *k == 1 { l.clone() } else { format!("{l}^{k}") })
            .collect::<Vec<_>>()
            .join("+")
    }

    fn count(&self) -> usize {
        self.parts.iter().map(|x| x.1).sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WildBoundReport {
    pub p: u64,
    pub bound: u32,
    pub tame_only: bool,
    pub witness_decomposition: Vec<(String, usize)>,
    pub g_r_contribution: u32,
    pub g_l_contribution: u32,
    pub g_l_row: Option<u32>,
    pub decompositions_searched: usize,
    /// Other decompositions attaining the bound.
    pub ties: Vec<String>,
    /// Decompositions ruled out, with the reason.
    pub excluded: Vec<(String, String)>,
    pub note: Option<String>,
}

fn multisets(comps: &[AllowedComponent], i: usize, room: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if i == comps.len() {
        out.push(cur.clone());
        return;
    }
    let r = comps[i].rank;
    for k in 0..=room / r {
        cur.push(k);
        multisets(comps, i + 1, room - k * r, cur, out);
        cur.pop();
    }
}

/// `nu_p` of the table's group orders, largest over rows of rank at most `max_rank`.
fn g_l(table: &[HMRecord], p: u64, max_rank: usize) -> (u32, Option<u32>) {
    table
        .iter()
        .filter(|r| r.rank as usize <= max_rank)
        .map(|r| (val_u64(r.order, p), Some(r.number)))
        .fold((0, None), |best, x| if x.0 > best.0 { x } else { best })
}

/// An element of order 11 acting as the cyclic shift on one `A_10` and
/// trivially on the other moves the discriminant group of `T + T`; such a
/// pair cannot come from a Leech-type action.
fn a10_pair_obstructed() -> Result<bool> {
    let r = RootDatum::sum(&[RootType::A(10), RootType::A(10)])?;
    let t = t_sublattice(11)?;
    let mut basis: IntMat = Vec::new();
    for row in &t.basis {
        let mut v = row.clone();
        v.extend(std::iter::repeat(BigInt::from(0)).take(10));
        basis.push(v);
    }
    for row in &t.basis {
        let mut v = vec![BigInt::from(0); 10];
        v.extend(row.iter().cloned());
        basis.push(v);
    }
    let m = r.lattice().sublattice(basis)?;
    let c = p_cycle(11);
    let mut rows = vec![vec![0i64; 20]; 20];
    for i in 0..10 {
        for j in 0..10 {
            rows[i][j] = c.get(i, j);
        }
        rows[10 + i][10 + i] = 1;
    }
    let g = Isometry::from_rows(&rows)?;
    Ok(disc_action_nontrivial(&r.lattice(), &m, &g)?.nontrivial)
}

/// Upper bound on `nu_p(G)` over all root decompositions `R` of rank at most
/// 21: the sum of component caps, plus `nu_p(k!)` for `k` equal components,
/// plus the largest `nu_p` among table groups of rank at most `24 - rank R`.
pub fn wild_degree_bound(p: u64, table: &[HMRecord]) -> Result<WildBoundReport> {
    let comps = allowed_components(p)?;
    if comps.is_empty() {
        return Ok(WildBoundReport {
            p,
            bound: 0,
            tame_only: true,
            witness_decomposition: Vec::new(),
            g_r_contribution: 0,
            g_l_contribution: 0,
            g_l_row: None,
            decompositions_searched: 0,
            ties: Vec::new(),
            excluded: Vec::new(),
            note: Some(format!("every symplectic action has order prime to {p}")),
        });
    }
    let mut counts = Vec::new();
    multisets(&comps, 0, MAX_ROOT_RANK, &mut Vec::new(), &mut counts);
    let mut excluded = Vec::new();
    let obstruct_a10 = p == 11 && a10_pair_obstructed()?;
    let mut decs: Vec<Decomposition> = Vec::new();
    for ks in &counts {
        let parts: Vec<(String, usize)> =
            comps.iter().zip(ks).filter(|(_, &k)| k > 0).map(|(c, &k)| (c.label.clone(), k)).collect();
        let rank: usize = comps.iter().zip(ks).map(|(c, &k)| c.rank * k).sum();
        let g_r: u32 = comps.iter().zip(ks).map(|(c, &k)| c.cap * k as u32 + val_factorial(k as u64, p)).sum();
        let (gl, row) = g_l(table, p, 24 - rank);
        let d = Decomposition { parts, rank, g_r, g_l: gl, g_l_row: row, total: g_r + gl };
        if obstruct_a10 && ks[0] >= 2 {
            excluded.push((d.label(), "nontrivial action on the discriminant group of T(A10)+T(A10)".into()));
            continue;
        }
        decs.push(d);
    }
    let bound = decs.iter().map(|d| d.total).max().unwrap_or(0);
    let mut best: Vec<&Decomposition> = decs.iter().filter(|d| d.total == bound).collect();
    best.sort_by(|a, b| b.count().cmp(&a.count()).then_with(|| a.label().cmp(&b.label())));
    let w = best[0];
    Ok(WildBoundReport {
        p,
        bound,
        tame_only: false,
        witness_decomposition: w.parts.clone(),
        g_r_contribution: w.g_r,
        g_l_contribution: w.g_l,
        g_l_row: w.g_l_row,
        decompositions_searched: counts.len(),
        ties: best[1..].iter().map(|d| d.label()).collect(),
        excluded,
        note: None,
    })
}
