use std::collections::HashSet;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::n_form;
use crate::error::{Error, Result};
use crate::fqf::overlattice::{for_each_overlattice, Gluing, LocalModel};
use crate::fqf::{nikulin_exists, Fqf};

/// Rank of a lattice that can occur as a coinvariant lattice.
pub const MAX_RANK: u32 = 21;

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingQuery {
    pub q_s: Fqf,
    pub rank_s: u32,
    pub p: u64,
    pub sigma: u32,
}

impl EmbeddingQuery {
    pub fn new(q_s: Fqf, rank_s: u32, p: u64, sigma: u32) -> Result<Self> {
        if rank_s > MAX_RANK {
            return Err(Error::InvalidQuery(format!("rank {rank_s} exceeds {MAX_RANK}")));
        }
        let ell = q_s.length();
        if ell > rank_s {
            return Err(Error::InvalidQuery(format!("length {ell} of {q_s} exceeds rank {rank_s}")));
        }
        if rank_s + ell > 24 {
            return Err(Error::InvalidQuery(format!("rank {rank_s} plus length {ell} exceeds 24")));
        }
        Ok(Self { q_s, rank_s, p, sigma })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GluingWitness {
    /// `|H|` for the glue group inside `A_S + A_D`.
    pub h_order: u64,
    /// Generators of `H` in local coordinates (those of `A_S` first).
    pub generators: Vec<Vec<u64>>,
    /// Form of the saturation of `S + D`.
    pub q_tilde: Fqf,
    /// `-q_tilde`, the form required of the complement of signature
    /// `(1, 21 - rank S)`.
    pub complement: Fqf,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub query: EmbeddingQuery,
    pub embeds: bool,
    /// `q_S + q_D` with `q_D = -q_{N_{p,sigma}}`.
    pub q_total: Fqf,
    pub max_glue_order: u64,
    /// Distinct saturation forms examined; all of them for a negative answer.
    pub candidates: Vec<GluingWitness>,
    pub witness: Option<GluingWitness>,
}

/// Decides whether a lattice with discriminant form `q_S`, negative definite
/// of rank `rank_S`, embeds primitively into `N_{p,sigma}`: some saturation of
/// `S + D` (with `q_D = -q_N`, both summands primitive) must have a form
/// whose negative is carried by an even lattice of signature
/// `(1, 21 - rank S)`.
pub fn primitively_embeds(query: &EmbeddingQuery) -> Result<Certificate> {
    let p = query.p;
    let n = n_form(p, query.sigma)?;
    let q_d = n.q.negate();
    let q_total = query.q_s.direct_sum(&q_d);
    let ell = query.q_s.length_at(p).min(2 * query.sigma);
    let max_glue_order = p.checked_pow(ell).ok_or_else(|| Error::ScopeExceeded("glue order overflows".into()))?;
    let t_minus = MAX_RANK - query.rank_s;
    let mut seen = HashSet::new();
    let mut candidates = Vec::new();
    let mut witness = None;
    for_each_overlattice(&query.q_s, &q_d, p, max_glue_order, Gluing::STRICT, &mut |c| {
        if !seen.insert(c.form.canonical()) {
            return ControlFlow::Continue(());
        }
        let complement = c.form.negate();
        let w = GluingWitness {
            h_order: c.order,
            generators: c.generators.clone(),
            q_tilde: c.form.clone(),
            complement: complement.clone(),
        };
        candidates.push(w.clone());
        if nikulin_exists(1, t_minus, &complement) {
            witness = Some(w);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(Certificate { query: query.clone(), embeds: witness.is_some(), q_total, max_glue_order, candidates, witness })
}

fn q_local(model: &LocalModel, x: &[u64]) -> BigRational {
    let p = model.p;
    let mut s = BigRational::zero();
    for i in 0..model.dim() {
        let m = p.pow(model.exps[i]);
        let u = model.units[i] % m;
        let inv = (1..m).find(|w| w * u % m == 1).expect("unit");
        s += BigRational::new(BigInt::from(x[i] as u128 * x[i] as u128 * inv as u128), BigInt::from(m));
    }
    let whole = BigRational::from_integer(s.to_integer());
    s - whole
}

/// Re-checks an accepting certificate: the complement form passes the
/// existence test, and `H` is an isotropic subgroup of the stated order
/// meeting both summands trivially.
pub fn verify_certificate(cert: &Certificate) -> Result<bool> {
    let Some(w) = &cert.witness else { return Ok(false) };
    let q = &cert.query;
    if !nikulin_exists(1, MAX_RANK - q.rank_s, &w.complement) || !w.q_tilde.negate().isomorphic(&w.complement) {
        return Ok(false);
    }
    let p = q.p;
    let qd = n_form(p, q.sigma)?.q.negate();
    let ms = LocalModel::of(&q.q_s, p);
    let model = ms.concat(&LocalModel::of(&qd, p));
    let moduli: Vec<u64> = model.exps.iter().map(|&k| p.pow(k)).collect();
    let ns = ms.dim();
    // enumerate H by closing the generators under addition
    let zero = vec![0u64; model.dim()];
    let mut elems: HashSet<Vec<u64>> = HashSet::from([zero.clone()]);
    let mut stack = vec![zero];
    while let Some(x) = stack.pop() {
        for g in &w.generators {
            let y: Vec<u64> = x.iter().zip(g).zip(&moduli).map(|((a, b), m)| (a + b) % m).collect();
            if elems.insert(y.clone()) {
                if elems.len() as u64 > w.h_order {
                    return Ok(false);
                }
                stack.push(y);
            }
        }
    }
    if elems.len() as u64 != w.h_order || w.h_order > cert.max_glue_order {
        return Ok(false);
    }
    for x in elems.iter().filter(|x| x.iter().any(|&c| c != 0)) {
        let (s, d) = x.split_at(ns);
        if s.iter().all(|&c| c == 0) || d.iter().all(|&c| c == 0) || !q_local(&model, x).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
