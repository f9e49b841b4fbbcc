//! Supersingular K3 lattices `N_{p,sigma}` at the level of discriminant
//! forms: primitive embeddings of coinvariant lattices, the bundled group
//! table, and bounds on the wild part of symplectic groups.

mod embed;
mod table;
mod wild;

pub use embed::{primitively_embeds, verify_certificate, Certificate, EmbeddingQuery, GluingWitness};
pub use table::{reproduce_table, tame_rank_bound_check, RowReport, TableReport, TableSummary, TameCheck};
pub use wild::{allowed_components, wild_degree_bound, AllowedComponent, Decomposition, WildBoundReport};

use serde::Serialize;

use crate::arith::{is_prime, legendre};
use crate::error::{Error, Result};
use crate::fp;
use crate::fqf::{nikulin_exists, Fqf, JordanComponent};

/// Signature of `N_{p,sigma}`.
pub const N_SIGNATURE: (u32, u32) = (1, 21);

#[derive(Clone, Debug, Serialize)]
pub struct SupersingularForm {
    pub p: u64,
    pub sigma: u32,
    pub q: Fqf,
}

fn check_args(p: u64, sigma: u32) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if !(1..=10).contains(&sigma) {
        return Err(Error::SigmaOutOfRange(sigma));
    }
    Ok(())
}

/// Discriminant form of `N_{p,sigma}`: `p^{+2sigma}` when `p = 3 mod 4` and
/// sigma is odd, `p^{-2sigma}` otherwise.
pub fn n_form(p: u64, sigma: u32) -> Result<SupersingularForm> {
    check_args(p, sigma)?;
    let sign = if p % 4 == 3 && sigma % 2 == 1 { 1 } else { -1 };
    let q = Fqf::new(vec![JordanComponent::odd(p, 1, 2 * sigma, sign)])?;
    if !nikulin_exists(N_SIGNATURE.0, N_SIGNATURE.1, &q) {
        return Err(Error::Internal(format!("no even lattice of signature (1,21) with form {q}")));
    }
    Ok(SupersingularForm { p, sigma, q })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnisotropyMethod {
    /// Hyperbolic planes split off one at a time, each isotropic vector found
    /// by scanning the whole group.
    Exhaustive,
    /// The form is hyperbolic iff its sign equals `((-1)^sigma / p)`.
    Symbol,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnisotropyReport {
    pub p: u64,
    pub sigma: u32,
    pub method: AnisotropyMethod,
    /// Dimension of a maximal totally isotropic subspace.
    pub witt_index: u32,
    /// No isotropic subgroup of order `p^sigma`.
    pub no_maximal_isotropic: bool,
}

/// Largest group scanned by [`AnisotropyMethod::Exhaustive`].
pub const ANISOTROPY_SCAN_CAP: u64 = 100_000;

/// Witt index of the diagonal form `sum d_i x_i^2` over F_p, splitting off
/// hyperbolic planes found by scanning every vector.
pub fn witt_index_by_scan(diag: &[u64], p: u64) -> u32 {
    let n = diag.len();
    // current space as a list of basis vectors in the original coordinates
    let mut basis: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let b = |x: &[u64], y: &[u64]| fp::dot_form(x, diag, y, p);
    let mut index = 0;
    loop {
        let d = basis.len();
        if d < 2 {
            return index;
        }
        let total = p.pow(d as u32);
        let combine = |mut k: u64| -> Vec<u64> {
            let mut v = vec![0u64; n];
            for bv in &basis {
                let c = k % p;
                k /= p;
                for (x, y) in v.iter_mut().zip(bv) {
                    *x = (*x + c * y) % p;
                }
            }
            v
        };
        let Some(v) = (1..total).map(combine).find(|v| b(v, v) == 0) else { return index };
        // a partner w with b(v, w) = 1 exists by nondegeneracy
        let w0 = basis.iter().find(|u| b(&v, u) != 0).expect("form is nondegenerate").clone();
        let s = crate::arith::inv_mod(b(&v, &w0), p);
        let w: Vec<u64> = w0.iter().map(|x| x * s % p).collect();
        // orthogonal complement of span(v, w) inside the current space
        let proj = |u: &[u64]| -> Vec<u64> {
            let (bu_w, bu_v, bw_w) = (b(u, &w), b(u, &v), b(&w, &w));
            // u - (b(u,w) - b(u,v) b(w,w)) v - b(u,v) w, using b(v,v) = 0, b(v,w) = 1
            let cv = (bu_w + p - bu_v * bw_w % p) % p;
            u.iter()
                .zip(&v)
                .zip(&w)
                .map(|((&x, &vv), &ww)| (x + 2 * p - cv * vv % p - bu_v * ww % p) % p)
                .collect()
        };
        let mut ech = fp::Echelon::new(p);
        for u in &basis {
            ech.insert(&proj(u));
        }
        basis = ech.rows().clone();
        index += 1;
    }
}

/// Checks that `q_{N_{p,sigma}}` has no isotropic subgroup of order `p^sigma`.
pub fn anisotropy_check(p: u64, sigma: u32) -> Result<AnisotropyReport> {
    let f = n_form(p, sigma)?;
    let c = &f.q.components()[0];
    let order = (p as u128).pow(2 * sigma);
    let (method, witt_index) = if order <= ANISOTROPY_SCAN_CAP as u128 {
        let nr = crate::arith::non_residue(p);
        let diag: Vec<u64> =
            (0..c.rank).map(|i| if i + 1 == c.rank && c.sign < 0 { nr } else { 1 }).collect();
        (AnisotropyMethod::Exhaustive, witt_index_by_scan(&diag, p))
    } else {
        let split = c.sign as i32 == legendre(if sigma % 2 == 0 { 1 } else { -1 }, p);
        (AnisotropyMethod::Symbol, if split { sigma } else { sigma - 1 })
    };
    Ok(AnisotropyReport { p, sigma, method, witt_index, no_maximal_isotropic: witt_index < sigma })
}
