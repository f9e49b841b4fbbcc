//! p-adic Jordan decomposition of rational symmetric matrices, computed
//! exactly in the localisation at p.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Fqf, JordanComponent};
use crate::arith::{kron2, legendre_rat, mod8_rat, val_rat};
use crate::error::{Error, Result};
use crate::intlat::linalg::{self, RatMat};
use crate::intlat::IntegralLattice;

/// A Jordan component of a p-adic lattice; the exponent may be zero or
/// negative for non-integral input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalComponent {
    pub exponent: i64,
    pub rank: u32,
    pub sign: i8,
    pub oddity: Option<u8>,
}

fn pow_p(p: u64, k: i64) -> BigRational {
    let b = BigRational::from_integer(BigInt::from(p).pow(k.unsigned_abs() as u32));
    if k >= 0 {
        b
    } else {
        b.recip()
    }
}

fn min_valuation(a: &RatMat, p: u64) -> Option<i64> {
    let mut best: Option<i64> = None;
    for row in a {
        for x in row {
            if !x.is_zero() {
                let v = val_rat(x, p);
                best = Some(best.map_or(v, |b: i64| b.min(v)));
            }
        }
    }
    best
}

/// Removes index `k` after a 1x1 pivot.
fn eliminate_one(a: &RatMat, k: usize) -> RatMat {
    let n = a.len();
    let d = &a[k][k];
    let mut out = Vec::with_capacity(n - 1);
    for r in (0..n).filter(|&r| r != k) {
        let f = &a[r][k] / d;
        out.push(
            (0..n)
                .filter(|&c| c != k)
                .map(|c| &a[r][c] - &f * &a[k][c])
                .collect(),
        );
    }
    out
}

/// Removes indices `i`, `j` after a 2x2 pivot.
fn eliminate_two(a: &RatMat, i: usize, j: usize) -> RatMat {
    let n = a.len();
    let det = &a[i][i] * &a[j][j] - &a[i][j] * &a[i][j];
    let inv = [
        [&a[j][j] / &det, -&a[i][j] / &det],
        [-&a[i][j] / &det, &a[i][i] / &det],
    ];
    let keep: Vec<usize> = (0..n).filter(|&r| r != i && r != j).collect();
    keep.iter()
        .map(|&r| {
            let ci = &a[r][i] * &inv[0][0] + &a[r][j] * &inv[1][0];
            let cj = &a[r][i] * &inv[0][1] + &a[r][j] * &inv[1][1];
            keep.iter()
                .map(|&c| &a[r][c] - &ci * &a[i][c] - &cj * &a[j][c])
                .collect()
        })
        .collect()
}

/// Jordan components at `p` of a nondegenerate rational symmetric matrix,
/// ascending in exponent.
pub fn local_components(gram: &RatMat, p: u64) -> Result<Vec<LocalComponent>> {
    if p == 2 {
        two_adic(gram)
    } else {
        odd_adic(gram, p)
    }
}

fn odd_adic(gram: &RatMat, p: u64) -> Result<Vec<LocalComponent>> {
    let mut a = gram.clone();
    let mut diag: Vec<(i64, BigRational)> = Vec::new();
    while !a.is_empty() {
        let v = min_valuation(&a, p).ok_or(Error::Degenerate)?;
        let n = a.len();
        let piv = match (0..n).find(|&i| !a[i][i].is_zero() && val_rat(&a[i][i], p) == v) {
            Some(i) => i,
            None => {
                let (i, j) = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero() && val_rat(&a[i][j], p) == v)
                    .unwrap();
                // e_i + e_j has norm of valuation v since p is odd
                for k in 0..n {
                    let t = a[j][k].clone();
                    a[i][k] += t;
                }
                for k in 0..n {
                    let t = a[k][j].clone();
                    a[k][i] += t;
                }
                i
            }
        };
        diag.push((v, &a[piv][piv] / pow_p(p, v)));
        a = eliminate_one(&a, piv);
    }
    diag.sort_by_key(|d| d.0);
    let mut out: Vec<LocalComponent> = Vec::new();
    for (k, u) in diag {
        let s = legendre_rat(&u, p) as i8;
        match out.last_mut() {
            Some(c) if c.exponent == k => {
                c.rank += 1;
                c.sign *= s;
            }
            _ => out.push(LocalComponent { exponent: k, rank: 1, sign: s, oddity: None }),
        }
    }
    Ok(out)
}

fn two_adic(gram: &RatMat) -> Result<Vec<LocalComponent>> {
    // (exponent, odd unit) and (exponent, block determinant unit)
    let mut units: Vec<(i64, BigRational)> = Vec::new();
    let mut blocks: Vec<(i64, BigRational)> = Vec::new();
    let mut a = gram.clone();
    while !a.is_empty() {
        let v = min_valuation(&a, 2).ok_or(Error::Degenerate)?;
        let n = a.len();
        if let Some(i) = (0..n).find(|&i| !a[i][i].is_zero() && val_rat(&a[i][i], 2) == v) {
            units.push((v, &a[i][i] / pow_p(2, v)));
            a = eliminate_one(&a, i);
        } else {
            let (i, j) = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .find(|&(i, j)| i < j && !a[i][j].is_zero() && val_rat(&a[i][j], 2) == v)
                .unwrap();
            let det = &a[i][i] * &a[j][j] - &a[i][j] * &a[i][j];
            blocks.push((v, det / pow_p(2, 2 * v)));
            a = eliminate_two(&a, i, j);
        }
    }
    let mut exps: Vec<i64> = units.iter().chain(blocks.iter()).map(|x| x.0).collect();
    exps.sort();
    exps.dedup();
    let mut out = Vec::new();
    for k in exps {
        let us: Vec<&BigRational> = units.iter().filter(|x| x.0 == k).map(|x| &x.1).collect();
        let bs: Vec<&BigRational> = blocks.iter().filter(|x| x.0 == k).map(|x| &x.1).collect();
        let mut sign = 1i32;
        for u in us.iter().chain(bs.iter()) {
            sign *= kron2(mod8_rat(u));
        }
        let oddity = if us.is_empty() {
            None
        } else {
            Some((us.iter().map(|u| mod8_rat(u)).sum::<i64>().rem_euclid(8)) as u8)
        };
        out.push(LocalComponent {
            exponent: k,
            rank: (us.len() + 2 * bs.len()) as u32,
            sign: sign as i8,
            oddity,
        });
    }
    Ok(out)
}

/// Genus symbol of the discriminant form of an even nondegenerate lattice.
pub fn symbol_of(lattice: &IntegralLattice) -> Result<Fqf> {
    lattice.check_even()?;
    let det = lattice.det();
    if det.is_zero() {
        return Err(Error::Degenerate);
    }
    let g = linalg::to_rat(lattice.gram());
    let primes: Vec<u64> = crate::arith::factor(
        num_traits::ToPrimitive::to_u64(&num_traits::Signed::abs(&det)).ok_or_else(|| {
            Error::ScopeExceeded("determinant does not fit in 64 bits".into())
        })?,
    )
    .into_iter()
    .map(|(p, _)| p)
    .collect();
    let mut comps = Vec::new();
    for p in primes {
        for c in local_components(&g, p)? {
            if c.exponent > 0 {
                comps.push(JordanComponent {
                    prime: p,
                    exponent: c.exponent as u32,
                    rank: c.rank,
                    sign: c.sign,
                    oddity: c.oddity,
                });
            }
        }
    }
    Fqf::new(comps)
}

/// Discriminant form of the p-part of a rational Gram matrix that is
/// integral at p (components of positive exponent only).
pub fn p_part_of(gram: &RatMat, p: u64) -> Result<Vec<JordanComponent>> {
    Ok(local_components(gram, p)?
        .into_iter()
        .filter(|c| c.exponent > 0)
        .map(|c| JordanComponent {
            prime: p,
            exponent: c.exponent as u32,
            rank: c.rank,
            sign: c.sign,
            oddity: c.oddity,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_84() {
        let l = IntegralLattice::from_i64(&[vec![84]]).unwrap();
        assert_eq!(symbol_of(&l).unwrap().to_string(), "4_5^-1 3^+1 7^-1");
    }

    #[test]
    fn a2_symbol() {
        let l = IntegralLattice::from_i64(&[vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(symbol_of(&l).unwrap().to_string(), "3^-1");
    }

    #[test]
    fn e8_trivial() {
        let l = crate::rootsys::RootDatum::new(crate::rootsys::RootType::E(8)).unwrap().lattice();
        assert!(symbol_of(&l).unwrap().is_trivial());
    }
}
