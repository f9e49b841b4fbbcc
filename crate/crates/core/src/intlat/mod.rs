//! Integral lattices given by Gram matrices, with exact arithmetic throughout.

pub mod enumerate;
pub mod linalg;

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use linalg::{IntMat, RatMat};

/// Rank cap for root enumeration.
pub const ROOT_RANK_CAP: usize = 26;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralLattice {
    gram: IntMat,
}

/// The discriminant group `L^v / L` with its induced forms.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    /// Invariant factors greater than one, each dividing the next.
    pub invariants: Vec<BigInt>,
    /// Lifts of the generators to `L^v`, in coordinates of the basis of `L`.
    pub generators: Vec<Vec<BigRational>>,
    /// `b(x_i, x_j)` reduced into `[0, 1)`.
    pub bilinear: RatMat,
    /// `q(x_i)` reduced into `[0, 2)`.
    pub quadratic: Vec<BigRational>,
}

/// A sublattice given by integer basis rows in the coordinates of its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    pub basis: IntMat,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GramFile {
    Tagged { rank: Option<usize>, gram: Vec<Vec<i64>> },
    Bare(Vec<Vec<i64>>),
}

#[derive(Serialize)]
struct GramOut<'a> {
    rank: usize,
    gram: &'a [Vec<i64>],
}

fn mod_one(x: &BigRational) -> BigRational {
    x - x.floor()
}

fn mod_two(x: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    x - (x / &two).floor() * two
}

/// Diagonalises a rational symmetric matrix by congruence.
pub fn diagonalize_q(g: &RatMat) -> Vec<BigRational> {
    let mut a = g.clone();
    let mut out = Vec::new();
    while !a.is_empty() {
        let n = a.len();
        let piv = (0..n).find(|&i| !a[i][i].is_zero());
        let piv = match piv {
            Some(i) => i,
            None => {
                let Some((i, j)) = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero())
                else {
                    out.extend(std::iter::repeat(BigRational::zero()).take(n));
                    break;
                };
                // replace e_i by e_i + e_j
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
        let d = a[piv][piv].clone();
        let row = a[piv].clone();
        let mut next = Vec::with_capacity(n - 1);
        for r in 0..n {
            if r == piv {
                continue;
            }
            let f = &a[r][piv] / &d;
            let mut nr = Vec::with_capacity(n - 1);
            for c in 0..n {
                if c == piv {
                    continue;
                }
                nr.push(&a[r][c] - &f * &row[c]);
            }
            next.push(nr);
        }
        out.push(d);
        a = next;
    }
    out
}

impl IntegralLattice {
    /// Validates symmetry; degenerate forms are allowed here and rejected by
    /// the operations that need nondegeneracy.
    pub fn new(gram: IntMat) -> Result<Self> {
        let n = gram.len();
        for r in &gram {
            if r.len() != n {
                return Err(Error::NotSquare { rows: n, cols: r.len() });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(Self { gram })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(linalg::int_mat(rows))
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let f: GramFile = serde_json::from_str(s)?;
        let (rank, gram) = match f {
            GramFile::Tagged { rank, gram } => (rank, gram),
            GramFile::Bare(g) => (None, g),
        };
        if let Some(r) = rank {
            if r != gram.len() {
                return Err(Error::DimensionMismatch { expected: r, found: gram.len() });
            }
        }
        Self::from_i64(&gram)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        let g: Vec<Vec<i64>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect())
            .collect();
        Ok(serde_json::to_string(&GramOut { rank: self.rank(), gram: &g })?)
    }

    pub fn gram(&self) -> &IntMat {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn det(&self) -> BigInt {
        linalg::det(&self.gram)
    }

    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i].is_even())
    }

    pub fn check_even(&self) -> Result<()> {
        match (0..self.rank()).find(|&i| self.gram[i][i].is_odd()) {
            Some(i) => Err(Error::NotEven(i)),
            None => Ok(()),
        }
    }

    /// `(positive, negative, zero)` inertia counts.
    pub fn signature(&self) -> (usize, usize, usize) {
        let d = diagonalize_q(&linalg::to_rat(&self.gram));
        let pos = d.iter().filter(|x| x.is_positive()).count();
        let neg = d.iter().filter(|x| x.is_negative()).count();
        (pos, neg, d.len() - pos - neg)
    }

    pub fn inner(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        linalg::bilinear(x, &self.gram, y)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.rank();
        let m = other.rank();
        let mut g = vec![vec![BigInt::zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                g[i][j] = self.gram[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                g[n + i][n + j] = other.gram[i][j].clone();
            }
        }
        Self { gram: g }
    }

    pub fn scaled(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        Self {
            gram: self.gram.iter().map(|r| r.iter().map(|x| x * &k).collect()).collect(),
        }
    }

    /// Smith form of the Gram matrix; the columns of `V` divided by the
    /// invariant factors are generator lifts.
    pub fn discriminant_group(&self) -> Result<DiscriminantGroup> {
        if self.det().is_zero() {
            return Err(Error::Degenerate);
        }
        let (d, _u, v) = linalg::snf(&self.gram);
        let n = self.rank();
        let mut invariants = Vec::new();
        let mut generators = Vec::new();
        for i in 0..n {
            if d[i].is_one() {
                continue;
            }
            let di = BigRational::from_integer(d[i].clone());
            generators.push(
                (0..n)
                    .map(|r| BigRational::from_integer(v[r][i].clone()) / &di)
                    .collect::<Vec<_>>(),
            );
            invariants.push(d[i].clone());
        }
        let g = linalg::to_rat(&self.gram);
        let k = generators.len();
        let mut bilinear = vec![vec![BigRational::zero(); k]; k];
        let mut quadratic = Vec::with_capacity(k);
        for i in 0..k {
            for j in 0..k {
                bilinear[i][j] = mod_one(&linalg::bilinear(&generators[i], &g, &generators[j]));
            }
            quadratic.push(mod_two(&linalg::bilinear(&generators[i], &g, &generators[i])));
        }
        Ok(DiscriminantGroup { invariants, generators, bilinear, quadratic })
    }

    pub fn sublattice(&self, basis: IntMat) -> Result<Sublattice> {
        for r in &basis {
            if r.len() != self.rank() {
                return Err(Error::DimensionMismatch { expected: self.rank(), found: r.len() });
            }
        }
        Ok(Sublattice { basis: linalg::hnf(&basis) })
    }

    /// The sublattice as a lattice in its own right.
    pub fn restrict(&self, s: &Sublattice) -> Self {
        Self { gram: linalg::congruence(&s.basis, &self.gram) }
    }

    pub fn orthogonal_complement(&self, s: &Sublattice) -> Sublattice {
        let bg = linalg::mul(&s.basis, &self.gram);
        Sublattice { basis: linalg::hnf(&linalg::right_kernel(&bg, self.rank())) }
    }

    pub fn contains(&self, s: &Sublattice, v: &[BigInt]) -> bool {
        s.contains(v)
    }
}

/// The Leech lattice, negative definite.
pub fn leech() -> IntegralLattice {
    IntegralLattice::from_json_str(include_str!("../../data/leech.json")).expect("shipped Leech Gram matrix")
}

fn lengths(a: &DiscriminantGroup) -> (usize, BTreeMap<u64, usize>) {
    let mut per_prime = BTreeMap::new();
    for d in &a.invariants {
        let d = d.to_u64().expect("invariant factor fits in u64");
        for (q, _) in crate::arith::factor(d) {
            *per_prime.entry(q).or_insert(0) += 1;
        }
    }
    (a.invariants.len(), per_prime)
}

impl IntegralLattice {
    /// `rank S + l_q(A_S) <= rank L + l_q(A_L)` for every prime `q` and for
    /// the total length, `S` primitive in `self`.
    pub fn rank_ell_bound(&self, s: &Sublattice) -> Result<bool> {
        if !s.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        let sub = self.restrict(s);
        let (ls, ps) = lengths(&sub.discriminant_group()?);
        let (ll, pl) = lengths(&self.discriminant_group()?);
        let (rs, rl) = (s.rank(), self.rank());
        let mut ok = rs + ls <= rl + ll;
        for q in ps.keys().chain(pl.keys()) {
            let a = ps.get(q).copied().unwrap_or(0);
            let b = pl.get(q).copied().unwrap_or(0);
            ok &= rs + a <= rl + b;
        }
        Ok(ok)
    }
}

impl Sublattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `(B tensor Q) cap Z^n` together with the index of `B` in it.
    pub fn saturate(&self) -> (Sublattice, BigInt) {
        let n = self.basis.first().map_or(0, |r| r.len());
        let k = linalg::right_kernel(&self.basis, n);
        let sat = if k.is_empty() {
            linalg::identity(n)
        } else {
            linalg::left_kernel(&linalg::transpose(&k))
        };
        let (d, _, _) = linalg::snf(&self.basis);
        let index = d.iter().filter(|x| !x.is_zero()).fold(BigInt::one(), |a, b| a * b);
        (Sublattice { basis: linalg::hnf(&sat) }, index)
    }

    pub fn is_primitive(&self) -> bool {
        self.saturate().1.is_one()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        if self.basis.is_empty() {
            return v.iter().all(|x| x.is_zero());
        }
        let b = linalg::to_rat(&self.basis);
        let v: Vec<BigRational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        match linalg::solve_left(&b, &v) {
            Some(x) => x.iter().all(|c| c.is_integer()),
            None => false,
        }
    }
}

impl IntegralLattice {
    /// Vectors of norm 2 (positive definite input) or -2 (negative definite
    /// input), both signs included.
    pub fn roots(&self) -> Result<Vec<Vec<i64>>> {
        self.vectors_of_norm(2)
    }

    /// Nonzero vectors with `|x.x| <= bound` for a definite lattice.
    pub fn short_vectors(&self, bound: i64) -> Result<Vec<Vec<i64>>> {
        let g = self.definite_gram()?;
        Ok(enumerate::short_vectors(&g, bound))
    }

    fn vectors_of_norm(&self, norm: i64) -> Result<Vec<Vec<i64>>> {
        let g = self.definite_gram()?;
        let two = BigInt::from(norm);
        Ok(enumerate::short_vectors(&g, norm)
            .into_iter()
            .filter(|x| {
                let xb: Vec<BigInt> = x.iter().map(|&e| BigInt::from(e)).collect();
                linalg::bilinear(&xb, &g, &xb) == two
            })
            .collect())
    }

    fn definite_gram(&self) -> Result<IntMat> {
        if self.rank() > ROOT_RANK_CAP {
            return Err(Error::RankTooLarge { rank: self.rank(), cap: ROOT_RANK_CAP });
        }
        match self.signature() {
            (_, 0, 0) => Ok(self.gram.clone()),
            (0, _, 0) => Ok(self.gram.iter().map(|r| r.iter().map(|x| -x).collect()).collect()),
            _ => Err(Error::Indefinite),
        }
    }
}
