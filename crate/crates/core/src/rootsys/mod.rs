//! Simply laced root systems in explicit coordinates.
//!
//! Isometries act on coordinates in the simple-root basis. The ambient
//! realisations are `A_m` in `R^{m+1}` (`alpha_i = v_i - v_{i+1}`), `D_m` in
//! `R^m` (`alpha_m = v_{m-1} + v_m`) and `E_6, E_7, E_8` inside `R^8`.

pub mod isometry;
mod named;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlat::linalg;
use crate::intlat::{IntegralLattice, Sublattice};
pub use isometry::{closure, Isometry, IsometryGroup};
pub use named::{a4_pair_in_e8, named_elements, p_cycle};

/// Default cap for materialising Weyl groups.
pub const WEYL_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RootType {
    A(usize),
    D(usize),
    E(usize),
}

impl RootType {
    pub fn rank(&self) -> usize {
        match *self {
            RootType::A(m) | RootType::D(m) | RootType::E(m) => m,
        }
    }

    pub fn root_count(&self) -> usize {
        match *self {
            RootType::A(m) => m * (m + 1),
            RootType::D(m) => 2 * m * (m - 1),
            RootType::E(6) => 72,
            RootType::E(7) => 126,
            RootType::E(_) => 240,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            RootType::A(m) => m >= 1,
            RootType::D(m) => m >= 4,
            RootType::E(m) => (6..=8).contains(&m),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedRootType(self.to_string()))
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(m) => write!(f, "A{m}"),
            RootType::D(m) => write!(f, "D{m}"),
            RootType::E(m) => write!(f, "E{m}"),
        }
    }
}

impl FromStr for RootType {
    type Err = Error;

    /// Accepts `A2`, `A(2)`, `A_2`, case-insensitive.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedRootType(s.to_string());
        let t = s.trim();
        let mut chars = t.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rest: String = chars.filter(|c| !matches!(c, '(' | ')' | '_')).collect();
        let m: usize = rest.parse().map_err(|_| bad())?;
        let ty = match letter {
            'A' => RootType::A(m),
            'D' => RootType::D(m),
            'E' => RootType::E(m),
            _ => return Err(bad()),
        };
        ty.validate().map_err(|_| bad())?;
        Ok(ty)
    }
}

/// Simple roots of E_8 in `R^8`, numbered as `alpha_1..alpha_8`.
fn e8_simple() -> Vec<Vec<Rational64>> {
    let z = Rational64::zero;
    let i = |n: i64| Rational64::from_integer(n);
    let h = Rational64::new(1, 2);
    let mut out = Vec::new();
    for k in 1..=6 {
        let mut v = vec![z(); 8];
        v[k] = i(1);
        v[k + 1] = i(-1);
        out.push(v);
    }
    let mut a7 = vec![-h; 8];
    a7[0] = h;
    a7[7] = h;
    out.push(a7);
    let mut a8 = vec![z(); 8];
    a8[6] = i(1);
    a8[7] = i(1);
    out.push(a8);
    out
}

/// A root lattice (possibly reducible) with its simple roots, Cartan matrix
/// and full root list in simple-root coordinates.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub components: Vec<RootType>,
    pub ambient_dim: usize,
    /// Simple roots in ambient coordinates.
    pub simple_ambient: Vec<Vec<Rational64>>,
    pub cartan: Vec<Vec<i64>>,
    /// All roots in simple-root coordinates, sorted.
    pub roots: Vec<Vec<i64>>,
}

fn irreducible_simple(t: RootType) -> (usize, Vec<Vec<Rational64>>) {
    let i = |n: i64| Rational64::from_integer(n);
    match t {
        RootType::A(m) => {
            let rows = (0..m)
                .map(|k| {
                    let mut v = vec![i(0); m + 1];
                    v[k] = i(1);
                    v[k + 1] = i(-1);
                    v
                })
                .collect();
            (m + 1, rows)
        }
        RootType::D(m) => {
            let mut rows: Vec<Vec<Rational64>> = (0..m - 1)
                .map(|k| {
                    let mut v = vec![i(0); m];
                    v[k] = i(1);
                    v[k + 1] = i(-1);
                    v
                })
                .collect();
            let mut last = vec![i(0); m];
            last[m - 2] = i(1);
            last[m - 1] = i(1);
            rows.push(last);
            (m, rows)
        }
        RootType::E(m) => (8, e8_simple().into_iter().skip(8 - m).collect()),
    }
}

impl RootDatum {
    pub fn new(t: RootType) -> Result<Self> {
        Self::sum(&[t])
    }

    /// Orthogonal direct sum of irreducible components.
    pub fn sum(types: &[RootType]) -> Result<Self> {
        let mut simple: Vec<Vec<Rational64>> = Vec::new();
        let mut blocks = Vec::new();
        let mut ambient = 0;
        for t in types {
            t.validate()?;
            blocks.push(irreducible_simple(*t));
            ambient += blocks.last().unwrap().0;
        }
        let mut offset = 0;
        for (d, rows) in blocks {
            for r in rows {
                let mut v = vec![Rational64::zero(); ambient];
                v[offset..offset + d].copy_from_slice(&r);
                simple.push(v);
            }
            offset += d;
        }
        let n = simple.len();
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let s: Rational64 =
                            simple[a].iter().zip(&simple[b]).map(|(x, y)| x * y).sum();
                        s.to_integer()
                    })
                    .collect()
            })
            .collect();
        let mut roots = crate::intlat::enumerate::short_vectors(&linalg::int_mat(&cartan), 2);
        roots.sort();
        Ok(Self { components: types.to_vec(), ambient_dim: ambient, simple_ambient: simple, cartan, roots })
    }

    pub fn parse(label: &str) -> Result<Self> {
        let types: Result<Vec<RootType>> = label
            .split(['+', ' ', ','])
            .filter(|s| !s.trim().is_empty())
            .map(RootType::from_str)
            .collect();
        Self::sum(&types?)
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn label(&self) -> String {
        self.components.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("+")
    }

    pub fn lattice(&self) -> IntegralLattice {
        IntegralLattice::from_i64(&self.cartan).expect("Cartan matrix is symmetric")
    }

    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += x[i] * self.cartan[i][j] * y[j];
            }
        }
        s
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.roots.binary_search_by(|r| r.as_slice().cmp(v)).is_ok()
    }

    /// Ambient coordinates of a vector given in simple-root coordinates.
    pub fn to_ambient(&self, x: &[i64]) -> Vec<Rational64> {
        let mut v = vec![Rational64::zero(); self.ambient_dim];
        for (c, a) in x.iter().zip(&self.simple_ambient) {
            for k in 0..self.ambient_dim {
                v[k] += a[k] * Rational64::from_integer(*c);
            }
        }
        v
    }

    /// Simple-root coordinates of an ambient vector in the span.
    pub fn from_ambient(&self, v: &[Rational64]) -> Option<Vec<i64>> {
        let to_big = |x: &Rational64| {
            BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
        };
        let b: Vec<Vec<BigRational>> =
            self.simple_ambient.iter().map(|r| r.iter().map(to_big).collect()).collect();
        let t: Vec<BigRational> = v.iter().map(to_big).collect();
        let x = linalg::solve_left(&b, &t)?;
        x.iter().map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None }).collect()
    }

    /// Highest root of an irreducible system (maximal height).
    pub fn highest_root(&self) -> Vec<i64> {
        self.roots.iter().max_by_key(|r| r.iter().sum::<i64>()).unwrap().clone()
    }

    pub fn simple_reflection(&self, i: usize) -> Isometry {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        self.reflection_unchecked(&e)
    }

    fn reflection_unchecked(&self, a: &[i64]) -> Isometry {
        let n = self.rank();
        let ca: Vec<i64> = (0..n).map(|j| (0..n).map(|k| self.cartan[j][k] * a[k]).sum()).collect();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j) - a[i] * ca[j]).collect())
            .collect();
        Isometry::from_rows(&rows).unwrap()
    }

    /// `s_a(x) = x - <x, a> a`.
    pub fn reflection(&self, a: &[i64]) -> Result<Isometry> {
        if !self.is_root(a) {
            return Err(Error::NotInLattice);
        }
        Ok(self.reflection_unchecked(a))
    }

    /// Permutations of the simple roots preserving the Cartan matrix.
    pub fn diagram_automorphisms(&self) -> Vec<Isometry> {
        let n = self.rank();
        let mut out = Vec::new();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.diagram_search(0, &mut perm, &mut used, &mut out);
        out
    }

    fn diagram_search(&self, i: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Isometry>) {
        let n = self.rank();
        if i == n {
            let images: Vec<Vec<i64>> = (0..n)
                .map(|j| {
                    let mut e = vec![0; n];
                    e[perm[j]] = 1;
                    e
                })
                .collect();
            out.push(Isometry::from_images(&images));
            return;
        }
        for c in 0..n {
            if used[c] {
                continue;
            }
            if (0..i).all(|k| self.cartan[i][k] == self.cartan[c][perm[k]])
                && self.cartan[i][i] == self.cartan[c][c]
            {
                perm[i] = c;
                used[c] = true;
                self.diagram_search(i + 1, perm, used, out);
                used[c] = false;
            }
        }
        perm[i] = usize::MAX;
    }

    pub fn weyl_generators(&self) -> Vec<Isometry> {
        (0..self.rank()).map(|i| self.simple_reflection(i)).collect()
    }

    pub fn weyl_group(&self, cap: usize) -> Result<IsometryGroup> {
        let mut g = IsometryGroup::new(self.rank(), self.weyl_generators());
        g.materialize(cap)?;
        Ok(g)
    }

    /// Generators of `Aut(R) = W(R) : (diagram automorphisms)`.
    pub fn aut_generators(&self) -> Vec<Isometry> {
        let mut g = self.weyl_generators();
        g.extend(self.diagram_automorphisms().into_iter().filter(|d| !d.is_identity()));
        g
    }

    pub fn aut_group(&self, cap: usize) -> Result<IsometryGroup> {
        let mut g = IsometryGroup::new(self.rank(), self.aut_generators());
        g.materialize(cap)?;
        Ok(g)
    }

    pub fn preserves(&self, g: &Isometry) -> bool {
        g.dim() == self.rank() && g.preserves(&self.cartan)
    }

    /// Membership in `W(R)`: move `g(x0)` into the dominant chamber for a
    /// regular dominant `x0` with distinct pairings; `g` lies in `W` iff the
    /// result is `x0` itself.
    pub fn in_weyl_group(&self, g: &Isometry) -> bool {
        let x0 = self.regular_dominant();
        let mut x = g.apply(&x0);
        let n = self.rank();
        loop {
            let Some(i) = (0..n).find(|&i| self.pairing_with_simple(&x, i) < 0) else { break };
            let c = self.pairing_with_simple(&x, i);
            x[i] -= c;
        }
        x == x0
    }

    fn pairing_with_simple(&self, x: &[i64], i: usize) -> i64 {
        (0..self.rank()).map(|k| self.cartan[i][k] * x[k]).sum()
    }

    /// `adj(C) c` with distinct positive `c`: pairs positively and distinctly
    /// with every simple root.
    fn regular_dominant(&self) -> Vec<i64> {
        let n = self.rank();
        let c = linalg::to_rat(&linalg::int_mat(&self.cartan));
        let inv = linalg::inverse(&c).expect("Cartan matrix is invertible");
        let det = BigRational::from_integer(linalg::det(&linalg::int_mat(&self.cartan)));
        (0..n)
            .map(|i| {
                let s: BigRational = (0..n)
                    .map(|j| &inv[i][j] * BigRational::from_integer(BigInt::from(j as i64 + 1)))
                    .fold(BigRational::zero(), |a, b| a + b);
                (s * &det).to_integer().to_i64().unwrap()
            })
            .collect()
    }

    /// Fundamental weights `omega_i` in simple-root coordinates (rows of the
    /// inverse Cartan matrix).
    pub fn weights(&self) -> Vec<Vec<BigRational>> {
        linalg::inverse(&linalg::to_rat(&linalg::int_mat(&self.cartan))).expect("invertible")
    }
}

/// `T(A_{p-1})`: vectors `sum k_i alpha_i` with `sum k_i = 0 mod p`.
pub fn t_sublattice(p: u64) -> Result<Sublattice> {
    if p == 2 || !crate::arith::is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let n = (p - 1) as usize;
    let a = RootDatum::new(RootType::A(n))?;
    let mut rows: Vec<Vec<i64>> = (0..n - 1)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = -1;
            v
        })
        .collect();
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = p as i64;
        rows.push(v);
    }
    a.lattice().sublattice(linalg::int_mat(&rows))
}
