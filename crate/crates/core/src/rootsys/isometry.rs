//! Integer isometries of root lattices and finite groups of them.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Square integer matrix acting on column vectors: column `j` is the image of
/// the `j`-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Isometry {
    n: usize,
    m: Vec<i64>,
}

/// Largest order tried when computing element orders.
const ORDER_LIMIT: u64 = 1 << 20;

impl Isometry {
    pub fn identity(n: usize) -> Self {
        let mut m = vec![0; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        Self { n, m }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare { rows: n, cols: rows.first().map_or(0, |r| r.len()) });
        }
        Ok(Self { n, m: rows.concat() })
    }

    /// Matrix whose `j`-th column is `images[j]`.
    pub fn from_images(images: &[Vec<i64>]) -> Self {
        let n = images.len();
        let mut m = vec![0; n * n];
        for (j, col) in images.iter().enumerate() {
            for i in 0..n {
                m[i * n + j] = col[i];
            }
        }
        Self { n, m }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.m[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.m.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn entries(&self) -> &[i64] {
        &self.m
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.n;
        let mut m = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.m[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    m[i * n + j] += a * other.m[k * n + j];
                }
            }
        }
        Self { n, m }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.m[i * self.n + j] * v[j]).sum())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut r = Self::identity(self.n);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.compose(&b);
            }
            b = b.compose(&b);
            e >>= 1;
        }
        r
    }

    pub fn order(&self) -> Result<u64> {
        let mut x = self.clone();
        for k in 1..=ORDER_LIMIT {
            if x.is_identity() {
                return Ok(k);
            }
            x = x.compose(self);
        }
        Err(Error::BadOrder("order exceeds limit or is infinite".into()))
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(self.pow(self.order()? - 1))
    }

    /// `M^T G M = G`.
    pub fn preserves(&self, gram: &[Vec<i64>]) -> bool {
        let n = self.n;
        if gram.len() != n {
            return false;
        }
        for a in 0..n {
            for b in a..n {
                let mut s = 0i64;
                for i in 0..n {
                    for j in 0..n {
                        s += self.m[i * n + a] * gram[i][j] * self.m[j * n + b];
                    }
                }
                if s != gram[a][b] {
                    return false;
                }
            }
        }
        true
    }

    /// `self - identity`.
    pub fn minus_identity(&self) -> Vec<Vec<i64>> {
        let mut r = self.rows();
        for (i, row) in r.iter_mut().enumerate() {
            row[i] -= 1;
        }
        r
    }

    pub fn conjugate_by(&self, s: &Self, s_inv: &Self) -> Self {
        s.compose(self).compose(s_inv)
    }
}

/// A finite group of isometries given by generators, optionally materialised.
#[derive(Clone, Debug)]
pub struct IsometryGroup {
    pub generators: Vec<Isometry>,
    pub elements: Option<Vec<Isometry>>,
    dim: usize,
}

impl IsometryGroup {
    pub fn new(dim: usize, generators: Vec<Isometry>) -> Self {
        Self { generators, elements: None, dim }
    }

    pub fn trivial(dim: usize) -> Self {
        Self { generators: Vec::new(), elements: Some(vec![Isometry::identity(dim)]), dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Materialises the group by breadth-first closure, failing past `cap`.
    pub fn materialize(&mut self, cap: usize) -> Result<&[Isometry]> {
        if self.elements.is_none() {
            self.elements = Some(closure(self.dim, &self.generators, cap)?);
        }
        Ok(self.elements.as_deref().unwrap())
    }

    pub fn order(&mut self, cap: usize) -> Result<usize> {
        Ok(self.materialize(cap)?.len())
    }
}

/// All products of the generators, sorted.
pub fn closure(dim: usize, gens: &[Isometry], cap: usize) -> Result<Vec<Isometry>> {
    let id = Isometry::identity(dim);
    let mut seen: HashSet<Isometry> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut v: Vec<Isometry> = seen.into_iter().collect();
    v.sort();
    Ok(v)
}
