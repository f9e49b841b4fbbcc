//! Linear algebra over the prime field F_p with `u64` entries.

use crate::arith::inv_mod;

pub type FpMat = Vec<Vec<u64>>;

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(rows: &[Vec<u64>], p: u64) -> (FpMat, Vec<usize>) {
    let mut a: FpMat = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(pr) = (r..m).find(|&i| a[i][c] != 0) else { continue };
        a.swap(pr, r);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..n {
                    a[i][j] = (a[i][j] + p * p - f * a[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    rref(rows, p).1.len()
}

/// Basis of `{x : A x = 0}` for an `m x n` matrix `A`.
pub fn nullspace(a: &[Vec<u64>], n: usize, p: u64) -> FpMat {
    let (r, piv) = rref(a, p);
    let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (i, &pc) in piv.iter().enumerate() {
                v[pc] = (p - r[i][f]) % p;
            }
            v
        })
        .collect()
}

/// Solves `A x = b`; returns a particular solution and a nullspace basis.
pub fn solve(a: &[Vec<u64>], b: &[u64], n: usize, p: u64) -> Option<(Vec<u64>, FpMat)> {
    let aug: FpMat = a
        .iter()
        .zip(b)
        .map(|(r, &bi)| {
            let mut r = r.clone();
            r.push(bi % p);
            r
        })
        .collect();
    let (r, piv) = rref(&aug, p);
    if piv.contains(&n) {
        return None;
    }
    let mut x0 = vec![0u64; n];
    for (i, &pc) in piv.iter().enumerate() {
        x0[pc] = r[i][n];
    }
    Some((x0, nullspace(a, n, p)))
}

pub fn in_span(basis: &[Vec<u64>], v: &[u64], p: u64) -> bool {
    let mut rows = basis.to_vec();
    let before = rank(&rows, p);
    rows.push(v.to_vec());
    rank(&rows, p) == before
}

/// Row-echelon basis that grows one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    p: u64,
    rows: FpMat,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(p: u64) -> Self {
        Self { p, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &FpMat {
        &self.rows
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut v: Vec<u64> = v.iter().map(|x| x % p).collect();
        for (r, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(r) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns `false` when it was already in the span.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let p = self.p;
        let mut v = self.reduce(v);
        let Some(c) = v.iter().position(|&x| x != 0) else { return false };
        let inv = inv_mod(v[c], p);
        for x in v.iter_mut() {
            *x = *x * inv % p;
        }
        self.rows.push(v);
        self.pivots.push(c);
        true
    }
}

pub fn dot_form(x: &[u64], diag: &[u64], y: &[u64], p: u64) -> u64 {
    x.iter()
        .zip(diag)
        .zip(y)
        .fold(0u64, |s, ((a, d), b)| (s + a * b % p * d) % p)
}

/// Calls `f` with the RREF basis of every `d`-dimensional subspace of F_p^n.
/// Stops early when `f` returns `false`.
pub fn for_each_subspace(n: usize, d: usize, p: u64, f: &mut dyn FnMut(&FpMat) -> bool) -> bool {
    if d > n {
        return true;
    }
    let mut piv: Vec<usize> = (0..d).collect();
    loop {
        // free positions: for row i, columns after piv[i] that are not pivots
        let slots: Vec<(usize, usize)> = (0..d)
            .flat_map(|i| {
                let piv = &piv;
                (piv[i] + 1..n).filter(move |c| !piv.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let mut vals = vec![0u64; slots.len()];
        loop {
            let mut m = vec![vec![0u64; n]; d];
            for (i, &c) in piv.iter().enumerate() {
                m[i][c] = 1;
            }
            for (k, &(i, c)) in slots.iter().enumerate() {
                m[i][c] = vals[k];
            }
            if !f(&m) {
                return false;
            }
            let mut k = 0;
            while k < vals.len() {
                vals[k] += 1;
                if vals[k] < p {
                    break;
                }
                vals[k] = 0;
                k += 1;
            }
            if k == vals.len() {
                break;
            }
        }
        // next pivot combination
        let mut i = d;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if piv[i] < n - d + i {
                piv[i] += 1;
                for j in i + 1..d {
                    piv[j] = piv[j - 1] + 1;
                }
                break;
            }
        }
        if d == 0 {
            return true;
        }
    }
}

/// Diagonalises a symmetric matrix over F_p (p odd) by congruence; returns
/// the nonzero diagonal entries.
pub fn diagonal_form(g: &[Vec<u64>], p: u64) -> Vec<u64> {
    let mut a: FpMat = g.to_vec();
    let mut out = Vec::new();
    while !a.is_empty() {
        let n = a.len();
        let piv = match (0..n).find(|&i| a[i][i] % p != 0) {
            Some(i) => i,
            None => {
                let Some((i, j)) = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % p != 0)
                else {
                    break;
                };
                for k in 0..n {
                    a[i][k] = (a[i][k] + a[j][k]) % p;
                }
                for k in 0..n {
                    a[k][i] = (a[k][i] + a[k][j]) % p;
                }
                i
            }
        };
        let d = a[piv][piv] % p;
        let dinv = inv_mod(d, p);
        let mut next = Vec::with_capacity(n - 1);
        for r in (0..n).filter(|&r| r != piv) {
            let f = a[r][piv] * dinv % p;
            next.push(
                (0..n)
                    .filter(|&c| c != piv)
                    .map(|c| (a[r][c] + p * p - f * a[piv][c] % p) % p)
                    .collect(),
            );
        }
        out.push(d);
        a = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_binomial(n: u32, k: u32, p: u64) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= p.pow(n - i) - 1;
            den *= p.pow(i + 1) - 1;
        }
        num / den
    }

    #[test]
    fn subspace_counts() {
        for (n, d, p) in [(4, 2, 3), (3, 1, 5), (5, 2, 2), (4, 0, 3), (3, 3, 7)] {
            let mut c = 0u64;
            for_each_subspace(n, d, p, &mut |_| {
                c += 1;
                true
            });
            assert_eq!(c, gaussian_binomial(n as u32, d as u32, p), "n={n} d={d} p={p}");
        }
    }

    #[test]
    fn nullspace_works() {
        let a = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ns = nullspace(&a, 3, 7);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!((v[0] + 2 * v[1] + 3 * v[2]) % 7, 0);
        }
    }
}
