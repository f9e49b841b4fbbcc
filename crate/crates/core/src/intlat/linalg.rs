//! Dense exact matrices over Z and Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMat = Vec<Vec<BigInt>>;
pub type RatMat = Vec<Vec<BigRational>>;

pub fn int_mat(rows: &[Vec<i64>]) -> IntMat {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn identity(n: usize) -> IntMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn to_rat(m: &IntMat) -> RatMat {
    m.iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn mul<T>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>>
where
    T: Clone + Zero + for<'x> std::ops::AddAssign<&'x T>,
    for<'x> &'x T: std::ops::Mul<&'x T, Output = T>,
{
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![T::zero(); n];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[j] += &(x * &b[k][j]);
                }
            }
            out
        })
        .collect()
}

pub fn vec_mat<T>(v: &[T], m: &[Vec<T>]) -> Vec<T>
where
    T: Clone + Zero + for<'x> std::ops::AddAssign<&'x T>,
    for<'x> &'x T: std::ops::Mul<&'x T, Output = T>,
{
    mul(&[v.to_vec()], m).pop().unwrap_or_default()
}

/// `x^T G y`.
pub fn bilinear<T>(x: &[T], g: &[Vec<T>], y: &[T]) -> T
where
    T: Clone + Zero + for<'x> std::ops::AddAssign<&'x T>,
    for<'x> &'x T: std::ops::Mul<&'x T, Output = T>,
{
    let mut s = T::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            s += &(&(xi * &g[i][j]) * yj);
        }
    }
    s
}

/// `B G B^T`.
pub fn congruence<T>(b: &[Vec<T>], g: &[Vec<T>]) -> Vec<Vec<T>>
where
    T: Clone + Zero + for<'x> std::ops::AddAssign<&'x T>,
    for<'x> &'x T: std::ops::Mul<&'x T, Output = T>,
{
    mul(&mul(b, g), &transpose(b))
}

/// Determinant by fraction-free elimination.
pub fn det(m: &IntMat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Inverse over Q, `None` if singular.
pub fn inverse(m: &RatMat) -> Option<RatMat> {
    let n = m.len();
    let mut a: RatMat = m.clone();
    let mut inv: RatMat = to_rat(&identity(n));
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(piv, c);
        inv.swap(piv, c);
        let f = a[c][c].recip();
        for j in 0..n {
            a[c][j] = &a[c][j] * &f;
            inv[c][j] = &inv[c][j] * &f;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..n {
                    let t = &f * &a[c][j];
                    a[r][j] -= t;
                    let t = &f * &inv[c][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// Rank over Q.
pub fn rank_q(m: &RatMat) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) {
            a.swap(p, r);
            for i in r + 1..rows {
                if !a[i][c].is_zero() {
                    let f = &a[i][c] / &a[r][c];
                    for j in c..cols {
                        let t = &f * &a[r][j];
                        a[i][j] -= t;
                    }
                }
            }
            r += 1;
        }
    }
    r
}

fn row_axpy(a: &mut IntMat, dst: usize, src: usize, f: &BigInt) {
    if f.is_zero() {
        return;
    }
    let (d, s) = if dst < src {
        let (lo, hi) = a.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        *x += f * y;
    }
}

/// Row Hermite normal form with transform: returns `(H, U)` with `U A = H`,
/// `U` unimodular. Nonzero rows of `H` come first, pivots positive, entries
/// above each pivot reduced into `[0, pivot)`.
pub fn hnf_with_transform(a: &IntMat) -> (IntMat, IntMat) {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut h = a.clone();
    let mut u = identity(m);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // gcd-combine column c into row r
        loop {
            let piv = (r..m)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()));
            let Some(piv) = piv else { break };
            h.swap(piv, r);
            u.swap(piv, r);
            let mut done = true;
            for i in r + 1..m {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                let nq = -q;
                row_axpy(&mut h, i, r, &nq);
                row_axpy(&mut u, i, r, &nq);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut() {
                *x = -x.clone();
            }
            for x in u[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            if !q.is_zero() {
                let nq = -q;
                row_axpy(&mut h, i, r, &nq);
                row_axpy(&mut u, i, r, &nq);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Basis (HNF rows) of the Z-span of the rows of `a`.
pub fn hnf(a: &IntMat) -> IntMat {
    let (h, _) = hnf_with_transform(a);
    h.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Basis of `{x in Z^m : x A = 0}`.
pub fn left_kernel(a: &IntMat) -> IntMat {
    let (h, u) = hnf_with_transform(a);
    h.iter()
        .zip(u)
        .filter(|(r, _)| r.iter().all(|x| x.is_zero()))
        .map(|(_, row)| row)
        .collect()
}

/// Basis of `{y in Z^n : A y = 0}`, returned as rows.
pub fn right_kernel(a: &IntMat, n: usize) -> IntMat {
    if a.is_empty() {
        return identity(n);
    }
    left_kernel(&transpose(a))
}

/// Smith normal form `U A V = D` with `U`, `V` unimodular; returns
/// `(diagonal, U, V)`, diagonal entries nonnegative with `d_i | d_{i+1}`.
pub fn snf(a: &IntMat) -> (Vec<BigInt>, IntMat, IntMat) {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap(bi, t);
        u.swap(bi, t);
        for row in d.iter_mut() {
            row.swap(bj, t);
        }
        for row in v.iter_mut() {
            row.swap(bj, t);
        }
        let mut clean = true;
        for i in t + 1..m {
            if d[i][t].is_zero() {
                continue;
            }
            let q = -d[i][t].div_floor(&d[t][t]);
            row_axpy(&mut d, i, t, &q);
            row_axpy(&mut u, i, t, &q);
            if !d[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..n {
            if d[t][j].is_zero() {
                continue;
            }
            let q = -d[t][j].div_floor(&d[t][t]);
            for row in d.iter_mut() {
                let x = &row[t] * &q;
                row[j] += x;
            }
            for row in v.iter_mut() {
                let x = &row[t] * &q;
                row[j] += x;
            }
            if !d[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold an offending row into row t and retry
        let piv = d[t][t].clone();
        let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&d[i][j] % &piv).is_zero()));
        if let Some(i) = bad {
            let one = BigInt::one();
            row_axpy(&mut d, t, i, &one);
            row_axpy(&mut u, t, i, &one);
            continue;
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    let diag = (0..m.min(n)).map(|i| d[i][i].clone()).collect();
    (diag, u, v)
}

/// Common denominator of a rational matrix.
pub fn denominator(m: &RatMat) -> BigInt {
    let mut l = BigInt::one();
    for r in m {
        for x in r {
            l = l.lcm(x.denom());
        }
    }
    l
}

/// HNF basis of the Z-span of rational rows.
pub fn hnf_rat(m: &RatMat) -> RatMat {
    let d = denominator(m);
    let scaled: IntMat = m
        .iter()
        .map(|r| r.iter().map(|x| (x * &d).to_integer()).collect())
        .collect();
    let dq = BigRational::from_integer(d);
    hnf(&scaled)
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| BigRational::from_integer(x) / &dq)
                .collect()
        })
        .collect()
}

/// Solves `x B = v` over Q for a full-row-rank `B`; `None` if inconsistent.
pub fn solve_left(b: &RatMat, v: &[BigRational]) -> Option<Vec<BigRational>> {
    // Gaussian elimination on the transposed system B^T x = v
    let rows = b.first().map_or(0, |r| r.len());
    let cols = b.len();
    let mut a: RatMat = (0..rows)
        .map(|i| {
            let mut r: Vec<BigRational> = (0..cols).map(|j| b[j][i].clone()).collect();
            r.push(v[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        let f = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &f;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..=cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][cols].clone();
    }
    Some(x)
}
