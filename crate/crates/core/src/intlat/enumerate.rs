//! Fincke-Pohst short vector enumeration with exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::linalg::{to_rat, IntMat};

/// All nonzero `x` with `x^T G x <= bound` for a positive definite `G`.
pub fn short_vectors(gram: &IntMat, bound: i64) -> Vec<Vec<i64>> {
    let n = gram.len();
    let mut q = to_rat(gram);
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let t = &q[k][i] * &q[i][l];
                q[k][l] -= t;
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let b = BigRational::from_integer(BigInt::from(bound));
    if n > 0 {
        descend(&q, n - 1, &b, &mut x, &mut out);
    }
    out
}

fn descend(q: &[Vec<BigRational>], i: usize, rem: &BigRational, x: &mut [i64], out: &mut Vec<Vec<i64>>) {
    let n = x.len();
    let mut c = BigRational::zero();
    for j in i + 1..n {
        if x[j] != 0 {
            c += &q[i][j] * BigRational::from_integer(BigInt::from(x[j]));
        }
    }
    let qii = &q[i][i];
    let start = (-&c).round().to_integer().to_i64().unwrap();
    let cost = |v: i64| -> BigRational {
        let t = BigRational::from_integer(BigInt::from(v)) + &c;
        qii * &t * &t
    };
    let visit = |v: i64, x: &mut [i64], out: &mut Vec<Vec<i64>>| -> bool {
        let k = cost(v);
        if &k > rem {
            return false;
        }
        x[i] = v;
        if i == 0 {
            if x.iter().any(|&e| e != 0) {
                out.push(x.to_vec());
            }
        } else {
            let r = rem - &k;
            descend(q, i - 1, &r, x, out);
        }
        true
    };
    // the cost is convex in v, so walk outward from the centre in both directions
    let mut v = start;
    while visit(v, x, out) {
        v += 1;
    }
    let mut v = start - 1;
    while visit(v, x, out) {
        v -= 1;
    }
    x[i] = 0;
}
