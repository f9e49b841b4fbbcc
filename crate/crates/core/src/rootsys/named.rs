//! Specific isometries of D_4, E_8 and A_{p-1}.

use std::collections::BTreeMap;

use super::{Isometry, RootDatum, RootType};
use crate::error::{Error, Result};

fn e(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn d4_elements() -> BTreeMap<String, Isometry> {
    // simple roots a1 = v1-v2, a2 = v2-v3 (central node), a3 = v3-v4, a4 = v3+v4
    let x = Isometry::from_images(&[e(4, 2), e(4, 1), e(4, 3), e(4, 0)]);
    let y = Isometry::from_images(&[e(4, 0), e(4, 1), e(4, 3), e(4, 2)]);
    let g = Isometry::from_images(&[
        vec![1, 1, 0, 0],
        vec![-1, -2, -1, -1],
        vec![0, 1, 1, 0],
        vec![0, 1, 0, 1],
    ]);
    let gx = g.compose(&x);
    let gx2 = gx.compose(&x);
    [("x", x), ("y", y), ("g", g), ("gx", gx), ("gx2", gx2)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

fn e8_elements(r: &RootDatum) -> BTreeMap<String, Isometry> {
    let neg_theta: Vec<i64> = r.highest_root().iter().map(|c| -c).collect();
    let s = |i: usize| r.simple_reflection(i);
    let st = r.reflection(&neg_theta).expect("-theta is a root");
    let a = st.compose(&s(0)).compose(&s(1)).compose(&s(2));
    let b = s(7).compose(&s(4)).compose(&s(5)).compose(&s(6));
    [("a", a), ("b", b)].into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Named elements: `x, y, g, gx, gx2` for D_4; `a, b` for E_8.
pub fn named_elements(r: &RootDatum) -> Result<BTreeMap<String, Isometry>> {
    match r.components.as_slice() {
        [RootType::D(4)] => Ok(d4_elements()),
        [RootType::E(8)] => Ok(e8_elements(r)),
        _ => Err(Error::UnsupportedRootType(format!(
            "named elements exist only for D4 and E8, not {}",
            r.label()
        ))),
    }
}

/// The cyclic shift `v_i -> v_{i+1}` on `A_{p-1}`: `alpha_i -> alpha_{i+1}`,
/// `alpha_{p-1} -> -(alpha_1 + ... + alpha_{p-1})`.
pub fn p_cycle(p: usize) -> Isometry {
    let n = p - 1;
    let mut images: Vec<Vec<i64>> = (0..n - 1).map(|i| e(n, i + 1)).collect();
    images.push(vec![-1; n]);
    Isometry::from_images(&images)
}

/// The two A_4 chains obtained from the extended E_8 diagram by deleting
/// `alpha_4`: `(-theta, a1, a2, a3)` and `(a8, a5, a6, a7)`, in simple-root
/// coordinates.
pub fn a4_pair_in_e8() -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let r = RootDatum::new(RootType::E(8)).expect("E8 builds");
    let neg_theta: Vec<i64> = r.highest_root().iter().map(|c| -c).collect();
    let first = vec![neg_theta, e(8, 0), e(8, 1), e(8, 2)];
    let second = vec![e(8, 7), e(8, 4), e(8, 5), e(8, 6)];
    (first, second)
}
