use std::collections::BTreeSet;

use k3lat::intlat::leech;
use k3lat::intlat::linalg::{self, IntMat, RatMat};
use k3lat::rootsys::t_sublattice;
use k3lat::{Error, IntegralLattice, RootDatum, RootType};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn big(rows: &[Vec<i64>]) -> IntMat {
    linalg::int_mat(rows)
}

fn bv(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn a2() -> IntegralLattice {
    IntegralLattice::from_i64(&[vec![2, -1], vec![-1, 2]]).unwrap()
}

fn a2a2() -> IntegralLattice {
    a2().direct_sum(&a2())
}

#[test]
fn discriminant_examples() {
    let u = IntegralLattice::from_i64(&[vec![0, 1], vec![1, 0]]).unwrap();
    assert!(u.discriminant_group().unwrap().invariants.is_empty());
    assert_eq!(a2().discriminant_group().unwrap().invariants, vec![BigInt::from(3)]);
    let l84 = IntegralLattice::from_i64(&[vec![84]]).unwrap();
    let d = l84.discriminant_group().unwrap();
    assert_eq!(d.invariants, vec![BigInt::from(84)]);
    assert_eq!(d.quadratic[0], BigRational::new(1.into(), 84.into()));
    let degenerate = IntegralLattice::from_i64(&[vec![2, 2], vec![2, 2]]);
    assert!(matches!(degenerate.and_then(|l| l.discriminant_group()), Err(Error::Degenerate)));
    assert!(matches!(IntegralLattice::from_i64(&[vec![1]]).unwrap().check_even(), Err(Error::NotEven(0))));
    assert!(IntegralLattice::from_i64(&[vec![2, 1], vec![0, 2]]).is_err());
}

#[test]
fn complement_examples() {
    let u = IntegralLattice::from_i64(&[vec![0, 1], vec![1, 0]]).unwrap();
    let s = u.sublattice(big(&[vec![1, 0]])).unwrap();
    assert_eq!(u.orthogonal_complement(&s).basis, big(&[vec![1, 0]]));
    let zero = a2().sublattice(vec![]).unwrap();
    assert_eq!(a2().orthogonal_complement(&zero).basis, linalg::identity(2));
    let l = a2a2();
    let first = l.sublattice(big(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]])).unwrap();
    assert_eq!(l.orthogonal_complement(&first).basis, big(&[vec![0, 0, 1, 0], vec![0, 0, 0, 1]]));
}

#[test]
fn saturation_examples() {
    let three = a2().sublattice(big(&[vec![3, 0], vec![0, 3]])).unwrap();
    let (sat, idx) = three.saturate();
    assert_eq!((sat.basis, idx), (linalg::identity(2), BigInt::from(9)));
    let (sat, idx) = t_sublattice(3).unwrap().saturate();
    assert_eq!((sat.basis, idx), (linalg::identity(2), BigInt::from(3)));
    let prim = a2a2().sublattice(big(&[vec![1, 0, 0, 0]])).unwrap();
    let (sat, idx) = prim.saturate();
    assert_eq!((sat, idx), (prim, BigInt::one()));
}

#[test]
fn membership_examples() {
    let three = a2().sublattice(big(&[vec![3, 0], vec![0, 3]])).unwrap();
    assert!(three.contains(&bv(&[3, 0])));
    assert!(!three.contains(&bv(&[1, 0])));
    let t = t_sublattice(3).unwrap();
    assert!(t.contains(&bv(&[1, -1])));
    assert!(!t.contains(&bv(&[1, 0])));
}

#[test]
fn root_examples() {
    assert_eq!(a2().roots().unwrap().len(), 6);
    let e8 = RootDatum::new(RootType::E(8)).unwrap();
    let roots = e8.lattice().roots().unwrap();
    assert_eq!(roots.len(), 240);
    // the two coordinate families: +-v_i +-v_j and (+-1/2, ..., +-1/2)
    let mut integral = 0;
    let mut half = 0;
    for r in &roots {
        let v = e8.to_ambient(r);
        let nonzero = v.iter().filter(|x| !x.is_zero()).count();
        if v.iter().all(|x| x.is_integer()) && nonzero == 2 {
            integral += 1;
        } else if v.iter().all(|x| x.abs() == num_rational::Rational64::new(1, 2)) {
            half += 1;
        }
    }
    assert_eq!((integral, half), (112, 128));
    let l = leech();
    assert_eq!((l.rank(), l.det()), (24, BigInt::one()));
    assert_eq!(l.signature(), (0, 24, 0));
    assert!(l.roots().unwrap().is_empty());
    let u = IntegralLattice::from_i64(&[vec![0, 1], vec![1, 0]]).unwrap();
    assert!(matches!(u.roots(), Err(Error::Indefinite)));
}

#[test]
fn rank_ell_examples() {
    let l = a2a2();
    let s = l.sublattice(big(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]])).unwrap();
    assert!(l.rank_ell_bound(&s).unwrap());
    let not_primitive = l.sublattice(big(&[vec![2, 0, 0, 0]])).unwrap();
    assert!(matches!(l.rank_ell_bound(&not_primitive), Err(Error::NotPrimitive)));
}

#[test]
fn random_primitive_sublattices_of_e8() {
    let e8 = RootDatum::new(RootType::E(8)).unwrap().lattice();
    let mut x: u64 = 7;
    let mut next = || {
        x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((x >> 33) % 5) as i64 - 2
    };
    for k in 1..8 {
        for _ in 0..5 {
            let rows: Vec<Vec<i64>> = (0..k).map(|_| (0..8).map(|_| next()).collect()).collect();
            let s = e8.sublattice(big(&rows)).unwrap();
            let (sat, _) = s.saturate();
            if sat.rank() == 0 {
                continue;
            }
            let sub = e8.restrict(&sat);
            let ell = sub.discriminant_group().unwrap().invariants.len();
            assert!(sat.rank() + ell <= 8);
            assert!(e8.rank_ell_bound(&sat).unwrap());
        }
    }
}

#[test]
fn json_round_trip() {
    let l = a2();
    let back = IntegralLattice::from_json_str(&l.to_json().unwrap()).unwrap();
    assert_eq!(back, l);
    assert_eq!(IntegralLattice::from_json_str("[[2,-1],[-1,2]]").unwrap(), l);
    assert!(IntegralLattice::from_json_str("{\"rank\": 3, \"gram\": [[2]]}").is_err());
}

/// A positive definite even lattice: a root lattice restricted to the
/// full-rank sublattice spanned by the rows of `b`.
fn sublattice_of_roots() -> impl Strategy<Value = (RootDatum, IntMat)> {
    let types = prop::sample::select(vec![
        vec![RootType::A(1)],
        vec![RootType::A(2)],
        vec![RootType::A(3)],
        vec![RootType::A(1), RootType::A(2)],
        vec![RootType::D(4)],
        vec![RootType::A(2), RootType::A(2)],
        vec![RootType::D(5)],
        vec![RootType::E(6)],
    ]);
    types.prop_flat_map(|t| {
        let r = RootDatum::sum(&t).unwrap();
        let n = r.rank();
        prop::collection::vec(prop::collection::vec(-2i64..=2, n), n).prop_filter_map("singular", move |rows| {
            let b = big(&rows);
            (!linalg::det(&b).is_zero()).then(|| (r.clone(), b))
        })
    })
}

fn rat_gram(rows: &RatMat, g: &IntMat) -> RatMat {
    linalg::congruence(rows, &linalg::to_rat(g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn finite_index_scales_discriminant((r, b) in sublattice_of_roots()) {
        let l = r.lattice();
        let s = l.sublattice(b.clone()).unwrap();
        let n = linalg::det(&b).abs();
        let order = |x: &IntegralLattice| -> BigInt { x.discriminant_group().unwrap().invariants.iter().product() };
        let sub = l.restrict(&s);
        prop_assert_eq!(order(&sub), &n * &n * order(&l));
        prop_assert_eq!(order(&sub), sub.det().abs());
        prop_assert_eq!(s.saturate().1, n);
    }

    #[test]
    fn dual_is_recovered_from_generator_lifts((r, b) in sublattice_of_roots()) {
        let l = r.lattice().restrict(&r.lattice().sublattice(b).unwrap());
        let d = l.discriminant_group().unwrap();
        for (g, m) in d.generators.iter().zip(&d.invariants) {
            let scaled: Vec<BigRational> = g.iter().map(|x| x * BigRational::from_integer(m.clone())).collect();
            prop_assert!(scaled.iter().all(|x| x.is_integer()));
        }
        let mut rows: RatMat = linalg::to_rat(&linalg::identity(l.rank()));
        rows.extend(d.generators.iter().cloned());
        let dual = linalg::hnf_rat(&rows);
        let gram = rat_gram(&dual, l.gram());
        let det = linalg::inverse(&gram).map(|inv| {
            // det of the dual Gram is 1 / det(L)
            let n = inv.len();
            let mut m = inv;
            let mut acc = BigRational::one();
            for i in 0..n {
                let p = (i..n).find(|&k| !m[k][i].is_zero()).unwrap();
                m.swap(i, p);
                if p != i { acc = -acc; }
                acc *= m[i][i].clone();
                for k in i + 1..n {
                    let f = &m[k][i] / &m[i][i];
                    for j in i..n { let t = &m[i][j] * &f; m[k][j] -= t; }
                }
            }
            acc
        });
        prop_assert_eq!(det, Some(BigRational::from_integer(l.det())));
    }

    #[test]
    fn complements_are_primitive((r, b) in sublattice_of_roots(), k in 1usize..6) {
        let l = r.lattice();
        let rows: IntMat = b.into_iter().take(k.min(r.rank())).collect();
        let s = l.sublattice(rows).unwrap();
        let perp = l.orthogonal_complement(&s);
        prop_assert!(perp.is_primitive());
        prop_assert_eq!(perp.rank() + s.rank(), l.rank());
        let (sat, _) = s.saturate();
        prop_assert_eq!(sat.saturate().0, sat.clone());
        prop_assert_eq!(l.orthogonal_complement(&perp), sat.clone());
        prop_assert!(l.rank_ell_bound(&sat).unwrap());
        for x in &perp.basis {
            for y in &s.basis {
                prop_assert!(linalg::bilinear(x, l.gram(), y).is_zero());
            }
        }
    }

    #[test]
    fn roots_are_closed_and_of_norm_two((r, b) in sublattice_of_roots()) {
        let l = r.lattice();
        let s = l.sublattice(b).unwrap();
        let sub = l.restrict(&s);
        let roots = sub.roots().unwrap();
        let set: BTreeSet<Vec<i64>> = roots.iter().cloned().collect();
        for x in &roots {
            let neg: Vec<i64> = x.iter().map(|c| -c).collect();
            prop_assert!(set.contains(&neg));
            prop_assert_eq!(sub.inner(&bv(x), &bv(x)), BigInt::from(2));
        }
        // independent count: roots of R that happen to lie in S
        let expected = r.roots.iter().filter(|a| s.contains(&bv(a))).count();
        prop_assert_eq!(roots.len(), expected);
        let neg = sub.scaled(-1);
        prop_assert_eq!(neg.roots().unwrap().len(), expected);
    }
}
