use std::sync::OnceLock;

use k3lat::prootpair::{
    classify, covariant_sublattice, disc_action_at, disc_action_nontrivial, fixed_sublattice, is_pseudo_mod_p,
    p_group_check, p_times, root_in, sharp, verdict,
};
use k3lat::rootsys::{named_elements, p_cycle, t_sublattice};
use k3lat::{Isometry, IsometryGroup, RootDatum, RootType};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn d4() -> RootDatum {
    RootDatum::new(RootType::D(4)).unwrap()
}

fn cyclic(g: &Isometry) -> IsometryGroup {
    IsometryGroup::new(g.dim(), vec![g.clone()])
}

fn hnf_rows(rows: &[Vec<i64>], r: &RootDatum) -> Vec<Vec<BigInt>> {
    let rows = rows.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    r.lattice().sublattice(rows).unwrap().basis
}

/// Whether some Aut-conjugate of `g` lies in `set`.
fn conjugate_into(aut: &[Isometry], g: &Isometry, set: &[Isometry]) -> bool {
    aut.iter().any(|s| {
        let c = s.compose(g).compose(&s.inverse().unwrap());
        set.contains(&c)
    })
}

#[test]
fn sharp_of_trivial_group_is_p_times_r() {
    for (t, p) in [(RootType::D(4), 3), (RootType::A(4), 5), (RootType::E(6), 7)] {
        let r = RootDatum::new(t).unwrap();
        let s = sharp(&r, &IsometryGroup::trivial(r.rank()), p).unwrap();
        assert_eq!(s.basis, p_times(&r, p).unwrap().basis);
    }
}

#[test]
fn sharp_of_p_cycle_is_t_sublattice() {
    for p in [3u64, 5, 7, 11] {
        let r = RootDatum::new(RootType::A(p as usize - 1)).unwrap();
        let s = sharp(&r, &cyclic(&p_cycle(p as usize)), p).unwrap();
        assert_eq!(s.basis, t_sublattice(p).unwrap().basis, "p = {p}");
    }
}

#[test]
fn sharp_of_gx_on_d4() {
    let r = d4();
    let gx = named_elements(&r).unwrap()["gx"].clone();
    let s = sharp(&r, &cyclic(&gx), 3).unwrap();
    let mut rows: Vec<Vec<i64>> = (0..4)
        .map(|i| {
            let mut v = vec![0; 4];
            v[i] = 3;
            v
        })
        .collect();
    rows.push(vec![2, 1, 1, 0]);
    rows.push(vec![1, 0, 1, 1]);
    assert_eq!(s.basis, hnf_rows(&rows, &r));
}

#[test]
fn d4_verdicts() {
    let r = d4();
    let named = named_elements(&r).unwrap();
    let v = verdict(&r, &cyclic(&named["gx"]), 3).unwrap();
    assert!(v.is_pseudo && v.is_full && v.witness_root.is_none());

    let alpha2: Vec<BigInt> = [0, 1, 0, 0].iter().map(|&x| BigInt::from(x)).collect();
    for p in [3, 5, 7, 11] {
        let v = verdict(&r, &cyclic(&named["g"]), p).unwrap();
        assert!(!v.is_pseudo && !v.is_full);
        assert!(v.sharp_lattice.contains(&alpha2));
        let w = v.witness_root.unwrap();
        assert!(r.is_root(&w));
    }

    let v = verdict(&r, &cyclic(&named["x"]), 3).unwrap();
    assert!(v.is_pseudo && !v.is_full && v.fixed_rank >= 2);

    let v = verdict(&r, &cyclic(&named["gx"]), 5).unwrap();
    assert!(!v.is_pseudo && v.witness_root.is_some());
}

#[test]
fn verdict_json_shape() {
    let r = d4();
    let gx = named_elements(&r).unwrap()["gx"].clone();
    let v = verdict(&r, &cyclic(&gx), 3).unwrap();
    let j = serde_json::to_value(&v).unwrap();
    assert_eq!(j["pseudo"], true);
    assert_eq!(j["full"], true);
    assert_eq!(j["sharp_index"], 9);
    assert!(j["witness_root"].is_null());
    assert_eq!(j["fixed_rank"], 0);
}

#[test]
fn fixed_sublattices() {
    let r = d4();
    assert_eq!(fixed_sublattice(&r, &IsometryGroup::trivial(4)).unwrap().rank(), 4);
    let a2 = RootDatum::new(RootType::A(2)).unwrap();
    assert_eq!(fixed_sublattice(&a2, &cyclic(&p_cycle(3))).unwrap().rank(), 0);
    let e8 = RootDatum::new(RootType::E(8)).unwrap();
    let a = named_elements(&e8).unwrap()["a"].clone();
    assert_eq!(fixed_sublattice(&e8, &cyclic(&a)).unwrap().rank(), 4);
}

fn aut(r: &RootDatum) -> Vec<Isometry> {
    r.aut_group(200_000).unwrap().elements.unwrap()
}

#[test]
fn d4_classification_at_3() {
    let r = d4();
    let named = named_elements(&r).unwrap();
    let all = aut(&r);
    assert_eq!(all.len(), 1152);
    let c = classify(&r, 3).unwrap();
    assert!(c.complete);
    let order3: Vec<_> = c.classes.iter().filter(|k| k.order == 3).collect();
    let full3: Vec<_> = order3.iter().filter(|k| k.verdict.is_full).collect();
    assert_eq!(full3.len(), 1);
    assert!(conjugate_into(&all, &named["gx"], &full3[0].elements));
    assert!(!conjugate_into(&all, &named["g"], &full3[0].elements));
    assert!(!conjugate_into(&all, &named["x"], &full3[0].elements));
    // <x> is pseudo but has fixed vectors; <g> is not pseudo at all
    assert!(order3.iter().any(|k| !k.verdict.is_full && conjugate_into(&all, &named["x"], &k.elements)));
    assert!(!c.classes.iter().any(|k| conjugate_into(&all, &named["g"], &k.elements)));
    for k in c.pairs() {
        assert!(k.elements.iter().any(|e| conjugate_into(&all, &named["gx"], std::slice::from_ref(e))));
    }
}

#[test]
fn no_pairs_on_d4_for_large_p_or_on_d5() {
    for p in [5, 7, 11] {
        let c = classify(&d4(), p).unwrap();
        assert!(c.complete && c.pairs().next().is_none(), "D4 at {p}");
    }
    let d5 = RootDatum::new(RootType::D(5)).unwrap();
    let all = aut(&d5);
    // the sign change v5 -> -v5 swaps the two spin nodes
    let flip = Isometry::from_images(&[
        vec![1, 0, 0, 0, 0],
        vec![0, 1, 0, 0, 0],
        vec![0, 0, 1, 0, 0],
        vec![0, 0, 0, 0, 1],
        vec![0, 0, 0, 1, 0],
    ]);
    assert!(d5.preserves(&flip));
    for p in [3, 5, 7] {
        let c = classify(&d5, p).unwrap();
        assert!(c.complete && c.pairs().next().is_none(), "D5 at {p}");
        for k in &c.classes {
            match k.order {
                1 => {}
                2 => assert!(k.elements.iter().any(|e| !e.is_identity() && conjugate_into(&all, &flip, std::slice::from_ref(e)))),
                n => panic!("unexpected pseudo group of order {n} on D5"),
            }
        }
    }
}

fn v_permutation(r: &RootDatum, g: &Isometry) -> Vec<usize> {
    // g(v_i - v_j) = v_{s(i)} - v_{s(j)}, read off from ambient coordinates
    let m = r.rank();
    (0..=m)
        .map(|i| {
            let j = if i == 0 { 1 } else { 0 };
            let root: Vec<i64> = r
                .roots
                .iter()
                .find(|a| {
                    let amb = r.to_ambient(a);
                    amb[i] == 1.into() && amb[j] == (-1).into()
                })
                .unwrap()
                .clone();
            let img = r.to_ambient(&g.apply(&root));
            img.iter().position(|x| *x == 1.into()).unwrap()
        })
        .collect()
}

#[test]
fn type_a_pairs_exactly_at_prime_powers() {
    for m in 1..=7usize {
        let r = RootDatum::new(RootType::A(m)).unwrap();
        for p in [3u64, 5, 7] {
            let c = classify(&r, p).unwrap();
            assert!(c.complete);
            let has = c.pairs().next().is_some();
            assert_eq!(has, (m + 1) as u64 == p, "A{m} at {p}");
            for k in c.pairs() {
                let w: Vec<Isometry> = k.elements.iter().filter(|e| r.in_weyl_group(e)).cloned().collect();
                assert_eq!(w.len() % (m + 1), 0);
                let perms: Vec<Vec<usize>> = w.iter().map(|e| v_permutation(&r, e)).collect();
                for i in 0..=m {
                    assert!(perms.iter().any(|s| s[i] != i), "H ∩ W fixes v_{i}");
                }
                let hw = IsometryGroup::new(m, w);
                let v = verdict(&r, &hw, p).unwrap();
                assert!(v.is_full);
            }
        }
    }
    let a2 = RootDatum::new(RootType::A(2)).unwrap();
    let c = classify(&a2, 3).unwrap();
    let all = aut(&a2);
    assert!(c.pairs().any(|k| conjugate_into(&all, &p_cycle(3), &k.elements)));
}

#[test]
fn tame_pseudo_pairs_have_rootless_covariant_lattice() {
    for (t, p) in [(RootType::D(4), 5), (RootType::D(4), 7), (RootType::D(5), 3), (RootType::A(4), 3), (RootType::A(6), 5)] {
        let r = RootDatum::new(t).unwrap();
        let c = classify(&r, p).unwrap();
        for k in &c.classes {
            if k.order as u64 % p != 0 {
                let s = covariant_sublattice(&r, &k.group()).unwrap();
                assert!(root_in(&r, &s).is_none(), "{t} at {p}, order {}", k.order);
            }
        }
    }
}

#[test]
fn classified_pseudo_pairs_meet_weyl_in_p_groups() {
    let mut cases: Vec<(RootType, u64)> = vec![];
    for p in [3, 5, 7, 11] {
        cases.push((RootType::D(4), p));
    }
    for p in [3, 5, 7] {
        cases.push((RootType::D(5), p));
        for m in 1..=6 {
            cases.push((RootType::A(m), p));
        }
    }
    for (t, p) in cases {
        let r = RootDatum::new(t).unwrap();
        for k in &classify(&r, p).unwrap().classes {
            assert!(p_group_check(&r, &mut k.group(), p, 200_000).unwrap().is_p_group, "{t} at {p}");
        }
    }
}

#[test]
fn p_group_check_examples() {
    for p in [3u64, 5, 7] {
        let r = RootDatum::new(RootType::A(p as usize - 1)).unwrap();
        let c = p_group_check(&r, &mut cyclic(&p_cycle(p as usize)), p, 1000).unwrap();
        assert!(c.is_p_group && c.weyl_intersection_order == p as usize);
    }
    let a2 = RootDatum::new(RootType::A(2)).unwrap();
    let s = a2.simple_reflection(0);
    let v = verdict(&a2, &cyclic(&s), 3).unwrap();
    assert!(!v.is_pseudo);
    assert_eq!(v.witness_root.as_deref(), Some(&[1i64, 0][..]));
}

#[test]
fn e8_named_subgroups() {
    let e8 = RootDatum::new(RootType::E(8)).unwrap();
    let c = classify(&e8, 5).unwrap();
    assert!(!c.complete && c.note.is_some());
    assert!(c.pairs().any(|k| k.order == 5));
}

fn omega_sum_over_p(p: usize) -> Vec<BigRational> {
    let r = RootDatum::new(RootType::A(p - 1)).unwrap();
    let w = r.weights();
    (0..p - 1)
        .map(|j| w.iter().fold(BigRational::zero(), |a, row| a + &row[j]) / BigRational::from_integer(BigInt::from(p)))
        .collect()
}

#[test]
fn discriminant_action_of_p_cycle() {
    for p in [3usize, 5, 7, 11] {
        let r = RootDatum::new(RootType::A(p - 1)).unwrap();
        let l = r.lattice();
        let t = t_sublattice(p as u64).unwrap();
        let g = p_cycle(p);
        assert!(disc_action_nontrivial(&l, &t, &g).unwrap().nontrivial);
        let (d, outside) = disc_action_at(&l, &t, &g, &omega_sum_over_p(p)).unwrap();
        let minus_omega1: Vec<BigRational> = r.weights()[0].iter().map(|x| -x).collect();
        assert_eq!(d, minus_omega1);
        assert!(outside);
        let full = l.sublattice(k3lat::intlat::linalg::identity(p - 1)).unwrap();
        assert!(!disc_action_nontrivial(&l, &full, &g).unwrap().nontrivial);
        assert!(!disc_action_nontrivial(&l, &t, &Isometry::identity(p - 1)).unwrap().nontrivial);
    }
}

struct Scope {
    r: RootDatum,
    aut: Vec<Isometry>,
}

fn scopes() -> &'static Vec<Scope> {
    static S: OnceLock<Vec<Scope>> = OnceLock::new();
    S.get_or_init(|| {
        let mut types = vec![RootType::D(4), RootType::D(5)];
        types.extend((2..=7).map(RootType::A));
        types
            .into_iter()
            .map(|t| {
                let r = RootDatum::new(t).unwrap();
                let aut = aut(&r);
                Scope { r, aut }
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn random_subgroups_obey_pair_invariants(
        which in 0usize..8,
        i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(),
        two in any::<bool>(),
        p in prop::sample::select(vec![3u64, 5, 7, 11]),
    ) {
        let sc = &scopes()[which];
        let r = &sc.r;
        let mut gens = vec![i.get(&sc.aut).clone()];
        if two {
            gens.push(j.get(&sc.aut).clone());
        }
        let mut h = IsometryGroup::new(r.rank(), gens.clone());
        let v = verdict(r, &h, p).unwrap();
        prop_assert_eq!(v.is_pseudo, is_pseudo_mod_p(r, &gens, p));
        prop_assert!(!v.is_full || v.is_pseudo);
        prop_assert_eq!(v.witness_root.is_some(), !v.is_pseudo);

        // pR <= R^# <= R, index a power of p dividing p^rank, H-stable
        let s = &v.sharp_lattice;
        for row in &p_times(r, p).unwrap().basis {
            prop_assert!(s.contains(row));
        }
        let idx = v.sharp_index();
        prop_assert!((BigInt::from(p).pow(r.rank() as u32) % &idx).is_zero());
        for b in &s.basis {
            let bi: Vec<i64> = b.iter().map(|x| i64::try_from(x).unwrap()).collect();
            for g in &gens {
                let img: Vec<BigInt> = g.apply(&bi).into_iter().map(BigInt::from).collect();
                prop_assert!(s.contains(&img));
            }
        }

        if v.is_pseudo {
            prop_assert!(p_group_check(r, &mut h, p, 200_000).unwrap().is_p_group);
        }
        if v.is_full {
            let label = r.label();
            let ok = match label.as_str() {
                "D4" => p == 3,
                "D5" => false,
                _ => r.rank() + 1 == p as usize,
            };
            prop_assert!(ok, "unexpected p-root pair on {} at {}", label, p);
        }
    }
}
