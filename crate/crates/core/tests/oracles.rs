#![cfg(feature = "oracles")]

use k3lat::oracle::{brute_force_isomorphic, brute_force_tau, overlattice_forms_by_search};
use k3lat::fqf::overlattice::{overlattice_forms, Gluing};
use k3lat::{parse_symbol, symbol_of, Fqf, IntegralLattice, JordanComponent};
use num_bigint::BigInt;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn two_adic_components(exp: u32, max_rank: u32) -> Vec<JordanComponent> {
    let mut out = Vec::new();
    for rank in 1..=max_rank {
        for sign in [1i8, -1] {
            let c = JordanComponent::two_even(exp, rank, sign);
            if c.validate().is_ok() {
                out.push(c);
            }
            for t in 0..8u8 {
                let c = JordanComponent::two_odd(exp, rank, sign, t);
                if c.validate().is_ok() {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// Every 2-adic symbol with at most two scales among 2, 4, 8 and group order <= 64.
fn small_two_adic_forms() -> Vec<Fqf> {
    let mut forms = Vec::new();
    for e1 in 1..=3u32 {
        for c1 in two_adic_components(e1, 3) {
            let o1 = 1u32 << (e1 * c1.rank);
            if o1 <= 64 {
                forms.push(Fqf::new(vec![c1.clone()]).unwrap());
            }
            for e2 in (e1 + 1)..=3 {
                for c2 in two_adic_components(e2, 2) {
                    if o1 * (1 << (e2 * c2.rank)) <= 64 {
                        forms.push(Fqf::new(vec![c1.clone(), c2]).unwrap());
                    }
                }
            }
        }
    }
    forms
}

#[test]
fn canonical_two_adic_symbols_agree_with_explicit_isomorphism() {
    let forms = small_two_adic_forms();
    assert!(forms.len() > 100);
    let mut checked = 0;
    for (i, a) in forms.iter().enumerate() {
        for b in &forms[i..] {
            if a.order() != b.order() {
                continue;
            }
            let brute = brute_force_isomorphic(a, b).unwrap();
            assert_eq!(a.isomorphic(b), brute, "{a} vs {b}");
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn gauss_sum_matches_signature_on_small_two_adic_forms() {
    for f in small_two_adic_forms() {
        assert_eq!(brute_force_tau(&f).unwrap(), f.signature_mod8(), "{f}");
    }
}

#[test]
fn gauss_sum_known_values() {
    for (s, t) in [("3^+1", 6), ("5^-1", 0), ("3^+2", 4), ("4_5^-1 3^+1 7^-1", 1), ("2_II^-2", 4)] {
        assert_eq!(brute_force_tau(&parse_symbol(s).unwrap()).unwrap(), t, "{s}");
    }
}

fn odd_form() -> impl Strategy<Value = Fqf> {
    let comp = (prop::sample::select(vec![3u64, 5, 7]), 1u32..=2, 1u32..=2, any::<bool>());
    prop::collection::vec(comp, 0..3).prop_filter_map("order too large", |cs| {
        let comps: Vec<JordanComponent> = cs
            .into_iter()
            .map(|(p, e, n, s)| JordanComponent::odd(p, e, n, if s { 1 } else { -1 }))
            .collect();
        let f = Fqf::new(comps).ok()?;
        (f.order() <= BigInt::from(5000)).then_some(f)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauss_sum_matches_signature_on_odd_forms(f in odd_form()) {
        prop_assert_eq!(brute_force_tau(&f).unwrap(), f.signature_mod8());
    }

    #[test]
    fn negation_and_sum_respect_gauss_sums(a in odd_form(), b in odd_form()) {
        let s = a.direct_sum(&b);
        prop_assume!(s.order() <= BigInt::from(20000));
        prop_assert_eq!(brute_force_tau(&s).unwrap(), (a.signature_mod8() + b.signature_mod8()) % 8);
        prop_assert_eq!(brute_force_tau(&a.negate()).unwrap(), (8 - a.signature_mod8()) % 8);
    }
}

fn canon_set(forms: &[Fqf]) -> BTreeSet<String> {
    forms.iter().map(|f| format!("{:?}", f.canonical())).collect()
}

#[test]
fn overlattice_forms_match_lattice_search() {
    let cases: Vec<(Vec<Vec<i64>>, u64)> = vec![
        (vec![vec![6, 3], vec![3, 6]], 3),
        (vec![vec![18]], 3),
        (vec![vec![2, 1, 0, 0], vec![1, 2, 0, 0], vec![0, 0, 2, 1], vec![0, 0, 1, 2]], 3),
        (vec![vec![50]], 5),
        (vec![vec![10, 0], vec![0, 10]], 5),
        (vec![vec![6, 0], vec![0, 6]], 3),
        (vec![vec![2, -1, 0, 0], vec![-1, 2, -1, 0], vec![0, -1, 2, -1], vec![0, 0, -1, 2]], 5),
        (vec![vec![4, 2, 0], vec![2, 4, 3], vec![0, 3, 6]], 3),
    ];
    for (gram, p) in cases {
        let l = IntegralLattice::from_i64(&gram).unwrap();
        let q = symbol_of(&l).unwrap();
        let searched = overlattice_forms_by_search(&l, p).unwrap();
        let (first, rest) = (q.p_part(p), q.without(p));
        let max: u64 = first.order().try_into().unwrap();
        let model: Vec<Fqf> = overlattice_forms(&first, &Fqf::trivial(), p, max, Gluing::FREE)
            .unwrap()
            .into_iter()
            .map(|c| c.form.direct_sum(&rest))
            .collect();
        assert_eq!(canon_set(&searched), canon_set(&model), "{gram:?}");
    }
}
