use k3lat::fqf::overlattice::{overlattice_forms, Gluing};
use k3lat::intlat::linalg;
use k3lat::oracle::{brute_force_isomorphic, brute_force_tau};
use k3lat::{nikulin_exists, parse_symbol, symbol_of, Error, Fqf, IntegralLattice, RootDatum, RootType};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn sym(s: &str) -> Fqf {
    parse_symbol(s).unwrap()
}

fn a2() -> IntegralLattice {
    IntegralLattice::from_i64(&[vec![2, -1], vec![-1, 2]]).unwrap()
}

#[test]
fn sums_negation_and_signature() {
    let a = sym("3^+1");
    let b = sym("3^-1");
    assert_eq!(a.direct_sum(&b).to_string(), "3^-2");
    assert_eq!(b.negate().to_string(), "3^+1");
    assert_eq!(b.signature_mod8(), 2);
    assert_eq!(brute_force_tau(&b).unwrap(), 2);
    // tau(7^+1) = 1 - 7 = 2, so tau(7^+3) = 6
    assert_eq!(sym("7^+1").signature_mod8(), 2);
    let seven = sym("7^+3");
    assert_eq!(seven.signature_mod8(), 6);
    assert_eq!(brute_force_tau(&seven).unwrap(), 6);
    assert_eq!(sym("3^+2").signature_mod8(), 4);
    assert_eq!(sym("2_II^+8").signature_mod8(), 0);
    assert!(Fqf::trivial().direct_sum(&a).isomorphic(&a));
}

#[test]
fn symbols_of_small_lattices() {
    assert_eq!(symbol_of(&a2()).unwrap().to_string(), "3^-1");
    let two = symbol_of(&IntegralLattice::from_i64(&[vec![2, 0], vec![0, 6]]).unwrap()).unwrap();
    let six = symbol_of(&IntegralLattice::from_i64(&[vec![6, 0], vec![0, 2]]).unwrap()).unwrap();
    assert!(two.isomorphic(&six));
    assert!(brute_force_isomorphic(&two, &six).unwrap());
    let sum = symbol_of(&a2().direct_sum(&a2())).unwrap();
    assert!(sum.isomorphic(&sym("3^-1").direct_sum(&sym("3^-1"))));
    assert_eq!(sum.to_string(), "3^+2");
    let e8 = RootDatum::new(RootType::E(8)).unwrap().lattice();
    assert!(symbol_of(&e8).unwrap().is_trivial());
    let l84 = symbol_of(&IntegralLattice::from_i64(&[vec![84]]).unwrap()).unwrap();
    assert_eq!(l84.order(), BigInt::from(84));
    assert_eq!(l84.signature_mod8(), 1);
}

#[test]
fn overlattice_examples() {
    // x^2 + 2y^2 has the isotropic line (1, 1) over F_3
    let q = sym("3^-2");
    let both = overlattice_forms(&q, &Fqf::trivial(), 3, 9, Gluing::FREE).unwrap();
    let mut orders: Vec<u64> = both.iter().map(|c| c.order).collect();
    orders.sort();
    assert_eq!(orders, vec![1, 3]);
    assert!(both.iter().any(|c| c.order == 3 && c.form.is_trivial()));
    // x^2 + y^2 is anisotropic over F_3: nothing beyond H = 0
    let an = overlattice_forms(&sym("3^+2"), &Fqf::trivial(), 3, 9, Gluing::FREE).unwrap();
    assert_eq!(an.len(), 1);
    assert_eq!((an[0].order, an[0].form.to_string()), (1, "3^+2".to_string()));
    // H = 0 always returns the form itself
    let single = overlattice_forms(&sym("7^+1"), &Fqf::trivial(), 7, 1, Gluing::FREE).unwrap();
    assert_eq!(single.len(), 1);
    assert_eq!(single[0].form.to_string(), "7^+1");
    assert!(matches!(
        overlattice_forms(&sym("2_II^+2"), &Fqf::trivial(), 2, 4, Gluing::FREE),
        Err(Error::NotOddPrime(2))
    ));
    // strict gluing of 3^-1 with its negative recovers the trivial form
    let glue = overlattice_forms(&sym("3^-1"), &sym("3^+1"), 3, 3, Gluing::STRICT).unwrap();
    assert!(glue.iter().any(|c| c.order == 3 && c.form.is_trivial()));
    let none = overlattice_forms(&sym("3^-1"), &sym("3^-1"), 3, 3, Gluing::STRICT).unwrap();
    assert!(none.iter().all(|c| c.order == 1));
}

#[test]
fn existence_examples() {
    assert!(nikulin_exists(1, 0, &sym("4_5^-1 3^+1 7^-1")));
    assert!(nikulin_exists(1, 1, &Fqf::trivial()));
    assert!(!nikulin_exists(1, 0, &Fqf::trivial()));
    assert!(nikulin_exists(0, 2, &sym("3^+1")));
    assert!(!nikulin_exists(0, 2, &sym("3^-1")));
    // rank below the length
    assert!(!nikulin_exists(1, 1, &sym("3^+4")));
    assert!(nikulin_exists(8, 0, &Fqf::trivial()));
    assert!(!nikulin_exists(4, 0, &Fqf::trivial()));
}

/// Random nondegenerate even symmetric matrices of small size.
fn even_gram() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4).prop_flat_map(|n| {
        (prop::collection::vec(-3i64..=3, n), prop::collection::vec(-4i64..=4, n * n)).prop_filter_map(
            "degenerate",
            move |(diag, off)| {
                let mut g = vec![vec![0i64; n]; n];
                for i in 0..n {
                    g[i][i] = 2 * diag[i];
                    for j in i + 1..n {
                        g[i][j] = off[i * n + j];
                        g[j][i] = off[i * n + j];
                    }
                }
                let d = linalg::det(&linalg::int_mat(&g)).abs();
                (!d.is_zero() && d <= BigInt::from(5000)).then_some(g)
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn symbol_signature_matches_real_signature(g in even_gram()) {
        let l = IntegralLattice::from_i64(&g).unwrap();
        let q = symbol_of(&l).unwrap();
        let (pos, neg, _) = l.signature();
        prop_assert_eq!(q.signature_mod8() as i64, (pos as i64 - neg as i64).rem_euclid(8));
        prop_assert_eq!(q.order(), l.det().abs());
        prop_assert!(nikulin_exists(pos as u32, neg as u32, &q));
        if q.order() <= BigInt::from(3000) {
            prop_assert_eq!(brute_force_tau(&q).unwrap(), q.signature_mod8());
        }
    }

    #[test]
    fn symbol_of_sum_and_negation(g in even_gram(), h in even_gram()) {
        let (l, m) = (IntegralLattice::from_i64(&g).unwrap(), IntegralLattice::from_i64(&h).unwrap());
        let (ql, qm) = (symbol_of(&l).unwrap(), symbol_of(&m).unwrap());
        prop_assert!(symbol_of(&l.direct_sum(&m)).unwrap().isomorphic(&ql.direct_sum(&qm)));
        prop_assert!(symbol_of(&l.scaled(-1)).unwrap().isomorphic(&ql.negate()));
        prop_assert!(ql.negate().negate().isomorphic(&ql));
        let round = parse_symbol(&ql.to_string()).unwrap();
        prop_assert!(round.isomorphic(&ql));
    }

    #[test]
    fn overlattices_drop_order_by_square(g in even_gram()) {
        let l = IntegralLattice::from_i64(&g).unwrap();
        let q = symbol_of(&l).unwrap();
        for p in q.primes().into_iter().filter(|&p| p != 2) {
            let first = q.p_part(p);
            let max: u64 = first.order().try_into().unwrap();
            for c in overlattice_forms(&first, &Fqf::trivial(), p, max, Gluing::FREE).unwrap() {
                prop_assert_eq!(c.form.order() * BigInt::from(c.order * c.order), first.order());
                prop_assert_eq!(c.form.signature_mod8(), first.signature_mod8());
            }
        }
    }
}
