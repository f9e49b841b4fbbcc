//! The acceptance suite: nine criteria, each a pass/fail line with a short
//! detail string. Randomized parts draw from a seeded ChaCha stream so a run
//! is reproducible from `(seed, trials)`.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::primes_in;
use crate::error::{Error, Result};
use crate::fqf::overlattice::{overlattice_forms, Gluing};
use crate::hmdata::builtin_table;
use crate::intlat::linalg::{self, IntMat};
use crate::k3class::{
    anisotropy_check, n_form, primitively_embeds, reproduce_table, verify_certificate, wild_degree_bound,
    AnisotropyMethod, EmbeddingQuery,
};
use crate::oracle::{brute_force_tau, overlattice_forms_by_search};
use crate::prootpair::{classify, disc_action_at, disc_action_nontrivial, p_group_check, verdict};
use crate::rootsys::{a4_pair_in_e8, named_elements, p_cycle, t_sublattice};
use crate::{parse_symbol, symbol_of, Fqf, IntegralLattice, Isometry, IsometryGroup, JordanComponent, RootDatum, RootType};

/// Wall-clock limits, in seconds.
pub const TABLE_SECONDS: f64 = 60.0;
pub const CLASSIFY_SECONDS: f64 = 300.0;
pub const NAMED_SECONDS: f64 = 1.0;
pub const WILD_SECONDS: f64 = 10.0;

/// Gauss sums are compared on this many random forms of order at most `GAUSS_MAX_ORDER`.
pub const GAUSS_FORMS: usize = 200;
pub const GAUSS_MAX_ORDER: u64 = 10_000;
/// Lattices in the overlattice comparison have rank at most 4 and `|A| <= 81`.
pub const OVERLATTICE_MAX_DISC: u64 = 81;

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "table reproduction"),
    (2, "worked example"),
    (3, "supersingular forms"),
    (4, "symbol engine"),
    (5, "p-root pair classification"),
    (6, "named elements of E8"),
    (7, "discriminant action"),
    (8, "wild-degree bounds"),
    (9, "property suites"),
];

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    pub prime_bound: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { trials: 10_000, seed: 0x6b33_6c61, prime_bound: 200 }
    }
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Internal(what()))
    }
}

fn sym(s: &str) -> Result<Fqf> {
    parse_symbol(s)
}

fn within(seconds: f64, limit: f64) -> Result<()> {
    check(seconds < limit, || format!("took {seconds:.2}s, limit {limit}s"))
}

pub fn run_criterion(id: u8, opts: &VerifyOptions) -> Result<CriterionResult> {
    let name = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .ok_or_else(|| Error::InvalidQuery(format!("no criterion {id}")))?
        .1;
    let start = Instant::now();
    let outcome = match id {
        1 => table(opts, &start),
        2 => worked_example(),
        3 => supersingular_forms(),
        4 => symbol_engine(opts),
        5 => classification(&start),
        6 => named_e8(&start),
        7 => disc_action(),
        8 => wild(&start),
        _ => property_suites(opts),
    };
    let seconds = start.elapsed().as_secs_f64();
    let (pass, detail) = match outcome {
        Ok(d) => (true, d),
        Err(e) => (false, e.to_string()),
    };
    Ok(CriterionResult { id, name: name.to_string(), pass, detail, seconds })
}

pub fn run_all(opts: &VerifyOptions) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|c| run_criterion(c.0, opts).expect("listed criterion")).collect()
}

fn table(opts: &VerifyOptions, start: &Instant) -> Result<String> {
    let rows = builtin_table();
    let report = reproduce_table(&rows, opts.prime_bound);
    let s = &report.summary;
    let bad: Vec<u32> = report.rows.iter().filter(|r| !r.pass).map(|r| r.no).collect();
    check(s.rows == 67 && s.passed == 67, || format!("{}/{} rows match, failing {bad:?}", s.passed, s.rows))?;
    within(start.elapsed().as_secs_f64(), TABLE_SECONDS)?;
    Ok(format!("{}/{} rows over {} primes up to {}", s.passed, s.rows, s.primes, s.largest_prime))
}

fn worked_example() -> Result<String> {
    let qs = sym("4_3^-1 3^-1 7^-1")?;
    let c3 = primitively_embeds(&EmbeddingQuery::new(qs.clone(), 21, 3, 1)?)?;
    check(c3.q_total.isomorphic(&sym("4_3^-1 3^-3 7^-1")?), || format!("q_total at 3 is {}", c3.q_total))?;
    let glued = sym("4_3^-1 3^+1 7^-1")?;
    let cand = c3.candidates.iter().find(|c| c.q_tilde.isomorphic(&glued));
    let cand = cand.ok_or_else(|| Error::Internal("glued form 4_3^-1 3^+1 7^-1 not produced".into()))?;
    check(cand.complement.isomorphic(&sym("4_5^-1 3^-1 7^+1")?), || format!("complement is {}", cand.complement))?;
    check(!c3.embeds, || "p = 3 accepted".into())?;
    let c7 = primitively_embeds(&EmbeddingQuery::new(qs, 21, 7, 1)?)?;
    check(c7.embeds, || "p = 7 rejected".into())?;
    let w = c7.witness.as_ref().ok_or_else(|| Error::Internal("no witness at p = 7".into()))?;
    check(w.complement.isomorphic(&sym("4_5^-1 3^+1 7^-1")?), || format!("p = 7 complement is {}", w.complement))?;
    check(verify_certificate(&c7)?, || "p = 7 certificate does not re-verify".into())?;
    Ok("four forms reproduced; p=7 embeds, p=3 does not".into())
}

fn supersingular_forms() -> Result<String> {
    let mut exhaustive = 0;
    let mut total = 0;
    for p in primes_in(3, 50) {
        for s in 1..=10u32 {
            let q = n_form(p, s)?.q;
            let sign = if p % 4 == 3 && s % 2 == 1 { '+' } else { '-' };
            let want = format!("{p}^{sign}{}", 2 * s);
            check(q.to_string() == want, || format!("n_form({p},{s}) = {q}, expected {want}"))?;
            check(q.signature_mod8() == 4, || format!("signature of n_form({p},{s}) is {}", q.signature_mod8()))?;
            let a = anisotropy_check(p, s)?;
            check(a.no_maximal_isotropic, || format!("isotropic subgroup of order p^sigma at ({p},{s})"))?;
            if (p as u128).pow(2 * s) <= 100_000 {
                check(a.method == AnisotropyMethod::Exhaustive, || format!("({p},{s}) not scanned"))?;
                exhaustive += 1;
            }
            total += 1;
        }
    }
    Ok(format!("{total} forms; {exhaustive} with |A| <= 1e5 scanned exhaustively"))
}

/// A random valid form with order at most `max_order`.
pub fn random_form(rng: &mut impl Rng, max_order: u64) -> Fqf {
    loop {
        let n = rng.gen_range(0..=3);
        let mut comps = Vec::new();
        for _ in 0..n {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            let rank = rng.gen_range(1..=3);
            let c = match rng.gen_range(0..4) {
                0 => JordanComponent::two_even(rng.gen_range(1..=3), rank, sign),
                1 => JordanComponent::two_odd(rng.gen_range(1..=3), rank, sign, rng.gen_range(0..8)),
                _ => JordanComponent::odd(*[3u64, 5, 7, 11, 13].choose(rng).unwrap(), rng.gen_range(1..=2), rank, sign),
            };
            if c.validate().is_ok() {
                comps.push(c);
            }
        }
        if let Ok(f) = Fqf::new(comps) {
            if f.order() <= BigInt::from(max_order) {
                return f;
            }
        }
    }
}

fn symbol_engine(opts: &VerifyOptions) -> Result<String> {
    let l84 = IntegralLattice::from_i64(&[vec![84]])?;
    let s84 = symbol_of(&l84)?;
    check(s84.isomorphic(&sym("4_5^-1 3^+1 7^-1")?), || format!("symbol of <84> is {s84}"))?;
    for p in primes_in(3, 50) {
        let a = RootDatum::new(RootType::A(p as usize - 1))?.lattice();
        let want = if p % 4 == 1 { format!("{p}^+1") } else { format!("{p}^-1") };
        let got = symbol_of(&a)?;
        check(got.to_string() == want, || format!("A_{} has {got}, expected {want}", p - 1))?;
    }
    // every T(A_(p-1)) is checked so that one mismatch does not hide another
    let mut mismatches = Vec::new();
    for p in [3u64, 5, 7, 11, 13] {
        let a = RootDatum::new(RootType::A(p as usize - 1))?.lattice();
        let t = a.restrict(&t_sublattice(p)?);
        let got = symbol_of(&t)?;
        if got.to_string() != format!("{p}^+3") {
            mismatches.push(format!("T(A_{}) has {got}, expected {p}^+3", p - 1));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..GAUSS_FORMS {
        let f = random_form(&mut rng, GAUSS_MAX_ORDER);
        let tau = brute_force_tau(&f)?;
        check(tau == f.signature_mod8(), || format!("{f}: Gauss sum {tau}, symbol {}", f.signature_mod8()))?;
    }
    check(mismatches.is_empty(), || mismatches.join("; "))?;
    Ok(format!("<84>, A_(p-1) for p < 50, T(A_(p-1)), {GAUSS_FORMS} Gauss sums"))
}

fn conjugate_into(aut: &[Isometry], g: &Isometry, set: &[Isometry]) -> Result<bool> {
    for s in aut {
        let c = s.compose(g).compose(&s.inverse()?);
        if set.contains(&c) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn classification(start: &Instant) -> Result<String> {
    let d4 = RootDatum::new(RootType::D(4))?;
    let aut = d4.aut_group(200_000)?.elements.unwrap_or_default();
    check(aut.len() == 1152, || format!("|Aut(D4)| = {}", aut.len()))?;
    let gx = named_elements(&d4)?["gx"].clone();
    let c = classify(&d4, 3)?;
    check(c.complete, || "D4 at 3 incomplete".into())?;
    let pairs: Vec<_> = c.pairs().collect();
    check(!pairs.is_empty(), || "no pair on D4 at 3".into())?;
    let mut has_gx = false;
    for k in &pairs {
        has_gx |= conjugate_into(&aut, &gx, &k.elements)?;
    }
    check(has_gx, || "no D4 pair contains a conjugate of gx".into())?;
    for p in [5u64, 7, 11] {
        let c = classify(&d4, p)?;
        check(c.complete && c.pairs().next().is_none(), || format!("D4 at {p} has a pair"))?;
    }
    let d5 = RootDatum::new(RootType::D(5))?;
    for p in [3u64, 5, 7, 11] {
        let c = classify(&d5, p)?;
        check(c.complete && c.pairs().next().is_none(), || format!("D5 at {p} has a pair"))?;
    }
    let mut with_pairs = Vec::new();
    for m in 1..=7usize {
        let r = RootDatum::new(RootType::A(m))?;
        for p in [3u64, 5, 7] {
            let c = classify(&r, p)?;
            check(c.complete, || format!("A{m} at {p} incomplete"))?;
            let has = c.pairs().next().is_some();
            let power = crate::arith::prime_power(m as u64 + 1).is_some_and(|(q, _)| q == p);
            check(has == power, || format!("A{m} at {p}: pairs {has}, m+1 a power of p {power}"))?;
            if has {
                with_pairs.push(format!("A{m}@{p}"));
            }
        }
    }
    within(start.elapsed().as_secs_f64(), CLASSIFY_SECONDS)?;
    Ok(format!("D4@3 has {} pair classes incl. <gx>; D4@5,7,11 and D5 none; type A pairs at {}", pairs.len(), with_pairs.join(" ")))
}

fn named_e8(start: &Instant) -> Result<String> {
    let r = RootDatum::new(RootType::E(8))?;
    let named = named_elements(&r)?;
    let (a, b) = (&named["a"], &named["b"]);
    check(a.order()? == 5 && b.order()? == 5, || "a or b does not have order 5".into())?;
    check(a.compose(b) == b.compose(a), || "a and b do not commute".into())?;
    check(r.preserves(a) && r.preserves(b), || "a or b is not an isometry".into())?;
    // a = s_{-theta} s_1 s_2 s_3 from reflection formulas s_x(y) = y - (x.y) x
    let theta = r.highest_root();
    let refl = |x: &[i64]| -> Isometry {
        let n = r.rank();
        let images: Vec<Vec<i64>> = (0..n)
            .map(|j| {
                let mut e = vec![0i64; n];
                e[j] = 1;
                let c = r.inner(x, &e);
                e.iter().zip(x).map(|(ei, xi)| ei - c * xi).collect()
            })
            .collect();
        Isometry::from_images(&images)
    };
    let simple = |i: usize| -> Vec<i64> { (0..8).map(|j| i64::from(j == i)).collect() };
    let neg_theta: Vec<i64> = theta.iter().map(|c| -c).collect();
    let product = refl(&neg_theta).compose(&refl(&simple(0))).compose(&refl(&simple(1))).compose(&refl(&simple(2)));
    check(&product == a, || "a differs from s_(-theta) s_1 s_2 s_3".into())?;
    let alpha4 = simple(3);
    let d: Vec<i64> = a.apply(&alpha4).iter().zip(&alpha4).map(|(x, y)| x - y).collect();
    let amb = r.to_ambient(&d);
    let mut want = vec![num_rational::Rational64::zero(); 8];
    want[0] = (-1).into();
    want[4] = (-1).into();
    check(amb == want, || format!("a(alpha_4) - alpha_4 = {amb:?}"))?;
    check(r.is_root(&d), || "a(alpha_4) - alpha_4 is not a root".into())?;
    let (first, second) = a4_pair_in_e8();
    for x in &first {
        for y in &second {
            check(r.inner(x, y) == 0, || "A4 + A4 pieces are not orthogonal".into())?;
        }
    }
    let a4 = RootDatum::new(RootType::A(4))?;
    for piece in [&first, &second] {
        for i in 0..4 {
            for j in 0..4 {
                check(r.inner(&piece[i], &piece[j]) == a4.cartan[i][j], || "node-deletion basis is not A4".into())?;
            }
        }
    }
    within(start.elapsed().as_secs_f64(), NAMED_SECONDS)?;
    Ok("a, b of order 5, commuting; a(alpha_4) - alpha_4 = -v1-v5; A4+A4 orthogonal".into())
}

fn disc_action() -> Result<String> {
    for p in [3usize, 5, 7, 11] {
        let r = RootDatum::new(RootType::A(p - 1))?;
        let l = r.lattice();
        let t = t_sublattice(p as u64)?;
        let g = p_cycle(p);
        let act = disc_action_nontrivial(&l, &t, &g)?;
        check(act.nontrivial, || format!("p-cycle acts trivially on A_T at {p}"))?;
        let w = r.weights();
        let x: Vec<BigRational> = (0..p - 1)
            .map(|j| w.iter().fold(BigRational::zero(), |acc, row| acc + &row[j]) / BigRational::from_integer(BigInt::from(p)))
            .collect();
        let (d, outside) = disc_action_at(&l, &t, &g, &x)?;
        let minus_omega1: Vec<BigRational> = w[0].iter().map(|c| -c).collect();
        check(d == minus_omega1 && outside, || format!("g(x) - x is not -omega_1 outside T at {p}"))?;
    }
    Ok("witness -omega_1 at p = 3, 5, 7, 11".into())
}

fn wild(start: &Instant) -> Result<String> {
    let t = builtin_table();
    let expect: [(u64, u32, &[(&str, usize)]); 4] =
        [(11, 1, &[("A10", 1)]), (7, 3, &[("A6", 3)]), (5, 6, &[("A4", 5)]), (3, 14, &[("A2", 10)])];
    let mut parts = Vec::new();
    for (p, b, w) in expect {
        let r = wild_degree_bound(p, &t)?;
        let want: Vec<(String, usize)> = w.iter().map(|(l, k)| (l.to_string(), *k)).collect();
        check(r.bound == b && r.witness_decomposition == want && !r.tame_only, || {
            format!("p = {p}: bound {} witness {:?}", r.bound, r.witness_decomposition)
        })?;
        parts.push(format!("{p}->{b}"));
    }
    for p in [13u64, 17, 19, 23] {
        let r = wild_degree_bound(p, &t)?;
        check(r.tame_only, || format!("p = {p} not tame-only"))?;
    }
    within(start.elapsed().as_secs_f64(), WILD_SECONDS)?;
    Ok(format!("{}; p >= 13 tame-only", parts.join(", ")))
}

// ---- property suites ----

/// A random definite even lattice: a small root lattice in a random basis of
/// a random full-rank sublattice. Returns the root datum and the basis rows.
fn random_root_sublattice(rng: &mut impl Rng, max_rank: usize, entry: i64) -> (RootDatum, IntMat) {
    loop {
        let mut types = Vec::new();
        let mut rank = 0;
        let target = rng.gen_range(1..=max_rank);
        while rank < target {
            let left = target - rank;
            let t = match rng.gen_range(0..3) {
                1 if left >= 4 => RootType::D(rng.gen_range(4..=left.min(6))),
                2 if left >= 6 => RootType::E(rng.gen_range(6..=left.min(8))),
                _ => RootType::A(rng.gen_range(1..=left.min(4))),
            };
            rank += t.rank();
            types.push(t);
        }
        let r = RootDatum::sum(&types).expect("valid types");
        let b: IntMat = (0..rank).map(|_| (0..rank).map(|_| BigInt::from(rng.gen_range(-entry..=entry))).collect()).collect();
        if !linalg::det(&b).is_zero() {
            return (r, b);
        }
    }
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn intlat_suite(rng: &mut impl Rng, trials: usize) -> Result<String> {
    for t in 0..trials {
        let (r, b) = random_root_sublattice(rng, 6, 2);
        let l = r.lattice();
        let s = l.sublattice(b.clone())?;
        let sub = l.restrict(&s);
        let n = linalg::det(&b).abs();
        let disc_s: BigInt = sub.discriminant_group()?.invariants.iter().product();
        let disc_l: BigInt = l.discriminant_group()?.invariants.iter().product();
        check(disc_s == &n * &n * &disc_l, || format!("trial {t}: |A_S| != n^2 |A_L|"))?;
        check(disc_s == sub.det().abs(), || format!("trial {t}: |A_S| != |det|"))?;

        // a proper sublattice: complement primitivity and double complement
        let k = rng.gen_range(1..r.rank().max(2));
        let rows: IntMat = b.iter().take(k.min(r.rank())).cloned().collect();
        let part = l.sublattice(rows)?;
        let perp = l.orthogonal_complement(&part);
        check(perp.is_primitive(), || format!("trial {t}: complement not primitive"))?;
        let back = l.orthogonal_complement(&perp);
        check(back == part.saturate().0, || format!("trial {t}: double complement is not the saturation"))?;
        check(l.rank_ell_bound(&back)?, || format!("trial {t}: rank + l bound fails"))?;

        // roots of the sublattice are exactly the roots of R lying in it
        if t % 10 == 0 {
            let roots = sub.roots()?;
            let in_s = r.roots.iter().filter(|a| s.contains(&to_big(a))).count();
            check(roots.len() == in_s, || format!("trial {t}: {} roots, {in_s} expected", roots.len()))?;
            let set: BTreeSet<&Vec<i64>> = roots.iter().collect();
            for x in &roots {
                let neg: Vec<i64> = x.iter().map(|c| -c).collect();
                check(set.contains(&neg), || format!("trial {t}: roots not closed under negation"))?;
                let xb = to_big(x);
                check(sub.inner(&xb, &xb) == BigInt::from(2), || format!("trial {t}: root of wrong norm"))?;
            }
        }
    }
    Ok(format!("intlat {trials}"))
}

fn fqf_suite(rng: &mut impl Rng, trials: usize) -> Result<(String, usize)> {
    let mut overlattice_cases = 0;
    for t in 0..trials {
        let a = random_form(rng, 1 << 20);
        let b = random_form(rng, 1 << 20);
        check(a.negate().negate().isomorphic(&a), || format!("trial {t}: --q != q for {a}"))?;
        check(a.negate().signature_mod8() == (8 - a.signature_mod8()) % 8, || format!("trial {t}: sig(-q) for {a}"))?;
        let s = a.direct_sum(&b);
        check(s.signature_mod8() == (a.signature_mod8() + b.signature_mod8()) % 8, || format!("trial {t}: sig of {a} + {b}"))?;
        check(s.order() == a.order() * b.order(), || format!("trial {t}: order of sum"))?;

        // symbol of an orthogonal sum and overlattice search on a small lattice
        let (r, bm) = random_root_sublattice(rng, 4, 1);
        let l = r.lattice().restrict(&r.lattice().sublattice(bm)?);
        let (r2, bm2) = random_root_sublattice(rng, 3, 1);
        let l2 = r2.lattice().restrict(&r2.lattice().sublattice(bm2)?);
        let q = symbol_of(&l)?;
        let sum = symbol_of(&l.direct_sum(&l2))?;
        check(sum.isomorphic(&q.direct_sum(&symbol_of(&l2)?)), || format!("trial {t}: symbol of a sum"))?;
        let sig = l.signature();
        check(q.signature_mod8() as usize == sig.0 % 8, || format!("trial {t}: signature of {q}"))?;
        if l.det().abs() <= BigInt::from(OVERLATTICE_MAX_DISC) {
            for p in q.primes().into_iter().filter(|&p| p != 2) {
                let searched = overlattice_forms_by_search(&l, p)?;
                let (first, rest) = (q.p_part(p), q.without(p));
                let max: u64 = first.order().try_into().unwrap_or(u64::MAX);
                let cands = overlattice_forms(&first, &Fqf::trivial(), p, max, Gluing::FREE)?;
                for c in &cands {
                    let want = &first.order() / BigInt::from(c.order * c.order);
                    check(c.form.order() == want, || format!("trial {t}: overlattice order drop"))?;
                }
                let model: BTreeSet<String> =
                    cands.iter().map(|c| format!("{:?}", c.form.direct_sum(&rest).canonical())).collect();
                let found: BTreeSet<String> = searched.iter().map(|f| format!("{:?}", f.canonical())).collect();
                check(model == found, || format!("trial {t}: overlattices of {q} at {p} disagree"))?;
                overlattice_cases += 1;
            }
        }
    }
    Ok((format!("fqf {trials} ({overlattice_cases} overlattice comparisons)"), overlattice_cases))
}

struct Scope {
    r: RootDatum,
    aut: Vec<Isometry>,
}

fn prootpair_suite(rng: &mut impl Rng, trials: usize) -> Result<String> {
    let mut scopes = vec![RootType::D(4), RootType::D(5)];
    scopes.extend((1..=7).map(RootType::A));
    let scopes: Vec<Scope> = scopes
        .into_iter()
        .map(|t| {
            let r = RootDatum::new(t)?;
            let aut = r.aut_group(200_000)?.elements.unwrap_or_default();
            Ok(Scope { r, aut })
        })
        .collect::<Result<_>>()?;
    let mut pseudo = 0;
    for t in 0..trials {
        let s = scopes.choose(rng).unwrap();
        let p = *[3u64, 5, 7, 11].choose(rng).unwrap();
        let k = rng.gen_range(1..=2);
        let gens: Vec<Isometry> = (0..k).map(|_| s.aut.choose(rng).unwrap().clone()).collect();
        let mut h = IsometryGroup::new(s.r.rank(), gens);
        let v = verdict(&s.r, &h, p)?;
        let idx = v.sharp_index();
        check(idx.is_one() || idx.to_u64().and_then(crate::arith::prime_power).is_some_and(|(q, _)| q == p), || {
            format!("trial {t}: index {idx} of the sharp lattice")
        })?;
        if v.is_pseudo {
            pseudo += 1;
            let c = p_group_check(&s.r, &mut h, p, 200_000)?;
            check(c.is_p_group, || format!("trial {t}: H meets W in order {} at p = {p}", c.weyl_intersection_order))?;
        }
    }
    Ok(format!("prootpair {trials} ({pseudo} pseudo)"))
}

fn property_suites(opts: &VerifyOptions) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x9e37_79b9);
    let a = intlat_suite(&mut rng, opts.trials)?;
    let (b, cases) = fqf_suite(&mut rng, opts.trials)?;
    check(opts.trials == 0 || cases > 0, || "no overlattice comparisons ran".into())?;
    let c = prootpair_suite(&mut rng, opts.trials)?;
    Ok(format!("{a}; {b}; {c}"))
}
