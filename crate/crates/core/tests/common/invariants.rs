//! Seeded property suites shared by the `properties` and `acceptance`
//! targets. Each suite returns the first failing case, already shrunk.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

use sbl::families::{
    check_witness, decompose, enumerate_members, member, ExplicitFamily, FamilyExpr, FiniteSubset,
    Subsequence,
};
use sbl::spaces::{check_certificate, dual_functional, norm, norm_certificate, CertBody, CertNode, SpaceSpec, SparseVector};

use super::{q, Q};

pub const SPACES: [&str; 5] = ["T", "tsirelson:1:1/3", "tsirelson:2:1/2", "mixed:3/4:1/2", "S(1)@1/2|S(2)@1/3"];

/// Universe for family suites.
pub const UNIVERSE: u64 = 10;

fn runner(cases: u32, seed: u8) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn report<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

pub fn space(i: usize) -> SpaceSpec {
    SPACES[i].parse().unwrap()
}

/// Up to 8 nonzero entries on increasing coordinates below 25.
pub fn vector() -> impl Strategy<Value = Vec<(u64, Q)>> {
    prop::collection::vec((1u64..=3, 1i64..=9, any::<bool>(), 1i64..=6), 1..=8).prop_map(|raw| {
        let mut at = 0;
        raw.into_iter()
            .map(|(gap, n, neg, d)| {
                at += gap;
                (at, q(if neg { -n } else { n }, d))
            })
            .collect()
    })
}

fn sv(x: &[(u64, Q)]) -> SparseVector {
    SparseVector::new(x.to_vec()).unwrap()
}

/// Sign changes leave the norm alone and projections never raise it.
pub fn unconditionality(cases: u32, seed: u8) -> Result<(), String> {
    let strat = (0..SPACES.len(), vector(), any::<u8>(), any::<u8>());
    report(runner(cases, seed).run(&strat, |(s, x, signs, keep)| {
        let sp = space(s);
        let x = sv(&x);
        let n = norm(&x, &sp);
        prop_assert_eq!(norm(&x.with_signs(|k| signs >> k & 1 == 1), &sp), n.clone());
        let kept: Vec<u64> =
            x.entries().iter().enumerate().filter(|(k, _)| keep >> k & 1 == 1).map(|(_, e)| e.0).collect();
        let p = x.project(&FiniteSubset::from_increasing(kept).unwrap());
        prop_assert!(norm(&p, &sp) <= n);
        Ok(())
    }))
}

/// Moving every coordinate right, keeping the order, never lowers the norm.
pub fn spreading_domination(cases: u32, seed: u8) -> Result<(), String> {
    let strat = (0..SPACES.len(), vector(), prop::collection::vec(0u64..=3, 8));
    report(runner(cases, seed).run(&strat, |(s, x, shifts)| {
        let sp = space(s);
        let mut extra = 0;
        let spread: Vec<(u64, Q)> = x
            .iter()
            .zip(&shifts)
            .map(|((i, v), d)| {
                extra += d;
                (i + extra, v.clone())
            })
            .collect();
        prop_assert!(norm(&sv(&spread), &sp) >= norm(&sv(&x), &sp));
        Ok(())
    }))
}

/// `‖x‖_∞ ≤ ‖x‖ ≤ ‖x‖_1`, and the float evaluation tracks the exact one.
pub fn sandwich(cases: u32, seed: u8) -> Result<(), String> {
    let strat = (0..SPACES.len(), vector());
    report(runner(cases, seed).run(&strat, |(s, x)| {
        let sp = space(s);
        let x = sv(&x);
        let n = norm(&x, &sp);
        prop_assert!(x.linf() <= n && n <= x.l1());
        let f = sbl::spaces::norm_f64(&x, &sp);
        prop_assert!((f - sbl::rational::to_f64(&n)).abs() < 1e-9);
        Ok(())
    }))
}

fn tamper(node: &mut CertNode, pick: u8) {
    match &mut node.body {
        CertBody::Leaf { negative, .. } => *negative = !*negative,
        CertBody::Split { theta, children, .. } => {
            if pick.is_multiple_of(3) || children.is_empty() {
                *theta = &*theta * q(3, 2);
            } else {
                let i = pick as usize % children.len();
                tamper(&mut children[i], pick / 3);
            }
        }
    }
}

/// Extracted certificates re-check to the norm, their dual functional has
/// sup norm at most 1 and pairs to the norm, and any certificate the checker
/// accepts (including tampered ones) is at most the norm.
pub fn certificate_soundness(cases: u32, seed: u8) -> Result<(), String> {
    let strat = (0..SPACES.len(), vector(), any::<u8>());
    report(runner(cases, seed).run(&strat, |(s, x, pick)| {
        let sp = space(s);
        let x = sv(&x);
        let n = norm(&x, &sp);
        let cert = norm_certificate(&x, &sp).unwrap();
        prop_assert_eq!(check_certificate(&x, &sp, &cert).unwrap(), n.clone());
        let f = dual_functional(&cert);
        prop_assert_eq!(f.dot(&x), n.clone());
        prop_assert!(f.linf() <= q(1, 1));
        let mut bad = cert.clone();
        tamper(&mut bad, pick);
        if let Ok(v) = check_certificate(&x, &sp, &bad) {
            prop_assert!(v <= n);
        }
        Ok(())
    }))
}

fn explicit_s1() -> FamilyExpr {
    let sets = enumerate_members(&FamilyExpr::schreier(1u64), 8);
    FamilyExpr::explicit(ExplicitFamily::new(sets, 8).unwrap())
}

/// Every `FamilyExpr` form, nested at most two levels deep.
pub fn family() -> impl Strategy<Value = FamilyExpr> {
    let leaf = prop_oneof![
        4 => (0u64..=2).prop_map(FamilyExpr::schreier),
        1 => Just(FamilyExpr::schreier("w".parse::<sbl::Ordinal>().unwrap())),
        1 => Just(explicit_s1()),
    ];
    leaf.prop_recursive(2, 8, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| FamilyExpr::compose(a, b)),
            (inner.clone(), 1u32..=3).prop_map(|(b, n)| FamilyExpr::power(b, n).unwrap()),
            prop::collection::vec((inner.clone(), 1u32..=2), 1..=3)
                .prop_map(|parts| FamilyExpr::concat(parts).unwrap()),
            (inner, 1u64..=3, 1u64..=2)
                .prop_map(|(b, s, k)| FamilyExpr::spread(b, Subsequence::affine(s, k).unwrap())),
        ]
    })
}

fn subset(mask: u16) -> FiniteSubset {
    FiniteSubset::from_increasing((1..=UNIVERSE).filter(|i| mask >> (i - 1) & 1 == 1).collect()).unwrap()
}

/// `F[G]` and `[F]^n` are hereditary only when the outer family is
/// spreading: dropping a block's first point moves its minimum right.
fn hereditary_form(fam: &FamilyExpr) -> bool {
    match fam {
        FamilyExpr::Schreier(_) | FamilyExpr::Explicit(_) => true,
        FamilyExpr::Compose(a, b) => a.is_spreading() && hereditary_form(a) && hereditary_form(b),
        FamilyExpr::Power(b, _) => b.is_spreading(),
        FamilyExpr::Concat(parts) => parts.iter().all(|(p, _)| hereditary_form(p)),
        FamilyExpr::Spread(b, _) => hereditary_form(b),
    }
}

/// Hereditary: dropping a point keeps membership. Spreading (for families
/// closed under spreads): pushing a point right, order kept, keeps it too.
/// Membership agrees with an independently checked decomposition, and the
/// text form parses back to the same family.
pub fn family_forms(cases: u32, seed: u8) -> Result<(), String> {
    let strat = (family(), 0u16..(1 << UNIVERSE));
    report(runner(cases, seed).run(&strat, |(fam, mask)| {
        let f = subset(mask);
        let inside = member(&f, &fam);
        match decompose(&f, &fam) {
            Some(w) => prop_assert!(inside && check_witness(&f, &fam, &w)),
            None => prop_assert!(!inside),
        }
        let back: FamilyExpr = fam.to_string().parse().unwrap();
        prop_assert_eq!(&back, &fam);
        if !inside || !hereditary_form(&fam) {
            return Ok(());
        }
        let e = f.elements();
        for k in 0..e.len() {
            let mut g = e.to_vec();
            g.remove(k);
            prop_assert!(member(&FiniteSubset::from_increasing(g).unwrap(), &fam), "drop {k} from {f}");
        }
        if fam.is_spreading() {
            for k in 0..e.len() {
                let mut g = e.to_vec();
                g[k] += 1;
                if k + 1 < e.len() && g[k] == g[k + 1] {
                    continue;
                }
                prop_assert!(member(&FiniteSubset::from_increasing(g).unwrap(), &fam), "push {k} in {f}");
            }
        }
        Ok(())
    }))
}

/// Named suites, in the order the acceptance target reports them.
pub type Suite = fn(u32, u8) -> Result<(), String>;

pub const SUITES: [(&str, Suite); 5] = [
    ("unconditionality", unconditionality),
    ("spreading domination", spreading_domination),
    ("sup/l1 sandwich", sandwich),
    ("certificate soundness", certificate_soundness),
    ("family forms", family_forms),
];

