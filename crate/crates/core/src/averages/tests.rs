use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::verify::schreier_one_mass;
use super::*;
use crate::families::{member, FamilyExpr, Subsequence};
use crate::ordinals::Ordinal;
use crate::rational::{rat, Rational};
use crate::spaces::{max_weight_member, norm, SpaceSpec, SparseVector};

fn ord(s: &str) -> Ordinal {
    s.parse().unwrap()
}

fn uniform(lo: u64, hi: u64) -> WeightedSet {
    l1k_average(&FiniteSubset::interval(lo, hi)).unwrap()
}

#[test]
fn l1k_weights() {
    let single = l1k_average(&FiniteSubset::new(vec![7]).unwrap()).unwrap();
    assert_eq!(single.points(), &[(7, rat(1, 1))]);
    let pair = l1k_average(&FiniteSubset::new(vec![4, 9]).unwrap()).unwrap();
    assert_eq!(pair.points(), &[(4, rat(1, 2)), (9, rat(1, 2))]);
    assert!(uniform(6, 10).points().iter().all(|p| p.1 == rat(1, 5)));
    assert!(l1k_average(&FiniteSubset::empty()).is_err());
}

#[test]
fn weighted_set_validation_and_json() {
    assert!(WeightedSet::new(vec![(1, rat(1, 2)), (2, rat(1, 3))]).is_err());
    assert!(WeightedSet::new(vec![(1, rat(3, 2)), (2, rat(-1, 2))]).is_err());
    assert!(WeightedSet::new(vec![]).is_err());
    let ws = WeightedSet::new(vec![(5, rat(2, 3)), (2, rat(1, 3))]).unwrap();
    assert_eq!(ws.support().elements(), &[2, 5]);
    let text = serde_json::to_string(&ws).unwrap();
    assert_eq!(text, r#"[[2,"1/3"],[5,"2/3"]]"#);
    let back: WeightedSet = serde_json::from_str(&text).unwrap();
    assert_eq!(back, ws);
    assert!(serde_json::from_str::<WeightedSet>(r#"[[2,"1/3"]]"#).is_err());
}

#[test]
fn base_case_matches_recipe() {
    let ws = average(&ord("1"), &ord("0"), &rat(1, 4), &Subsequence::identity()).unwrap();
    assert_eq!(ws, uniform(6, 10));
    // 1/4 itself is not below 1/4, so k = 5; for 1/5 it must be 6.
    let ws = average(&ord("1"), &ord("0"), &rat(1, 5), &Subsequence::identity()).unwrap();
    assert_eq!(ws, uniform(7, 12));
    let odd = Subsequence::affine(1, 2).unwrap();
    let ws = average(&ord("1"), &ord("0"), &rat(1, 2), &odd).unwrap();
    assert_eq!(ws.support().elements(), &[7, 9, 11]);
}

#[test]
fn verifier_examples() {
    assert_eq!(verify_average(&uniform(6, 10), &ord("0")), rat(1, 5));
    assert_eq!(verify_average(&uniform(6, 10), &ord("1")), rat(1, 1));
    let one = WeightedSet::new(vec![(3, rat(1, 1))]).unwrap();
    assert_eq!(verify_average(&one, &ord("0")), rat(1, 1));
    // {4,5,6,7} is the best S_1 set inside {3..8}.
    assert_eq!(verify_average(&uniform(3, 8), &ord("1")), rat(2, 3));
    assert_eq!(verify_average(&uniform(3, 8), &ord("2")), rat(1, 1));
}

#[test]
fn schreier_one_fast_path_agrees_with_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let s1 = FamilyExpr::schreier(1u64);
    for _ in 0..200 {
        let mut pts = Vec::new();
        let mut at = 0;
        for _ in 0..rng.gen_range(1..12) {
            at += rng.gen_range(1..4);
            pts.push((at, rat(rng.gen_range(1..9), rng.gen_range(1..5))));
        }
        assert_eq!(schreier_one_mass(&pts), max_weight_member(&pts, &s1), "{pts:?}");
    }
}

#[test]
fn successor_of_successor_small() {
    let eps = rat(3, 4);
    let ws = average(&ord("2"), &ord("1"), &eps, &Subsequence::identity()).unwrap();
    let f = ws.support();
    assert!(member(&f, &FamilyExpr::schreier(2u64)));
    assert_eq!(f.min(), Some(3));
    assert_eq!(ws.len(), 1 + 7 + 69);
    assert!(verify_average(&ws, &ord("1")) < eps);
    assert_eq!(verify_average(&ws, &ord("1")), max_weight_member(ws.points(), &FamilyExpr::schreier(1u64)));
}

#[test]
fn limit_and_threshold_cases() {
    // S_ω branch 1 is S_1, so the base recipe runs on M itself.
    let ws = average(&ord("w"), &ord("0"), &rat(1, 4), &Subsequence::identity()).unwrap();
    assert_eq!(ws, uniform(6, 10));
    assert!(member(&ws.support(), &FamilyExpr::schreier(ord("w"))));
    // β below the predecessor: S_0 ⊆ S_1 everywhere, same recipe as (2,1).
    let a = average(&ord("2"), &ord("0"), &rat(3, 4), &Subsequence::identity()).unwrap();
    let b = average(&ord("2"), &ord("1"), &rat(3, 4), &Subsequence::identity()).unwrap();
    assert_eq!(a, b);
    assert_eq!(inclusion_threshold(&ord("1"), &ord("w")).unwrap(), 1);
    assert_eq!(inclusion_threshold(&ord("2"), &ord("w")).unwrap(), 2);
    assert_eq!(inclusion_threshold(&ord("w+3"), &ord("w*2")).unwrap(), 3);
    assert_eq!(inclusion_threshold(&ord("2"), &ord("w^2")).unwrap(), 2);
    assert!(inclusion_threshold(&ord("3"), &ord("2")).is_err());
    // One block only when ε/2 already exceeds 1.
    let ws = average(&ord("w+1"), &ord("w"), &rat(4, 1), &Subsequence::identity()).unwrap();
    assert_eq!(ws.points(), &[(2, rat(1, 1))]);
}

#[test]
fn rejections_and_budget() {
    let id = Subsequence::identity();
    assert!(matches!(average(&ord("1"), &ord("1"), &rat(1, 4), &id), Err(Error::Precondition(_))));
    assert!(matches!(average(&ord("1"), &ord("0"), &rat(0, 1), &id), Err(Error::Domain(_))));
    assert!(matches!(average(&ord("2"), &ord("1"), &rat(1, 4), &id), Err(Error::Budget(_))));
    assert!(matches!(average(&ord("w+1"), &ord("w"), &rat(1, 2), &id), Err(Error::Budget(_))));
    assert!(matches!(average_with_budget(&ord("1"), &ord("0"), &rat(1, 4), &id, 4), Err(Error::Budget(_))));
}

#[test]
fn smaller_eps_never_shrinks_support() {
    let mut last = 0;
    for d in 2..40 {
        let ws = average(&ord("1"), &ord("0"), &rat(1, d), &Subsequence::identity()).unwrap();
        assert!(ws.len() >= last);
        last = ws.len();
    }
}

#[test]
fn normalized_average_in_tsirelson() {
    let t = SpaceSpec::tsirelson(1u64, rat(1, 2)).unwrap();
    let units: Vec<SparseVector> = (1..=20).map(SparseVector::unit).collect();
    let out = normalized_average(&t, &units, 1, &rat(1, 4)).unwrap();
    assert_eq!(norm(&out.vector, &t), rat(1, 1));
    assert_eq!(out.lower_bound, rat(1, 2));
    assert!(out.raw_norm >= out.lower_bound);
    let total: Rational = out.weights.points().iter().map(|p| p.1.clone()).sum();
    assert_eq!(total, rat(1, 1));
    // ε·L_1 = 1/8, so nine points past m_9.
    assert_eq!(out.weights.support(), FiniteSubset::interval(10, 18));

    let single = normalized_average(&t, &units[..1], 0, &rat(1, 4)).unwrap();
    assert_eq!(single.vector, units[0]);
    let short = normalized_average(&t, &units[..5], 1, &rat(1, 4));
    assert!(matches!(short, Err(Error::Precondition(_))));
    let unnormalized = [SparseVector::unit(2).scale(&rat(2, 1))];
    assert!(normalized_average(&t, &unnormalized, 0, &rat(1, 4)).is_err());
}

#[test]
fn successor_of_successor_half() {
    let eps = rat(1, 2);
    let ws = average(&ord("2"), &ord("1"), &eps, &Subsequence::identity()).unwrap();
    let mass = verify_average(&ws, &ord("1"));
    eprintln!("support {} mass {}", ws.len(), mass);
    assert!(mass < eps);
    assert!(member(&ws.support(), &FamilyExpr::schreier(2u64)));
}
