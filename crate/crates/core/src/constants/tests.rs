use super::*;
use crate::families::FiniteSubset;
use crate::rational::rat;

fn t(theta: Rational) -> SpaceSpec {
    SpaceSpec::tsirelson(1u64, theta).unwrap()
}

fn e(i: u64) -> SparseVector {
    SparseVector::unit(i)
}

fn chi(lo: u64, hi: u64) -> SparseVector {
    SparseVector::indicator(&FiniteSubset::interval(lo, hi))
}

#[test]
fn ratios() {
    let half = t(rat(1, 2));
    assert_eq!(ratio(&[chi(2, 4)], &half).unwrap(), rat(1, 1));
    assert_eq!(ratio(&[e(2), e(3)], &half).unwrap(), rat(1, 2));
    // ‖χ{2..5}‖ = ‖χ{3,4,5}‖ = 3/2 against ‖χ{2,3}‖ + ‖χ{4,5}‖ = 2.
    assert_eq!(ratio(&[chi(2, 3), chi(4, 5)], &half).unwrap(), rat(3, 4));
    assert!(ratio(&[e(3), e(2)], &half).is_err());
    assert!(ratio(&[], &half).is_err());
}

#[test]
fn tier_text() {
    for s in ["characteristic", "grid:3", "local"] {
        assert_eq!(s.parse::<Tier>().unwrap().to_string(), s);
    }
    assert!("grid:0".parse::<Tier>().is_err());
    assert!("grid".parse::<Tier>().is_err());
}

#[test]
fn delta_one_of_t() {
    let half = t(rat(1, 2));
    let s1 = FamilyExpr::schreier(1u64);
    for n in [3, 6, 8] {
        let est = delta_truncated(&half, &s1, n, Tier::Characteristic, 0).unwrap();
        assert_eq!(est.lower, rat(1, 2));
        assert_eq!(est.upper, rat(1, 2));
        assert_eq!(est.witness, vec![e(2), e(3)]);
        assert_eq!(ratio(&est.witness, &half).unwrap(), est.upper);
    }
    let third = t(rat(1, 3));
    assert_eq!(delta_truncated(&third, &s1, 5, Tier::Characteristic, 0).unwrap().lower, rat(1, 3));
}

#[test]
fn delta_two_of_t() {
    let half = t(rat(1, 2));
    let est = delta_truncated(&half, &FamilyExpr::schreier(2u64), 8, Tier::Characteristic, 0).unwrap();
    assert_eq!(est.lower, rat(1, 4));
    assert!(est.upper <= rat(1, 2));
    assert!(est.lower <= est.upper);
    assert_eq!(ratio(&est.witness, &half).unwrap(), est.upper);
}

#[test]
fn lower_bounds_from_levels() {
    let half = t(rat(1, 2));
    let (l, _) = certified_lower(&half, &FamilyExpr::schreier(0u64), 6);
    assert_eq!(l, rat(1, 1));
    let (l, _) = certified_lower(&half, &FamilyExpr::schreier(3u64), 10);
    assert_eq!(l, rat(1, 8));
    let mixed = SpaceSpec::mixed(rat(3, 4), rat(1, 2)).unwrap();
    let (l, _) = certified_lower(&mixed, &FamilyExpr::schreier(2u64), 8);
    assert_eq!(l, rat(3, 16));
}

#[test]
fn truncation_is_monotone_and_tiers_nest() {
    let half = t(rat(1, 2));
    let s2 = FamilyExpr::schreier(2u64);
    let mut last = rat(1, 1);
    for n in 1..=7 {
        let est = delta_truncated(&half, &s2, n, Tier::Characteristic, 0).unwrap();
        assert!(est.upper <= last);
        last = est.upper;
    }
    let s1 = FamilyExpr::schreier(1u64);
    let third = t(rat(1, 3));
    let c = delta_truncated(&third, &s1, 6, Tier::Characteristic, 0).unwrap();
    let g = delta_truncated(&third, &s1, 6, Tier::Grid(2), 0).unwrap();
    let l = delta_truncated(&third, &s1, 6, Tier::Local, 7).unwrap();
    assert!(g.upper <= c.upper && l.upper <= c.upper);
    assert!(!l.exhaustive);
    for est in [c, g, l] {
        assert!(est.lower <= est.upper);
        assert_eq!(ratio(&est.witness, &third).unwrap(), est.upper);
    }
}

#[test]
fn thm52_first_level() {
    let w = thm52_upper_witness(1, &rat(1, 4)).unwrap();
    assert_eq!(w.weights.support(), FiniteSubset::interval(6, 10));
    assert!(w.within_bounds());
    assert_eq!(w.bound, rat(1, 1));
    assert_eq!(w.delta_upper, w.norm);
    assert!(thm52_upper_witness(1, &rat(1, 2)).is_err());
}

#[test]
fn submultiplicativity() {
    let half = t(rat(1, 2));
    let s0 = FamilyExpr::schreier(0u64);
    let s1 = FamilyExpr::schreier(1u64);
    let r = submultiplicativity_check(&half, &s1, &s1, 6, Tier::Characteristic).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.rhs, rat(1, 4));
    let r = submultiplicativity_check(&half, &s1, &s0, 6, Tier::Characteristic).unwrap();
    assert!(r.passed());
    assert_eq!(r.lhs, r.rhs);
    let a = delta_truncated(&half, &s1, 6, Tier::Characteristic, 0).unwrap();
    let b = delta_truncated(&half, &s1, 5, Tier::Characteristic, 0).unwrap();
    let ab = delta_truncated(&half, &FamilyExpr::compose(s1.clone(), s1), 6, Tier::Characteristic, 0).unwrap();
    let r = submultiplicativity_compare(&ab, &a, &b);
    assert!(!r.valid && !r.passed());
}

#[test]
fn block_monotonicity() {
    let half = t(rat(1, 2));
    let s1 = FamilyExpr::schreier(1u64);
    let id: Vec<SparseVector> = (1..=6).map(e).collect();
    let r = block_monotonicity_check(&half, &s1, 6, id, Tier::Characteristic).unwrap();
    assert!(r.passed());
    assert_eq!(r.unit, r.block);
    let shifted: Vec<SparseVector> = (1..=4).map(|i| e(i + 3)).collect();
    let r = block_monotonicity_check(&half, &s1, 7, shifted, Tier::Characteristic).unwrap();
    assert!(r.passed());
    let single = block_monotonicity_check(&half, &s1, 6, vec![chi(2, 5)], Tier::Characteristic).unwrap();
    assert_eq!(single.block, rat(1, 1));
    assert!(single.passed());
    let weighted = vec![e(2).scale(&rat(2, 1)), e(4)];
    assert!(!block_monotonicity_check(&half, &s1, 6, weighted, Tier::Characteristic).unwrap().comparable);
    assert!(block_monotonicity_check(&half, &s1, 4, vec![e(5)], Tier::Characteristic).is_err());
}
