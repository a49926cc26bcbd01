use super::*;
use crate::families::FiniteSubset;
use crate::rational::{int, rat};

fn vec_of(pairs: &[(u64, i64)]) -> SparseVector {
    SparseVector::new(pairs.iter().map(|&(i, v)| (i, int(v))).collect()).unwrap()
}

fn chi(v: &[u64]) -> SparseVector {
    SparseVector::indicator(&FiniteSubset::from_increasing(v.to_vec()).unwrap())
}

fn t_half() -> SpaceSpec {
    SpaceSpec::tsirelson(1, rat(1, 2)).unwrap()
}

fn mixed() -> SpaceSpec {
    SpaceSpec::mixed(rat(3, 4), rat(1, 2)).unwrap()
}

#[test]
fn small_norms() {
    assert_eq!(norm(&SparseVector::unit(5), &t_half()), int(1));
    assert_eq!(norm(&chi(&[2, 3]), &t_half()), int(1));
    assert_eq!(norm(&chi(&[3, 4, 5]), &t_half()), rat(3, 2));
    assert_eq!(norm(&chi(&[2, 3]), &mixed()), int(1));
    assert_eq!(norm(&SparseVector::default(), &t_half()), int(0));
    assert_eq!(norm_f64(&chi(&[3, 4, 5]), &t_half()), 1.5);
}

#[test]
fn certificates_round_trip() {
    let c = norm_certificate(&chi(&[2, 3]), &t_half()).unwrap();
    assert_eq!(c.body, CertBody::Leaf { coord: 2, negative: false });

    let x = chi(&[3, 4, 5]);
    let c = norm_certificate(&x, &t_half()).unwrap();
    match &c.body {
        CertBody::Split { level, children, .. } => {
            assert_eq!(*level, LevelRef::Listed(0));
            assert_eq!(children.len(), 3);
            assert!(children.iter().all(|c| matches!(c.body, CertBody::Leaf { .. })));
        }
        b => panic!("expected a split, got {b:?}"),
    }
    assert_eq!(check_certificate(&x, &t_half(), &c).unwrap(), rat(3, 2));
    assert_eq!(dual_functional(&c), x.scale(&rat(1, 2)));

    let leaf = norm_certificate(&SparseVector::unit(4), &t_half()).unwrap();
    assert_eq!(leaf.depth(), 0);
    assert_eq!(dual_functional(&leaf), SparseVector::unit(4));
}

#[test]
fn certificate_rejections() {
    let x = chi(&[3, 4, 5]);
    let leaf = |lo, hi, coord| CertNode { lo, hi, body: CertBody::Leaf { coord, negative: false } };
    let split = |lo, hi, children| CertNode {
        lo,
        hi,
        body: CertBody::Split { level: LevelRef::Listed(0), theta: rat(1, 2), children },
    };
    let sub = split(3, 5, vec![leaf(3, 3, 3), leaf(4, 5, 4)]);
    assert_eq!(check_certificate(&x, &t_half(), &sub).unwrap(), int(1));
    let single = split(3, 5, vec![leaf(3, 5, 3)]);
    assert!(matches!(check_certificate(&x, &t_half(), &single), Err(crate::Error::Certificate { .. })));
    let gap = split(3, 5, vec![leaf(3, 3, 3), leaf(5, 5, 5)]);
    assert!(check_certificate(&x, &t_half(), &gap).is_err());
    // Minima {1,2} are not in S_1.
    let y = chi(&[1, 2]);
    let bad = split(1, 2, vec![leaf(1, 1, 1), leaf(2, 2, 2)]);
    assert!(check_certificate(&y, &t_half(), &bad).is_err());
}

#[test]
fn nested_certificate_weights() {
    // χ_{2..8}: two top pieces, the second split again, so the deepest
    // leaves carry weight 1/4.
    let x = chi(&(2..9).collect::<Vec<_>>());
    let c = norm_certificate(&x, &t_half()).unwrap();
    let v = check_certificate(&x, &t_half(), &c).unwrap();
    assert_eq!(v, norm(&x, &t_half()));
    assert_eq!(dual_functional(&c).dot(&x), v);
    assert_eq!(v, int(2));
    assert_eq!(c.depth(), 2);
    assert!(dual_functional(&c).entries().iter().any(|e| e.1 == rat(1, 4)));
}

#[test]
fn schreier_norms() {
    assert_eq!(schreier_norm(&vec_of(&[(2, 1), (3, -1)]), &Ordinal::nat(1)), int(1));
    assert_eq!(schreier_norm(&chi(&[3, 4, 5]), &Ordinal::nat(1)), int(3));
    assert_eq!(schreier_norm(&SparseVector::unit(1), &Ordinal::omega()), int(1));
    assert_eq!(max_abs_mass(&vec_of(&[(2, 1), (3, -1)]), &FamilyExpr::schreier(1)), int(2));
}

#[test]
fn spreads() {
    assert_eq!(spread_vector(&chi(&[2, 3]), &Subsequence::identity()), chi(&[2, 3]));
    assert_eq!(spread_vector(&chi(&[2, 3]), &Subsequence::affine(2, 1).unwrap()), chi(&[3, 4]));
    assert_eq!(spread_vector(&SparseVector::unit(1), &Subsequence::affine(2, 2).unwrap()), SparseVector::unit(2));
}

#[test]
fn space_parsing() {
    let a: SpaceSpec = "tsirelson:1:1/2".parse().unwrap();
    assert_eq!(a, t_half());
    let b: SpaceSpec = "mixed:3/4:1/2".parse().unwrap();
    assert_eq!(b, mixed());
    let c: SpaceSpec = r#"{"levels":[{"family":"S(2)","theta":"1/2"}]}"#.parse().unwrap();
    assert_eq!(c, SpaceSpec::tsirelson(2, rat(1, 2)).unwrap());
    let d: SpaceSpec = "S(1)@1/2|decay:3/4:1/2".parse().unwrap();
    assert_eq!(d.to_string().parse::<SpaceSpec>().unwrap(), d);
    assert!("S(1)@1".parse::<SpaceSpec>().is_err());
    assert!("mixed:2:1/2".parse::<SpaceSpec>().is_err());
    let json = serde_json::to_string(&d).unwrap();
    assert_eq!(serde_json::from_str::<SpaceSpec>(&json).unwrap(), d);
}

#[test]
fn decay_levels_are_capped() {
    let s = mixed();
    assert_eq!(s.active_levels(2), vec![LevelRef::Decay(1)]);
    assert_eq!(s.active_levels(6), vec![LevelRef::Decay(1), LevelRef::Decay(2)]);
    assert_eq!(s.active_levels(7).len(), 3);
}

