use super::*;

fn set(v: &[u64]) -> FiniteSubset {
    FiniteSubset::from_increasing(v.to_vec()).unwrap()
}

fn fam(s: &str) -> FamilyExpr {
    s.parse().unwrap()
}

fn s(n: u64) -> FamilyExpr {
    FamilyExpr::schreier(n)
}

#[test]
fn schreier_membership() {
    assert!(member(&set(&[3, 4, 5]), &s(1)));
    assert!(!member(&set(&[2, 3, 4]), &s(1)));
    assert!(member(&set(&[]), &fam("S(w^2)")));
    assert!(member(&set(&[2, 3, 4, 5, 6, 7]), &s(2)));
    assert!(!member(&set(&[2, 3, 4, 5, 6, 7, 8]), &s(2)));
    assert!(member(&set(&[7]), &s(0)));
    assert!(!member(&set(&[7, 8]), &s(0)));
    // S_ω: {2,…,7} is in S_2 and 2 ≤ min.
    assert!(member(&set(&[2, 3, 4, 5, 6, 7]), &fam("S(w)")));
    assert!(!member(&set(&[1, 2]), &fam("S(w)")));
}

#[test]
fn decomposition_matches_greedy_blocks() {
    let w = decompose(&set(&[2, 3, 4, 5, 6, 7]), &s(2)).unwrap();
    match &w {
        Witness::Blocks { blocks, .. } => {
            assert_eq!(blocks, &vec![set(&[2, 3]), set(&[4, 5, 6, 7])]);
        }
        other => panic!("unexpected witness {other:?}"),
    }
    assert!(check_witness(&set(&[2, 3, 4, 5, 6, 7]), &s(2), &w));
    assert!(!check_witness(&set(&[2, 3, 4, 5, 6]), &s(2), &w));
    assert_eq!(decompose(&set(&[2, 3, 4]), &s(1)), None);
    assert_eq!(
        decompose(&set(&[9]), &s(0)),
        Some(Witness::Atom { set: set(&[9]) })
    );
}

#[test]
fn admissibility() {
    let a = |v: &[&[u64]]| v.iter().map(|x| set(x)).collect::<Vec<_>>();
    assert!(is_admissible(&a(&[&[2, 3], &[4, 5]]), &s(1)).unwrap());
    assert!(!is_admissible(&a(&[&[1], &[2]]), &s(1)).unwrap());
    assert!(is_admissible(&a(&[&[5], &[7], &[9]]), &s(1)).unwrap());
    assert!(matches!(
        is_admissible(&a(&[&[2, 5], &[4]]), &s(1)),
        Err(Error::NotSuccessive(_))
    ));
}

#[test]
fn maximal_sets() {
    assert_eq!(maximal_set(3, &Ordinal::nat(1)), set(&[3, 4, 5]));
    assert_eq!(maximal_set(2, &Ordinal::nat(2)), set(&[2, 3, 4, 5, 6, 7]));
    assert_eq!(maximal_set(1, &Ordinal::omega()), set(&[1]));
    // Sizes explode quickly past the first few minima.
    for (a, top) in [("1", 6), ("2", 5), ("3", 2), ("w", 2), ("w+1", 1), ("w*2", 1)] {
        let a: Ordinal = a.parse().unwrap();
        for m in 1..=top {
            let f = maximal_set(m, &a);
            let fa = FamilyExpr::Schreier(a.clone());
            assert!(member(&f, &fa), "{f} in S({a})");
            assert!(!member(&f.with_appended(f.max().unwrap() + 1), &fa));
        }
    }
}

#[test]
fn derivatives() {
    let d = derivative(&s(1), 15);
    assert!(member(&set(&[4, 5, 6]), &d));
    assert!(!member(&set(&[3, 4, 5]), &d));
    assert!(member(&set(&[]), &d));
    let singles = fam("explicit{universe=10; {1},{2},{3},{4},{5},{6},{7},{8},{9},{10}}");
    let d1 = iterated_derivative(&singles, 1, 10);
    assert_eq!(enumerate_members(&d1, 10), vec![set(&[])]);
    let d0 = iterated_derivative(&s(2), 0, 8);
    assert!(equal_on_universe(&d0, &s(2), 8));
}

#[test]
fn iterated_derivative_of_s1_closed_form() {
    for k in 0..=3u64 {
        let d = iterated_derivative(&s(1), k, 14);
        for f in enumerate_members(&s(1), 14) {
            let expected = f.min().is_none_or(|m| f.len() as u64 + k <= m);
            assert_eq!(member(&f, &d), expected, "k={k} F={f}");
        }
    }
}

#[test]
fn universe_equality() {
    assert!(equal_on_universe(&fam("S(2)[S(1)]"), &s(3), 12));
    assert!(!equal_on_universe(&s(1), &s(2), 6));
    assert_eq!(first_difference(&s(1), &s(2), 6), Some(set(&[2, 3, 4])));
    assert!(equal_on_universe(&fam("S(w)"), &fam("S(w)"), 9));
    assert!(equal_on_universe(&fam("S(1)^3"), &s(3), 12));
}

#[test]
fn regularity_reports() {
    let r = regularity_check(&[set(&[]), set(&[1]), set(&[2]), set(&[1, 2])], 2);
    assert!(r.hereditary && r.spreading);
    let r = regularity_check(&[set(&[1, 2])], 2);
    assert_eq!(r.hereditary_witness, Some(set(&[1])));
    let r = regularity_check(&[set(&[1])], 3);
    assert_eq!(r.spreading_witness, Some(set(&[2])));
    assert!(ExplicitFamily::new(vec![set(&[1])], 3).is_err());
}

#[test]
fn concat_and_spread() {
    // Two S_1 blocks then one singleton.
    let c = fam("concat(S(1)^2, S(0))");
    assert!(member(&set(&[2, 3, 4, 5, 9]), &c));
    assert!(member(&set(&[2, 3, 4, 5, 9, 10]), &c));
    assert!(!member(&set(&[2, 3, 4, 5, 6, 7, 8, 9]), &c));
    assert!(member(&set(&[3, 4, 5, 6]), &c));
    let w = decompose(&set(&[2, 3, 4, 5, 9]), &c).unwrap();
    assert!(check_witness(&set(&[2, 3, 4, 5, 9]), &c, &w));

    // N = (2,4,6,…): {4,6} is the image of {2,3} ∈ S_1, {2,4} of {1,2} ∉ S_1.
    let sp = fam("spread(S(1); step=2)");
    assert!(member(&set(&[4, 6]), &sp));
    assert!(!member(&set(&[2, 4]), &sp));
    assert!(!member(&set(&[3]), &sp));
    let w = decompose(&set(&[4, 6]), &sp).unwrap();
    assert!(check_witness(&set(&[4, 6]), &sp, &w));
}

#[test]
fn non_spreading_outer_keeps_both_splits() {
    // Greedy would take blocks {1,3},{4} whose minima leave the outer
    // family's universe; {1},{3,4} works.
    let g = FamilyExpr::compose(
        fam("explicit{universe=3; {1},{2},{3},{1,2},{1,3},{2,3}}"),
        fam("concat(S(0)^2)"),
    );
    assert!(member(&set(&[1, 3, 4]), &g));
    assert!(member(&set(&[1, 2, 3, 4]), &g));
    assert!(!member(&set(&[1, 2, 4, 5, 6]), &g));
    let w = decompose(&set(&[1, 3, 4]), &g).unwrap();
    assert!(check_witness(&set(&[1, 3, 4]), &g, &w));
}

#[test]
fn parser_round_trips() {
    for src in [
        "S(0)",
        "S(w^2+1)",
        "S(2)[S(1)]",
        "S(1)^3",
        "S(1)^2[S(w)]",
        "concat(S(2)^3, (S(1)^2), S(w))",
        "spread(S(1); prefix=1,3; start=7; step=2)",
        "explicit{universe=3; {1}; {2}; {3}}",
    ] {
        let e = fam(src);
        let back: FamilyExpr = e.to_string().parse().unwrap();
        assert_eq!(back, e, "{src} printed as {e}");
    }
    assert!(matches!("S(".parse::<FamilyExpr>(), Err(Error::Parse { .. })));
    assert!(matches!("S(w^w^w^w)".parse::<FamilyExpr>(), Err(Error::Ceiling(_))));
    assert!(matches!(
        "explicit{{1,2}}".parse::<FamilyExpr>(),
        Err(Error::Parse { .. })
    ));
}

#[test]
fn subsequences() {
    let n = Subsequence::new(vec![1, 3], 7, 2).unwrap();
    assert_eq!((1..=5).map(|i| n.nth(i)).collect::<Vec<_>>(), vec![1, 3, 7, 9, 11]);
    assert_eq!(n.index_of(9), Some(4));
    assert_eq!(n.index_of(5), None);
    assert!(Subsequence::new(vec![1, 3], 3, 2).is_err());
}

#[test]
fn embeddings() {
    let one = Ordinal::nat(1);
    let two = Ordinal::nat(2);
    let w = Ordinal::omega();
    let n = build_embedding_subsequence(EmbeddingKind::ComposeIntoSum, &two, &one).unwrap();
    assert!(n.is_identity());
    let n = build_embedding_subsequence(EmbeddingKind::PowerIntoProduct, &w, &two).unwrap();
    let r = validate_embedding(EmbeddingKind::PowerIntoProduct, &w, &two, &n, 1000, 7).unwrap();
    assert!(r.passed() && r.sampled >= 1000);
    let m = build_embedding_subsequence(EmbeddingKind::SumIntoCompose, &w, &one).unwrap();
    let r = validate_embedding(EmbeddingKind::SumIntoCompose, &w, &one, &m, 1000, 8).unwrap();
    assert!(r.passed());
    assert!(matches!(
        build_embedding_subsequence(EmbeddingKind::ComposeIntoSum, &"w^w".parse().unwrap(), &one),
        Err(Error::Ceiling(_))
    ));
}
