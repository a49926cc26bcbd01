#![no_main]

use libfuzzer_sys::fuzz_target;
use sbl::families::{member, FamilyExpr, FiniteSubset};

fuzz_target!(|text: &str| {
    let Ok(fam) = text.parse::<FamilyExpr>() else { return };
    let back: FamilyExpr = fam.to_string().parse().expect("display parses");
    assert_eq!(back, fam);
    // Membership must not panic; keep the probe small.
    for set in [vec![], vec![1], vec![2, 3], vec![3, 5, 8], vec![4, 5, 6, 7]] {
        member(&FiniteSubset::from_increasing(set).unwrap(), &fam);
    }
});
