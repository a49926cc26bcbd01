mod common;

use common::invariants::{
    certificate_soundness, family_forms, sandwich, spreading_domination, unconditionality,
};

const CASES: u32 = 10_000;

#[test]
fn sign_changes_and_projections() {
    unconditionality(CASES, 1).unwrap();
}

#[test]
fn spreads_dominate() {
    spreading_domination(CASES, 2).unwrap();
}

#[test]
fn norm_between_sup_and_l1() {
    sandwich(CASES, 3).unwrap();
}

#[test]
fn certificates_are_sound() {
    certificate_soundness(CASES, 4).unwrap();
}

#[test]
fn family_expressions_are_regular() {
    family_forms(CASES, 5).unwrap();
}
