//! Subsequences along which one Schreier-type family embeds into another.
//!
//! The existence proofs diagonalize over nested subsequences with free
//! choices. Here one realization is fixed by searching affine subsequences
//! `n_i = start + step·(i-1)` in order of `(step, start)` and accepting the
//! first that survives validation: every member of the source family inside a
//! small universe, plus seeded random members.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::cursor::{advance, open};
use crate::families::ops::{enumerate_members, member};
use crate::families::{FamilyExpr, FiniteSubset, Subsequence};
use crate::ordinals::Ordinal;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingKind {
    /// `S_α[S_β](N) ⊆ S_{β+α}`.
    ComposeIntoSum,
    /// `S_{β+α}(M) ⊆ S_α[S_β]`.
    SumIntoCompose,
    /// `[S_α]^n(N) ⊆ S_{α·n}`.
    PowerIntoProduct,
    /// `S_{α·n}(M) ⊆ [S_α]^n`.
    ProductIntoPower,
}

impl FromStr for EmbeddingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.replace('-', "_").as_str() {
            "compose_into_sum" => EmbeddingKind::ComposeIntoSum,
            "sum_into_compose" => EmbeddingKind::SumIntoCompose,
            "power_into_product" => EmbeddingKind::PowerIntoProduct,
            "product_into_power" => EmbeddingKind::ProductIntoPower,
            _ => return Err(Error::Parse { pos: 0, msg: format!("unknown embedding kind {s:?}") }),
        })
    }
}

impl fmt::Display for EmbeddingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EmbeddingKind::ComposeIntoSum => "compose_into_sum",
            EmbeddingKind::SumIntoCompose => "sum_into_compose",
            EmbeddingKind::PowerIntoProduct => "power_into_product",
            EmbeddingKind::ProductIntoPower => "product_into_power",
        })
    }
}

/// Source family (before spreading) and target family. `second` is `β` for
/// the sum kinds and the natural `n` for the product kinds.
pub fn embedding_families(
    kind: EmbeddingKind,
    alpha: &Ordinal,
    second: &Ordinal,
) -> Result<(FamilyExpr, FamilyExpr)> {
    let omega_omega = Ordinal::omega_pow(Ordinal::omega());
    if *alpha >= omega_omega || *second >= omega_omega {
        return Err(Error::Ceiling(format!(
            "embedding search supports ordinals below w^w, got {alpha} and {second}"
        )));
    }
    let sa = FamilyExpr::Schreier(alpha.clone());
    Ok(match kind {
        EmbeddingKind::ComposeIntoSum | EmbeddingKind::SumIntoCompose => {
            let compose = FamilyExpr::compose(sa, FamilyExpr::Schreier(second.clone()));
            let sum = FamilyExpr::Schreier(second.add(alpha));
            if kind == EmbeddingKind::ComposeIntoSum {
                (compose, sum)
            } else {
                (sum, compose)
            }
        }
        EmbeddingKind::PowerIntoProduct | EmbeddingKind::ProductIntoPower => {
            let n = second
                .as_nat()
                .filter(|&n| n >= 1 && n <= u32::MAX as u64)
                .ok_or_else(|| Error::Domain(format!("power needs a positive integer, got {second}")))?;
            let power = FamilyExpr::power(sa, n as u32)?;
            let product = FamilyExpr::Schreier(alpha.mul_nat(n));
            if kind == EmbeddingKind::PowerIntoProduct {
                (power, product)
            } else {
                (product, power)
            }
        }
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EmbeddingReport {
    /// Source members inside the exhaustive universe.
    pub exhaustive: usize,
    /// Random source members.
    pub sampled: usize,
    /// A source member `G` whose image `N(G)` left the target family.
    pub counterexample: Option<FiniteSubset>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Universe for the exhaustive part of validation.
const EXHAUSTIVE_UNIVERSE: u64 = 11;
/// Random members drawn on top of the exhaustive ones.
pub const DEFAULT_SAMPLES: usize = 1000;

/// Checks `source(N) ⊆ target` on every source member inside a small
/// universe and on `samples` seeded random members.
pub fn validate_embedding(
    kind: EmbeddingKind,
    alpha: &Ordinal,
    second: &Ordinal,
    n: &Subsequence,
    samples: usize,
    seed: u64,
) -> Result<EmbeddingReport> {
    let (source, target) = embedding_families(kind, alpha, second)?;
    let mut report = EmbeddingReport { exhaustive: 0, sampled: 0, counterexample: None };
    for g in enumerate_members(&source, EXHAUSTIVE_UNIVERSE) {
        report.exhaustive += 1;
        if !member(&n.image(&g), &target) {
            report.counterexample = Some(g);
            return Ok(report);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let g = random_member(&source, &mut rng, 24);
        report.sampled += 1;
        if !member(&n.image(&g), &target) {
            report.counterexample = Some(g);
            break;
        }
    }
    Ok(report)
}

/// A random member of a hereditary family: a random minimum in
/// `1..=max_start`, then elements added with small random gaps until a coin
/// stops the walk or the family rejects several tries in a row. Falls back
/// to the empty set when no small minimum is accepted. Dense walks
/// (gap one) are favoured so that near-maximal sets show up often.
pub(crate) fn random_member(fam: &FamilyExpr, rng: &mut impl Rng, max_start: u64) -> FiniteSubset {
    let dense = rng.gen_bool(0.5);
    let stop = if dense { 0.02 } else { 0.1 };
    for _ in 0..1000 {
        let x = rng.gen_range(1..=max_start);
        let Some(mut c) = open(fam, x) else { continue };
        let mut v = vec![x];
        let mut misses = 0;
        while misses < 4 && !rng.gen_bool(stop) {
            let gap = if dense { 1 } else { rng.gen_range(1..=4) };
            let y = v.last().unwrap() + gap + misses;
            match advance(fam, &c, y) {
                Some(n) => {
                    c = n;
                    v.push(y);
                    misses = 0;
                }
                None => misses += 1,
            }
            if v.len() > 4096 {
                break;
            }
        }
        return FiniteSubset::from_sorted(v);
    }
    FiniteSubset::empty()
}

/// Search bounds for the affine candidates.
const MAX_STEP: u64 = 4;
const MAX_START: u64 = 64;

/// The first affine subsequence, in `(step, start)` order, along which the
/// source family embeds into the target on every validated member.
pub fn build_embedding_subsequence(
    kind: EmbeddingKind,
    alpha: &Ordinal,
    second: &Ordinal,
) -> Result<Subsequence> {
    embedding_families(kind, alpha, second)?;
    for step in 1..=MAX_STEP {
        for start in 1..=MAX_START {
            let n = Subsequence::affine(start, step)?;
            let report = validate_embedding(kind, alpha, second, &n, DEFAULT_SAMPLES, start ^ (step << 32))?;
            if report.passed() {
                return Ok(n);
            }
        }
    }
    Err(Error::SearchExhausted(format!(
        "no affine subsequence with step <= {MAX_STEP} and start <= {MAX_START} embeds {kind} for ({alpha}, {second})"
    )))
}
