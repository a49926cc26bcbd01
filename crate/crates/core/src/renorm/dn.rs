use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{eval_renorm, RenormKind, RenormSpec};
use crate::constants::certified_lower;
use crate::error::{Error, Result};
use crate::families::{member, random_member, FamilyExpr, FiniteSubset};
use crate::ordinals::Ordinal;
use crate::rational::{pow, rat, Rational};
use crate::spaces::{SpaceSpec, SparseVector};

/// Longest sampled block and most blocks per sample.
const MAX_BLOCK: u64 = 3;
const MAX_BLOCKS: usize = 4;

#[derive(Clone, Debug, Serialize)]
pub struct DnReport {
    pub norm: String,
    #[serde(with = "crate::rational::serde_str")]
    pub certified: Rational,
    pub certified_reason: String,
    pub universe: u64,
    pub samples: usize,
    /// Block families with `|||Σ x_s||| < a·Σ |||x_s|||`.
    pub failures: Vec<Vec<SparseVector>>,
    /// Least `|||Σ x_s||| / Σ |||x_s|||` seen.
    #[serde(with = "crate::rational::serde_str")]
    pub least_ratio: Rational,
}

impl DnReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn sample(alpha: &Ordinal, rng: &mut ChaCha8Rng) -> Vec<SparseVector> {
    let fam = FamilyExpr::Schreier(alpha.clone());
    let minima: Vec<u64> = loop {
        let f = random_member(&fam, rng, 3);
        if !f.is_empty() {
            break f.elements().iter().take(MAX_BLOCKS).copied().collect();
        }
    };
    let mut blocks = Vec::new();
    let mut next = 1;
    for m in minima {
        // Pushing minima right keeps the family a member since S_α spreads.
        let start = m.max(next);
        let len = rng.gen_range(1..=MAX_BLOCK);
        let mut entries: Vec<(u64, Rational)> = Vec::new();
        for i in start..start + len {
            if i == start || rng.gen_bool(0.7) {
                let sign = if rng.gen_bool(0.8) { 1 } else { -1 };
                entries.push((i, rat(sign * rng.gen_range(1..=4i64), rng.gen_range(1..=3))));
            }
        }
        blocks.push(SparseVector::new(entries).expect("distinct coordinates"));
        next = start + len;
    }
    blocks
}

/// Samples `S_α`-admissible block families and checks that the average of
/// the first `n` level norms with weight `a` keeps `a` as a lower constant.
/// `a^n` must not exceed the certified constant of `[S_α]^n` on the sampled
/// universe, which is what the estimate rests on.
pub fn dn_property_check(
    base: &SpaceSpec,
    alpha: &Ordinal,
    n: u32,
    a: &Rational,
    samples: usize,
    seed: u64,
) -> Result<DnReport> {
    let kind = RenormKind::Mixture { n, alpha: alpha.clone(), a: a.clone() };
    let spec = RenormSpec::new(kind.clone(), base.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fam = FamilyExpr::Schreier(alpha.clone());
    let families: Vec<Vec<SparseVector>> = (0..samples).map(|_| sample(alpha, &mut rng)).collect();
    for f in &families {
        let minima: Vec<u64> = f.iter().filter_map(|b| b.support().min()).collect();
        debug_assert!(member(&FiniteSubset::from_sorted(minima), &fam));
    }
    let universe = families.iter().flatten().filter_map(|b| b.support().max()).max().unwrap_or(1);
    let power = FamilyExpr::power(fam, n)?;
    let (certified, certified_reason) = certified_lower(base, &power, universe);
    let need = pow(a, n);
    if need > certified {
        return Err(Error::Precondition(format!(
            "a^n = {need} exceeds the certified constant {certified} of {power} on {{1..{universe}}}"
        )));
    }
    let mut failures = Vec::new();
    let mut least: Option<Rational> = None;
    for f in families {
        let sum = f.iter().fold(SparseVector::default(), |acc, b| acc.add(b));
        let lhs = eval_renorm(&sum, &spec)?;
        let mut parts = Rational::from_integer(0.into());
        for b in &f {
            parts += eval_renorm(b, &spec)?;
        }
        let r = &lhs / &parts;
        if least.as_ref().is_none_or(|l| r < *l) {
            least = Some(r);
        }
        if lhs < a * parts {
            failures.push(f);
        }
    }
    Ok(DnReport {
        norm: kind.to_string(),
        certified,
        certified_reason,
        universe,
        samples,
        failures,
        least_ratio: least.unwrap_or_else(|| rat(1, 1)),
    })
}
