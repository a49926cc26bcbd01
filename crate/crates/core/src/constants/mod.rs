//! Truncated asymptotic ℓ1 constants: the best `δ` with
//! `‖Σ y_i‖ ≥ δ Σ ‖y_i‖` over admissible block families supported in
//! `{1..N}`, bracketed by a certified lower bound and a witnessed upper one.

mod checks;
mod search;

#[cfg(test)]
mod tests;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::families::{enumerate_members, member, FamilyExpr};
use crate::rational::Rational;
use crate::spaces::{norm, SpaceSpec, SparseVector};

pub use checks::{
    block_monotonicity_check, submultiplicativity_check, submultiplicativity_compare, thm52_upper_witness,
    MonotonicityReport, SubmultReport, Thm52Witness,
};
pub use search::{min_ratio, Atoms, SearchOutcome};

/// Which block families the upper bound searches over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Tier {
    /// Indicator vectors of successive sets.
    Characteristic,
    /// Coefficients in `{1..k}/k`.
    Grid(u32),
    /// The characteristic optimum refined by seeded coordinate descent.
    /// The result is still an exact ratio, but not a minimum over any class.
    Local,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tier::Characteristic => f.write_str("characteristic"),
            Tier::Grid(k) => write!(f, "grid:{k}"),
            Tier::Local => f.write_str("local"),
        }
    }
}

impl FromStr for Tier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { pos: 0, msg: format!("unknown tier '{s}' (characteristic, grid:k, local)") };
        match s.trim() {
            "characteristic" => Ok(Tier::Characteristic),
            "local" => Ok(Tier::Local),
            t => {
                let k = t.strip_prefix("grid:").ok_or_else(bad)?;
                match k.parse::<u32>() {
                    Ok(k) if k >= 1 => Ok(Tier::Grid(k)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

impl Serialize for Tier {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn display_str<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaEstimate {
    #[serde(serialize_with = "display_str")]
    pub family: FamilyExpr,
    #[serde(with = "crate::rational::serde_str")]
    pub lower: Rational,
    /// How `lower` was certified.
    pub lower_reason: String,
    #[serde(with = "crate::rational::serde_str")]
    pub upper: Rational,
    /// Successive blocks whose ratio is exactly `upper`.
    pub witness: Vec<SparseVector>,
    pub universe: u64,
    pub tier: Tier,
    /// Whether `upper` is the minimum over the whole tier.
    pub exhaustive: bool,
}

/// `‖Σ y_i‖ / Σ ‖y_i‖` for nonzero successive blocks.
pub fn ratio(blocks: &[SparseVector], space: &SpaceSpec) -> Result<Rational> {
    if blocks.is_empty() || blocks.iter().any(|b| b.is_empty()) {
        return Err(Error::Domain("ratio needs nonzero blocks".into()));
    }
    for w in blocks.windows(2) {
        if !w[0].support().precedes(&w[1].support()) {
            return Err(Error::NotSuccessive(format!("{} and {}", w[0], w[1])));
        }
    }
    let mut sum = SparseVector::default();
    let mut total = Rational::zero();
    for b in blocks {
        total += norm(b, space);
        sum = sum.add(b);
    }
    Ok(norm(&sum, space) / total)
}

/// Estimate of `δ_fam` for the unit vector basis, truncated to `{1..universe}`.
pub fn delta_truncated(
    space: &SpaceSpec,
    fam: &FamilyExpr,
    universe: u64,
    tier: Tier,
    seed: u64,
) -> Result<DeltaEstimate> {
    let (lower, lower_reason) = certified_lower(space, fam, universe);
    let atoms = Atoms::units(universe);
    let found = min_ratio(space, fam, &atoms, tier, seed)?;
    Ok(DeltaEstimate {
        family: fam.clone(),
        lower,
        lower_reason,
        upper: found.ratio,
        witness: found.witness,
        universe,
        tier,
        exhaustive: found.exhaustive,
    })
}

/// Deepest chain `L_1[L_2[…]]` of space levels tried by [`certified_lower`].
const MAX_CHAIN: usize = 4;

/// Largest product `θ_1⋯θ_r` such that every member of `fam` inside the
/// universe lies in `L_1[L_2[…[L_r]]]` for space levels `L_j`. The implicit
/// equation gives `δ_{L} ≥ θ_L` and composition multiplies the bounds. A
/// family of singletons has constant 1; if nothing applies the bound is 0.
pub fn certified_lower(space: &SpaceSpec, fam: &FamilyExpr, universe: u64) -> (Rational, String) {
    let members: Vec<_> = enumerate_members(fam, universe).into_iter().filter(|s| s.len() >= 2).collect();
    if members.is_empty() {
        return (Rational::one(), "every admissible family is a single block".into());
    }
    let levels: Vec<(FamilyExpr, Rational)> = space
        .active_levels(universe as usize)
        .into_iter()
        .map(|l| (space.family(l), space.theta(l)))
        .collect();
    let mut best = (Rational::zero(), "no level of the space contains the family".to_string());
    let mut chain: Vec<usize> = Vec::new();
    extend_chain(&levels, &members, &mut chain, Rational::one(), &mut best);
    best
}

fn extend_chain(
    levels: &[(FamilyExpr, Rational)],
    members: &[crate::families::FiniteSubset],
    chain: &mut Vec<usize>,
    product: Rational,
    best: &mut (Rational, String),
) {
    if chain.len() == MAX_CHAIN {
        return;
    }
    for (i, (_, theta)) in levels.iter().enumerate() {
        let p = &product * theta;
        if p <= best.0 {
            continue;
        }
        chain.push(i);
        let composed = chain
            .iter()
            .rev()
            .map(|&j| levels[j].0.clone())
            .reduce(|inner, outer| FamilyExpr::compose(outer, inner))
            .expect("chain is nonempty");
        if members.iter().all(|s| member(s, &composed)) {
            *best = (p.clone(), format!("contained in {composed} on the universe"));
        } else {
            extend_chain(levels, members, chain, p, best);
        }
        chain.pop();
    }
}
