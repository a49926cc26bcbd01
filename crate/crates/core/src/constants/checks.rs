use serde::Serialize;

use super::{delta_truncated, min_ratio, ratio, Atoms, DeltaEstimate, Tier};
use crate::averages::{average, WeightedSet};
use crate::error::{Error, Result};
use crate::families::{member, FamilyExpr, FiniteSubset, Subsequence};
use crate::ordinals::Ordinal;
use crate::rational::{pow, rat, Rational};
use crate::spaces::{norm, SpaceSpec, SparseVector};

/// An `(n, n−1, ε)`-average of the unit vectors of `T = T_{1/2}` with its
/// exact norm. Its singleton blocks are `n`-admissible, so `‖x‖` bounds
/// `δ_n(T)` from above.
#[derive(Clone, Debug, Serialize)]
pub struct Thm52Witness {
    pub vector: SparseVector,
    pub weights: WeightedSet,
    #[serde(with = "crate::rational::serde_str")]
    pub norm: Rational,
    /// `2·2⁻ⁿ`.
    #[serde(with = "crate::rational::serde_str")]
    pub bound: Rational,
    /// `2⁻ⁿ`, the lower bound every such average meets.
    #[serde(with = "crate::rational::serde_str")]
    pub floor: Rational,
    /// Ratio of the singleton block family, recomputed through [`ratio`].
    #[serde(with = "crate::rational::serde_str")]
    pub delta_upper: Rational,
}

impl Thm52Witness {
    pub fn within_bounds(&self) -> bool {
        self.floor <= self.norm && self.norm <= self.bound
    }
}

pub fn thm52_upper_witness(n: u32, eps: &Rational) -> Result<Thm52Witness> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let floor = pow(&rat(1, 2), n);
    if *eps >= floor {
        return Err(Error::Precondition(format!("ε = {eps} is not below 2^-{n}")));
    }
    let ws = average(&Ordinal::nat(n as u64), &Ordinal::nat(n as u64 - 1), eps, &Subsequence::identity())?;
    let t = SpaceSpec::tsirelson(1u64, rat(1, 2))?;
    let vector = ws.to_vector();
    let singletons: Vec<SparseVector> =
        vector.entries().iter().map(|(i, a)| SparseVector::unit(*i).scale(a)).collect();
    Ok(Thm52Witness {
        norm: norm(&vector, &t),
        delta_upper: ratio(&singletons, &t)?,
        bound: &floor * rat(2, 1),
        floor,
        vector,
        weights: ws,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegerCheck {
    pub m: u64,
    pub n: u64,
    #[serde(with = "crate::rational::serde_str")]
    pub lhs: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub rhs: Rational,
    pub holds: bool,
}

/// `δ̂_{F[G]} ≥ δ̂_F·δ̂_G` on truncated values. The inequality is only
/// meaningful when all three come from the same universe and the same
/// exhaustive tier; otherwise `valid` is false and `holds` says nothing.
#[derive(Clone, Debug, Serialize)]
pub struct SubmultReport {
    pub valid: bool,
    pub reason: Option<String>,
    #[serde(with = "crate::rational::serde_str")]
    pub lhs: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub rhs: Rational,
    pub holds: bool,
    /// `δ̂_{m+n} ≥ δ̂_m·δ̂_n` when F and G are `S_m` and `S_n`.
    pub integer: Option<IntegerCheck>,
}

impl SubmultReport {
    pub fn passed(&self) -> bool {
        self.valid && self.holds && self.integer.as_ref().is_none_or(|c| c.holds)
    }
}

pub fn submultiplicativity_compare(fg: &DeltaEstimate, f: &DeltaEstimate, g: &DeltaEstimate) -> SubmultReport {
    let lhs = fg.upper.clone();
    let rhs = &f.upper * &g.upper;
    let reason = if fg.universe != f.universe || fg.universe != g.universe {
        Some(format!("universes differ: {}, {}, {}", fg.universe, f.universe, g.universe))
    } else if fg.tier != f.tier || fg.tier != g.tier {
        Some(format!("tiers differ: {}, {}, {}", fg.tier, f.tier, g.tier))
    } else if !(fg.exhaustive && f.exhaustive && g.exhaustive) {
        Some("a non-exhaustive tier gives no minimum to compare".into())
    } else {
        None
    };
    SubmultReport { valid: reason.is_none(), reason, holds: lhs >= rhs, lhs, rhs, integer: None }
}

pub fn submultiplicativity_check(
    space: &SpaceSpec,
    f: &FamilyExpr,
    g: &FamilyExpr,
    universe: u64,
    tier: Tier,
) -> Result<SubmultReport> {
    let ef = delta_truncated(space, f, universe, tier, 0)?;
    let eg = delta_truncated(space, g, universe, tier, 0)?;
    let efg = delta_truncated(space, &FamilyExpr::compose(f.clone(), g.clone()), universe, tier, 0)?;
    let mut report = submultiplicativity_compare(&efg, &ef, &eg);
    if let (FamilyExpr::Schreier(a), FamilyExpr::Schreier(b)) = (f, g) {
        if let (Some(m), Some(n)) = (a.as_nat(), b.as_nat()) {
            let sum = delta_truncated(space, &FamilyExpr::schreier(m + n), universe, tier, 0)?;
            let rhs = &ef.upper * &eg.upper;
            report.integer = Some(IntegerCheck { m, n, holds: sum.upper >= rhs, lhs: sum.upper, rhs });
        }
    }
    Ok(report)
}

/// Truncated `δ̂` for a block basis against the unit basis.
#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityReport {
    #[serde(with = "crate::rational::serde_str")]
    pub unit: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub block: Rational,
    pub block_witness: Vec<SparseVector>,
    /// Block-basis witnesses lie in the unit-basis class only when every
    /// basis vector is an indicator and the tier is exhaustive.
    pub comparable: bool,
    /// The witness's minima w.r.t. the unit basis form a member of the family.
    pub spreading_ok: bool,
    pub holds: bool,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.comparable && self.spreading_ok && self.holds
    }
}

pub fn block_monotonicity_check(
    space: &SpaceSpec,
    fam: &FamilyExpr,
    universe: u64,
    basis: Vec<SparseVector>,
    tier: Tier,
) -> Result<MonotonicityReport> {
    if let Some(b) = basis.iter().find(|b| b.support().max().is_some_and(|m| m > universe)) {
        return Err(Error::Precondition(format!("block {b} leaves the universe {{1..{universe}}}")));
    }
    let one = Rational::from_integer(1.into());
    let comparable = tier != Tier::Local && basis.iter().all(|b| b.entries().iter().all(|(_, v)| *v == one));
    let unit = min_ratio(space, fam, &Atoms::units(universe), tier, 0)?;
    let block = min_ratio(space, fam, &Atoms::blocks(basis)?, tier, 0)?;
    let minima: Vec<u64> = block.witness.iter().filter_map(|y| y.support().min()).collect();
    let spreading_ok = !minima.is_empty() && member(&FiniteSubset::from_sorted(minima), fam);
    Ok(MonotonicityReport {
        holds: block.ratio >= unit.ratio,
        unit: unit.ratio,
        block: block.ratio,
        block_witness: block.witness,
        comparable,
        spreading_ok,
    })
}
