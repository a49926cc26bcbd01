use num_traits::{One, Zero};
use serde::Serialize;

use super::{average, WeightedSet};
use crate::error::{Error, Result};
use crate::families::{FamilyExpr, Subsequence};
use crate::ordinals::Ordinal;
use crate::rational::{pow, Rational};
use crate::spaces::{norm, SpaceSpec, SparseVector};

/// A unit vector `Σ_{i∈F} a_i x_i / ‖Σ_{i∈F} a_i x_i‖` where the `a_i` form
/// an `(n, n−1, L_n·ε)`-average along the block minima.
#[derive(Clone, Debug, Serialize)]
pub struct NormalizedAverage {
    pub vector: SparseVector,
    /// Weights keyed by block minimum.
    pub weights: WeightedSet,
    /// Positions of the chosen blocks in the input list.
    pub blocks: Vec<usize>,
    #[serde(with = "crate::rational::serde_str")]
    pub raw_norm: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub lower_bound: Rational,
}

/// A constant `L_n` with `‖Σ a_i x_i‖ ≥ L_n Σ a_i` whenever the `x_i` are
/// normalized successive blocks whose minima form an `S_n` set.
///
/// Uses one kind of level at a time: a listed `S_m` level (m finite) nested
/// `⌈n/m⌉` deep, or the decay levels, where splitting `n` into `r` parts
/// gives `c^r·base^n`.
pub fn admissible_lower_bound(space: &SpaceSpec, n: u32) -> Result<Rational> {
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut best: Option<Rational> = None;
    let mut offer = |v: Rational| {
        if best.as_ref().is_none_or(|b| v > *b) {
            best = Some(v);
        }
    };
    for level in space.levels() {
        if let FamilyExpr::Schreier(a) = &level.family {
            if let Some(m) = a.as_nat().filter(|&m| m >= 1) {
                offer(pow(&level.theta, n.div_ceil(m as u32)));
            }
        }
    }
    if let Some(d) = space.decay() {
        let c = if d.c > Rational::one() { pow(&d.c, n) } else { d.c.clone() };
        offer(c * pow(&d.base, n));
    }
    best.ok_or_else(|| Error::Domain("the space has no finite Schreier level to bound admissible sums".into()))
}

/// An `(n, ε)`-normalized average of normalized successive blocks: every
/// `(n−1)`-admissible subfamily gets total coefficient `< ε`.
pub fn normalized_average(
    space: &SpaceSpec,
    inputs: &[SparseVector],
    n: u32,
    eps: &Rational,
) -> Result<NormalizedAverage> {
    let first = inputs.first().ok_or_else(|| Error::Precondition("no input blocks".into()))?;
    for pair in inputs.windows(2) {
        let (a, b) = (pair[0].support(), pair[1].support());
        if a.is_empty() || b.is_empty() || !a.precedes(&b) {
            return Err(Error::NotSuccessive("input blocks must be nonzero and successive".into()));
        }
    }
    for (i, x) in inputs.iter().enumerate() {
        let v = norm(x, space);
        if !v.is_one() {
            return Err(Error::Precondition(format!("input block {i} has norm {v}, not 1")));
        }
    }
    if n == 0 {
        let min = first.support().min().expect("checked nonzero");
        return Ok(NormalizedAverage {
            vector: first.clone(),
            weights: WeightedSet::from_parts(vec![(min, Rational::one())]),
            blocks: vec![0],
            raw_norm: Rational::one(),
            lower_bound: Rational::one(),
        });
    }
    let lower = admissible_lower_bound(space, n)?;
    let minima: Vec<u64> = inputs.iter().map(|x| x.support().min().expect("checked nonzero")).collect();
    let last = *minima.last().expect("inputs are nonempty");
    let m = Subsequence::new(minima.clone(), last + 1, 1)?;
    let ws = average(&Ordinal::nat(n as u64), &Ordinal::nat(n as u64 - 1), &(eps * &lower), &m)?;
    let needed = ws.support().max().expect("averages are nonempty");
    if needed > last {
        let count = m.index_of(needed).expect("averages lie on M");
        return Err(Error::Precondition(format!(
            "insufficient blocks: the average needs {count}, got {}",
            inputs.len()
        )));
    }
    let mut blocks = Vec::with_capacity(ws.len());
    let mut sum = SparseVector::default();
    for (i, a) in ws.points() {
        let k = minima.binary_search(i).expect("averages lie on the block minima");
        blocks.push(k);
        sum = sum.add(&inputs[k].scale(a));
    }
    let raw = norm(&sum, space);
    if raw.is_zero() {
        return Err(Error::Domain("the averaged vector vanished".into()));
    }
    Ok(NormalizedAverage {
        vector: sum.scale(&(Rational::one() / &raw)),
        weights: ws,
        blocks,
        raw_norm: raw,
        lower_bound: lower,
    })
}
