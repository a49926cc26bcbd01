//! Convex weightings on Schreier sets whose lower-order subsets carry
//! little mass, and normalized block averages built from them.

mod construct;
mod normalized;
mod verify;

#[cfg(test)]
mod tests;

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::families::FiniteSubset;
use crate::rational::Rational;
use crate::spaces::SparseVector;

pub use construct::{average, average_with_budget, inclusion_threshold, DEFAULT_SUPPORT_BUDGET};
pub use normalized::{admissible_lower_bound, normalized_average, NormalizedAverage};
pub use verify::verify_average;

/// Positive weights summing to 1 on a nonempty finite set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedSet {
    points: Vec<(u64, Rational)>,
}

impl WeightedSet {
    pub fn new(mut points: Vec<(u64, Rational)>) -> Result<Self> {
        points.sort_by_key(|p| p.0);
        if points.is_empty() {
            return Err(Error::Domain("weighted set needs a nonempty support".into()));
        }
        if points.iter().any(|p| p.0 == 0) {
            return Err(Error::Domain("coordinates start at 1".into()));
        }
        if points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Domain("repeated coordinate in weighted set".into()));
        }
        if let Some((i, w)) = points.iter().find(|p| !p.1.is_positive()) {
            return Err(Error::Domain(format!("weight {w} at {i} is not positive")));
        }
        let total: Rational = points.iter().map(|p| &p.1).sum();
        if !total.is_one() {
            return Err(Error::Domain(format!("weights sum to {total}, not 1")));
        }
        Ok(WeightedSet { points })
    }

    /// Caller guarantees sortedness, positivity and unit sum.
    pub(crate) fn from_parts(points: Vec<(u64, Rational)>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0].0 < w[1].0));
        WeightedSet { points }
    }

    pub fn points(&self) -> &[(u64, Rational)] {
        &self.points
    }

    pub fn support(&self) -> FiniteSubset {
        FiniteSubset::from_sorted(self.points.iter().map(|p| p.0).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn weight(&self, i: u64) -> Rational {
        match self.points.binary_search_by_key(&i, |p| p.0) {
            Ok(k) => self.points[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn max_weight(&self) -> Rational {
        self.points.iter().map(|p| &p.1).max().cloned().unwrap_or_default()
    }

    /// `Σ a_j e_j`.
    pub fn to_vector(&self) -> SparseVector {
        SparseVector::new(self.points.clone()).expect("weighted sets are valid vectors")
    }

    pub fn from_vector(x: &SparseVector) -> Result<Self> {
        WeightedSet::new(x.entries().to_vec())
    }
}

/// Uniform weights `1/k` on `k` positions.
pub fn l1k_average(positions: &FiniteSubset) -> Result<WeightedSet> {
    if positions.is_empty() {
        return Err(Error::Domain("an average needs at least one position".into()));
    }
    let w = Rational::new(1.into(), (positions.len() as u64).into());
    Ok(WeightedSet::from_parts(positions.elements().iter().map(|&i| (i, w.clone())).collect()))
}

impl fmt::Display for WeightedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_vector().fmt(f)
    }
}

/// Serialized as `[[coord, "p/q"], ...]`.
impl Serialize for WeightedSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vector().serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = SparseVector::deserialize(d)?;
        WeightedSet::from_vector(&v).map_err(D::Error::custom)
    }
}
