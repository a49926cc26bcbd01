//! Regular families of finite subsets of the positive integers.
//!
//! A [`FamilyExpr`] is a small expression language over the Schreier classes:
//! composition `F[G]`, powers, concatenations of blocks, spreads along a
//! subsequence and explicitly listed families. Membership is decided online by
//! the automaton in [`cursor`], which everything else builds on.

mod cursor;
mod embed;
mod explicit;
mod ops;
mod parse;
#[cfg(test)]
mod tests;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ordinals::Ordinal;

pub(crate) use cursor::{advance, open, prune_budgets, Cursor};
pub(crate) use embed::random_member;
pub use embed::{
    build_embedding_subsequence, embedding_families, validate_embedding, EmbeddingKind,
    EmbeddingReport,
};
pub use explicit::ExplicitFamily;
pub use ops::{
    check_witness, decompose, derivative, enumerate_members, equal_on_universe, first_difference,
    is_admissible,
    iterated_derivative, maximal_set, member, regularity_check, RegularityReport, Witness,
};

/// A finite set of positive integers kept in increasing order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FiniteSubset(Vec<u64>);

impl FiniteSubset {
    pub fn new(mut elements: Vec<u64>) -> Result<Self> {
        if elements.contains(&0) {
            return Err(Error::Domain("set elements must be positive".into()));
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(FiniteSubset(elements))
    }

    /// Builds from elements that are already strictly increasing and positive.
    pub fn from_increasing(elements: Vec<u64>) -> Result<Self> {
        if elements.first() == Some(&0) || elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(format!(
                "{elements:?} is not a strictly increasing sequence of positive integers"
            )));
        }
        Ok(FiniteSubset(elements))
    }

    pub(crate) fn from_sorted(elements: Vec<u64>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements.first() != Some(&0));
        FiniteSubset(elements)
    }

    pub fn empty() -> Self {
        FiniteSubset(Vec::new())
    }

    pub fn interval(lo: u64, hi: u64) -> Self {
        FiniteSubset((lo.max(1)..=hi).collect())
    }

    pub fn elements(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.last().copied()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// `self < other`: every element of `self` is below every element of `other`.
    /// Empty sets precede and follow everything.
    pub fn precedes(&self, other: &FiniteSubset) -> bool {
        match (self.max(), other.min()) {
            (Some(a), Some(b)) => a < b,
            _ => true,
        }
    }

    /// The set with `x` appended; `x` must exceed the current maximum.
    pub fn with_appended(&self, x: u64) -> FiniteSubset {
        assert!(self.max().map_or(x >= 1, |m| x > m));
        let mut v = self.0.clone();
        v.push(x);
        FiniteSubset(v)
    }
}

impl fmt::Display for FiniteSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for FiniteSubset {
    type Err = Error;

    /// Accepts `{1,2,3}`, `1,2,3` or `{}`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('{').map_or(t, |r| r.strip_suffix('}').unwrap_or(r));
        let t = t.trim();
        if t.is_empty() {
            return Ok(FiniteSubset::empty());
        }
        let mut v = Vec::new();
        for part in t.split(',') {
            let x: u64 = part.trim().parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad set element {:?}", part.trim()),
            })?;
            v.push(x);
        }
        FiniteSubset::from_increasing(v)
    }
}

impl Serialize for FiniteSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteSubset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u64>::deserialize(d)?;
        FiniteSubset::from_increasing(v).map_err(serde::de::Error::custom)
    }
}

/// A strictly increasing map `N → N`, given by a finite prefix followed by
/// the affine tail `start, start + step, start + 2·step, …`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subsequence {
    prefix: Vec<u64>,
    start: u64,
    step: u64,
}

impl Subsequence {
    pub fn new(prefix: Vec<u64>, start: u64, step: u64) -> Result<Self> {
        if step == 0 {
            return Err(Error::Domain("subsequence step must be positive".into()));
        }
        if prefix.first() == Some(&0) || prefix.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("subsequence prefix must be strictly increasing and positive".into()));
        }
        if start == 0 || prefix.last().is_some_and(|&l| start <= l) {
            return Err(Error::Domain(format!(
                "tail start {start} does not continue the prefix {prefix:?}"
            )));
        }
        Ok(Subsequence { prefix, start, step })
    }

    pub fn identity() -> Self {
        Subsequence { prefix: Vec::new(), start: 1, step: 1 }
    }

    pub fn affine(start: u64, step: u64) -> Result<Self> {
        Subsequence::new(Vec::new(), start, step)
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn is_identity(&self) -> bool {
        *self == Subsequence::identity()
    }

    /// `n_i`, 1-based.
    pub fn nth(&self, i: u64) -> u64 {
        assert!(i >= 1, "subsequences are indexed from 1");
        let p = self.prefix.len() as u64;
        if i <= p {
            self.prefix[(i - 1) as usize]
        } else {
            self.start + self.step * (i - p - 1)
        }
    }

    /// The index `i` with `n_i = x`, if `x` lies on the subsequence.
    pub fn index_of(&self, x: u64) -> Option<u64> {
        if let Ok(i) = self.prefix.binary_search(&x) {
            return Some(i as u64 + 1);
        }
        if x < self.start || !(x - self.start).is_multiple_of(self.step) {
            return None;
        }
        Some(self.prefix.len() as u64 + 1 + (x - self.start) / self.step)
    }

    /// Image of a set of indices.
    pub fn image(&self, f: &FiniteSubset) -> FiniteSubset {
        FiniteSubset::from_sorted(f.elements().iter().map(|&i| self.nth(i)).collect())
    }

    /// Preimage of a set, if every element lies on the subsequence.
    pub fn preimage(&self, f: &FiniteSubset) -> Option<FiniteSubset> {
        let v = f.elements().iter().map(|&x| self.index_of(x)).collect::<Option<Vec<_>>>()?;
        Some(FiniteSubset::from_sorted(v))
    }
}

impl fmt::Display for Subsequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefix.is_empty() {
            let p: Vec<String> = self.prefix.iter().map(u64::to_string).collect();
            write!(f, "prefix={}; ", p.join(","))?;
        }
        write!(f, "start={}; step={}", self.start, self.step)
    }
}

/// An expression denoting a regular family of finite sets.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FamilyExpr {
    Schreier(Ordinal),
    /// `outer[inner]`.
    Compose(Box<FamilyExpr>, Box<FamilyExpr>),
    /// `[base]^n`.
    Power(Box<FamilyExpr>, u32),
    /// `(F_1^{n_1}, …, F_j^{n_j})`: up to `n_1` successive blocks from `F_1`,
    /// then up to `n_2` from `F_2`, and so on.
    Concat(Vec<(FamilyExpr, u32)>),
    Spread(Box<FamilyExpr>, Subsequence),
    Explicit(Arc<ExplicitFamily>),
}

impl FamilyExpr {
    pub fn schreier(alpha: impl Into<Ordinal>) -> Self {
        FamilyExpr::Schreier(alpha.into())
    }

    pub fn compose(outer: FamilyExpr, inner: FamilyExpr) -> Self {
        FamilyExpr::Compose(Box::new(outer), Box::new(inner))
    }

    pub fn power(base: FamilyExpr, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidFamily("powers start at 1".into()));
        }
        Ok(FamilyExpr::Power(Box::new(base), n))
    }

    pub fn concat(parts: Vec<(FamilyExpr, u32)>) -> Result<Self> {
        if parts.is_empty() || parts.iter().any(|(_, m)| *m == 0) {
            return Err(Error::InvalidFamily(
                "concatenation needs at least one part and positive multiplicities".into(),
            ));
        }
        Ok(FamilyExpr::Concat(parts))
    }

    pub fn spread(base: FamilyExpr, n: Subsequence) -> Self {
        FamilyExpr::Spread(Box::new(base), n)
    }

    pub fn explicit(fam: ExplicitFamily) -> Self {
        FamilyExpr::Explicit(Arc::new(fam))
    }

    /// True when the family is closed under spreads on all of `N`.
    /// Spreads along a proper subsequence and explicit families are not.
    pub fn is_spreading(&self) -> bool {
        match self {
            FamilyExpr::Schreier(_) => true,
            FamilyExpr::Compose(a, b) => a.is_spreading() && b.is_spreading(),
            FamilyExpr::Power(b, _) => b.is_spreading(),
            FamilyExpr::Concat(parts) => parts.iter().all(|(p, _)| p.is_spreading()),
            FamilyExpr::Spread(b, n) => n.is_identity() && b.is_spreading(),
            FamilyExpr::Explicit(_) => false,
        }
    }
}

impl FromStr for FamilyExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse::parse_family(s)
    }
}

impl fmt::Display for FamilyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyExpr::Schreier(a) => write!(f, "S({a})"),
            FamilyExpr::Compose(a, b) => write!(f, "{a}[{b}]"),
            FamilyExpr::Power(b, n) => write!(f, "{b}^{n}"),
            FamilyExpr::Concat(parts) => {
                f.write_str("concat(")?;
                for (i, (p, m)) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    // A top-level `^n` inside concat reads back as a multiplicity.
                    if matches!(p, FamilyExpr::Power(..) | FamilyExpr::Compose(..)) {
                        write!(f, "({p})")?;
                    } else {
                        write!(f, "{p}")?;
                    }
                    if *m != 1 {
                        write!(f, "^{m}")?;
                    }
                }
                f.write_str(")")
            }
            FamilyExpr::Spread(b, n) => write!(f, "spread({b}; {n})"),
            FamilyExpr::Explicit(e) => write!(f, "{e}"),
        }
    }
}
