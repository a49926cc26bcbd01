//! Finitely supported vectors with exact rational entries.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::families::{FiniteSubset, Subsequence};
use crate::rational::{parse_rational, Rational};

/// Entries sorted by coordinate, no zeros stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SparseVector {
    entries: Vec<(u64, Rational)>,
}

impl SparseVector {
    /// Rejects coordinate 0 and repeated coordinates; drops zero values.
    pub fn new(mut entries: Vec<(u64, Rational)>) -> Result<Self> {
        entries.sort_by_key(|e| e.0);
        if entries.first().is_some_and(|e| e.0 == 0) {
            return Err(Error::Domain("coordinates start at 1".into()));
        }
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::Domain(format!("coordinate {} given twice", w[0].0)));
        }
        entries.retain(|e| !e.1.is_zero());
        Ok(SparseVector { entries })
    }

    pub fn unit(i: u64) -> Self {
        assert!(i >= 1);
        SparseVector { entries: vec![(i, Rational::from_integer(1.into()))] }
    }

    /// Indicator vector of a set.
    pub fn indicator(set: &FiniteSubset) -> Self {
        let one = Rational::from_integer(1.into());
        SparseVector { entries: set.elements().iter().map(|&i| (i, one.clone())).collect() }
    }

    pub fn entries(&self) -> &[(u64, Rational)] {
        &self.entries
    }

    pub fn support(&self) -> FiniteSubset {
        FiniteSubset::from_sorted(self.entries.iter().map(|e| e.0).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: u64) -> Rational {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Restriction to the coordinates in `lo..=hi`.
    pub fn restrict(&self, lo: u64, hi: u64) -> SparseVector {
        SparseVector {
            entries: self.entries.iter().filter(|e| lo <= e.0 && e.0 <= hi).cloned().collect(),
        }
    }

    /// Restriction to a set of coordinates.
    pub fn project(&self, set: &FiniteSubset) -> SparseVector {
        SparseVector {
            entries: self.entries.iter().filter(|e| set.contains(e.0)).cloned().collect(),
        }
    }

    pub fn l1(&self) -> Rational {
        self.entries.iter().map(|e| e.1.abs()).sum()
    }

    pub fn linf(&self) -> Rational {
        self.entries.iter().map(|e| e.1.abs()).max().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> SparseVector {
        if c.is_zero() {
            return SparseVector::default();
        }
        SparseVector { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    pub fn add(&self, other: &SparseVector) -> SparseVector {
        let mut all: Vec<(u64, Rational)> = self.entries.clone();
        for (i, v) in &other.entries {
            match all.binary_search_by_key(i, |e| e.0) {
                Ok(k) => all[k].1 += v,
                Err(k) => all.insert(k, (*i, v.clone())),
            }
        }
        all.retain(|e| !e.1.is_zero());
        SparseVector { entries: all }
    }

    /// `Σ x(i) y(i)`.
    pub fn dot(&self, other: &SparseVector) -> Rational {
        self.entries.iter().map(|(i, v)| v * other.get(*i)).sum()
    }

    /// Coefficient at coordinate `i` moved to `N(i)`.
    pub fn spread(&self, n: &Subsequence) -> SparseVector {
        SparseVector { entries: self.entries.iter().map(|(i, v)| (n.nth(*i), v.clone())).collect() }
    }

    /// Negates the entries whose position in support order satisfies `flip`.
    pub fn with_signs(&self, flip: impl Fn(usize) -> bool) -> SparseVector {
        SparseVector {
            entries: self
                .entries
                .iter()
                .enumerate()
                .map(|(k, (i, v))| (*i, if flip(k) { -v.clone() } else { v.clone() }))
                .collect(),
        }
    }

    pub fn abs(&self) -> SparseVector {
        self.clone().map_values(|v| v.abs())
    }

    fn map_values(mut self, f: impl Fn(&Rational) -> Rational) -> SparseVector {
        for e in &mut self.entries {
            e.1 = f(&e.1);
        }
        self
    }
}

impl fmt::Display for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (k, (i, v)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{v}·e{i}")?;
        }
        Ok(())
    }
}

/// Serialized as `[[coord, "p/q"], ...]`.
impl Serialize for SparseVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(u64, String)> = self.entries.iter().map(|(i, r)| (*i, r.to_string())).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparseVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Value {
            Text(String),
            Int(i64),
        }
        let raw = Vec::<(u64, Value)>::deserialize(d)?;
        let mut entries = Vec::with_capacity(raw.len());
        for (i, v) in raw {
            let r = match v {
                Value::Text(s) => parse_rational(&s).map_err(D::Error::custom)?,
                Value::Int(n) => Rational::from_integer(n.into()),
            };
            entries.push((i, r));
        }
        SparseVector::new(entries).map_err(D::Error::custom)
    }
}
