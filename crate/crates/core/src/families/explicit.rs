//! Explicitly listed families, stored as a trie over increasing elements.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::families::FiniteSubset;

/// A hereditary family given by its members inside `{1..universe}`.
/// The empty set is always a member.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExplicitFamily {
    universe: u64,
    /// `nodes[0]` is the root (the empty set); each edge appends one element.
    nodes: Vec<BTreeMap<u64, u32>>,
}

impl ExplicitFamily {
    /// Validates that the collection is hereditary and spreading within the
    /// universe; the error names a missing set.
    pub fn new(sets: Vec<FiniteSubset>, universe: u64) -> Result<Self> {
        let report = super::regularity_check(&sets, universe);
        if let Some(w) = report.outside_universe {
            return Err(Error::InvalidFamily(format!("{w} leaves the universe {{1..{universe}}}")));
        }
        if let Some(w) = report.hereditary_witness {
            return Err(Error::InvalidFamily(format!("not hereditary: {w} is missing")));
        }
        if let Some(w) = report.spreading_witness {
            return Err(Error::InvalidFamily(format!("not spreading: {w} is missing")));
        }
        Ok(Self::build(&sets, universe))
    }

    /// Skips the regularity check; membership is still exact for the listed
    /// sets and their prefixes.
    pub(crate) fn build(sets: &[FiniteSubset], universe: u64) -> Self {
        let mut fam = ExplicitFamily { universe, nodes: vec![BTreeMap::new()] };
        for s in sets {
            let mut node = 0u32;
            for &x in s.elements() {
                let next = fam.nodes.len() as u32;
                node = *fam.nodes[node as usize].entry(x).or_insert(next);
                if node == next {
                    fam.nodes.push(BTreeMap::new());
                }
            }
        }
        fam
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    pub(crate) fn child(&self, node: u32, x: u64) -> Option<u32> {
        self.nodes[node as usize].get(&x).copied()
    }

    pub fn contains(&self, f: &FiniteSubset) -> bool {
        let mut node = 0;
        for &x in f.elements() {
            match self.child(node, x) {
                Some(n) => node = n,
                None => return false,
            }
        }
        true
    }

    /// Members in lexicographic depth-first order, starting with the empty set.
    pub fn members(&self) -> Vec<FiniteSubset> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut path = Vec::new();
        self.walk(0, &mut path, &mut out);
        out
    }

    fn walk(&self, node: u32, path: &mut Vec<u64>, out: &mut Vec<FiniteSubset>) {
        out.push(FiniteSubset::from_sorted(path.clone()));
        for (&x, &child) in &self.nodes[node as usize] {
            path.push(x);
            self.walk(child, path, out);
            path.pop();
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for ExplicitFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "explicit{{universe={}", self.universe)?;
        for m in self.members().iter().skip(1) {
            write!(f, "; {m}")?;
        }
        f.write_str("}")
    }
}
