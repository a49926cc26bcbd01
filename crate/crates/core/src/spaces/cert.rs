//! Norm certificates: trees of adjacent intervals, checked independently of
//! the dynamic program, and the dual functionals they define.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{is_admissible, FiniteSubset};
use crate::rational::Rational;
use crate::scalar::Scalar;
use crate::spaces::dp::{best_split_path, NormTable};
use crate::spaces::spec::{LevelRef, SpaceSpec};
use crate::spaces::SparseVector;

/// A node covers the coordinate interval `lo..=hi`. A leaf picks one
/// coordinate with a sign; a split divides a sub-interval into adjacent
/// child intervals weighted by `theta`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CertNode {
    pub lo: u64,
    pub hi: u64,
    #[serde(flatten)]
    pub body: CertBody,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertBody {
    Leaf {
        coord: u64,
        #[serde(default)]
        negative: bool,
    },
    Split {
        level: LevelRef,
        #[serde(with = "crate::rational::serde_str")]
        theta: Rational,
        children: Vec<CertNode>,
    },
}

impl CertNode {
    pub fn depth(&self) -> usize {
        match &self.body {
            CertBody::Leaf { .. } => 0,
            CertBody::Split { children, .. } => {
                1 + children.iter().map(CertNode::depth).max().unwrap_or(0)
            }
        }
    }
}

/// Certificate realizing the norm. Preference order at each node: a single
/// coordinate when it already attains the value (the first such), then a
/// split of the whole interval (lowest level, then the lexicographically
/// smallest group starts), then dropping the first point, then the last.
pub fn norm_certificate(x: &SparseVector, space: &SpaceSpec) -> Result<CertNode> {
    if x.is_empty() {
        return Err(Error::Domain("the zero vector has no norming certificate".into()));
    }
    let t: NormTable<Rational> = NormTable::build(x, space);
    let m = t.len();
    Ok(extract(&t, x, 0, m - 1, t.coords[0], t.coords[m - 1]))
}

pub(crate) fn extract<S: Scalar>(
    t: &NormTable<S>,
    x: &SparseVector,
    a: usize,
    b: usize,
    lo: u64,
    hi: u64,
) -> CertNode {
    let v = t.v(a, b);
    let mut top = a;
    for i in a..=b {
        if t.abs[i] > t.abs[top] {
            top = i;
        }
    }
    if t.abs[top].same(v) {
        let coord = t.coords[top];
        return CertNode { lo, hi, body: CertBody::Leaf { coord, negative: x.get(coord) < Rational::zero() } };
    }
    if a < b {
        for (level, fam, theta) in &t.levels {
            if let Some((s, starts)) = best_split_path(t, fam, a, b) {
                if theta.times(&s).same(v) {
                    let children = starts
                        .iter()
                        .enumerate()
                        .map(|(k, &p)| {
                            let (end, chi) = match starts.get(k + 1) {
                                Some(&n) => (n - 1, t.coords[n] - 1),
                                None => (b, hi),
                            };
                            extract(t, x, p, end, t.coords[p], chi)
                        })
                        .collect();
                    let theta = space_theta(t, *level);
                    return CertNode { lo, hi, body: CertBody::Split { level: *level, theta, children } };
                }
            }
        }
        if t.v(a + 1, b).same(v) {
            return extract(t, x, a + 1, b, lo, hi);
        }
        return extract(t, x, a, b - 1, lo, hi);
    }
    unreachable!("a single point is its own norm")
}

fn space_theta<S>(t: &NormTable<S>, level: LevelRef) -> Rational {
    t.thetas
        .iter()
        .find(|(l, _)| *l == level)
        .map(|(_, th)| th.clone())
        .expect("level is active")
}

fn reject(path: &str, reason: impl Into<String>) -> Error {
    Error::Certificate { path: path.to_string(), reason: reason.into() }
}

/// Re-evaluates a certificate from scratch. Every split is re-checked for
/// adjacency and admissibility of the first support points of its children.
/// The result is a lower bound for the norm.
pub fn check_certificate(x: &SparseVector, space: &SpaceSpec, cert: &CertNode) -> Result<Rational> {
    check_node(x, space, cert, "root")
}

fn check_node(x: &SparseVector, space: &SpaceSpec, node: &CertNode, path: &str) -> Result<Rational> {
    if node.lo == 0 || node.lo > node.hi {
        return Err(reject(path, format!("bad interval [{}, {}]", node.lo, node.hi)));
    }
    match &node.body {
        CertBody::Leaf { coord, negative } => {
            if *coord < node.lo || *coord > node.hi {
                return Err(reject(path, format!("leaf {coord} outside [{}, {}]", node.lo, node.hi)));
            }
            let v = x.get(*coord);
            if v.is_zero() {
                return Err(reject(path, format!("leaf {coord} is outside the support")));
            }
            Ok(if *negative { -v } else { v })
        }
        CertBody::Split { level, theta, children } => {
            if !space.has_level(*level) {
                return Err(reject(path, format!("unknown level {level:?}")));
            }
            if *theta != space.theta(*level) {
                return Err(reject(path, format!("theta {theta} does not match the space")));
            }
            if children.len() < 2 {
                return Err(reject(path, "a split needs at least two children"));
            }
            let (first, last) = (&children[0], &children[children.len() - 1]);
            if first.lo < node.lo || last.hi > node.hi {
                return Err(reject(path, "children leave the node interval"));
            }
            let mut supports = Vec::with_capacity(children.len());
            for (i, w) in children.windows(2).enumerate() {
                if w[0].hi.checked_add(1) != Some(w[1].lo) {
                    return Err(reject(path, format!("children {i} and {} are not adjacent", i + 1)));
                }
            }
            for (i, c) in children.iter().enumerate() {
                let s = x.restrict(c.lo, c.hi).support();
                if s.is_empty() {
                    return Err(reject(&format!("{path}/{i}"), "child interval misses the support"));
                }
                supports.push(s);
            }
            let fam = space.family(*level);
            if !is_admissible(&supports, &fam).map_err(|e| reject(path, e.to_string()))? {
                let mins: Vec<u64> = supports.iter().filter_map(FiniteSubset::min).collect();
                return Err(reject(path, format!("first points {mins:?} are not admissible for {fam}")));
            }
            let mut sum = Rational::zero();
            for (i, c) in children.iter().enumerate() {
                sum += check_node(x, space, c, &format!("{path}/{i}"))?;
            }
            Ok(theta * sum)
        }
    }
}

/// Leaf weights `± Π θ` along the path from the root; pairing with `x`
/// gives the certified value.
pub fn dual_functional(cert: &CertNode) -> SparseVector {
    let mut entries = Vec::new();
    collect(cert, &Rational::one(), &mut entries);
    let mut merged: Vec<(u64, Rational)> = Vec::with_capacity(entries.len());
    entries.sort_by_key(|e: &(u64, Rational)| e.0);
    for (i, w) in entries {
        match merged.last_mut() {
            Some(last) if last.0 == i => last.1 += w,
            _ => merged.push((i, w)),
        }
    }
    SparseVector::new(merged).expect("leaf coordinates are positive")
}

fn collect(node: &CertNode, weight: &Rational, out: &mut Vec<(u64, Rational)>) {
    match &node.body {
        CertBody::Leaf { coord, negative } => {
            out.push((*coord, if *negative { -weight.clone() } else { weight.clone() }))
        }
        CertBody::Split { theta, children, .. } => {
            let w = weight * theta;
            for c in children {
                collect(c, &w, out);
            }
        }
    }
}
