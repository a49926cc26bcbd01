//! Sweeps over successive groups of units, where a unit is either one
//! support point or the part of the support inside one reference block.
//! Group values come from a caller-supplied table `v(p, r)` over units
//! `p..=r`; every table used here is monotone under enlarging the range,
//! so groups may be taken adjacent and the last one may run to the end.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::families::{advance, open, prune_budgets, Cursor, FamilyExpr, FiniteSubset};
use crate::scalar::Scalar;
use crate::spaces::NormTable;

pub(crate) struct Units {
    /// Admissibility label of each unit: the coordinate, or the 1-based
    /// index of the reference block.
    pub(crate) labels: Vec<u64>,
    /// First and last support point of each unit.
    pub(crate) spans: Vec<(usize, usize)>,
}

impl Units {
    pub(crate) fn new(coords: &[u64], reference: Option<&[FiniteSubset]>) -> Result<Self> {
        let Some(blocks) = reference else {
            return Ok(Units { labels: coords.to_vec(), spans: (0..coords.len()).map(|i| (i, i)).collect() });
        };
        let mut labels = Vec::new();
        let mut spans: Vec<(usize, usize)> = Vec::new();
        let mut k = 0;
        for (i, &c) in coords.iter().enumerate() {
            while k < blocks.len() && blocks[k].max().is_some_and(|m| m < c) {
                k += 1;
            }
            if k == blocks.len() || !blocks[k].contains(c) {
                return Err(Error::Domain(format!("coordinate {c} lies outside the reference blocks")));
            }
            let label = k as u64 + 1;
            match labels.last() {
                Some(&l) if l == label => spans.last_mut().expect("paired with labels").1 = i,
                _ => {
                    labels.push(label);
                    spans.push((i, i));
                }
            }
        }
        Ok(Units { labels, spans })
    }

    pub(crate) fn len(&self) -> usize {
        self.labels.len()
    }

    /// Base norm of the units `p..=r`.
    pub(crate) fn base<S: Scalar>(&self, t: &NormTable<S>, p: usize, r: usize) -> S {
        t.v(self.spans[p].0, self.spans[r].1).clone()
    }
}

fn offer<S: Scalar>(map: &mut HashMap<Cursor, S>, c: Cursor, s: S) {
    match map.get_mut(&c) {
        Some(old) if *old >= s => {}
        Some(old) => *old = s,
        None => {
            map.insert(c, s);
        }
    }
}

/// For every `r ≥ q`: the best `Σ v(group)` over one or more successive
/// groups inside units `q..=r` whose first labels form a member of `fam`.
/// `None` where no such split exists.
pub(crate) fn best_splits<S: Scalar>(
    labels: &[u64],
    fam: &FamilyExpr,
    q: usize,
    v: impl Fn(usize, usize) -> S,
) -> Vec<Option<S>> {
    let m = labels.len();
    let mut states: Vec<HashMap<Cursor, S>> = Vec::new();
    let mut out = Vec::with_capacity(m.saturating_sub(q));
    for r in q..m {
        let mut incoming = HashMap::new();
        if let Some(c) = open(fam, labels[r]) {
            incoming.insert(c, S::nil());
        }
        for (off, st) in states.iter().enumerate() {
            let p = q + off;
            let closed = v(p, r - 1);
            for (c, acc) in st {
                if let Some(nc) = advance(fam, c, labels[r]) {
                    offer(&mut incoming, nc, acc.plus(&closed));
                }
            }
        }
        prune_budgets(&mut incoming, (m - 1 - r) as u64);
        states.push(incoming);
        let mut best: Option<S> = None;
        for (off, st) in states.iter().enumerate() {
            let last = v(q + off, r);
            for acc in st.values() {
                let s = acc.plus(&last);
                if best.as_ref().is_none_or(|b| s > *b) {
                    best = Some(s);
                }
            }
        }
        out.push(best);
    }
    out
}

/// Best `Σ v(group)` over at most `n` successive groups of units.
pub(crate) fn best_count<S: Scalar>(m: usize, n: usize, v: impl Fn(usize, usize) -> S) -> S {
    if m == 0 {
        return S::nil();
    }
    // end[r]: best sum with the last group closing at unit r.
    let mut end: Vec<Option<S>> = (0..m).map(|r| Some(v(0, r))).collect();
    let mut best = end[m - 1].clone().expect("set above");
    for _ in 1..n {
        let mut next: Vec<Option<S>> = vec![None; m];
        for r in 1..m {
            for p in 1..=r {
                if let Some(prev) = &end[p - 1] {
                    let s = prev.plus(&v(p, r));
                    if next[r].as_ref().is_none_or(|b| s > *b) {
                        next[r] = Some(s);
                    }
                }
            }
        }
        if let Some(s) = &next[m - 1] {
            if *s > best {
                best = s.clone();
            }
        }
        end = next;
    }
    best
}
