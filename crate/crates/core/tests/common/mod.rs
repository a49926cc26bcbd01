//! Independent oracles shared by the integration tests. Nothing here uses
//! the library's membership automaton or norm evaluator.
#![allow(dead_code)]

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// `S_n` membership straight from the definition: `S_0` is singletons,
/// `S_1` is `min ≥ size`, and `S_{n+1}` asks for some split into successive
/// `S_n` blocks whose minima form an `S_1` set (tried exhaustively).
pub fn naive_schreier(n: u32, set: &[u64]) -> bool {
    if set.is_empty() {
        return true;
    }
    match n {
        0 => set.len() == 1,
        1 => set[0] >= set.len() as u64,
        _ => split_search(n, set, &mut Vec::new()),
    }
}

fn split_search(n: u32, rest: &[u64], minima: &mut Vec<u64>) -> bool {
    if rest.is_empty() {
        return naive_schreier(1, minima);
    }
    for end in 1..=rest.len() {
        if naive_schreier(n - 1, &rest[..end]) {
            minima.push(rest[0]);
            let ok = naive_schreier(1, minima) && split_search(n, &rest[end..], minima);
            minima.pop();
            if ok {
                return true;
            }
        }
    }
    false
}

/// Brute-force implicit norm for levels `(S_n, θ)`, maximizing over every
/// sequence of successive nonempty subsets of the support (not necessarily
/// intervals, not necessarily covering), recursively.
pub struct BruteNorm {
    coords: Vec<u64>,
    abs: Vec<Q>,
    levels: Vec<(u32, Q)>,
    memo: HashMap<u32, Q>,
    admissible: HashMap<(u32, u32), bool>,
}

impl BruteNorm {
    /// `x` as (coordinate, value) pairs with distinct coordinates, at most 20.
    pub fn new(x: &[(u64, Q)], levels: Vec<(u32, Q)>) -> Self {
        let mut x: Vec<(u64, Q)> = x.iter().filter(|e| !e.1.is_zero()).cloned().collect();
        x.sort_by_key(|e| e.0);
        assert!(x.len() <= 20);
        BruteNorm {
            coords: x.iter().map(|e| e.0).collect(),
            abs: x.iter().map(|e| e.1.abs()).collect(),
            levels,
            memo: HashMap::new(),
            admissible: HashMap::new(),
        }
    }

    pub fn norm(&mut self) -> Q {
        let full = (1u32 << self.coords.len()) - 1;
        self.value(full)
    }

    fn value(&mut self, mask: u32) -> Q {
        if let Some(v) = self.memo.get(&mask) {
            return v.clone();
        }
        let idx: Vec<usize> = (0..self.coords.len()).filter(|i| mask >> i & 1 == 1).collect();
        let mut best = idx.iter().map(|&i| self.abs[i].clone()).max().unwrap_or_else(Q::zero);
        // Every sequence of successive blocks: each point is skipped, joins
        // the current block, or starts a new one.
        let mut blocks: Vec<u32> = Vec::new();
        self.walk(&idx, 0, &mut blocks, &mut best);
        self.memo.insert(mask, best.clone());
        best
    }

    fn walk(&mut self, idx: &[usize], k: usize, blocks: &mut Vec<u32>, best: &mut Q) {
        if k == idx.len() {
            if blocks.len() >= 2 {
                let minima: u32 = blocks.iter().map(|b| 1u32 << b.trailing_zeros()).sum();
                let sum: Q = blocks.clone().into_iter().map(|b| self.value(b)).sum();
                for li in 0..self.levels.len() {
                    if self.is_admissible(li, minima) {
                        let cand = &self.levels[li].1 * &sum;
                        if cand > *best {
                            *best = cand;
                        }
                    }
                }
            }
            return;
        }
        let bit = 1u32 << idx[k];
        self.walk(idx, k + 1, blocks, best);
        if let Some(last) = blocks.last_mut() {
            *last |= bit;
            self.walk(idx, k + 1, blocks, best);
            *blocks.last_mut().unwrap() &= !bit;
        }
        blocks.push(bit);
        self.walk(idx, k + 1, blocks, best);
        blocks.pop();
    }

    fn is_admissible(&mut self, level: usize, minima: u32) -> bool {
        let n = self.levels[level].0;
        if let Some(&v) = self.admissible.get(&(n, minima)) {
            return v;
        }
        let set: Vec<u64> =
            (0..self.coords.len()).filter(|i| minima >> i & 1 == 1).map(|i| self.coords[i]).collect();
        let v = naive_schreier(n, &set);
        self.admissible.insert((n, minima), v);
        v
    }
}

/// Levels of `T(S_n, c·base^n)` for `n = 1..=top`.
pub fn decay_levels(c: &Q, base: &Q, top: u32) -> Vec<(u32, Q)> {
    let mut th = c.clone();
    (1..=top)
        .map(|n| {
            th = &th * base;
            (n, th.clone())
        })
        .collect()
}

pub mod invariants;
