//! Adjacent-interval dynamic program for the implicit norm equation.
//!
//! For support points `s_0 < … < s_{m-1}` let `v[a][b]` be the norm of the
//! restriction of `x` to `s_a..=s_b`. Then `v[a][b]` is the largest of
//! `v[a+1][b]`, `v[a][b-1]`, `|x(s_a)|` when `a = b`, and for each level
//! `θ · Σ v(group)` over splits of `a..=b` into at least two consecutive
//! groups whose first group starts at `a`, whose last ends at `b`, and whose
//! first points form a member of the level's family. Dropping points from a
//! group never lowers its norm and never changes the first points, so
//! restricting to such splits loses nothing.
//!
//! For a fixed `a` the splits are explored left to right with states
//! `(start of the open group, membership cursor of the first points)`,
//! keeping the best accumulated sum per state.

use std::collections::HashMap;

use crate::families::{advance, open, prune_budgets, Cursor, FamilyExpr};
use crate::rational::Rational;
use crate::scalar::Scalar;
use crate::spaces::spec::{LevelRef, SpaceSpec};
use crate::spaces::SparseVector;

pub(crate) struct NormTable<S> {
    pub(crate) coords: Vec<u64>,
    pub(crate) abs: Vec<S>,
    pub(crate) levels: Vec<(LevelRef, FamilyExpr, S)>,
    /// Exact weights of the active levels, for certificates.
    pub(crate) thetas: Vec<(LevelRef, Rational)>,
    value: Vec<S>,
}

impl<S: Scalar> NormTable<S> {
    pub(crate) fn build(x: &SparseVector, space: &SpaceSpec) -> Self {
        let coords: Vec<u64> = x.entries().iter().map(|e| e.0).collect();
        let abs: Vec<S> = x.entries().iter().map(|e| S::from_rational(&e.1).magnitude()).collect();
        let m = coords.len();
        let active = space.active_levels(m);
        let thetas: Vec<(LevelRef, Rational)> = active.iter().map(|&l| (l, space.theta(l))).collect();
        let levels = thetas
            .iter()
            .map(|(l, th)| (*l, space.family(*l), S::from_rational(th)))
            .collect();
        let mut t = NormTable { coords, abs, levels, thetas, value: vec![S::nil(); m * m] };
        for a in (0..m).rev() {
            t.fill_row(a);
        }
        t
    }

    pub(crate) fn len(&self) -> usize {
        self.coords.len()
    }

    pub(crate) fn v(&self, a: usize, b: usize) -> &S {
        &self.value[a * self.len() + b]
    }

    /// Norm of the whole vector.
    pub(crate) fn total(&self) -> S {
        if self.len() == 0 {
            S::nil()
        } else {
            self.v(0, self.len() - 1).clone()
        }
    }

    fn fill_row(&mut self, a: usize) {
        let m = self.len();
        let mut frontiers: Vec<Frontier<S>> =
            self.levels.iter().map(|(_, f, _)| Frontier::new(f, self.coords[a], a, m)).collect();
        for b in a..m {
            let mut best = if a == b {
                self.abs[a].clone()
            } else {
                max_of(self.v(a + 1, b).clone(), self.v(a, b - 1).clone())
            };
            for (k, fr) in frontiers.iter_mut().enumerate() {
                let (_, fam, theta) = &self.levels[k];
                if b > a {
                    fr.enter(b, fam, &self.coords, |q, r| self.value[q * m + r].clone());
                }
                if let Some(s) = fr.best_split(b, |q, r| self.value[q * m + r].clone()) {
                    best = max_of(best, theta.times(&s));
                }
            }
            self.value[a * m + b] = best;
        }
    }
}

fn max_of<S: Scalar>(x: S, y: S) -> S {
    if y > x {
        y
    } else {
        x
    }
}

/// Split states for one row `a` and one level.
pub(crate) struct Frontier<S> {
    a: usize,
    first: Option<Cursor>,
    /// `states[q]`: cursor after reading the first points up to `s_q`,
    /// with `s_q` starting the open group, mapped to the best sum of the
    /// closed groups.
    states: Vec<HashMap<Cursor, S>>,
}

impl<S: Scalar> Frontier<S> {
    pub(crate) fn new(fam: &FamilyExpr, start: u64, a: usize, m: usize) -> Self {
        Frontier { a, first: open(fam, start), states: vec![HashMap::new(); m] }
    }

    /// Opens groups starting at `b`, closing the previous group at `b-1`.
    /// Needs `v(q, b-1)` for `a ≤ q < b`.
    pub(crate) fn enter(
        &mut self,
        b: usize,
        fam: &FamilyExpr,
        coords: &[u64],
        v: impl Fn(usize, usize) -> S,
    ) {
        let Some(first) = &self.first else { return };
        let x = coords[b];
        let mut incoming: HashMap<Cursor, S> = HashMap::new();
        if let Some(c) = advance(fam, first, x) {
            incoming.insert(c, v(self.a, b - 1));
        }
        for q in self.a + 1..b {
            let closed = v(q, b - 1);
            for (c, acc) in &self.states[q] {
                if let Some(nc) = advance(fam, c, x) {
                    let s = acc.plus(&closed);
                    match incoming.get_mut(&nc) {
                        Some(old) if *old >= s => {}
                        Some(old) => *old = s,
                        None => {
                            incoming.insert(nc, s);
                        }
                    }
                }
            }
        }
        prune_budgets(&mut incoming, (coords.len() - 1 - b) as u64);
        self.states[b] = incoming;
    }

    /// Best sum over splits of `a..=b` into at least two groups.
    pub(crate) fn best_split(&self, b: usize, v: impl Fn(usize, usize) -> S) -> Option<S> {
        let mut best: Option<S> = None;
        for q in self.a + 1..=b {
            if self.states[q].is_empty() {
                continue;
            }
            let last = v(q, b);
            for acc in self.states[q].values() {
                let s = acc.plus(&last);
                if best.as_ref().is_none_or(|bst| s > *bst) {
                    best = Some(s);
                }
            }
        }
        best
    }
}

/// Group starts of the optimal split of `a..=b` for one level, preferring
/// the lexicographically smallest sequence of starts among optimal splits.
pub(crate) fn best_split_path<S: Scalar>(
    t: &NormTable<S>,
    fam: &FamilyExpr,
    a: usize,
    b: usize,
) -> Option<(S, Vec<usize>)> {
    let first = open(fam, t.coords[a])?;
    // states[q]: cursor -> (sum of closed groups, starts so far ending in q)
    let mut states: Vec<HashMap<Cursor, (S, Vec<usize>)>> = vec![HashMap::new(); b + 1];
    for r in a + 1..=b {
        let x = t.coords[r];
        let mut incoming: HashMap<Cursor, (S, Vec<usize>)> = HashMap::new();
        let mut offer = |c: Cursor, s: S, path: Vec<usize>| match incoming.get_mut(&c) {
            Some(old) if better(&s, &path, &old.0, &old.1) => *old = (s, path),
            Some(_) => {}
            None => {
                incoming.insert(c, (s, path));
            }
        };
        if let Some(c) = advance(fam, &first, x) {
            offer(c, t.v(a, r - 1).clone(), vec![a, r]);
        }
        for q in a + 1..r {
            for (c, (acc, path)) in &states[q] {
                if let Some(nc) = advance(fam, c, x) {
                    let mut p = path.clone();
                    p.push(r);
                    offer(nc, acc.plus(t.v(q, r - 1)), p);
                }
            }
        }
        states[r] = incoming;
    }
    let mut best: Option<(S, Vec<usize>)> = None;
    for (q, st) in states.iter().enumerate().skip(a + 1) {
        for (acc, path) in st.values() {
            let s = acc.plus(t.v(q, b));
            if best.as_ref().is_none_or(|(bs, bp)| better(&s, path, bs, bp)) {
                best = Some((s, path.clone()));
            }
        }
    }
    best
}

fn better<S: Scalar>(s: &S, path: &[usize], old: &S, old_path: &[usize]) -> bool {
    if s.same(old) {
        path < old_path
    } else {
        s > old
    }
}
