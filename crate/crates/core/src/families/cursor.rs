//! Online membership automaton.
//!
//! A [`Cursor`] is the state reached after reading an increasing sequence of
//! integers that, so far, forms a member of the family. Reading the next
//! element either yields a new state or rejects. Every family here is
//! hereditary, so all reachable states accept.
//!
//! Compositions `F[G]` split the input into successive `G`-blocks. When `F`
//! is spreading, extending the current block as far as possible is optimal:
//! the greedy split never has more blocks than any other split, and its
//! block minima dominate the other split's coordinatewise. For
//! non-spreading outer families both choices are kept. Concatenations only
//! need heredity for the same argument, so they are always greedy.

use std::collections::HashMap;

use crate::families::FamilyExpr;
use crate::ordinals::Ordinal;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub(crate) enum Cursor {
    /// `S_0` after one element.
    Closed,
    /// `S_1` with this many further elements allowed.
    Budget(u64),
    /// Composition: (outer state over block minima, state of the open block).
    Pairs(Vec<(Cursor, Cursor)>),
    /// Limit Schreier class: surviving branches `n` with their states.
    Limit(Vec<(u64, Cursor)>),
    /// Concatenation: current block slot and its state.
    Slot(u32, Box<Cursor>),
    /// Explicit family trie node.
    Node(u32),
}

#[derive(Clone, Copy)]
enum View<'a> {
    Expr(&'a FamilyExpr),
    Schreier(&'a Ordinal),
    Power(&'a FamilyExpr, u32),
}

pub(crate) fn open(fam: &FamilyExpr, x: u64) -> Option<Cursor> {
    open_v(View::Expr(fam), x)
}

pub(crate) fn advance(fam: &FamilyExpr, c: &Cursor, x: u64) -> Option<Cursor> {
    advance_v(View::Expr(fam), c, x)
}

fn open_v(v: View<'_>, x: u64) -> Option<Cursor> {
    if x == 0 {
        return None;
    }
    match v {
        View::Expr(e) => match e {
            FamilyExpr::Schreier(a) => open_schreier(a, x),
            FamilyExpr::Compose(o, i) => open_pair(View::Expr(o), View::Expr(i), x),
            FamilyExpr::Power(b, n) => open_v(View::Power(b, *n), x),
            FamilyExpr::Concat(parts) => {
                let total: u32 = parts.iter().map(|p| p.1).sum();
                (0..total).find_map(|s| {
                    open(slot_part(parts, s), x).map(|c| Cursor::Slot(s, Box::new(c)))
                })
            }
            FamilyExpr::Spread(b, n) => open(b, n.index_of(x)?),
            FamilyExpr::Explicit(f) => f.child(0, x).map(Cursor::Node),
        },
        View::Schreier(a) => open_schreier(a, x),
        View::Power(b, 1) => open(b, x),
        View::Power(b, n) => open_pair(View::Expr(b), View::Power(b, n - 1), x),
    }
}

fn advance_v(v: View<'_>, c: &Cursor, x: u64) -> Option<Cursor> {
    match (v, c) {
        (View::Expr(e), _) => match (e, c) {
            (FamilyExpr::Schreier(a), _) => advance_schreier(a, c, x),
            (FamilyExpr::Compose(o, i), Cursor::Pairs(ps)) => {
                advance_pairs(View::Expr(o), View::Expr(i), o.is_spreading(), ps, x)
            }
            (FamilyExpr::Power(b, n), _) => advance_v(View::Power(b, *n), c, x),
            (FamilyExpr::Concat(parts), Cursor::Slot(s, inner)) => {
                if let Some(ni) = advance(slot_part(parts, *s), inner, x) {
                    return Some(Cursor::Slot(*s, Box::new(ni)));
                }
                let total: u32 = parts.iter().map(|p| p.1).sum();
                (*s + 1..total).find_map(|t| {
                    open(slot_part(parts, t), x).map(|c| Cursor::Slot(t, Box::new(c)))
                })
            }
            (FamilyExpr::Spread(b, n), _) => advance(b, c, n.index_of(x)?),
            (FamilyExpr::Explicit(f), Cursor::Node(k)) => f.child(*k, x).map(Cursor::Node),
            _ => unreachable!("cursor does not belong to {e}"),
        },
        (View::Schreier(a), _) => advance_schreier(a, c, x),
        (View::Power(b, 1), _) => advance(b, c, x),
        (View::Power(b, n), Cursor::Pairs(ps)) => {
            advance_pairs(View::Expr(b), View::Power(b, n - 1), b.is_spreading(), ps, x)
        }
        _ => unreachable!("power cursor mismatch"),
    }
}

fn slot_part(parts: &[(FamilyExpr, u32)], slot: u32) -> &FamilyExpr {
    let mut s = slot;
    for (p, m) in parts {
        if s < *m {
            return p;
        }
        s -= m;
    }
    unreachable!("slot {slot} out of range")
}

fn open_pair(outer: View<'_>, inner: View<'_>, x: u64) -> Option<Cursor> {
    let i = open_v(inner, x)?;
    let o = open_v(outer, x)?;
    Some(Cursor::Pairs(vec![(o, i)]))
}

fn advance_pairs(
    outer: View<'_>,
    inner: View<'_>,
    greedy: bool,
    pairs: &[(Cursor, Cursor)],
    x: u64,
) -> Option<Cursor> {
    let mut next = Vec::with_capacity(pairs.len());
    let mut fresh = None;
    for (o, i) in pairs {
        let extended = advance_v(inner, i, x);
        let keep_split = extended.is_none() || !greedy;
        if let Some(ni) = extended {
            next.push((o.clone(), ni));
        }
        if keep_split {
            if let Some(no) = advance_v(outer, o, x) {
                let ni = fresh.get_or_insert_with(|| open_v(inner, x));
                if let Some(ni) = ni {
                    next.push((no, ni.clone()));
                }
            }
        }
    }
    if next.is_empty() {
        return None;
    }
    if next.len() > 1 {
        next.sort();
        next.dedup();
    }
    Some(Cursor::Pairs(next))
}

/// When `λ[n+1] = λ[n] + 1` the branch classes are nested, so the largest
/// admissible branch dominates the others.
fn nested_branches(lambda: &Ordinal) -> bool {
    lambda.terms().last().is_some_and(|t| t.exponent.as_nat() == Some(1))
}

fn open_schreier(a: &Ordinal, x: u64) -> Option<Cursor> {
    if let Some(n) = a.as_nat() {
        return match n {
            0 => Some(Cursor::Closed),
            1 => Some(Cursor::Budget(x - 1)),
            _ => open_pair(View::Schreier(&ONE), View::Schreier(&Ordinal::nat(n - 1)), x),
        };
    }
    if let Some(pred) = predecessor(a) {
        return open_pair(View::Schreier(&ONE), View::Schreier(&pred), x);
    }
    let lo = if nested_branches(a) { x } else { 1 };
    let branches: Vec<(u64, Cursor)> = (lo..=x)
        .filter_map(|n| {
            let an = a.fund_seq(n).expect("limit ordinal");
            open_schreier(&an, x).map(|c| (n, c))
        })
        .collect();
    (!branches.is_empty()).then_some(Cursor::Limit(branches))
}

fn advance_schreier(a: &Ordinal, c: &Cursor, x: u64) -> Option<Cursor> {
    match c {
        Cursor::Closed => None,
        Cursor::Budget(r) => (*r > 0).then(|| Cursor::Budget(r - 1)),
        Cursor::Pairs(ps) => {
            let pred = predecessor(a).expect("successor ordinal");
            advance_pairs(View::Schreier(&ONE), View::Schreier(&pred), true, ps, x)
        }
        Cursor::Limit(bs) => {
            let next: Vec<(u64, Cursor)> = bs
                .iter()
                .filter_map(|(n, c)| {
                    let an = a.fund_seq(*n).expect("limit ordinal");
                    advance_schreier(&an, c, x).map(|c| (*n, c))
                })
                .collect();
            (!next.is_empty()).then_some(Cursor::Limit(next))
        }
        _ => unreachable!("cursor does not belong to S({a})"),
    }
}

static ONE: std::sync::LazyLock<Ordinal> = std::sync::LazyLock::new(|| Ordinal::nat(1));

fn predecessor(a: &Ordinal) -> Option<Ordinal> {
    match a.classify() {
        crate::ordinals::Kind::Successor(p) => Some(p),
        _ => None,
    }
}

/// Drops split states that another state beats outright. Only top-level
/// `S_1` budgets are compared: a larger budget accepts everything a smaller
/// one does, and budgets beyond the `rest` elements still to come are all
/// alike. `states` maps cursors to accumulated values.
pub(crate) fn prune_budgets<S: PartialOrd + Clone>(states: &mut HashMap<Cursor, S>, rest: u64) {
    if states.len() < 2 || !states.keys().all(|c| matches!(c, Cursor::Budget(_))) {
        return;
    }
    let mut v: Vec<(u64, S)> = states
        .drain()
        .map(|(c, s)| match c {
            Cursor::Budget(r) => (r.min(rest), s),
            _ => unreachable!("checked above"),
        })
        .collect();
    v.sort_by(|x, y| y.0.cmp(&x.0).then(y.1.partial_cmp(&x.1).unwrap_or(std::cmp::Ordering::Equal)));
    let mut best: Option<S> = None;
    for (r, s) in v {
        if best.as_ref().is_none_or(|b| s > *b) {
            best = Some(s.clone());
            states.insert(Cursor::Budget(r), s);
        }
    }
}
