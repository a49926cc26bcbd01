//! Membership, decomposition, maximality, derivatives and enumeration.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::cursor::{advance, open, Cursor};
use crate::families::{ExplicitFamily, FamilyExpr, FiniteSubset};
use crate::ordinals::{Kind, Ordinal};

pub fn member(set: &FiniteSubset, fam: &FamilyExpr) -> bool {
    run(fam, set.elements()).is_some()
}

/// State after reading `xs`; `None` on rejection. Reading nothing yields
/// `Some(None)`, the empty set being in every family.
fn run(fam: &FamilyExpr, xs: &[u64]) -> Option<Option<Cursor>> {
    let Some((&first, rest)) = xs.split_first() else {
        return Some(None);
    };
    let mut c = open(fam, first)?;
    for &x in rest {
        c = advance(fam, &c, x)?;
    }
    Some(Some(c))
}

fn step(fam: &FamilyExpr, c: Option<&Cursor>, x: u64) -> Option<Cursor> {
    match c {
        None => open(fam, x),
        Some(c) => advance(fam, c, x),
    }
}

/// Whether the supports, which must be nonempty and successive, have their
/// minima in `fam`.
pub fn is_admissible(supports: &[FiniteSubset], fam: &FamilyExpr) -> Result<bool> {
    let mut minima = Vec::with_capacity(supports.len());
    for (i, s) in supports.iter().enumerate() {
        let Some(m) = s.min() else {
            return Err(Error::NotSuccessive(format!("support {} is empty", i + 1)));
        };
        if i > 0 && !supports[i - 1].precedes(s) {
            return Err(Error::NotSuccessive(format!(
                "{} does not precede {}",
                supports[i - 1],
                s
            )));
        }
        minima.push(m);
    }
    Ok(member(&FiniteSubset::from_sorted(minima), fam))
}

/// A membership certificate mirroring the structure of the family.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Empty,
    /// Checked directly: `S_0`, `S_1` or an explicit family.
    Atom { set: FiniteSubset },
    /// Successive blocks in the inner family whose minima lie in the outer one.
    Blocks {
        blocks: Vec<FiniteSubset>,
        minima: Box<Witness>,
        parts: Vec<Witness>,
    },
    /// Limit class: the branch `n ≤ min F` used.
    Branch { n: u64, inner: Box<Witness> },
    /// Concatenation: block slot indices with their blocks.
    Slots { slots: Vec<u32>, blocks: Vec<FiniteSubset>, parts: Vec<Witness> },
    Spread { preimage: FiniteSubset, inner: Box<Witness> },
}

/// How a family splits into an outer family over block minima and an inner
/// block family, when it is a composition.
fn as_composition(fam: &FamilyExpr) -> Option<(FamilyExpr, FamilyExpr)> {
    match fam {
        FamilyExpr::Schreier(a) => match a.classify() {
            Kind::Successor(p) if !p.is_zero() => {
                Some((FamilyExpr::schreier(1), FamilyExpr::Schreier(p)))
            }
            _ => None,
        },
        FamilyExpr::Compose(o, i) => Some(((**o).clone(), (**i).clone())),
        FamilyExpr::Power(b, n) if *n >= 2 => Some(((**b).clone(), FamilyExpr::Power(b.clone(), n - 1))),
        _ => None,
    }
}

pub fn decompose(set: &FiniteSubset, fam: &FamilyExpr) -> Option<Witness> {
    if !member(set, fam) {
        return None;
    }
    Some(witness_for_member(set, fam))
}

fn witness_for_member(set: &FiniteSubset, fam: &FamilyExpr) -> Witness {
    if set.is_empty() {
        return Witness::Empty;
    }
    if let Some((outer, inner)) = as_composition(fam) {
        let blocks = if outer.is_spreading() {
            greedy_blocks(set.elements(), &inner)
        } else {
            search_blocks(set.elements(), &outer, &inner).expect("member has a split")
        };
        let minima = FiniteSubset::from_sorted(blocks.iter().map(|b| b[0]).collect());
        let blocks: Vec<FiniteSubset> =
            blocks.into_iter().map(|b| FiniteSubset::from_sorted(b.to_vec())).collect();
        let parts = blocks.iter().map(|b| witness_for_member(b, &inner)).collect();
        return Witness::Blocks {
            minima: Box::new(witness_for_member(&minima, &outer)),
            blocks,
            parts,
        };
    }
    match fam {
        FamilyExpr::Schreier(a) if a.is_limit() => {
            let m = set.min().expect("nonempty");
            let n = (1..=m)
                .find(|&n| member(set, &FamilyExpr::Schreier(a.fund_seq(n).expect("limit"))))
                .expect("member has a branch");
            let sub = FamilyExpr::Schreier(a.fund_seq(n).expect("limit"));
            Witness::Branch { n, inner: Box::new(witness_for_member(set, &sub)) }
        }
        FamilyExpr::Schreier(_) | FamilyExpr::Explicit(_) => Witness::Atom { set: set.clone() },
        FamilyExpr::Power(b, _) => witness_for_member(set, b),
        FamilyExpr::Concat(parts) => concat_witness(set, parts),
        FamilyExpr::Spread(b, n) => {
            let pre = n.preimage(set).expect("member lies on the subsequence");
            Witness::Spread { inner: Box::new(witness_for_member(&pre, b)), preimage: pre }
        }
        FamilyExpr::Compose(..) => unreachable!("handled as a composition"),
    }
}

/// Longest-prefix split into successive members of `inner`.
fn greedy_blocks<'a>(xs: &'a [u64], inner: &FamilyExpr) -> Vec<&'a [u64]> {
    let mut blocks = Vec::new();
    let mut start = 0;
    while start < xs.len() {
        let mut c = open(inner, xs[start]).expect("singleton block");
        let mut end = start + 1;
        while end < xs.len() {
            match advance(inner, &c, xs[end]) {
                Some(n) => {
                    c = n;
                    end += 1;
                }
                None => break,
            }
        }
        blocks.push(&xs[start..end]);
        start = end;
    }
    blocks
}

/// Exhaustive split search for non-spreading outer families.
fn search_blocks<'a>(
    xs: &'a [u64],
    outer: &FamilyExpr,
    inner: &FamilyExpr,
) -> Option<Vec<&'a [u64]>> {
    fn go<'a>(
        xs: &'a [u64],
        start: usize,
        oc: Option<&Cursor>,
        outer: &FamilyExpr,
        inner: &FamilyExpr,
        acc: &mut Vec<&'a [u64]>,
    ) -> bool {
        if start == xs.len() {
            return true;
        }
        let Some(no) = step(outer, oc, xs[start]) else {
            return false;
        };
        let mut ends = Vec::new();
        let mut c = open(inner, xs[start]);
        let mut end = start + 1;
        while let Some(ci) = c {
            ends.push(end);
            if end == xs.len() {
                break;
            }
            c = advance(inner, &ci, xs[end]);
            end += 1;
        }
        for &e in ends.iter().rev() {
            acc.push(&xs[start..e]);
            if go(xs, e, Some(&no), outer, inner, acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    let mut acc = Vec::new();
    go(xs, 0, None, outer, inner, &mut acc).then_some(acc)
}

fn concat_witness(set: &FiniteSubset, parts: &[(FamilyExpr, u32)]) -> Witness {
    let slot_fams: Vec<&FamilyExpr> =
        parts.iter().flat_map(|(p, m)| std::iter::repeat_n(p, *m as usize)).collect();
    let xs = set.elements();
    let (mut slots, mut blocks, mut ws) = (Vec::new(), Vec::new(), Vec::new());
    let mut start = 0;
    let mut slot = 0;
    while start < xs.len() {
        let (s, c) = (slot..slot_fams.len())
            .find_map(|s| open(slot_fams[s], xs[start]).map(|c| (s, c)))
            .expect("member has a slot");
        let mut c = c;
        let mut end = start + 1;
        while end < xs.len() {
            match advance(slot_fams[s], &c, xs[end]) {
                Some(n) => {
                    c = n;
                    end += 1;
                }
                None => break,
            }
        }
        let b = FiniteSubset::from_sorted(xs[start..end].to_vec());
        ws.push(witness_for_member(&b, slot_fams[s]));
        blocks.push(b);
        slots.push(s as u32);
        slot = s + 1;
        start = end;
    }
    Witness::Slots { slots, blocks, parts: ws }
}

/// Re-checks a witness from the definitions alone, without the automaton.
pub fn check_witness(set: &FiniteSubset, fam: &FamilyExpr, w: &Witness) -> bool {
    if let FamilyExpr::Power(b, 1) = fam {
        return check_witness(set, b, w);
    }
    match w {
        Witness::Empty => set.is_empty(),
        Witness::Atom { set: s } => {
            s == set
                && match fam {
                    FamilyExpr::Schreier(a) => match a.as_nat() {
                        Some(0) => set.len() <= 1,
                        Some(1) => set.min().is_none_or(|m| m >= set.len() as u64),
                        _ => false,
                    },
                    FamilyExpr::Explicit(e) => e.contains(set),
                    _ => false,
                }
        }
        Witness::Blocks { blocks, minima, parts } => {
            let Some((outer, inner)) = as_composition(fam) else {
                return false;
            };
            let mins: Option<Vec<u64>> = blocks.iter().map(FiniteSubset::min).collect();
            let Some(mins) = mins else { return false };
            blocks.len() == parts.len()
                && tiles(set, blocks)
                && check_witness(&FiniteSubset::from_sorted(mins), &outer, minima)
                && blocks.iter().zip(parts).all(|(b, p)| check_witness(b, &inner, p))
        }
        Witness::Branch { n, inner } => match fam {
            FamilyExpr::Schreier(a) if a.is_limit() => {
                *n >= 1
                    && set.min().is_some_and(|m| *n <= m)
                    && check_witness(set, &FamilyExpr::Schreier(a.fund_seq(*n).unwrap()), inner)
            }
            _ => false,
        },
        Witness::Slots { slots, blocks, parts } => {
            let FamilyExpr::Concat(ps) = fam else {
                return false;
            };
            let slot_fams: Vec<&FamilyExpr> =
                ps.iter().flat_map(|(p, m)| std::iter::repeat_n(p, *m as usize)).collect();
            slots.len() == blocks.len()
                && blocks.len() == parts.len()
                && slots.windows(2).all(|s| s[0] < s[1])
                && slots.iter().all(|&s| (s as usize) < slot_fams.len())
                && tiles(set, blocks)
                && slots
                    .iter()
                    .zip(blocks.iter().zip(parts))
                    .all(|(&s, (b, p))| check_witness(b, slot_fams[s as usize], p))
        }
        Witness::Spread { preimage, inner } => match fam {
            FamilyExpr::Spread(b, n) => {
                &n.image(preimage) == set && check_witness(preimage, b, inner)
            }
            _ => false,
        },
    }
}

/// Nonempty successive blocks whose union is `set`.
fn tiles(set: &FiniteSubset, blocks: &[FiniteSubset]) -> bool {
    blocks.iter().all(|b| !b.is_empty())
        && blocks.windows(2).all(|p| p[0].precedes(&p[1]))
        && blocks.iter().flat_map(|b| b.elements()).copied().eq(set.elements().iter().copied())
}

/// The set with minimum `m` built by packing maximal blocks: `m` consecutive
/// integers for `S_1`, `m` maximal `S_α` blocks for `S_{α+1}`, and the branch
/// `n = m` at limits. It is a member of `S_α` and appending `max + 1` leaves
/// the class.
pub fn maximal_set(m: u64, alpha: &Ordinal) -> FiniteSubset {
    assert!(m >= 1, "maximal sets start at a positive integer");
    let mut out = Vec::new();
    push_maximal(m, alpha, &mut out);
    FiniteSubset::from_sorted(out)
}

fn push_maximal(m: u64, alpha: &Ordinal, out: &mut Vec<u64>) {
    match alpha.classify() {
        Kind::Zero => out.push(m),
        Kind::Successor(p) if p.is_zero() => out.extend(m..2 * m),
        Kind::Successor(p) => {
            let mut next = m;
            for _ in 0..m {
                push_maximal(next, &p, out);
                next = out.last().unwrap() + 1;
            }
        }
        Kind::Limit => push_maximal(m, &alpha.fund_seq(m).unwrap(), out),
    }
}

/// All members inside `{1..universe}`, in lexicographic depth-first order
/// starting with the empty set.
pub fn enumerate_members(fam: &FamilyExpr, universe: u64) -> Vec<FiniteSubset> {
    let mut out = vec![FiniteSubset::empty()];
    let mut path = Vec::new();
    fn go(
        fam: &FamilyExpr,
        universe: u64,
        c: Option<&Cursor>,
        path: &mut Vec<u64>,
        out: &mut Vec<FiniteSubset>,
    ) {
        let lo = path.last().map_or(1, |m| m + 1);
        for y in lo..=universe {
            if let Some(n) = step(fam, c, y) {
                path.push(y);
                out.push(FiniteSubset::from_sorted(path.clone()));
                go(fam, universe, Some(&n), path, out);
                path.pop();
            }
        }
    }
    go(fam, universe, None, &mut path, &mut out);
    out
}

/// First set (in depth-first order) inside `{1..n}` on which the families
/// disagree.
pub fn first_difference(f: &FamilyExpr, g: &FamilyExpr, n: u64) -> Option<FiniteSubset> {
    fn go(
        f: &FamilyExpr,
        g: &FamilyExpr,
        n: u64,
        cs: (Option<&Cursor>, Option<&Cursor>),
        path: &mut Vec<u64>,
    ) -> Option<FiniteSubset> {
        let lo = path.last().map_or(1, |m| m + 1);
        for y in lo..=n {
            let a = step(f, cs.0, y);
            let b = step(g, cs.1, y);
            match (a, b) {
                (None, None) => {}
                (Some(a), Some(b)) => {
                    path.push(y);
                    let r = go(f, g, n, (Some(&a), Some(&b)), path);
                    path.pop();
                    if r.is_some() {
                        return r;
                    }
                }
                _ => {
                    let mut w = path.clone();
                    w.push(y);
                    return Some(FiniteSubset::from_sorted(w));
                }
            }
        }
        None
    }
    go(f, g, n, (None, None), &mut Vec::new())
}

pub fn equal_on_universe(f: &FamilyExpr, g: &FamilyExpr, n: u64) -> bool {
    first_difference(f, g, n).is_none()
}

/// One-point extension horizon: the largest extension point worth trying.
/// Spreading families accept any point beyond a valid one, so a point well
/// past every set considered suffices; explicit families and spreads bound
/// it by their universe or subsequence.
fn horizon(fam: &FamilyExpr, universe: u64, k: u64) -> u64 {
    let far = 4 * (universe + k);
    match fam {
        _ if fam.is_spreading() => far,
        FamilyExpr::Explicit(e) => e.universe(),
        FamilyExpr::Spread(b, n) => n.nth(horizon(b, universe, k).max(1)),
        FamilyExpr::Compose(a, b) => horizon(a, universe, k).max(horizon(b, universe, k)),
        FamilyExpr::Power(b, _) => horizon(b, universe, k),
        FamilyExpr::Concat(ps) => ps.iter().map(|(p, _)| horizon(p, universe, k)).max().unwrap_or(far),
        FamilyExpr::Schreier(_) => far,
    }
}

/// `F ∈ D^k(fam)`.
fn in_derivative(fam: &FamilyExpr, set: &FiniteSubset, k: u64, h: u64) -> bool {
    if k == 0 {
        return member(set, fam);
    }
    if fam.is_spreading() {
        // D^k of a spreading family: F together with k far-away points.
        let top = h + k;
        let mut v = set.elements().to_vec();
        v.extend(top - k + 1..=top);
        return member(&FiniteSubset::from_sorted(v), fam);
    }
    if !in_derivative(fam, set, k - 1, h) {
        return false;
    }
    let lo = set.max().map_or(1, |m| m + 1);
    (lo..=h).any(|y| in_derivative(fam, &set.with_appended(y), k - 1, h))
}

/// `D(fam)` restricted to `{1..universe}`: members admitting a one-point
/// extension beyond their maximum.
pub fn derivative(fam: &FamilyExpr, universe: u64) -> FamilyExpr {
    iterated_derivative(fam, 1, universe)
}

pub fn iterated_derivative(fam: &FamilyExpr, k: u64, universe: u64) -> FamilyExpr {
    let h = horizon(fam, universe, k).max(universe);
    let members: Vec<FiniteSubset> = enumerate_members(fam, universe)
        .into_iter()
        .filter(|f| in_derivative(fam, f, k, h))
        .collect();
    FamilyExpr::explicit(ExplicitFamily::build(&members, universe))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RegularityReport {
    pub hereditary: bool,
    pub spreading: bool,
    /// A missing subset of a listed set.
    pub hereditary_witness: Option<FiniteSubset>,
    /// A missing one-step spread of a listed set.
    pub spreading_witness: Option<FiniteSubset>,
    /// A listed set leaving the universe.
    pub outside_universe: Option<FiniteSubset>,
}

/// Checks heredity (by single deletions) and spreading within the universe
/// (by single unit increments); both generate the closures. The empty set
/// counts as present.
pub fn regularity_check(sets: &[FiniteSubset], universe: u64) -> RegularityReport {
    let present: HashSet<&[u64]> = sets.iter().map(|s| s.elements()).collect();
    let has = |v: &[u64]| v.is_empty() || present.contains(v);
    let mut hw = None;
    let mut sw = None;
    let outside = sets.iter().find(|s| s.max().is_some_and(|m| m > universe)).cloned();
    for s in sets {
        let e = s.elements();
        for i in (0..e.len()).rev() {
            if hw.is_some() {
                break;
            }
            let mut v = e.to_vec();
            v.remove(i);
            if !has(&v) {
                hw = Some(FiniteSubset::from_sorted(v));
            }
        }
        for i in (0..e.len()).rev() {
            if sw.is_some() {
                break;
            }
            let bumped = e[i] + 1;
            let fits = if i + 1 == e.len() { bumped <= universe } else { bumped < e[i + 1] };
            if fits {
                let mut v = e.to_vec();
                v[i] = bumped;
                if !has(&v) {
                    sw = Some(FiniteSubset::from_sorted(v));
                }
            }
        }
    }
    RegularityReport {
        hereditary: hw.is_none(),
        spreading: sw.is_none(),
        hereditary_witness: hw,
        spreading_witness: sw,
        outside_universe: outside,
    }
}
