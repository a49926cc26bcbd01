//! Tsirelson-type and mixed-Tsirelson norms on finitely supported vectors.

mod cert;
mod dp;
mod spec;
mod vector;
#[cfg(test)]
mod tests;

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::families::{advance, open, Cursor, FamilyExpr, Subsequence};
use crate::ordinals::Ordinal;
use crate::rational::Rational;

pub use cert::{check_certificate, dual_functional, norm_certificate, CertBody, CertNode};
pub(crate) use dp::NormTable;
pub use spec::{Decay, Level, LevelRef, SpaceSpec};
pub use vector::SparseVector;

/// Exact norm; the zero vector has norm 0.
pub fn norm(x: &SparseVector, space: &SpaceSpec) -> Rational {
    NormTable::<Rational>::build(x, space).total()
}

/// Norm in binary floating point, within [`crate::scalar::FLOAT_TOLERANCE`]
/// relative error of the exact value on the sizes used here.
pub fn norm_f64(x: &SparseVector, space: &SpaceSpec) -> f64 {
    NormTable::<f64>::build(x, space).total()
}

/// `sup { |Σ_{i∈E} x(i)| : E ∈ S_α }`.
///
/// Dropping coordinates of the wrong sign only helps, so this is the larger
/// of the best positive-part and negative-part sums.
pub fn schreier_norm(x: &SparseVector, alpha: &Ordinal) -> Rational {
    let fam = FamilyExpr::Schreier(alpha.clone());
    let pos: Vec<(u64, Rational)> =
        x.entries().iter().filter(|e| e.1.is_positive()).cloned().collect();
    let neg: Vec<(u64, Rational)> =
        x.entries().iter().filter(|e| e.1.is_negative()).map(|(i, v)| (*i, -v)).collect();
    max_weight_member(&pos, &fam).max(max_weight_member(&neg, &fam))
}

/// `sup { Σ_{i∈E} |x(i)| : E ∈ fam }`.
pub fn max_abs_mass(x: &SparseVector, fam: &FamilyExpr) -> Rational {
    let w: Vec<(u64, Rational)> = x.entries().iter().map(|(i, v)| (*i, v.abs())).collect();
    max_weight_member(&w, fam)
}

/// Largest total weight of a member of `fam` among positively weighted
/// points, by a left-to-right sweep keeping the best weight per cursor.
/// A state whose weight plus everything still to come cannot beat the best
/// so far is dropped.
pub(crate) fn max_weight_member(points: &[(u64, Rational)], fam: &FamilyExpr) -> Rational {
    let mut rest: Rational = points.iter().map(|p| &p.1).sum();
    let mut states: HashMap<Cursor, Rational> = HashMap::new();
    let mut best = Rational::zero();
    for (x, w) in points {
        rest -= w;
        let mut next: HashMap<Cursor, Rational> =
            states.iter().filter(|(_, s)| *s + &rest > best).map(|(c, s)| (c.clone(), s.clone())).collect();
        let mut offer = |c: Cursor, s: Rational| {
            if s > best {
                best = s.clone();
            }
            if &s + &rest <= best {
                return;
            }
            match next.get_mut(&c) {
                Some(old) if *old >= s => {}
                Some(old) => *old = s,
                None => {
                    next.insert(c, s);
                }
            }
        };
        if let Some(c) = open(fam, *x) {
            offer(c, w.clone());
        }
        for (c, acc) in &states {
            if let Some(nc) = advance(fam, c, *x) {
                offer(nc, acc + w);
            }
        }
        states = next;
    }
    best
}

/// Coefficient of coordinate `i` moved to `N(i)`.
pub fn spread_vector(x: &SparseVector, n: &Subsequence) -> SparseVector {
    x.spread(n)
}
