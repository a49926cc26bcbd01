use std::collections::BTreeMap;

use num_traits::Zero;

use super::WeightedSet;
use crate::families::FamilyExpr;
use crate::ordinals::Ordinal;
use crate::rational::Rational;
use crate::spaces::max_weight_member;

/// Largest mass `Σ_{j∈G} a_j` over `G ⊆ supp` with `G ∈ S_β`. Exact; the
/// caller compares it with ε.
pub fn verify_average(ws: &WeightedSet, beta: &Ordinal) -> Rational {
    match beta.as_nat() {
        Some(0) => ws.max_weight(),
        Some(1) => schreier_one_mass(ws.points()),
        _ => max_weight_member(ws.points(), &FamilyExpr::schreier(beta.clone())),
    }
}

/// `S_1` sets are `{m} ∪ H` with `H > m`, `|H| ≤ m − 1`: the best one for a
/// given minimum takes the heaviest later points.
pub(crate) fn schreier_one_mass(points: &[(u64, Rational)]) -> Rational {
    let mut later: BTreeMap<Rational, u64> = BTreeMap::new();
    let mut best = Rational::zero();
    for (m, w) in points.iter().rev() {
        let mut room = m - 1;
        let mut mass = w.clone();
        for (v, &count) in later.iter().rev() {
            if room == 0 {
                break;
            }
            let used = count.min(room);
            mass += v * Rational::from_integer(used.into());
            room -= used;
        }
        if mass > best {
            best = mass;
        }
        *later.entry(w.clone()).or_default() += 1;
    }
    best
}
