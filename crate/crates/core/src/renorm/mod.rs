//! Equivalent norms built from a base space: restricted sums over successive
//! sets, level norms and their averages, truncated tree values, and the
//! experiments that exercise them.

mod distort;
mod dn;
mod split;


use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::families::{FamilyExpr, FiniteSubset};
use crate::ordinals::Ordinal;
use crate::rational::{parse_rational, pow, rat, Rational};
use crate::scalar::Scalar;
use crate::spaces::{schreier_norm, NormTable, SpaceSpec, SparseVector};


pub use distort::{
    distortion_experiment, DistortMode, DistortionReport, Schedule, Slack, EXACT_MAX_SUPPORT, FLOAT_MAX_SUPPORT,
};
pub use dn::{dn_property_check, DnReport};
use split::{best_count, best_splits, Units};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RenormKind {
    /// `sup Σ_{i≤n} ‖E_i x‖` over successive sets.
    Bd(u32),
    /// `a^j sup Σ ‖E_i x‖` over `[S_α]^j`-admissible families; `j = 0` is the base norm.
    Level { j: u32, alpha: Ordinal, a: Rational },
    /// `(1/n) Σ_{j<n}` of the level norms.
    Mixture { n: u32, alpha: Ordinal, a: Rational },
    /// `2⁻ⁿ sup Σ ‖E_i x‖` over `S_n`-admissible families.
    Eda(u32),
    SchreierSeminorm(Ordinal),
    /// Best `c^k Σ 2^{-n(s)} ‖F_s x‖` over `k`-level trees whose splits are
    /// `S_j`-admissible with weight `c·2^{-j}`.
    TreeTrunc { k: u32, c: Rational },
}

impl fmt::Display for RenormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RenormKind::Bd(n) => write!(f, "bd:{n}"),
            RenormKind::Level { j, alpha, a } => write!(f, "level:{j}:{alpha}:{a}"),
            RenormKind::Mixture { n, alpha, a } => write!(f, "mixture:{n}:{alpha}:{a}"),
            RenormKind::Eda(n) => write!(f, "eda:{n}"),
            RenormKind::SchreierSeminorm(alpha) => write!(f, "schreier:{alpha}"),
            RenormKind::TreeTrunc { k, c } => write!(f, "tree:{k}:{c}"),
        }
    }
}

fn bad_kind(s: &str, why: &str) -> Error {
    Error::Parse { pos: 0, msg: format!("renorm kind '{s}': {why}") }
}

impl FromStr for RenormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').map(str::trim).collect();
        let int = |i: usize| -> Result<u32> {
            let t = parts.get(i).ok_or_else(|| bad_kind(s, "missing parameter"))?;
            t.parse().map_err(|_| bad_kind(s, &format!("'{t}' is not a count")))
        };
        let ord = |i: usize| -> Result<Ordinal> { parts.get(i).ok_or_else(|| bad_kind(s, "missing ordinal"))?.parse() };
        let num = |i: usize| -> Result<Rational> {
            parse_rational(parts.get(i).ok_or_else(|| bad_kind(s, "missing rational"))?)
        };
        let arity = match parts[0] {
            "bd" | "eda" | "schreier" => 2,
            "level" | "mixture" => 4,
            "tree" => 3,
            _ => return Err(bad_kind(s, "expected bd, level, mixture, eda, schreier or tree")),
        };
        if parts.len() != arity {
            return Err(bad_kind(s, &format!("expected {} parameters", arity - 1)));
        }
        let kind = match parts[0] {
            "bd" => RenormKind::Bd(int(1)?),
            "eda" => RenormKind::Eda(int(1)?),
            "schreier" => RenormKind::SchreierSeminorm(ord(1)?),
            "level" => RenormKind::Level { j: int(1)?, alpha: ord(2)?, a: num(3)? },
            "mixture" => RenormKind::Mixture { n: int(1)?, alpha: ord(2)?, a: num(3)? },
            _ => RenormKind::TreeTrunc { k: int(1)?, c: num(2)? },
        };
        kind.validate()?;
        Ok(kind)
    }
}

fn unit_interval(name: &str, v: &Rational) -> Result<()> {
    if v.is_zero() || *v < Rational::zero() || *v > Rational::one() {
        return Err(Error::Domain(format!("{name} = {v} is not in (0,1]")));
    }
    Ok(())
}

impl RenormKind {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, n: u32| {
            if n == 0 {
                Err(Error::Domain(format!("{name} must be at least 1")))
            } else {
                Ok(())
            }
        };
        match self {
            RenormKind::Bd(n) | RenormKind::Eda(n) => positive("n", *n),
            RenormKind::Level { a, .. } => unit_interval("a", a),
            RenormKind::Mixture { n, a, .. } => {
                positive("n", *n)?;
                unit_interval("a", a)
            }
            RenormKind::SchreierSeminorm(_) => Ok(()),
            RenormKind::TreeTrunc { k, c } => {
                positive("k", *k)?;
                unit_interval("c", c)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct RenormSpec {
    pub kind: RenormKind,
    pub base: SpaceSpec,
    /// Supports of a block basis. Restrictions never split a block and
    /// admissibility is read off block indices.
    reference: Option<Vec<FiniteSubset>>,
}

impl RenormSpec {
    pub fn new(kind: RenormKind, base: SpaceSpec) -> Result<Self> {
        kind.validate()?;
        Ok(RenormSpec { kind, base, reference: None })
    }

    pub fn with_reference(mut self, blocks: Vec<FiniteSubset>) -> Result<Self> {
        if blocks.iter().any(FiniteSubset::is_empty) {
            return Err(Error::Domain("reference blocks must be nonempty".into()));
        }
        for w in blocks.windows(2) {
            if !w[0].precedes(&w[1]) {
                return Err(Error::NotSuccessive(format!("reference blocks {} and {}", w[0], w[1])));
            }
        }
        self.reference = Some(blocks);
        Ok(self)
    }

    pub fn reference(&self) -> Option<&[FiniteSubset]> {
        self.reference.as_deref()
    }
}

pub fn eval_renorm(x: &SparseVector, spec: &RenormSpec) -> Result<Rational> {
    eval::<Rational>(x, spec)
}

/// [`eval_renorm`] in binary floating point.
pub fn eval_renorm_f64(x: &SparseVector, spec: &RenormSpec) -> Result<f64> {
    eval::<f64>(x, spec)
}

fn power<S: Scalar>(a: &Rational, j: u32) -> S {
    S::from_rational(&pow(a, j))
}

fn eval<S: Scalar>(x: &SparseVector, spec: &RenormSpec) -> Result<S> {
    let table = NormTable::<S>::build(x, &spec.base);
    let units = Units::new(&table.coords, spec.reference())?;
    let m = units.len();
    if m == 0 {
        return Ok(S::nil());
    }
    let base = |p: usize, r: usize| units.base(&table, p, r);
    Ok(match &spec.kind {
        RenormKind::Bd(n) => best_count(m, *n as usize, base),
        RenormKind::Level { j, alpha, a } => level(&units, &table, *j, alpha, a)?,
        RenormKind::Mixture { n, alpha, a } => {
            let mut sum = S::nil();
            for j in 0..*n {
                sum = sum.plus(&level(&units, &table, j, alpha, a)?);
            }
            sum.times(&S::from_rational(&rat(1, *n as i64)))
        }
        RenormKind::Eda(n) => {
            let split = best_splits(&units.labels, &FamilyExpr::schreier(*n as u64), 0, base).pop().flatten();
            power::<S>(&rat(1, 2), *n).times(&split.unwrap_or_else(S::nil))
        }
        RenormKind::SchreierSeminorm(alpha) => S::from_rational(&schreier_norm(x, alpha)),
        RenormKind::TreeTrunc { k, c } => tree(&units, &table, *k, c),
    })
}

fn max_s<S: Scalar>(a: S, b: Option<S>) -> S {
    match b {
        Some(b) if b > a => b,
        _ => a,
    }
}

fn level<S: Scalar>(units: &Units, table: &NormTable<S>, j: u32, alpha: &Ordinal, a: &Rational) -> Result<S> {
    let m = units.len();
    let base = |p: usize, r: usize| units.base(table, p, r);
    if j == 0 {
        return Ok(base(0, m - 1));
    }
    let fam = FamilyExpr::power(FamilyExpr::Schreier(alpha.clone()), j)?;
    let split = best_splits(&units.labels, &fam, 0, base).pop().flatten();
    Ok(power::<S>(a, j).times(&max_s(base(0, m - 1), split)))
}

/// `t[p][r]` holds the tree value of units `p..=r` one level at a time.
fn tree<S: Scalar>(units: &Units, table: &NormTable<S>, k: u32, c: &Rational) -> S {
    let m = units.len();
    let mut t: Vec<Vec<S>> =
        (0..m).map(|p| (0..m).map(|r| if r < p { S::nil() } else { units.base(table, p, r) }).collect()).collect();
    let weights: Vec<(FamilyExpr, S)> = (1..=m as u32)
        .map(|j| (FamilyExpr::schreier(j as u64), S::from_rational(&(c * pow(&rat(1, 2), j)))))
        .collect();
    for _ in 0..k {
        let mut next: Vec<Vec<S>> = vec![vec![S::nil(); m]; m];
        for p in 0..m {
            for (fam, w) in &weights {
                let row = best_splits(&units.labels, fam, p, |q, r| t[q][r].clone());
                for (off, s) in row.into_iter().enumerate() {
                    if let Some(s) = s {
                        let s = w.times(&s);
                        if s > next[p][p + off] {
                            next[p][p + off] = s;
                        }
                    }
                }
            }
        }
        t = next;
    }
    t[0][m - 1].clone()
}

/// `sup Σ_{i≤n₀} ‖E_i x‖` over successive sets that never split a vector of
/// the block basis.
pub fn fi_block_norm(x: &SparseVector, n0: u32, block_basis: &[SparseVector], base: &SpaceSpec) -> Result<Rational> {
    let reference: Vec<FiniteSubset> = block_basis.iter().map(SparseVector::support).collect();
    let spec = RenormSpec::new(RenormKind::Bd(n0), base.clone())?.with_reference(reference)?;
    eval_renorm(x, &spec)
}
