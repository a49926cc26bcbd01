//! Two-point distortion of `T = T_{1/2}` by the norm `bd(n)`: a flat
//! average `y` on which `bd(n)` is close to the original norm, and a sum `z`
//! of `n` normalized flat averages on which it is close to twice as large.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::split::best_count;
use crate::error::{Error, Result};
use crate::families::FiniteSubset;
use crate::rational::{rat, Rational};
use crate::scalar::{Scalar, FLOAT_TOLERANCE};
use crate::spaces::{norm, NormTable, SpaceSpec, SparseVector};

/// Largest support of one vector evaluated in exact arithmetic; larger
/// experiments switch to floating point.
pub const EXACT_MAX_SUPPORT: u64 = 300;
/// Largest support of one vector evaluated at all.
pub const FLOAT_MAX_SUPPORT: u64 = 600;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DistortMode {
    Exact,
    Float,
}

impl fmt::Display for DistortMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistortMode::Exact => "exact",
            DistortMode::Float => "float",
        })
    }
}

impl FromStr for DistortMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "exact" => Ok(DistortMode::Exact),
            "float" => Ok(DistortMode::Float),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown mode '{s}' (exact, float)") }),
        }
    }
}

/// How the sizes `k_i` of the averages making up `z` are chosen.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Schedule {
    /// `k_{i+1} = max(2k_i, 4·max supp z_i)`.
    Growth,
    /// Every `k_i = k_0`.
    Constant,
    Explicit(Vec<u64>),
}

impl Schedule {
    /// Sizes and start points of the `n` averages, packed left to right with
    /// each average starting no earlier than its size or `n`.
    fn layout(&self, n: u32, k0: u64) -> Result<Vec<(u64, u64)>> {
        let ks: Vec<u64> = match self {
            Schedule::Explicit(ks) => {
                if ks.len() != n as usize {
                    return Err(Error::Domain(format!("schedule lists {} sizes for n = {n}", ks.len())));
                }
                ks.clone()
            }
            _ => vec![k0; n as usize],
        };
        if ks.contains(&0) {
            return Err(Error::Domain("average sizes must be positive".into()));
        }
        let mut out: Vec<(u64, u64)> = Vec::new();
        let mut next = n as u64;
        for i in 0..n as usize {
            let k = match (self, out.last()) {
                (Schedule::Growth, Some(&(k, start))) => (2 * k).max(4 * (start + k - 1)),
                _ => ks[i],
            };
            let start = next.max(k);
            out.push((k, start));
            next = start + k;
        }
        Ok(out)
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schedule::Growth => f.write_str("growth"),
            Schedule::Constant => f.write_str("constant"),
            Schedule::Explicit(ks) => {
                let parts: Vec<String> = ks.iter().map(u64::to_string).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

impl FromStr for Schedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "growth" => Ok(Schedule::Growth),
            "constant" => Ok(Schedule::Constant),
            t => t
                .split(',')
                .map(|p| p.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(Schedule::Explicit)
                .map_err(|_| Error::Parse { pos: 0, msg: format!("bad schedule '{s}' (growth, constant, k1,k2,…)") }),
        }
    }
}

/// Text form of a value in the mode's arithmetic.
trait Shown: Scalar {
    const EXACT: bool;
    fn show(&self) -> String;
    fn approx(&self) -> f64;
    fn over(&self, o: &Self) -> Self;
}

impl Shown for Rational {
    const EXACT: bool = true;
    fn show(&self) -> String {
        self.to_string()
    }
    fn approx(&self) -> f64 {
        crate::rational::to_f64(self)
    }
    fn over(&self, o: &Self) -> Self {
        self / o
    }
}

impl Shown for f64 {
    const EXACT: bool = false;
    fn show(&self) -> String {
        format!("{self:?}")
    }
    fn approx(&self) -> f64 {
        *self
    }
    fn over(&self, o: &Self) -> Self {
        self / o
    }
}

/// One inequality the construction relies on, as evaluated.
#[derive(Clone, Debug, Serialize)]
pub struct Slack {
    pub step: String,
    pub lhs: String,
    pub rhs: String,
    /// `rhs − lhs` for upper bounds, `lhs − rhs` for lower bounds.
    pub slack: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistortionReport {
    pub n: u32,
    pub mode: DistortMode,
    /// Why the run left exact arithmetic, if it did.
    pub fallback: Option<String>,
    pub schedule: String,
    /// `(k_i, start of z_i)`.
    pub blocks: Vec<(u64, u64)>,
    pub k_y: u64,
    pub y: SparseVector,
    pub z: SparseVector,
    pub y_norm: String,
    pub y_bd: String,
    pub z_norm: String,
    pub z_bd: String,
    pub block_norms: Vec<String>,
    /// `(|z|/‖z‖)·(‖y‖/|y|)` with `|·| = bd(n)`.
    pub ratio: String,
    /// Bounds on the exact ratio; a single point in exact mode.
    pub ratio_interval: (f64, f64),
    pub ledger: Vec<Slack>,
    /// The ratio recomputes from the reported norms and is at least the
    /// floor the ledger's inequalities give.
    pub consistent: bool,
}

impl DistortionReport {
    pub fn ratio_lower(&self) -> f64 {
        self.ratio_interval.0
    }
}

fn flat_average(k: u64, start: u64) -> SparseVector {
    SparseVector::indicator(&FiniteSubset::interval(start, start + k - 1)).scale(&rat(1, k as i64))
}

fn norm_and_bd<S: Scalar>(x: &SparseVector, space: &SpaceSpec, n: u32) -> (S, S) {
    let t = NormTable::<S>::build(x, space);
    let m = t.len();
    let bd = best_count(m, n as usize, |p, r| t.v(p, r).clone());
    (t.total(), bd)
}

pub fn distortion_experiment(
    n: u32,
    k0: u64,
    schedule: &Schedule,
    mode: DistortMode,
    eps_budget: &Rational,
) -> Result<DistortionReport> {
    if n == 0 || k0 == 0 {
        return Err(Error::Domain("n and k0 must be positive".into()));
    }
    let space = SpaceSpec::tsirelson(1u64, rat(1, 2))?;
    let blocks = schedule.layout(n, k0)?;
    let total: u64 = blocks.iter().map(|b| b.0).sum();
    if total > FLOAT_MAX_SUPPORT {
        return Err(Error::Budget(format!(
            "schedule {schedule} needs {total} points, more than {FLOAT_MAX_SUPPORT}"
        )));
    }
    let k_y = total;
    let two_over_n = rat(2, n as i64);
    let mut z = SparseVector::default();
    for &(k, start) in &blocks {
        let avg = flat_average(k, start);
        let scale = &two_over_n / norm(&avg, &space);
        z = z.add(&avg.scale(&scale));
    }
    let y = flat_average(k_y, k_y);
    let (mode, fallback) = if mode == DistortMode::Exact && total > EXACT_MAX_SUPPORT {
        (DistortMode::Float, Some(format!("{total} points exceed the exact limit {EXACT_MAX_SUPPORT}")))
    } else {
        (mode, None)
    };
    let run = Run { n, space: &space, blocks: &blocks, k_y, eps_budget, two_over_n: &two_over_n };
    let mut report = match mode {
        DistortMode::Exact => run.evaluate::<Rational>(&y, &z),
        DistortMode::Float => run.evaluate::<f64>(&y, &z),
    };
    report.mode = mode;
    report.fallback = fallback;
    report.schedule = schedule.to_string();
    report.y = y;
    report.z = z;
    Ok(report)
}

struct Run<'a> {
    n: u32,
    space: &'a SpaceSpec,
    blocks: &'a [(u64, u64)],
    k_y: u64,
    eps_budget: &'a Rational,
    two_over_n: &'a Rational,
}

fn upper<S: Shown>(step: String, lhs: &S, rhs: &S) -> Slack {
    Slack {
        step,
        lhs: lhs.show(),
        rhs: rhs.show(),
        slack: rhs.plus(&lhs.times(&S::from_rational(&rat(-1, 1)))).show(),
        holds: lhs <= rhs || lhs.same(rhs),
    }
}

fn lower<S: Shown>(step: String, lhs: &S, rhs: &S) -> Slack {
    let mut s = upper(step, rhs, lhs);
    std::mem::swap(&mut s.lhs, &mut s.rhs);
    s
}

impl Run<'_> {
    fn evaluate<S: Shown>(&self, y: &SparseVector, z: &SparseVector) -> DistortionReport {
        let n = self.n;
        let (y_norm, y_bd) = norm_and_bd::<S>(y, self.space, n);
        let (z_norm, z_bd) = norm_and_bd::<S>(z, self.space, n);
        let half_n = S::from_rational(&(Rational::from_integer(1.into()) / self.two_over_n));
        let block_norms: Vec<S> = self
            .blocks
            .iter()
            .map(|&(k, start)| NormTable::<S>::build(&z.restrict(start, start + k - 1), self.space).total().times(&half_n))
            .collect();
        let one = S::from_rational(&rat(1, 1));
        let mut ledger = Vec::new();
        let y_factor = S::from_rational(&(rat(1, 1) + rat(n as i64, self.k_y as i64)));
        ledger.push(upper(format!("bd({n}) of y ≤ (1 + n/k_y)·‖y‖"), &y_bd, &y_factor.times(&y_norm)));
        for (i, b) in block_norms.iter().enumerate() {
            let mut s = upper(format!("‖z_{}‖ = 1", i + 1), b, &one);
            s.holds = b.same(&one);
            ledger.push(s);
        }
        let mass = block_norms.iter().fold(S::nil(), |acc, b| acc.plus(b)).times(&S::from_rational(self.two_over_n));
        ledger.push(lower(format!("bd({n}) of z ≥ (2/n)·Σ‖z_i‖"), &z_bd, &mass));
        let cap = S::from_rational(&(rat(1, 1) + self.eps_budget));
        ledger.push(upper(format!("‖z‖ ≤ 1 + ε with ε = {}", self.eps_budget), &z_norm, &cap));

        let ratio = z_bd.over(&z_norm).times(&y_norm.over(&y_bd));
        let floor = mass.over(&z_norm).over(&y_factor);
        let used = ledger[0].holds && ledger[ledger.len() - 2].holds;
        let consistent = used && (ratio >= floor || ratio.same(&floor));
        let r = ratio.approx();
        let ratio_interval = if S::EXACT {
            (r, r)
        } else {
            let q = (1.0 - FLOAT_TOLERANCE) / (1.0 + FLOAT_TOLERANCE);
            (r * q * q, r / (q * q))
        };
        DistortionReport {
            n,
            mode: DistortMode::Exact,
            fallback: None,
            schedule: String::new(),
            blocks: self.blocks.to_vec(),
            k_y: self.k_y,
            y: SparseVector::default(),
            z: SparseVector::default(),
            y_norm: y_norm.show(),
            y_bd: y_bd.show(),
            z_norm: z_norm.show(),
            z_bd: z_bd.show(),
            block_norms: block_norms.iter().map(Shown::show).collect(),
            ratio: ratio.show(),
            ratio_interval,
            ledger,
            consistent,
        }
    }
}
