//! Parameters of Tsirelson-type norms.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::FamilyExpr;
use crate::ordinals::Ordinal;
use crate::rational::{in_open_unit, parse_rational, pow, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Level {
    pub family: FamilyExpr,
    pub theta: Rational,
}

/// The rule `(S_n, c·base^n)` for every `n ≥ 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decay {
    pub c: Rational,
    pub base: Rational,
}

/// Which level a split uses: an index into the listed levels, or `n` for
/// the decay rule.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelRef {
    Listed(usize),
    Decay(u32),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpaceSpec {
    levels: Vec<Level>,
    decay: Option<Decay>,
}

impl SpaceSpec {
    pub fn new(levels: Vec<Level>, decay: Option<Decay>) -> Result<Self> {
        for (i, l) in levels.iter().enumerate() {
            if !in_open_unit(&l.theta) {
                return Err(Error::InvalidSpace(format!(
                    "level {i} has theta {} outside (0,1)",
                    l.theta
                )));
            }
        }
        if let Some(d) = &decay {
            if !d.c.is_positive() || !in_open_unit(&d.base) || !in_open_unit(&(&d.c * &d.base)) {
                return Err(Error::InvalidSpace(format!(
                    "decay rule c={} base={} needs c > 0, base in (0,1) and c*base < 1",
                    d.c, d.base
                )));
            }
        }
        if levels.is_empty() && decay.is_none() {
            return Err(Error::InvalidSpace("a space needs at least one level".into()));
        }
        Ok(SpaceSpec { levels, decay })
    }

    /// `T(S_α, θ)`.
    pub fn tsirelson(alpha: impl Into<Ordinal>, theta: Rational) -> Result<Self> {
        SpaceSpec::new(vec![Level { family: FamilyExpr::Schreier(alpha.into()), theta }], None)
    }

    /// `T(S_n, c·base^n)`.
    pub fn mixed(c: Rational, base: Rational) -> Result<Self> {
        SpaceSpec::new(Vec::new(), Some(Decay { c, base }))
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn decay(&self) -> Option<&Decay> {
        self.decay.as_ref()
    }

    pub fn theta(&self, l: LevelRef) -> Rational {
        match l {
            LevelRef::Listed(i) => self.levels[i].theta.clone(),
            LevelRef::Decay(n) => {
                let d = self.decay.as_ref().expect("decay rule");
                &d.c * pow(&d.base, n)
            }
        }
    }

    pub fn family(&self, l: LevelRef) -> FamilyExpr {
        match l {
            LevelRef::Listed(i) => self.levels[i].family.clone(),
            LevelRef::Decay(n) => FamilyExpr::schreier(n as u64),
        }
    }

    /// Whether the reference names a level of this space.
    pub fn has_level(&self, l: LevelRef) -> bool {
        match l {
            LevelRef::Listed(i) => i < self.levels.len(),
            LevelRef::Decay(n) => n >= 1 && self.decay.is_some(),
        }
    }

    /// Levels consulted on a support of `m` points: every listed level, and
    /// decay levels up to the first `n` whose class contains every set of at
    /// most `m` integers that are all at least 2. Larger `n` have smaller
    /// weights and no new admissible partitions (a split into two or more
    /// pieces is never admissible when a minimum is 1).
    pub fn active_levels(&self, m: usize) -> Vec<LevelRef> {
        let mut out: Vec<LevelRef> = (0..self.levels.len()).map(LevelRef::Listed).collect();
        if self.decay.is_some() {
            let mut n = 1u32;
            while maximal_len_from_two(n) < m as u64 {
                n += 1;
            }
            out.extend((1..=n).map(LevelRef::Decay));
        }
        out
    }
}

/// Size of the maximal `S_n` set with minimum 2, saturating.
fn maximal_len_from_two(n: u32) -> u64 {
    // len(n, m) = m for n = 1; otherwise m blocks packed consecutively.
    fn len(n: u32, m: u64) -> u64 {
        if n == 1 {
            return m;
        }
        let mut next = m;
        let mut total = 0u64;
        for _ in 0..m {
            let b = len(n - 1, next);
            total = total.saturating_add(b);
            next = next.saturating_add(b);
            if total > 1 << 40 {
                return u64::MAX;
            }
        }
        total
    }
    len(n, 2)
}

#[derive(Serialize, Deserialize)]
struct RawLevel {
    family: String,
    theta: String,
}

#[derive(Serialize, Deserialize)]
struct RawDecay {
    c: String,
    base: String,
}

#[derive(Serialize, Deserialize)]
struct RawSpace {
    #[serde(default)]
    levels: Vec<RawLevel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    decay: Option<RawDecay>,
}

impl Serialize for SpaceSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawSpace {
            levels: self
                .levels
                .iter()
                .map(|l| RawLevel { family: l.family.to_string(), theta: l.theta.to_string() })
                .collect(),
            decay: self
                .decay
                .as_ref()
                .map(|d| RawDecay { c: d.c.to_string(), base: d.base.to_string() }),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpaceSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawSpace::deserialize(d)?;
        from_raw(raw).map_err(D::Error::custom)
    }
}

fn from_raw(raw: RawSpace) -> Result<SpaceSpec> {
    let levels = raw
        .levels
        .iter()
        .map(|l| Ok(Level { family: l.family.parse()?, theta: parse_rational(&l.theta)? }))
        .collect::<Result<Vec<_>>>()?;
    let decay = match raw.decay {
        Some(d) => Some(Decay { c: parse_rational(&d.c)?, base: parse_rational(&d.base)? }),
        None => None,
    };
    SpaceSpec::new(levels, decay)
}

impl FromStr for SpaceSpec {
    type Err = Error;

    /// Accepts JSON (`{"levels":[{"family":"S(1)","theta":"1/2"}],
    /// "decay":{"c":"3/4","base":"1/2"}}`), the shorthands `T`,
    /// `tsirelson:<ordinal>:<theta>` and `mixed:<c>:<base>`, or
    /// `|`-separated parts each `<family>@<theta>` or `decay:<c>:<base>`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('{') {
            let raw: RawSpace = serde_json::from_str(t)
                .map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
            return from_raw(raw);
        }
        if t == "T" {
            return SpaceSpec::tsirelson(1, crate::rational::rat(1, 2));
        }
        if let Some(rest) = t.strip_prefix("tsirelson:") {
            let (a, th) = rest.rsplit_once(':').ok_or_else(|| bad(t))?;
            return SpaceSpec::tsirelson(a.trim().parse::<Ordinal>()?, parse_rational(th)?);
        }
        if let Some(rest) = t.strip_prefix("mixed:") {
            let (c, b) = rest.split_once(':').ok_or_else(|| bad(t))?;
            return SpaceSpec::mixed(parse_rational(c)?, parse_rational(b)?);
        }
        let mut levels = Vec::new();
        let mut decay = None;
        for part in t.split('|') {
            let part = part.trim();
            if let Some(rest) = part.strip_prefix("decay:") {
                let (c, b) = rest.split_once(':').ok_or_else(|| bad(part))?;
                decay = Some(Decay { c: parse_rational(c)?, base: parse_rational(b)? });
            } else {
                let (f, th) = part.rsplit_once('@').ok_or_else(|| bad(part))?;
                levels.push(Level { family: f.trim().parse()?, theta: parse_rational(th)? });
            }
        }
        SpaceSpec::new(levels, decay)
    }
}

fn bad(s: &str) -> Error {
    Error::Parse { pos: 0, msg: format!("cannot read space {s:?}") }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> =
            self.levels.iter().map(|l| format!("{}@{}", l.family, l.theta)).collect();
        if let Some(d) = &self.decay {
            parts.push(format!("decay:{}:{}", d.c, d.base));
        }
        f.write_str(&parts.join("|"))
    }
}
