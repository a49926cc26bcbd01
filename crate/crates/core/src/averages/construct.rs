use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::WeightedSet;
use crate::error::{Error, Result};
use crate::families::Subsequence;
use crate::ordinals::{Kind, Ordinal};
use crate::rational::Rational;

/// Largest support `average` will materialize.
pub const DEFAULT_SUPPORT_BUDGET: u64 = 1_000_000;

/// Strict inequalities `x < ε` are enforced as `x ≤ ε − ε·2⁻²⁰`.
fn strict(eps: &Rational) -> Rational {
    eps - eps / Rational::from_integer(BigInt::from(1u64 << 20))
}

/// Smallest `k ≥ 1` with `1/k ≤ bound`.
fn min_k(bound: &Rational) -> BigInt {
    let (q, r) = bound.denom().div_rem(bound.numer());
    let k = if r.is_positive() { q + 1 } else { q };
    k.max(BigInt::one())
}

/// `average_with_budget` with [`DEFAULT_SUPPORT_BUDGET`].
pub fn average(alpha: &Ordinal, beta: &Ordinal, eps: &Rational, m: &Subsequence) -> Result<WeightedSet> {
    average_with_budget(alpha, beta, eps, m, DEFAULT_SUPPORT_BUDGET)
}

/// An `(α, β, ε)`-average along `M`: a set `F ∈ S_α(M)` with positive
/// weights summing to 1 such that every `G ⊆ F` in `S_β` has mass `< ε`.
///
/// Every free choice (k, the block indices n_i, how far along M each block
/// starts) takes the least value satisfying the inequality it has to meet,
/// so the support is the smallest this recipe allows. That can still be
/// enormous; the budget caps it.
pub fn average_with_budget(
    alpha: &Ordinal,
    beta: &Ordinal,
    eps: &Rational,
    m: &Subsequence,
    max_support: u64,
) -> Result<WeightedSet> {
    if beta >= alpha {
        return Err(Error::Precondition(format!("β = {beta} is not below α = {alpha}")));
    }
    if !eps.is_positive() {
        return Err(Error::Domain(format!("ε = {eps} must be positive")));
    }
    let mut b = Builder { m, left: max_support };
    let points = b.build(alpha, beta, eps, 0)?;
    Ok(WeightedSet::from_parts(points))
}

/// A `t` such that every `G ∈ S_β` with `min G ≥ t` lies in `S_γ`, for
/// `β ≤ γ`. Read off the fundamental sequences; not always the least one.
pub fn inclusion_threshold(beta: &Ordinal, gamma: &Ordinal) -> Result<u64> {
    if beta > gamma {
        return Err(Error::Precondition(format!("{beta} exceeds {gamma}")));
    }
    let mut g = gamma.clone();
    // S_δ ⊆ S_{δ+1}, so successor steps cost nothing.
    loop {
        if *beta == g {
            return Ok(1);
        }
        match g.classify() {
            Kind::Successor(p) if *beta <= p => g = p,
            Kind::Successor(_) | Kind::Zero => unreachable!("β < g"),
            Kind::Limit => break,
        }
    }
    // g is a limit above β: S_{g[n]} ∩ {min ≥ n} ⊆ S_g.
    let mut n = 1;
    loop {
        let gn = g.fund_seq(n)?;
        if *beta <= gn {
            return Ok(n.max(inclusion_threshold(beta, &gn)?));
        }
        n += 1;
    }
}

type Points = Vec<(u64, Rational)>;

struct Builder<'a> {
    m: &'a Subsequence,
    left: u64,
}

impl Builder<'_> {
    /// `m_i`, checking the coordinate stays representable.
    fn at(&self, i: u64) -> Result<u64> {
        let p = self.m.prefix().len() as u64;
        if i > p {
            let off = (i - p - 1).checked_mul(self.m.step());
            if off.and_then(|o| o.checked_add(self.m.start())).is_none() {
                return Err(Error::Budget(format!("index {i} of the subsequence overflows")));
            }
        }
        Ok(self.m.nth(i))
    }

    fn take(&mut self, count: &BigInt) -> Result<u64> {
        let c = self.fits(count)?;
        self.left -= c;
        Ok(c)
    }

    fn fits(&self, count: &BigInt) -> Result<u64> {
        match count.to_u64() {
            Some(c) if c <= self.left => Ok(c),
            _ => Err(Error::Budget(format!(
                "an average block needs {count} points, only {} remain of the support budget",
                self.left
            ))),
        }
    }

    /// Index in `M` of a coordinate already produced from `M`.
    fn index(&self, x: u64) -> u64 {
        self.m.index_of(x).expect("constructed points lie on M")
    }

    /// Builds on the tail `(m_{skip+1}, m_{skip+2}, …)`.
    fn build(&mut self, alpha: &Ordinal, beta: &Ordinal, eps: &Rational, skip: u64) -> Result<Points> {
        match alpha.classify() {
            Kind::Zero => unreachable!("β < α rules out α = 0"),
            Kind::Limit => {
                let mut n = 1;
                let an = loop {
                    let an = alpha.fund_seq(n)?;
                    if *beta < an {
                        break an;
                    }
                    n += 1;
                };
                self.build(&an, beta, eps, skip + n - 1)
            }
            Kind::Successor(gamma) if *beta < gamma => {
                // Past the threshold every S_β subset is an S_γ subset.
                let t = inclusion_threshold(beta, &gamma)?;
                self.build(alpha, &gamma, eps, skip.max(t - 1))
            }
            Kind::Successor(gamma) if gamma.is_zero() => self.uniform(eps, skip),
            Kind::Successor(gamma) => {
                let k = min_k(&strict(&(eps / Rational::from_integer(2.into()))));
                // Each of the k blocks needs at least one point.
                let k = self.fits(&k)?;
                self.take(&BigInt::one())?;
                let blocks = if gamma.is_limit() {
                    self.limit_blocks(&gamma, k, skip)?
                } else {
                    self.successor_blocks(&gamma, k, skip)?
                };
                let scale = Rational::new(1.into(), k.into());
                Ok(blocks.into_iter().flatten().map(|(i, a)| (i, a * &scale)).collect())
            }
        }
    }

    /// `1/k < ε`, `|F| = k`, `F > m_k`, uniform weights.
    fn uniform(&mut self, eps: &Rational, skip: u64) -> Result<Points> {
        let k = self.take(&min_k(&strict(eps)))?;
        let w = Rational::new(1.into(), k.into());
        (skip + k + 1..=skip + 2 * k).map(|i| Ok((self.at(i)?, w.clone()))).collect()
    }

    /// `α = γ+1`, `γ` a limit: blocks `F_i ∈ S_{γ_{n_i}}(M)` with
    /// `m_{n_i} < F_i`, where `F_{i+1}` gives mass `< 1/2^i` to every subset
    /// in `S_{γ_ℓ}` for `ℓ ≤ max F_i`.
    fn limit_blocks(&mut self, gamma: &Ordinal, k: u64, skip: u64) -> Result<Vec<Points>> {
        let first = skip + k.max(2);
        let mut blocks = vec![vec![(self.at(first)?, Rational::one())]];
        let mut n_prev = 1;
        let mut half = Rational::one();
        for _ in 1..k {
            half /= Rational::from_integer(2.into());
            let last = blocks.last().and_then(|b| b.last()).expect("blocks are nonempty").0;
            let gl = gamma.fund_seq(last)?;
            let mut n = n_prev + 1;
            while gamma.fund_seq(n)? <= gl {
                n += 1;
            }
            let mut t = 1;
            for l in 1..=last {
                t = t.max(inclusion_threshold(&gamma.fund_seq(l)?, &gl)?);
            }
            let start = (skip + n).max(self.index(last)).max(t - 1);
            blocks.push(self.build(&gamma.fund_seq(n)?, &gl, &half, start)?);
            n_prev = n;
        }
        Ok(blocks)
    }

    /// `α = γ+1`, `γ = η+1`: blocks `F_i ∈ S_γ(M)` where `F_{i+1}` gives
    /// mass `< 1/(2^i·max F_i)` to every subset in `S_η`.
    fn successor_blocks(&mut self, gamma: &Ordinal, k: u64, skip: u64) -> Result<Vec<Points>> {
        let Kind::Successor(eta) = gamma.classify() else {
            unreachable!("caller checked γ is a successor")
        };
        let mut blocks = vec![vec![(self.at(skip + k)?, Rational::one())]];
        let mut scale = Rational::one();
        for _ in 1..k {
            let last = blocks.last().and_then(|b| b.last()).expect("blocks are nonempty").0;
            scale /= Rational::from_integer(2.into());
            let eps = &scale / Rational::from_integer(last.into());
            blocks.push(self.build(gamma, &eta, &eps, self.index(last))?);
        }
        Ok(blocks)
    }
}
