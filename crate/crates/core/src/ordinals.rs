//! Ordinals below epsilon-zero in Cantor normal form.
//!
//! An [`Ordinal`] is a finite list of terms `ω^e · c` with strictly decreasing
//! exponents and positive coefficients; the empty list is zero. These index
//! the Schreier hierarchy, so only the operations the hierarchy needs are
//! provided: comparison, addition, multiplication by a natural number,
//! classification and canonical fundamental sequences.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Maximum height of an exponent tower accepted by the text parser.
pub const MAX_TOWER_HEIGHT: usize = 3;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub exponent: Ordinal,
    pub coefficient: u64,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Ordinal {
    terms: Arc<[Term]>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Kind {
    Zero,
    Successor(Ordinal),
    Limit,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal::default()
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            return Ordinal::zero();
        }
        Ordinal::from_terms(vec![Term {
            exponent: Ordinal::zero(),
            coefficient: n,
        }])
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::nat(1))
    }

    /// `ω^e`.
    pub fn omega_pow(e: Ordinal) -> Self {
        Ordinal::from_terms(vec![Term {
            exponent: e,
            coefficient: 1,
        }])
    }

    /// Builds an ordinal from terms that already satisfy the normal form
    /// invariants. Panics otherwise.
    pub fn from_terms(terms: Vec<Term>) -> Self {
        for w in terms.windows(2) {
            assert!(
                w[0].exponent > w[1].exponent,
                "exponents must strictly decrease"
            );
        }
        assert!(terms.iter().all(|t| t.coefficient >= 1));
        Ordinal {
            terms: terms.into(),
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a natural number, if finite.
    pub fn as_nat(&self) -> Option<u64> {
        match &self.terms[..] {
            [] => Some(0),
            [t] if t.exponent.is_zero() => Some(t.coefficient),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    /// True when the ordinal is below `ω^ω`, i.e. every exponent is finite.
    pub fn below_omega_pow_omega(&self) -> bool {
        self.terms.iter().all(|t| t.exponent.is_finite())
    }

    /// Height of the exponent tower: 0 for naturals, 1 for `ω·k + n`, ...
    pub fn height(&self) -> usize {
        self.terms
            .iter()
            .map(|t| {
                if t.exponent.is_zero() {
                    0
                } else {
                    1 + t.exponent.height()
                }
            })
            .max()
            .unwrap_or(0)
    }

    pub fn classify(&self) -> Kind {
        match self.terms.last() {
            None => Kind::Zero,
            Some(last) if last.exponent.is_zero() => {
                let mut terms = self.terms.to_vec();
                let n = terms.len();
                if last.coefficient == 1 {
                    terms.pop();
                } else {
                    terms[n - 1].coefficient -= 1;
                }
                Kind::Successor(Ordinal::from_terms(terms))
            }
            Some(_) => Kind::Limit,
        }
    }

    pub fn is_limit(&self) -> bool {
        matches!(self.classify(), Kind::Limit)
    }

    /// Ordinal sum `self + other`.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some(lead) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut carry = 0;
        for t in self.terms.iter() {
            match t.exponent.cmp(&lead.exponent) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => carry = t.coefficient,
                Ordering::Less => break,
            }
        }
        for (i, t) in other.terms.iter().enumerate() {
            let mut t = t.clone();
            if i == 0 {
                t.coefficient += carry;
            }
            terms.push(t);
        }
        Ordinal::from_terms(terms)
    }

    /// Ordinal product `self · n` for a positive natural `n`.
    pub fn mul_nat(&self, n: u64) -> Ordinal {
        assert!(n >= 1, "mul_nat needs n >= 1");
        let mut terms = self.terms.to_vec();
        if let Some(first) = terms.first_mut() {
            first.coefficient *= n;
        }
        Ordinal::from_terms(terms)
    }

    /// The `n`-th element of the canonical fundamental sequence of a limit
    /// ordinal: `ω^(a+1)[n] = ω^a·n`, `ω^λ[n] = ω^(λ[n])`, and a sum is
    /// handled by peeling its last term.
    pub fn fund_seq(&self, n: u64) -> Result<Ordinal> {
        if n == 0 {
            return Err(Error::Domain("fundamental sequence index starts at 1".into()));
        }
        if !self.is_limit() {
            return Err(Error::NotLimit(self.to_string()));
        }
        let mut terms = self.terms.to_vec();
        let last = terms.pop().expect("limit ordinals are nonzero");
        if last.coefficient > 1 {
            terms.push(Term {
                exponent: last.exponent.clone(),
                coefficient: last.coefficient - 1,
            });
        }
        let prefix = Ordinal::from_terms(terms);
        let tail = match last.exponent.classify() {
            Kind::Zero => unreachable!("last exponent of a limit is positive"),
            Kind::Successor(pred) => Ordinal::omega_pow(pred).mul_nat(n),
            Kind::Limit => Ordinal::omega_pow(last.exponent.fund_seq(n)?),
        };
        Ok(prefix.add(&tail))
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.terms[..] {
            [] => write!(f, "0"),
            [t] if t.exponent.is_zero() => write!(f, "{}", t.coefficient),
            [t] if t.coefficient == 1 => {
                write!(f, "w")?;
                if t.exponent != Ordinal::nat(1) {
                    write!(f, "^")?;
                    t.exponent.fmt_atom(f)?;
                }
                Ok(())
            }
            _ => write!(f, "({self})"),
        }
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            let c = a
                .exponent
                .cmp(&b.exponent)
                .then(a.coefficient.cmp(&b.coefficient));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coefficient)?;
                continue;
            }
            write!(f, "w")?;
            if t.exponent != Ordinal::nat(1) {
                write!(f, "^")?;
                t.exponent.fmt_atom(f)?;
            }
            if t.coefficient > 1 {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Ordinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = OrdinalParser { src: s, pos: 0 };
        let o = p.sum()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("unexpected trailing input"));
        }
        o.check_ceiling()?;
        Ok(o)
    }
}

impl Ordinal {
    pub(crate) fn check_ceiling(&self) -> Result<()> {
        if self.height() > MAX_TOWER_HEIGHT {
            return Err(Error::Ceiling(format!(
                "ordinal tower height {} exceeds {}",
                self.height(),
                MAX_TOWER_HEIGHT
            )));
        }
        Ok(())
    }
}

/// Recursive-descent parser for `w^2*3+w+4` style input.
pub(crate) struct OrdinalParser<'a> {
    pub(crate) src: &'a str,
    pub(crate) pos: usize,
}

impl<'a> OrdinalParser<'a> {
    pub(crate) fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    pub(crate) fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "natural number out of range".into(),
            })
    }

    pub(crate) fn sum(&mut self) -> Result<Ordinal> {
        self.sum_depth(0)
    }

    fn product(&mut self, depth: usize) -> Result<Ordinal> {
        let base = self.atom(depth)?;
        if self.eat(b'*') {
            let n = self.nat()?;
            if n == 0 {
                return Ok(Ordinal::zero());
            }
            return Ok(base.mul_nat(n));
        }
        Ok(base)
    }

    fn atom(&mut self, depth: usize) -> Result<Ordinal> {
        if depth > 16 {
            return Err(self.error("nesting too deep"));
        }
        self.skip_ws();
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                if self.eat(b'^') {
                    let e = self.atom(depth + 1)?;
                    Ok(Ordinal::omega_pow(e))
                } else {
                    Ok(Ordinal::omega())
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum_depth(depth + 1)?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'0'..=b'9') => Ok(Ordinal::nat(self.nat()?)),
            _ => Err(self.error("expected an ordinal")),
        }
    }

    fn sum_depth(&mut self, depth: usize) -> Result<Ordinal> {
        let mut acc = self.product(depth)?;
        while self.eat(b'+') {
            let t = self.product(depth)?;
            acc = acc.add(&t);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn comparisons() {
        assert_eq!(o("w").cmp(&o("3")), Ordering::Greater);
        assert_eq!(o("0").cmp(&o("0")), Ordering::Equal);
        assert_eq!(o("w^2+w").cmp(&o("w*5")), Ordering::Greater);
        assert!(o("w^w") > o("w^5*100"));
    }

    #[test]
    fn addition() {
        assert_eq!(o("1").add(&o("w")), o("w"));
        assert_eq!(o("w").add(&o("1")), o("w+1"));
        assert_eq!(o("w*2+3").add(&o("w")), o("w*3"));
    }

    #[test]
    fn multiplication_by_naturals() {
        assert_eq!(o("w").mul_nat(3), o("w*3"));
        assert_eq!(o("w+1").mul_nat(2), o("w*2+1"));
        assert_eq!(o("5").mul_nat(4), o("20"));
    }

    #[test]
    fn fundamental_sequences() {
        assert_eq!(o("w").fund_seq(5).unwrap(), o("5"));
        assert_eq!(o("w^2").fund_seq(3).unwrap(), o("w*3"));
        assert_eq!(o("w*2").fund_seq(4).unwrap(), o("w+4"));
        assert_eq!(o("w^w").fund_seq(3).unwrap(), o("w^3"));
        assert!(matches!(o("w+1").fund_seq(2), Err(Error::NotLimit(_))));
        assert!(o("0").fund_seq(1).is_err());
    }

    #[test]
    fn classification() {
        assert_eq!(o("0").classify(), Kind::Zero);
        assert_eq!(o("w+2").classify(), Kind::Successor(o("w+1")));
        assert_eq!(o("w^2").classify(), Kind::Limit);
    }

    #[test]
    fn printing_round_trips() {
        for s in ["0", "7", "w", "w+4", "w^2*3+w+4", "w^w", "w^(w+1)*2+w^3", "w^w^w"] {
            assert_eq!(o(s).to_string(), s);
        }
    }

    #[test]
    fn parser_rejects_garbage_with_position() {
        match "w^2*+1".parse::<Ordinal>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            "w^w^w^w".parse::<Ordinal>(),
            Err(Error::Ceiling(_))
        ));
    }
}
