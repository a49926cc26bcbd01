//! Text grammar for family expressions.
//!
//! ```text
//! expr    := postfix
//! postfix := primary ( '[' expr ']' | '^' nat )*
//! primary := 'S(' ordinal ')' | '(' expr ')'
//!          | 'concat(' part (',' part)* ')'          part := postfix ('^' nat)?
//!          | 'spread(' expr (';' option)* ')'        option := prefix=n,.. | start=n | step=n
//!          | 'explicit{' ( 'universe=' nat | set ) separated by ';' or ',' '}'
//! ```
//! Inside `concat`, a top-level `^n` is the multiplicity; parenthesize a part
//! to raise it to a power.

use crate::error::{Error, Result};
use crate::families::{ExplicitFamily, FamilyExpr, FiniteSubset, Subsequence};
use crate::ordinals::OrdinalParser;

pub(crate) fn parse_family(src: &str) -> Result<FamilyExpr> {
    let mut p = Parser { src, pos: 0 };
    let e = p.postfix(false)?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("expected a natural number"));
        }
        self.pos += len;
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::Parse { pos: start, msg: "natural number out of range".into() })
    }

    fn exponent(&mut self) -> Result<u32> {
        let at = self.pos;
        let n = self.nat()?;
        u32::try_from(n)
            .ok()
            .filter(|&n| n >= 1)
            .ok_or(Error::Parse { pos: at, msg: "exponent must be between 1 and 2^32-1".into() })
    }

    fn postfix(&mut self, stop_at_caret: bool) -> Result<FamilyExpr> {
        let mut e = self.primary()?;
        loop {
            match self.peek() {
                Some(b'[') => {
                    self.pos += 1;
                    let inner = self.postfix(false)?;
                    self.expect(b']')?;
                    e = FamilyExpr::compose(e, inner);
                }
                Some(b'^') if !stop_at_caret => {
                    self.pos += 1;
                    e = FamilyExpr::power(e, self.exponent()?)?;
                }
                _ => return Ok(e),
            }
        }
    }

    fn primary(&mut self) -> Result<FamilyExpr> {
        if self.eat(b'(') {
            let e = self.postfix(false)?;
            self.expect(b')')?;
            return Ok(e);
        }
        if self.keyword("concat") {
            self.expect(b'(')?;
            let mut parts = Vec::new();
            loop {
                let part = self.postfix(true)?;
                let m = if self.eat(b'^') { self.exponent()? } else { 1 };
                parts.push((part, m));
                if !self.eat(b',') {
                    break;
                }
            }
            self.expect(b')')?;
            return FamilyExpr::concat(parts);
        }
        if self.keyword("spread") {
            return self.spread();
        }
        if self.keyword("explicit") {
            return self.explicit();
        }
        if self.keyword("S") {
            self.expect(b'(')?;
            self.skip_ws();
            let mut op = OrdinalParser { src: self.src, pos: self.pos };
            let a = op.sum()?;
            self.pos = op.pos;
            let at = self.pos;
            a.check_ceiling().map_err(|e| match e {
                Error::Ceiling(m) => Error::Ceiling(format!("{m} (at byte {at})")),
                e => e,
            })?;
            self.expect(b')')?;
            return Ok(FamilyExpr::Schreier(a));
        }
        Err(self.error("expected S(..), concat(..), spread(..), explicit{..} or '('"))
    }

    fn spread(&mut self) -> Result<FamilyExpr> {
        self.expect(b'(')?;
        let base = self.postfix(false)?;
        let (mut prefix, mut start, mut step) = (Vec::new(), None, 1);
        while self.eat(b';') {
            let at = self.pos;
            if self.keyword("prefix") {
                self.expect(b'=')?;
                if matches!(self.peek(), Some(b'0'..=b'9')) {
                    prefix.push(self.nat()?);
                    while self.eat(b',') {
                        prefix.push(self.nat()?);
                    }
                }
            } else if self.keyword("start") {
                self.expect(b'=')?;
                start = Some(self.nat()?);
            } else if self.keyword("step") {
                self.expect(b'=')?;
                step = self.nat()?;
            } else {
                return Err(Error::Parse { pos: at, msg: "expected prefix=, start= or step=".into() });
            }
        }
        let at = self.pos;
        self.expect(b')')?;
        let start = start.unwrap_or_else(|| prefix.last().map_or(step, |l| l + step));
        let n = Subsequence::new(prefix, start, step)
            .map_err(|e| Error::Parse { pos: at, msg: e.to_string() })?;
        Ok(FamilyExpr::spread(base, n))
    }

    fn explicit(&mut self) -> Result<FamilyExpr> {
        self.expect(b'{')?;
        let mut universe = None;
        let mut sets = Vec::new();
        if !self.eat(b'}') {
            loop {
                if self.keyword("universe") {
                    self.expect(b'=')?;
                    universe = Some(self.nat()?);
                } else {
                    sets.push(self.set()?);
                }
                if !(self.eat(b';') || self.eat(b',')) {
                    break;
                }
            }
            self.expect(b'}')?;
        }
        let at = self.pos;
        let universe = universe.unwrap_or_else(|| sets.iter().filter_map(FiniteSubset::max).max().unwrap_or(0));
        ExplicitFamily::new(sets, universe)
            .map(FamilyExpr::explicit)
            .map_err(|e| Error::Parse { pos: at, msg: e.to_string() })
    }

    fn set(&mut self) -> Result<FiniteSubset> {
        self.expect(b'{')?;
        let at = self.pos;
        let mut v = Vec::new();
        if !self.eat(b'}') {
            v.push(self.nat()?);
            while self.eat(b',') {
                v.push(self.nat()?);
            }
            self.expect(b'}')?;
        }
        FiniteSubset::from_increasing(v).map_err(|e| Error::Parse { pos: at, msg: e.to_string() })
    }
}
