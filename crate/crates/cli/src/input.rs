use std::str::FromStr;

use serde::de::DeserializeOwned;
use sbl::rational::{parse_rational, Rational};
use sbl::FiniteSubset;

use crate::Failure;

pub fn parse<T: FromStr<Err = sbl::Error>>(s: &str) -> Result<T, Failure> {
    s.parse().map_err(Failure::from)
}

pub fn rational(s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(Failure::from)
}

/// Inline JSON, or the contents of the named file.
pub fn json_text(s: &str) -> Result<String, Failure> {
    let t = s.trim();
    if t.starts_with('[') || t.starts_with('{') {
        return Ok(t.to_string());
    }
    std::fs::read_to_string(t).map_err(|e| Failure::input(format!("cannot read {t}: {e}")))
}

pub fn json<T: DeserializeOwned>(s: &str) -> Result<T, Failure> {
    let text = json_text(s)?;
    serde_json::from_str(&text).map_err(|e| {
        let mut f = Failure::input(e.to_string());
        if e.line() > 0 {
            f.body["line"] = e.line().into();
            f.body["column"] = e.column().into();
        }
        f
    })
}

/// `;`-separated sets.
pub fn sets(s: &str) -> Result<Vec<FiniteSubset>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(parse::<FiniteSubset>).collect()
}
