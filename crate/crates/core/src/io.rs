//! File formats.
//!
//! A Gram file is JSON, either a bare matrix `[[2,1],[1,2]]` or an object
//! `{"gram": [[2,1],[1,2]]}`. Entries are integers or decimal strings (for
//! entries beyond 64 bits). Rationals are written as strings `"p/q"`.

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lattice::{EvenLattice, Rational};

#[derive(Deserialize)]
#[serde(untagged)]
enum GramFile {
    Bare(Vec<Vec<Value>>),
    Wrapped { gram: Vec<Vec<Value>> },
}

fn entry(v: &Value) -> Result<BigInt> {
    let bad = || Error::Malformed(format!("gram entry {v} is not an integer"));
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(bad),
        Value::String(s) => s.trim().parse().map_err(|_| bad()),
        _ => Err(bad()),
    }
}

/// Parses and validates a Gram matrix.
pub fn parse_gram(text: &str) -> Result<EvenLattice> {
    let file: GramFile = serde_json::from_str(text)
        .map_err(|e| Error::Malformed(format!("expected a JSON matrix or {{\"gram\": matrix}}: {e}")))?;
    let rows = match file {
        GramFile::Bare(r) | GramFile::Wrapped { gram: r } => r,
    };
    let gram = rows
        .iter()
        .map(|r| r.iter().map(entry).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    EvenLattice::new(gram)
}

/// The Gram matrix as JSON, entries as numbers.
pub fn gram_to_json(lattice: &EvenLattice) -> Value {
    Value::Array(
        lattice
            .gram()
            .iter()
            .map(|r| Value::Array(r.iter().map(|x| serde_json::from_str(&x.to_string()).expect("integer")).collect()))
            .collect(),
    )
}

/// Parses `"p/q"` or `"n"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Malformed(format!("bad rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Serde adapter writing a rational as `"p/q"`.
pub mod rational_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::lattice::Rational;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
