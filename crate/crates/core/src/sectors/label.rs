use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{DualVector, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_negative(negative: bool) -> Sign {
        if negative {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        Sign::from_negative(self.is_minus() != other.is_minus())
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// One irreducible `V_L^+`-module.
///
/// Coset labels carry the canonical representative. A `TwistedPM` label
/// carries the index of a central character: bit `k` is set when the
/// character is `-1` on the `k`-th radical basis vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModuleLabel {
    VacPlus,
    VacMinus,
    /// `V_{λ+L}` with `2λ ∉ L`; stores the smaller of the representatives of
    /// `λ + L` and `-λ + L`.
    Untw(DualVector),
    /// `V_{λ+L}^±` with `2λ ∈ L`, `λ ∉ L`.
    CosetPM(DualVector, Sign),
    /// `(V_L^{T_χ})^±`.
    TwistedPM(u32, Sign),
}

impl ModuleLabel {
    pub fn is_twisted(&self) -> bool {
        matches!(self, ModuleLabel::TwistedPM(..))
    }

    pub fn is_vacuum(&self) -> bool {
        matches!(self, ModuleLabel::VacPlus | ModuleLabel::VacMinus)
    }

    /// The `±` of a vacuum, coset or twisted label.
    pub fn sign(&self) -> Option<Sign> {
        match self {
            ModuleLabel::VacPlus => Some(Sign::Plus),
            ModuleLabel::VacMinus => Some(Sign::Minus),
            ModuleLabel::Untw(_) => None,
            ModuleLabel::CosetPM(_, s) | ModuleLabel::TwistedPM(_, s) => Some(*s),
        }
    }

    /// Coset representative for untwisted labels (zero for the vacuum).
    pub fn coset_rep(&self, rank: usize) -> Option<DualVector> {
        match self {
            ModuleLabel::VacPlus | ModuleLabel::VacMinus => Some(DualVector::zero(rank)),
            ModuleLabel::Untw(v) | ModuleLabel::CosetPM(v, _) => Some(v.clone()),
            ModuleLabel::TwistedPM(..) => None,
        }
    }

    /// Short kind name used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            ModuleLabel::VacPlus | ModuleLabel::VacMinus => "vacuum",
            ModuleLabel::Untw(_) => "untwisted",
            ModuleLabel::CosetPM(..) => "coset",
            ModuleLabel::TwistedPM(..) => "twisted",
        }
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleLabel::VacPlus => f.write_str("V+"),
            ModuleLabel::VacMinus => f.write_str("V-"),
            ModuleLabel::Untw(v) => write!(f, "U{}", v),
            ModuleLabel::CosetPM(v, s) => write!(f, "C{}{}", v, s),
            ModuleLabel::TwistedPM(c, s) => write!(f, "T[{}]{}", c, s),
        }
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    crate::io::parse_rational(s).ok()
}

fn parse_bracketed(body: &str) -> Option<(&str, &str)> {
    let body = body.strip_prefix('[')?;
    let close = body.find(']')?;
    Some((&body[..close], &body[close + 1..]))
}

/// Parses `[a,b,...]` with integer or `p/q` entries.
impl FromStr for DualVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("bad vector {s:?}"));
        let (inner, tail) = parse_bracketed(s.trim()).ok_or_else(bad)?;
        if !tail.is_empty() {
            return Err(bad());
        }
        let coords: Option<Vec<Rational>> = inner.split(',').map(parse_rational).collect();
        Ok(DualVector(coords.ok_or_else(bad)?))
    }
}

fn parse_sign(s: &str) -> Option<Sign> {
    match s {
        "+" => Some(Sign::Plus),
        "-" => Some(Sign::Minus),
        _ => None,
    }
}

/// Parses the label grammar `V+`, `V-`, `U[..]`, `C[..]±`, `T[k]±`. The
/// result is not yet checked against any lattice.
impl FromStr for ModuleLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadLabel(s.to_string());
        let t = s.trim();
        match t {
            "V+" | "VacPlus" => return Ok(ModuleLabel::VacPlus),
            "V-" | "VacMinus" => return Ok(ModuleLabel::VacMinus),
            _ => {}
        }
        let (head, rest) = t.split_at(t.char_indices().nth(1).map_or(t.len(), |(i, _)| i));
        let (inner, tail) = parse_bracketed(rest).ok_or_else(bad)?;
        match head {
            "U" | "C" => {
                let v: DualVector = format!("[{inner}]").parse().map_err(|_| bad())?;
                if head == "U" {
                    if !tail.is_empty() {
                        return Err(bad());
                    }
                    Ok(ModuleLabel::Untw(v))
                } else {
                    Ok(ModuleLabel::CosetPM(v, parse_sign(tail).ok_or_else(bad)?))
                }
            }
            "T" => {
                let c: u32 = inner.trim().parse().map_err(|_| bad())?;
                Ok(ModuleLabel::TwistedPM(c, parse_sign(tail).ok_or_else(bad)?))
            }
            _ => Err(bad()),
        }
    }
}

impl Serialize for ModuleLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ModuleLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
