//! Fusion-rule queries for `V_L^+`.
//!
//! Every fusion rule is 0 or 1. The general case analysis needs two families
//! of signs, `π_{λ,2μ}` and `c_χ(λ)`, that only refine which of the `±`
//! targets is hit. They come from a [`SignOracle`]; without one those queries
//! answer [`FusionAnswer::Unknown`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{canonical_coset, DiscriminantGroup, DualVector, EvenLattice, Rational};
use crate::sectors::{ModuleLabel, SectorRegistry, Sign};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FusionAnswer {
    Zero,
    One,
    Unknown(String),
}

impl FusionAnswer {
    pub fn from_bool(nonzero: bool) -> FusionAnswer {
        if nonzero {
            FusionAnswer::One
        } else {
            FusionAnswer::Zero
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == FusionAnswer::Zero
    }
}

impl fmt::Display for FusionAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FusionAnswer::Zero => f.write_str("0"),
            FusionAnswer::One => f.write_str("1"),
            FusionAnswer::Unknown(r) => write!(f, "unknown ({r})"),
        }
    }
}

impl Serialize for FusionAnswer {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Source of the sign data `π_{λ,2μ}` and `c_χ(λ)`.
pub trait SignOracle: Sync {
    /// `π_{λ,2μ}` for `2μ ∈ L`.
    fn pi(&self, lattice: &EvenLattice, lambda: &DualVector, mu: &DualVector) -> Option<Sign>;
    /// `c_χ(λ)` for `2λ ∈ L`.
    fn c_chi(&self, lattice: &EvenLattice, chi: u32, lambda: &DualVector) -> Option<Sign>;
}

/// No sign data at all.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoSigns;

impl SignOracle for NoSigns {
    fn pi(&self, _: &EvenLattice, _: &DualVector, _: &DualVector) -> Option<Sign> {
        None
    }

    fn c_chi(&self, _: &EvenLattice, _: u32, _: &DualVector) -> Option<Sign> {
        None
    }
}

#[derive(Debug, Deserialize)]
struct PiEntry {
    lambda: String,
    mu: String,
    value: i8,
}

#[derive(Debug, Deserialize)]
struct CChiEntry {
    chi: u32,
    lambda: String,
    value: i8,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SignTableFile {
    #[serde(default)]
    pi: Vec<PiEntry>,
    #[serde(default)]
    c_chi: Vec<CChiEntry>,
}

/// A finite table of signs, keyed by coset representatives. Vectors are
/// matched up to `L`.
#[derive(Clone, Debug, Default)]
pub struct SignTable {
    pi: BTreeMap<(DualVector, DualVector), Sign>,
    c_chi: BTreeMap<(u32, DualVector), Sign>,
}

fn sign_value(v: i8) -> Result<Sign> {
    match v {
        1 => Ok(Sign::Plus),
        -1 => Ok(Sign::Minus),
        _ => Err(Error::Malformed(format!("sign must be 1 or -1, got {v}"))),
    }
}

fn coset_key(lattice: &EvenLattice, s: &str) -> Result<DualVector> {
    let v: DualVector = s.parse()?;
    if v.rank() != lattice.rank() {
        return Err(Error::DimensionMismatch { got: v.rank(), rank: lattice.rank() });
    }
    lattice.check_dual(&v)?;
    Ok(canonical_coset(lattice, &v).rep)
}

impl SignTable {
    /// Reads `{"pi": [{"lambda", "mu", "value"}], "c_chi": [{"chi", "lambda", "value"}]}`.
    pub fn from_json(lattice: &EvenLattice, text: &str) -> Result<SignTable> {
        let file: SignTableFile =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let mut table = SignTable::default();
        for e in file.pi {
            let key = (coset_key(lattice, &e.lambda)?, coset_key(lattice, &e.mu)?);
            table.pi.insert(key, sign_value(e.value)?);
        }
        for e in file.c_chi {
            let key = (e.chi, coset_key(lattice, &e.lambda)?);
            table.c_chi.insert(key, sign_value(e.value)?);
        }
        Ok(table)
    }
}

impl SignOracle for SignTable {
    fn pi(&self, lattice: &EvenLattice, lambda: &DualVector, mu: &DualVector) -> Option<Sign> {
        let key = (canonical_coset(lattice, lambda).rep, canonical_coset(lattice, mu).rep);
        self.pi.get(&key).copied()
    }

    fn c_chi(&self, lattice: &EvenLattice, chi: u32, lambda: &DualVector) -> Option<Sign> {
        self.c_chi.get(&(chi, canonical_coset(lattice, lambda).rep)).copied()
    }
}

/// `pλ + qμ + rν ∈ L` for some signs, decided in discriminant coordinates.
pub fn admissible_triple(lattice: &EvenLattice, lambda: &DualVector, mu: &DualVector, nu: &DualVector) -> bool {
    admissible_with(&lattice.discriminant_group(), lattice, lambda, mu, nu)
}

pub(crate) fn admissible_with(
    disc: &DiscriminantGroup,
    lattice: &EvenLattice,
    lambda: &DualVector,
    mu: &DualVector,
    nu: &DualVector,
) -> bool {
    let a = disc.key(lattice, lambda);
    let b = disc.key(lattice, mu);
    let c = disc.key(lattice, nu);
    let nb = disc.neg_key(&b);
    let nc = disc.neg_key(&c);
    // p = +1 suffices up to global negation
    [(&b, &c), (&b, &nc), (&nb, &c), (&nb, &nc)].iter().any(|(y, z)| {
        let s: Vec<BigInt> = disc.add_keys(&disc.add_keys(&a, y), z);
        DiscriminantGroup::is_zero_key(&s)
    })
}

fn rank_one_label_ok(k: u32, label: &ModuleLabel) -> bool {
    let half = DualVector::from_ratios(&[(1, 2)]);
    match label {
        ModuleLabel::VacPlus | ModuleLabel::VacMinus => true,
        ModuleLabel::CosetPM(v, _) => *v == half,
        ModuleLabel::TwistedPM(c, _) => *c < 2,
        ModuleLabel::Untw(v) => {
            if v.rank() != 1 {
                return false;
            }
            let x = &v.0[0] * BigInt::from(2 * k);
            x.is_integer() && x.is_positive() && x < Rational::from_integer(k.into())
        }
    }
}

/// The rows `W1 ∈ {V+, V-}` of the fusion table of `V_L^+` for `L = Zα`,
/// `(α,α) = 2k`, with type `(W3; W1 W2)`.
pub fn rank1_fusion(k: u32, w1: &ModuleLabel, w2: &ModuleLabel, w3: &ModuleLabel) -> Result<FusionAnswer> {
    if k == 0 {
        return Err(Error::NotPositiveDefinite { index: 0 });
    }
    for w in [w1, w2, w3] {
        if !rank_one_label_ok(k, w) {
            return Err(Error::UnknownLabel(w.to_string()));
        }
    }
    use ModuleLabel::*;
    let nonzero = match w1 {
        VacPlus => w2 == w3,
        VacMinus => match (w2, w3) {
            (VacPlus, VacMinus) | (VacMinus, VacPlus) => true,
            (CosetPM(a, s), CosetPM(b, t)) => a == b && s != t,
            (TwistedPM(a, s), TwistedPM(b, t)) => a == b && s != t,
            (Untw(a), Untw(b)) => a == b,
            _ => false,
        },
        other => return Err(Error::UnsupportedRow(other.to_string())),
    };
    Ok(FusionAnswer::from_bool(nonzero))
}

fn self_paired(label: &ModuleLabel) -> bool {
    matches!(label, ModuleLabel::VacPlus | ModuleLabel::VacMinus | ModuleLabel::CosetPM(..))
}

/// Fusion rule of type `(M3; M1 M2)` for untwisted `M1`.
pub fn fusion_dim(
    reg: &SectorRegistry,
    m1: &ModuleLabel,
    m2: &ModuleLabel,
    m3: &ModuleLabel,
    oracle: &dyn SignOracle,
) -> Result<FusionAnswer> {
    for m in [m1, m2, m3] {
        if !reg.contains(m) {
            return Err(Error::UnknownLabel(m.to_string()));
        }
    }
    match m1 {
        ModuleLabel::VacPlus => return Ok(FusionAnswer::from_bool(m2 == m3)),
        ModuleLabel::TwistedPM(..) => return Err(Error::UnsupportedFirstArgument(m1.to_string())),
        _ => {}
    }
    let lattice = reg.lattice();
    let d = reg.rank();
    let lambda = m1.coset_rep(d).expect("untwisted");
    // `None` for V_{λ+L}, the sign of V_{λ+L}^± otherwise
    let s1 = if self_paired(m1) { m1.sign() } else { None };

    match (m2, m3) {
        (ModuleLabel::TwistedPM(c2, s2), ModuleLabel::TwistedPM(c3, s3)) => {
            if *c3 != reg.shift_character(*c2, &lambda) {
                return Ok(FusionAnswer::Zero);
            }
            let Some(s1) = s1 else {
                return Ok(FusionAnswer::One);
            };
            Ok(match oracle.c_chi(lattice, *c2, &lambda) {
                Some(c) => FusionAnswer::from_bool(*s3 == s2.mul(c).mul(s1)),
                None => FusionAnswer::Unknown("c_χ undefined".into()),
            })
        }
        (ModuleLabel::TwistedPM(..), _) | (_, ModuleLabel::TwistedPM(..)) => Ok(FusionAnswer::Zero),
        _ => {
            let mu = m2.coset_rep(d).expect("untwisted");
            let nu = m3.coset_rep(d).expect("untwisted");
            if !admissible_with(reg.discriminant(), lattice, &lambda, &mu, &nu) {
                return Ok(FusionAnswer::Zero);
            }
            let (p2, p3) = (self_paired(m2), self_paired(m3));
            let Some(s1) = s1 else {
                return Ok(FusionAnswer::from_bool(!(p2 && p3)));
            };
            if !p2 && !p3 {
                return Ok(FusionAnswer::One);
            }
            if p2 != p3 {
                return Ok(FusionAnswer::Zero);
            }
            let (s2, s3) = (m2.sign().expect("signed"), m3.sign().expect("signed"));
            Ok(match oracle.pi(lattice, &lambda, &mu) {
                Some(p) => FusionAnswer::from_bool(s3 == s2.mul(p).mul(s1)),
                None => FusionAnswer::Unknown("π undefined".into()),
            })
        }
    }
}

/// Fusion rule of a tensor product from the rules of its factors.
pub fn tensor_fusion(factors: &[FusionAnswer]) -> FusionAnswer {
    if factors.iter().any(FusionAnswer::is_zero) {
        return FusionAnswer::Zero;
    }
    factors
        .iter()
        .find(|a| matches!(a, FusionAnswer::Unknown(_)))
        .cloned()
        .unwrap_or(FusionAnswer::One)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> ModuleLabel {
        s.parse().unwrap()
    }

    #[test]
    fn a2_triples() {
        let a2 = EvenLattice::from_rows(&[[2, 1], [1, 2]]).unwrap();
        let l1 = DualVector::from_ratios(&[(1, 3), (1, 3)]);
        let z = DualVector::zero(2);
        assert!(admissible_triple(&a2, &l1, &l1, &l1));
        assert!(!admissible_triple(&a2, &l1, &z, &z));
        assert!(admissible_triple(&a2, &z, &z, &z));
    }

    #[test]
    fn rank_one_rows() {
        assert_eq!(rank1_fusion(1, &l("V-"), &l("V+"), &l("V-")).unwrap(), FusionAnswer::One);
        assert_eq!(rank1_fusion(1, &l("V-"), &l("V+"), &l("V+")).unwrap(), FusionAnswer::Zero);
        assert_eq!(rank1_fusion(2, &l("V+"), &l("U[1/4]"), &l("U[1/4]")).unwrap(), FusionAnswer::One);
        assert_eq!(rank1_fusion(2, &l("V-"), &l("U[1/4]"), &l("U[1/4]")).unwrap(), FusionAnswer::One);
        assert!(matches!(rank1_fusion(2, &l("C[1/2]+"), &l("V+"), &l("V+")), Err(Error::UnsupportedRow(_))));
        assert!(matches!(rank1_fusion(1, &l("V+"), &l("U[1/4]"), &l("V+")), Err(Error::UnknownLabel(_))));
        assert!(matches!(rank1_fusion(1, &l("V+"), &l("T[2]+"), &l("V+")), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn general_cases() {
        let reg = SectorRegistry::new(&EvenLattice::from_rows(&[[2, 0], [0, 4]]).unwrap());
        let u = reg.parse_label("U[0,1/4]").unwrap();
        let c = reg.parse_label("C[1/2,0]+").unwrap();
        let t0 = ModuleLabel::TwistedPM(0, Sign::Plus);
        let oracle = NoSigns;
        // λ = (0,1/4) with μ = 0 needs ν ∈ ±λ + L
        assert_eq!(fusion_dim(&reg, &u, &l("V+"), &u, &oracle).unwrap(), FusionAnswer::One);
        assert_eq!(fusion_dim(&reg, &u, &l("V+"), &c, &oracle).unwrap(), FusionAnswer::Zero);
        assert_eq!(fusion_dim(&reg, &u, &l("V-"), &l("V+"), &oracle).unwrap(), FusionAnswer::Zero);
        assert_eq!(fusion_dim(&reg, &c, &t0, &l("V+"), &oracle).unwrap(), FusionAnswer::Zero);
        let shifted = ModuleLabel::TwistedPM(reg.shift_character(0, &c.coset_rep(2).unwrap()), Sign::Plus);
        assert_eq!(
            fusion_dim(&reg, &c, &t0, &shifted, &oracle).unwrap(),
            FusionAnswer::Unknown("c_χ undefined".into())
        );
        assert!(matches!(
            fusion_dim(&reg, &t0, &t0, &t0, &oracle),
            Err(Error::UnsupportedFirstArgument(_))
        ));
    }

    #[test]
    fn oracle_refines_unknown() {
        let lat = EvenLattice::from_rows(&[[2, 0], [0, 4]]).unwrap();
        let reg = SectorRegistry::new(&lat);
        let table = SignTable::from_json(
            &lat,
            r#"{"pi": [{"lambda": "[1/2,0]", "mu": "[1/2,0]", "value": -1}]}"#,
        )
        .unwrap();
        let c = reg.parse_label("C[1/2,0]+").unwrap();
        let cm = reg.parse_label("C[1/2,0]-").unwrap();
        assert!(matches!(fusion_dim(&reg, &c, &c, &l("V+"), &NoSigns).unwrap(), FusionAnswer::Unknown(_)));
        assert_eq!(fusion_dim(&reg, &c, &c, &l("V+"), &table).unwrap(), FusionAnswer::Zero);
        assert_eq!(fusion_dim(&reg, &c, &c, &l("V-"), &table).unwrap(), FusionAnswer::One);
        assert_eq!(fusion_dim(&reg, &cm, &c, &l("V+"), &table).unwrap(), FusionAnswer::One);
        assert!(SignTable::from_json(&lat, r#"{"pi": [{"lambda": "[1/2,0]", "mu": "[0,0]", "value": 2}]}"#).is_err());
    }

    #[test]
    fn tensor_products() {
        use FusionAnswer::*;
        assert_eq!(tensor_fusion(&[One, One]), One);
        assert_eq!(tensor_fusion(&[One, Zero, One]), Zero);
        assert_eq!(tensor_fusion(&[One, Unknown("x".into())]), Unknown("x".into()));
        assert_eq!(tensor_fusion(&[Unknown("x".into()), Zero]), Zero);
    }
}
