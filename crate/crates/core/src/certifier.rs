//! Per-pair certificates that `Ext^1(M2, M1) = 0` for all irreducible
//! `V_L^+`-modules.
//!
//! Each ordered pair `(M1, M2)` is tried against a fixed chain of rules:
//!
//! 1. weight gap: the lowest weights differ by something other than a
//!    nonzero integer;
//! 2. vacuum: `(M1, M2) = (V_L^-, V_L^+)`;
//! 3. duality applied to 1 or 2;
//! 4. fusion obstruction over `V_{L_1}^+` for an orthogonal sublattice of
//!    index `> 1`;
//! 5. fusion obstruction over `⊗_i V_{Zβ_i}^+` for a diagonal Gram matrix;
//! 6. duality applied to 4 or 5.
//!
//! A fusion obstruction is recorded only when every triple of submodules
//! `(N1 ⊆ M1, N ⊆ V_L^+, N2 ⊆ M2)` has fusion rule exactly zero.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::branching::{branch_orthogonal, branch_sublattice, Part};
use crate::convention::Convention;
use crate::error::{Error, Result};
use crate::fusion::{fusion_dim, rank1_fusion, tensor_fusion, FusionAnswer, NoSigns};
use crate::io::rational_str;
use crate::lattice::{orthogonal_sublattice, EvenLattice, Rational};
use crate::sectors::{ModuleLabel, SectorRegistry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Sublattice,
    Orthogonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleKind {
    WeightGap,
    Vacuum,
    Duality,
    FusionObstruction,
}

impl RuleKind {
    pub const ALL: [RuleKind; 4] = [RuleKind::WeightGap, RuleKind::Vacuum, RuleKind::Duality, RuleKind::FusionObstruction];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule")]
pub enum ExtJustification {
    WeightGap {
        #[serde(with = "rational_str")]
        gap: Rational,
        citation: String,
    },
    Vacuum {
        subalgebra: String,
        citation: String,
    },
    Duality {
        /// The pair `(M2', M1')` the inner rule was applied to.
        dual_pair: (ModuleLabel, ModuleLabel),
        inner: Box<ExtJustification>,
        citation: String,
    },
    FusionObstruction {
        route: Route,
        subalgebra: String,
        triples: u64,
        citation: String,
    },
}

impl ExtJustification {
    pub fn kind(&self) -> RuleKind {
        match self {
            ExtJustification::WeightGap { .. } => RuleKind::WeightGap,
            ExtJustification::Vacuum { .. } => RuleKind::Vacuum,
            ExtJustification::Duality { .. } => RuleKind::Duality,
            ExtJustification::FusionObstruction { .. } => RuleKind::FusionObstruction,
        }
    }

    /// Short name such as `Duality(FusionObstruction/orthogonal)`.
    pub fn name(&self) -> String {
        match self {
            ExtJustification::WeightGap { .. } => "WeightGap".into(),
            ExtJustification::Vacuum { .. } => "Vacuum".into(),
            ExtJustification::Duality { inner, .. } => format!("Duality({})", inner.name()),
            ExtJustification::FusionObstruction { route, .. } => {
                format!("FusionObstruction/{}", serde_json::to_value(route).expect("route").as_str().unwrap())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Rational,
    Incomplete,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub m1: ModuleLabel,
    pub m2: ModuleLabel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub justification: Option<ExtJustification>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtCertificate {
    pub gram: Vec<Vec<serde_json::Value>>,
    pub convention: Convention,
    pub modules: Vec<ModuleLabel>,
    pub pairs: Vec<PairRecord>,
    pub unknown: Vec<(ModuleLabel, ModuleLabel)>,
    pub verdict: Verdict,
}

impl ExtCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<ExtCertificate> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("certificate: {e}")))
    }

    pub fn lattice(&self) -> Result<EvenLattice> {
        crate::io::parse_gram(&serde_json::to_string(&self.gram).expect("json"))
    }

    /// Pair → rule name, the convention-free content of the certificate.
    pub fn rule_map(&self) -> BTreeMap<(String, String), String> {
        self.pairs
            .iter()
            .map(|p| {
                let name = p.justification.as_ref().map_or_else(|| "none".to_string(), ExtJustification::name);
                ((p.m1.to_string(), p.m2.to_string()), name)
            })
            .collect()
    }
}

const GAP_CITATION: &str =
    "lowest weights differ by a non-integer or by zero and the Zhu algebra is semisimple, so no extension exists";
const VACUUM_CITATION: &str =
    "M1 contains a vector u with L(-1)u = L(0)u = 0 for a subalgebra sharing the Virasoro element; u generates V_L^+";
const DUALITY_CITATION: &str = "Ext^1(M2, M1) = 0 if and only if Ext^1(M1', M2') = 0";
const FUSION_CITATION: &str =
    "U is rational with the same Virasoro element and every intertwining operator of type (N1; N N2) vanishes";

/// Submodule lists of every label of `L` under one subalgebra `U`.
struct RouteData {
    route: Route,
    descriptor: String,
    unit_parts: Vec<Part>,
    parts: BTreeMap<ModuleLabel, Vec<Part>>,
    sub: Option<SectorRegistry>,
    halves: Vec<u32>,
}

impl RouteData {
    fn sublattice(reg: &SectorRegistry) -> Result<Option<RouteData>> {
        let l1 = orthogonal_sublattice(reg.lattice());
        if l1.index.is_one() {
            return Ok(None);
        }
        let mut parts = BTreeMap::new();
        for l in reg.labels() {
            parts.insert(l.clone(), branch_sublattice(reg, &l1, l)?.parts);
        }
        let norms: Vec<String> = l1.norms.iter().map(ToString::to_string).collect();
        Ok(Some(RouteData {
            route: Route::Sublattice,
            descriptor: format!("V_{{L1}}^+, L1 of index {} with norms ({})", l1.index, norms.join(",")),
            unit_parts: parts[&ModuleLabel::VacPlus].clone(),
            parts,
            sub: Some(SectorRegistry::with_convention(&l1.lattice(), reg.convention())),
            halves: vec![],
        }))
    }

    fn orthogonal(reg: &SectorRegistry) -> Result<Option<RouteData>> {
        let lattice = reg.lattice();
        if !lattice.is_diagonal() {
            return Ok(None);
        }
        let mut parts = BTreeMap::new();
        for l in reg.labels() {
            parts.insert(l.clone(), branch_orthogonal(reg, l)?.parts);
        }
        let norms: Vec<BigInt> = (0..lattice.rank()).map(|i| lattice.gram()[i][i].clone()).collect();
        let halves = norms
            .iter()
            .map(|n| u32::try_from(n / 2u32).map_err(|_| Error::Malformed("norm too large".into())))
            .collect::<Result<Vec<u32>>>()?;
        let shown: Vec<String> = norms.iter().map(ToString::to_string).collect();
        Ok(Some(RouteData {
            route: Route::Orthogonal,
            descriptor: format!("tensor product of V_{{Zb}}^+ with norms ({})", shown.join(",")),
            unit_parts: parts[&ModuleLabel::VacPlus].clone(),
            parts,
            sub: None,
            halves,
        }))
    }

    /// Fusion rule of type `(N1; N N2)` over `U`.
    fn triple(&self, n: &Part, n2: &Part, n1: &Part) -> FusionAnswer {
        let unknown = |e: Error| FusionAnswer::Unknown(e.to_string());
        match (n, n2, n1) {
            (Part::Tensor(a), Part::Tensor(b), Part::Tensor(c)) => {
                let factors: Vec<FusionAnswer> = (0..a.len())
                    .map(|i| rank1_fusion(self.halves[i], &a[i], &b[i], &c[i]).unwrap_or_else(unknown))
                    .collect();
                tensor_fusion(&factors)
            }
            (_, Part::TwistedPlaceholder { .. }, Part::TwistedPlaceholder { .. }) => {
                FusionAnswer::Unknown("twisted submodules are not identified".into())
            }
            (_, Part::TwistedPlaceholder { .. }, _) | (_, _, Part::TwistedPlaceholder { .. }) => FusionAnswer::Zero,
            (Part::Sub(a), Part::Sub(b), Part::Sub(c)) => {
                let sub = self.sub.as_ref().expect("sublattice route");
                fusion_dim(sub, a, b, c, &NoSigns).unwrap_or_else(unknown)
            }
            _ => FusionAnswer::Unknown("mismatched parts".into()),
        }
    }

    /// `Some(count)` when all triples vanish.
    fn obstruction(&self, m1: &ModuleLabel, m2: &ModuleLabel) -> Option<u64> {
        let p1 = &self.parts[m1];
        let p2 = &self.parts[m2];
        for n in &self.unit_parts {
            for n2 in p2 {
                for n1 in p1 {
                    if !self.triple(n, n2, n1).is_zero() {
                        return None;
                    }
                }
            }
        }
        Some((self.unit_parts.len() * p1.len() * p2.len()) as u64)
    }
}

/// Rule evaluation for one lattice and one convention.
pub struct Certifier {
    reg: SectorRegistry,
    routes: Vec<RouteData>,
    disabled: BTreeSet<RuleKind>,
}

impl Certifier {
    pub fn new(reg: SectorRegistry) -> Result<Certifier> {
        let mut routes = Vec::new();
        routes.extend(RouteData::sublattice(&reg)?);
        routes.extend(RouteData::orthogonal(&reg)?);
        Ok(Certifier { reg, routes, disabled: BTreeSet::new() })
    }

    /// Turns a rule kind off everywhere, including inside duality.
    pub fn without(mut self, kind: RuleKind) -> Certifier {
        self.disabled.insert(kind);
        self
    }

    pub fn registry(&self) -> &SectorRegistry {
        &self.reg
    }

    fn enabled(&self, k: RuleKind) -> bool {
        !self.disabled.contains(&k)
    }

    pub fn weight_gap_rule(&self, m1: &ModuleLabel, m2: &ModuleLabel) -> Result<Option<ExtJustification>> {
        let gap = self.reg.lowest_weight(m1)? - self.reg.lowest_weight(m2)?;
        let blocked = gap.is_integer() && !gap.is_zero();
        Ok((!blocked).then(|| ExtJustification::WeightGap { gap, citation: GAP_CITATION.into() }))
    }

    pub fn vacuum_rule(&self, m1: &ModuleLabel, m2: &ModuleLabel) -> Option<ExtJustification> {
        if !(m1 == &ModuleLabel::VacMinus && m2 == &ModuleLabel::VacPlus) {
            return None;
        }
        let lattice = self.reg.lattice();
        let subalgebra = if lattice.is_diagonal() {
            "tensor product of V_{Zb}^+ over an orthogonal basis".to_string()
        } else {
            let l1 = orthogonal_sublattice(lattice);
            let norms: Vec<String> = l1.norms.iter().map(ToString::to_string).collect();
            format!("V_{{L1}}^+, L1 with norms ({})", norms.join(","))
        };
        Some(ExtJustification::Vacuum { subalgebra, citation: VACUUM_CITATION.into() })
    }

    pub fn fusion_obstruction_rule(&self, m1: &ModuleLabel, m2: &ModuleLabel, route: Route) -> Option<ExtJustification> {
        let data = self.routes.iter().find(|r| r.route == route)?;
        data.obstruction(m1, m2).map(|triples| ExtJustification::FusionObstruction {
            route,
            subalgebra: data.descriptor.clone(),
            triples,
            citation: FUSION_CITATION.into(),
        })
    }

    /// Applies `base` to `(M2', M1')`.
    pub fn duality_rule(
        &self,
        m1: &ModuleLabel,
        m2: &ModuleLabel,
        base: impl Fn(&ModuleLabel, &ModuleLabel) -> Result<Option<ExtJustification>>,
    ) -> Result<Option<ExtJustification>> {
        let d1 = self.reg.contragredient(m2)?;
        let d2 = self.reg.contragredient(m1)?;
        Ok(base(&d1, &d2)?.map(|inner| ExtJustification::Duality {
            dual_pair: (d1, d2),
            inner: Box::new(inner),
            citation: DUALITY_CITATION.into(),
        }))
    }

    fn basic(&self, m1: &ModuleLabel, m2: &ModuleLabel) -> Result<Option<ExtJustification>> {
        if self.enabled(RuleKind::WeightGap) {
            if let Some(j) = self.weight_gap_rule(m1, m2)? {
                return Ok(Some(j));
            }
        }
        if self.enabled(RuleKind::Vacuum) {
            if let Some(j) = self.vacuum_rule(m1, m2) {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    fn fusion(&self, m1: &ModuleLabel, m2: &ModuleLabel) -> Result<Option<ExtJustification>> {
        if !self.enabled(RuleKind::FusionObstruction) {
            return Ok(None);
        }
        Ok(self
            .fusion_obstruction_rule(m1, m2, Route::Sublattice)
            .or_else(|| self.fusion_obstruction_rule(m1, m2, Route::Orthogonal)))
    }

    /// The first rule of the chain that applies.
    pub fn justify(&self, m1: &ModuleLabel, m2: &ModuleLabel) -> Result<Option<ExtJustification>> {
        let duality = self.enabled(RuleKind::Duality);
        if let Some(j) = self.basic(m1, m2)? {
            return Ok(Some(j));
        }
        if duality {
            if let Some(j) = self.duality_rule(m1, m2, |a, b| self.basic(a, b))? {
                return Ok(Some(j));
            }
        }
        if let Some(j) = self.fusion(m1, m2)? {
            return Ok(Some(j));
        }
        if duality {
            return self.duality_rule(m1, m2, |a, b| self.fusion(a, b));
        }
        Ok(None)
    }

    pub fn certify(&self) -> Result<ExtCertificate> {
        let labels = self.reg.labels();
        let pairs: Vec<(ModuleLabel, ModuleLabel)> = labels
            .iter()
            .flat_map(|a| labels.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        let records = pairs
            .into_par_iter()
            .map(|(m1, m2)| {
                let justification = self.justify(&m1, &m2)?;
                Ok(PairRecord { m1, m2, justification })
            })
            .collect::<Result<Vec<PairRecord>>>()?;
        let unknown: Vec<(ModuleLabel, ModuleLabel)> = records
            .iter()
            .filter(|r| r.justification.is_none())
            .map(|r| (r.m1.clone(), r.m2.clone()))
            .collect();
        Ok(ExtCertificate {
            gram: gram_values(self.reg.lattice()),
            convention: self.reg.convention(),
            modules: labels.to_vec(),
            pairs: records,
            verdict: if unknown.is_empty() { Verdict::Rational } else { Verdict::Incomplete },
            unknown,
        })
    }

    /// Re-evaluates one recorded justification for the pair `(m1, m2)`.
    pub fn check(&self, m1: &ModuleLabel, m2: &ModuleLabel, j: &ExtJustification) -> Result<bool> {
        Ok(match j {
            ExtJustification::WeightGap { gap, .. } => {
                self.weight_gap_rule(m1, m2)?.is_some()
                    && *gap == self.reg.lowest_weight(m1)? - self.reg.lowest_weight(m2)?
            }
            ExtJustification::Vacuum { .. } => self.vacuum_rule(m1, m2).is_some(),
            ExtJustification::Duality { dual_pair, inner, .. } => {
                let expected = (self.reg.contragredient(m2)?, self.reg.contragredient(m1)?);
                *dual_pair == expected
                    && inner.kind() != RuleKind::Duality
                    && self.check(&dual_pair.0, &dual_pair.1, inner)?
            }
            ExtJustification::FusionObstruction { route, triples, .. } => {
                let data = self.routes.iter().find(|r| r.route == *route);
                data.and_then(|d| d.obstruction(m1, m2)) == Some(*triples)
            }
        })
    }
}

fn gram_values(lattice: &EvenLattice) -> Vec<Vec<serde_json::Value>> {
    match crate::io::gram_to_json(lattice) {
        serde_json::Value::Array(rows) => rows
            .into_iter()
            .map(|r| match r {
                serde_json::Value::Array(x) => x,
                _ => unreachable!("rows are arrays"),
            })
            .collect(),
        _ => unreachable!("gram is an array"),
    }
}

/// Certificate for `L` under the default convention.
pub fn certify(lattice: &EvenLattice) -> Result<ExtCertificate> {
    certify_with(lattice, Convention::default())
}

pub fn certify_with(lattice: &EvenLattice, convention: Convention) -> Result<ExtCertificate> {
    Certifier::new(SectorRegistry::with_convention(lattice, convention))?.certify()
}

/// Problems found when re-checking a certificate; empty means it verifies.
pub fn verify(cert: &ExtCertificate) -> Result<Vec<String>> {
    let lattice = cert.lattice()?;
    let certifier = Certifier::new(SectorRegistry::with_convention(&lattice, cert.convention))?;
    let reg = certifier.registry();
    let mut problems = Vec::new();
    if cert.modules != reg.labels() {
        problems.push("module list does not match the lattice".to_string());
    }
    let expected: BTreeSet<(ModuleLabel, ModuleLabel)> = reg
        .labels()
        .iter()
        .flat_map(|a| reg.labels().iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let recorded: BTreeSet<(ModuleLabel, ModuleLabel)> =
        cert.pairs.iter().map(|p| (p.m1.clone(), p.m2.clone())).collect();
    if recorded != expected || recorded.len() != cert.pairs.len() {
        problems.push("pair list is not the set of all ordered pairs".to_string());
    }
    let checks: Vec<Option<String>> = cert
        .pairs
        .par_iter()
        .map(|p| match &p.justification {
            None => None,
            Some(j) => match certifier.check(&p.m1, &p.m2, j) {
                Ok(true) => None,
                Ok(false) => Some(format!("({}, {}): {} does not hold", p.m1, p.m2, j.name())),
                Err(e) => Some(format!("({}, {}): {e}", p.m1, p.m2)),
            },
        })
        .collect();
    problems.extend(checks.into_iter().flatten());
    let unknown: Vec<(ModuleLabel, ModuleLabel)> = cert
        .pairs
        .iter()
        .filter(|p| p.justification.is_none())
        .map(|p| (p.m1.clone(), p.m2.clone()))
        .collect();
    if unknown != cert.unknown {
        problems.push("unknown list does not match the unjustified pairs".to_string());
    }
    let verdict = if unknown.is_empty() { Verdict::Rational } else { Verdict::Incomplete };
    if verdict != cert.verdict {
        problems.push("verdict does not match the unknown list".to_string());
    }
    Ok(problems)
}
