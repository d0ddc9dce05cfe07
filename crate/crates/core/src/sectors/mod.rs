//! Irreducible `V_L^+`-modules: classification, lowest weights, top levels,
//! contragredients and Zhu-algebra block dimensions.

mod label;

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::Serialize;

use crate::convention::{Convention, Unit4};
use crate::error::{Error, Result};
use crate::lattice::{
    canonical_cmp, canonical_coset, rat, CosetElement, DiscriminantGroup, DualVector, EvenLattice,
    LatticeVector, ModTwoData, Rational, TwoCocycle,
};

pub use label::{ModuleLabel, Sign};

/// Coset data kept per canonical representative.
#[derive(Clone, Debug)]
pub struct CosetInfo {
    pub coset: CosetElement,
    pub self_paired: bool,
    pub delta_size: usize,
    /// `c_{2λ}` for self-paired cosets.
    pub c_two_lambda: Option<Unit4>,
}

/// Everything about the module category of `V_L^+` that depends only on `L`
/// and the sign conventions.
#[derive(Clone, Debug)]
pub struct SectorRegistry {
    lattice: EvenLattice,
    convention: Convention,
    disc: DiscriminantGroup,
    cocycle: TwoCocycle,
    mod2: ModTwoData,
    q_radical: Vec<u8>,
    norm2_count: usize,
    cosets: BTreeMap<DualVector, CosetInfo>,
    coset_order: Vec<DualVector>,
    labels: Vec<ModuleLabel>,
    label_set: BTreeSet<ModuleLabel>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZhuBlockReport {
    pub dim_au: u64,
    pub dim_at: u64,
    pub dim_ah: u64,
    pub total_semisimple_dim: u64,
}

impl SectorRegistry {
    pub fn new(lattice: &EvenLattice) -> Self {
        Self::with_convention(lattice, Convention::default())
    }

    pub fn with_convention(lattice: &EvenLattice, convention: Convention) -> Self {
        let disc = lattice.discriminant_group();
        let cocycle = TwoCocycle::new(lattice, convention.cocycle);
        let mod2 = lattice.mod_two_data();
        let q_radical = mod2.quadratic_on_radical(lattice);
        let norm2_count = lattice.norm2_vectors().len();

        let mut cosets = BTreeMap::new();
        let mut coset_order = Vec::new();
        for c in lattice.minimal_coset_reps() {
            let two = c.rep.double();
            let self_paired = two.is_integral();
            let c_two_lambda = self_paired.then(|| {
                if c.rep.is_zero() {
                    Unit4::ONE
                } else {
                    let t = two.to_lattice().expect("integral");
                    Unit4::sqrt_of_sign(cocycle.is_negative(&t, &t), convention.sqrt)
                }
            });
            let delta_size = lattice.delta_set(&c).len();
            coset_order.push(c.rep.clone());
            cosets.insert(
                c.rep.clone(),
                CosetInfo { coset: c, self_paired, delta_size, c_two_lambda },
            );
        }

        let mut labels = vec![ModuleLabel::VacPlus, ModuleLabel::VacMinus];
        let mut seen = BTreeSet::new();
        for rep in &coset_order {
            let info = &cosets[rep];
            if rep.is_zero() {
                continue;
            }
            if info.self_paired {
                labels.push(ModuleLabel::CosetPM(rep.clone(), Sign::Plus));
                labels.push(ModuleLabel::CosetPM(rep.clone(), Sign::Minus));
            } else {
                let u = untwisted_rep(lattice, rep);
                if seen.insert(u.clone()) {
                    labels.push(ModuleLabel::Untw(u));
                }
            }
        }
        for chi in 0..(1u32 << mod2.r2) {
            labels.push(ModuleLabel::TwistedPM(chi, Sign::Plus));
            labels.push(ModuleLabel::TwistedPM(chi, Sign::Minus));
        }

        SectorRegistry {
            lattice: lattice.clone(),
            convention,
            disc,
            cocycle,
            mod2,
            q_radical,
            norm2_count,
            cosets,
            coset_order,
            label_set: labels.iter().cloned().collect(),
            labels,
        }
    }

    pub fn lattice(&self) -> &EvenLattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn discriminant(&self) -> &DiscriminantGroup {
        &self.disc
    }

    pub fn cocycle(&self) -> &TwoCocycle {
        &self.cocycle
    }

    pub fn mod_two(&self) -> &ModTwoData {
        &self.mod2
    }

    pub fn norm2_count(&self) -> usize {
        self.norm2_count
    }

    /// The irreducible modules, vacuum first, then cosets in order of norm,
    /// then twisted sectors.
    pub fn labels(&self) -> &[ModuleLabel] {
        &self.labels
    }

    /// Canonical coset representatives in order of norm.
    pub fn coset_reps(&self) -> &[DualVector] {
        &self.coset_order
    }

    pub fn coset_info(&self, rep: &DualVector) -> Option<&CosetInfo> {
        self.cosets.get(rep)
    }

    /// Canonical information for the coset of any dual vector.
    pub fn coset_of(&self, v: &DualVector) -> Result<&CosetInfo> {
        self.lattice.check_dual(v)?;
        let c = canonical_coset(&self.lattice, v);
        Ok(&self.cosets[&c.rep])
    }

    pub fn num_characters(&self) -> u32 {
        1u32 << self.mod2.r2
    }

    /// `dim T_χ = 2^{(d - r2)/2}`.
    pub fn dim_t(&self) -> u64 {
        1u64 << ((self.rank() - self.mod2.r2) / 2)
    }

    /// `χ^{(λ)}(a) = (-1)^{(ā,λ)} χ(a)`.
    pub fn shift_character(&self, chi: u32, lambda: &DualVector) -> u32 {
        let mut out = chi;
        for (k, r) in self.mod2.radical_basis.iter().enumerate() {
            let p = self.lattice.pair(&r.to_dual(), lambda);
            if p.to_integer().is_odd() {
                out ^= 1 << k;
            }
        }
        out
    }

    /// `χ'(a) = (-1)^{(ā,ā)/2} χ(a)`.
    pub fn dual_character(&self, chi: u32) -> u32 {
        let mut out = chi;
        for (k, q) in self.q_radical.iter().enumerate() {
            if *q == 1 {
                out ^= 1 << k;
            }
        }
        out
    }

    /// Validates a label against this lattice and rewrites coset labels to
    /// their canonical representative.
    pub fn resolve(&self, label: &ModuleLabel) -> Result<ModuleLabel> {
        let unknown = || Error::UnknownLabel(label.to_string());
        match label {
            ModuleLabel::VacPlus | ModuleLabel::VacMinus => Ok(label.clone()),
            ModuleLabel::Untw(v) => {
                let info = self.coset_of(v)?;
                if info.self_paired {
                    return Err(unknown());
                }
                Ok(ModuleLabel::Untw(untwisted_rep(&self.lattice, &info.coset.rep)))
            }
            ModuleLabel::CosetPM(v, s) => {
                let info = self.coset_of(v)?;
                if !info.self_paired || info.coset.rep.is_zero() {
                    return Err(unknown());
                }
                Ok(ModuleLabel::CosetPM(info.coset.rep.clone(), *s))
            }
            ModuleLabel::TwistedPM(c, _) => {
                if *c < self.num_characters() {
                    Ok(label.clone())
                } else {
                    Err(unknown())
                }
            }
        }
    }

    pub fn parse_label(&self, s: &str) -> Result<ModuleLabel> {
        self.resolve(&s.parse()?)
    }

    fn info_for(&self, label: &ModuleLabel) -> Result<&CosetInfo> {
        let rep = label.coset_rep(self.rank()).expect("untwisted label");
        self.cosets
            .get(&rep)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// True when `label` is one of the canonical labels of this lattice.
    pub fn contains(&self, label: &ModuleLabel) -> bool {
        self.label_set.contains(label)
    }

    fn check(&self, label: &ModuleLabel) -> Result<()> {
        if !self.contains(label) {
            return Err(Error::UnknownLabel(label.to_string()));
        }
        Ok(())
    }

    /// Lowest `L(0)`-weight.
    pub fn lowest_weight(&self, label: &ModuleLabel) -> Result<Rational> {
        self.check(label)?;
        let d = self.rank() as i64;
        Ok(match label {
            ModuleLabel::VacPlus => rat(0, 1),
            ModuleLabel::VacMinus => rat(1, 1),
            ModuleLabel::Untw(_) | ModuleLabel::CosetPM(..) => {
                self.info_for(label)?.coset.min_norm.clone() / rat(2, 1)
            }
            ModuleLabel::TwistedPM(_, Sign::Plus) => rat(d, 16),
            ModuleLabel::TwistedPM(_, Sign::Minus) => rat(d + 8, 16),
        })
    }

    /// Dimension of the lowest-weight space.
    pub fn top_level_dimension(&self, label: &ModuleLabel) -> Result<u64> {
        self.check(label)?;
        let d = self.rank() as u64;
        Ok(match label {
            ModuleLabel::VacPlus => 1,
            ModuleLabel::VacMinus => d + self.norm2_count as u64 / 2,
            ModuleLabel::Untw(_) => self.info_for(label)?.delta_size as u64,
            ModuleLabel::CosetPM(..) => self.info_for(label)?.delta_size as u64 / 2,
            ModuleLabel::TwistedPM(_, Sign::Plus) => self.dim_t(),
            ModuleLabel::TwistedPM(_, Sign::Minus) => d * self.dim_t(),
        })
    }

    pub fn contragredient(&self, label: &ModuleLabel) -> Result<ModuleLabel> {
        self.check(label)?;
        Ok(match label {
            ModuleLabel::CosetPM(v, s) => {
                let twice = self.lattice.norm(v) * rat(2, 1);
                let odd = twice.to_integer().is_odd();
                ModuleLabel::CosetPM(v.clone(), if odd { s.flip() } else { *s })
            }
            ModuleLabel::TwistedPM(c, s) => ModuleLabel::TwistedPM(self.dual_character(*c), *s),
            other => other.clone(),
        })
    }

    /// `c_{2λ}` attached to a self-paired coset label, for metadata.
    pub fn c_two_lambda(&self, label: &ModuleLabel) -> Option<Unit4> {
        let rep = label.coset_rep(self.rank())?;
        self.cosets.get(&rep)?.c_two_lambda
    }

    pub fn zhu_block_report(&self) -> ZhuBlockReport {
        let d = self.rank() as u64;
        let au = d + self.norm2_count as u64 / 2;
        let total = self
            .labels
            .iter()
            .map(|l| {
                let t = self.top_level_dimension(l).expect("registry label");
                t * t
            })
            .sum();
        ZhuBlockReport {
            dim_au: au * au,
            dim_at: d * d * (1u64 << d),
            dim_ah: 1u64 << d,
            total_semisimple_dim: total,
        }
    }

    /// `2λ` as a lattice vector, for self-paired labels.
    pub fn two_lambda(&self, label: &ModuleLabel) -> Option<LatticeVector> {
        label.coset_rep(self.rank())?.double().to_lattice()
    }
}

/// The smaller (in canonical order) of the canonical representatives of
/// `λ + L` and `-λ + L`.
pub(crate) fn untwisted_rep(lattice: &EvenLattice, rep: &DualVector) -> DualVector {
    let neg = canonical_coset(lattice, &rep.neg()).rep;
    if canonical_cmp(&neg.0, &rep.0).is_lt() {
        neg
    } else {
        rep.clone()
    }
}

/// The complete list of irreducible modules of `V_L^+`.
pub fn classify_modules(lattice: &EvenLattice) -> Vec<ModuleLabel> {
    SectorRegistry::new(lattice).labels().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg(rows: &[&[i64]]) -> SectorRegistry {
        SectorRegistry::new(&EvenLattice::from_rows(rows).unwrap())
    }

    #[test]
    fn census() {
        assert_eq!(reg(&[&[2]]).labels().len(), 8);
        assert_eq!(reg(&[&[2, 1], &[1, 2]]).labels().len(), 5);
        assert_eq!(reg(&[&[2, 0], &[0, 4]]).labels().len(), 18);
    }

    #[test]
    fn rank_one_labels() {
        let r = reg(&[&[2]]);
        let names: Vec<String> = r.labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(names, ["V+", "V-", "C[1/2]+", "C[1/2]-", "T[0]+", "T[0]-", "T[1]+", "T[1]-"]);
        let r = reg(&[&[6]]);
        let names: Vec<String> = r.labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(
            names,
            ["V+", "V-", "U[1/6]", "U[1/3]", "C[1/2]+", "C[1/2]-", "T[0]+", "T[0]-", "T[1]+", "T[1]-"]
        );
    }

    #[test]
    fn weights_and_tops() {
        let r = reg(&[&[2]]);
        let c = r.parse_label("C[1/2]+").unwrap();
        assert_eq!(r.lowest_weight(&c).unwrap(), rat(1, 4));
        assert_eq!(r.top_level_dimension(&c).unwrap(), 1);
        assert_eq!(r.top_level_dimension(&ModuleLabel::VacMinus).unwrap(), 2);
        let a2 = reg(&[&[2, 1], &[1, 2]]);
        assert_eq!(a2.top_level_dimension(&ModuleLabel::VacMinus).unwrap(), 5);
        let t = ModuleLabel::TwistedPM(0, Sign::Minus);
        assert_eq!(a2.top_level_dimension(&t).unwrap(), 4);
        assert_eq!(a2.lowest_weight(&t).unwrap(), rat(5, 8));
        assert_eq!(a2.lowest_weight(&ModuleLabel::TwistedPM(0, Sign::Plus)).unwrap(), rat(1, 8));
    }

    #[test]
    fn zhu_blocks() {
        assert_eq!(
            reg(&[&[2]]).zhu_block_report(),
            ZhuBlockReport { dim_au: 4, dim_at: 2, dim_ah: 2, total_semisimple_dim: 11 }
        );
        assert_eq!(
            reg(&[&[2, 1], &[1, 2]]).zhu_block_report(),
            ZhuBlockReport { dim_au: 25, dim_at: 16, dim_ah: 4, total_semisimple_dim: 55 }
        );
    }

    #[test]
    fn contragredients() {
        let r = reg(&[&[2]]);
        let c = r.parse_label("C[1/2]+").unwrap();
        assert_eq!(r.contragredient(&c).unwrap(), r.parse_label("C[1/2]-").unwrap());
        let d = reg(&[&[2, 0], &[0, 4]]);
        let c = d.parse_label("C[0,1/2]+").unwrap();
        assert_eq!(d.contragredient(&c).unwrap(), c);
        for r in [reg(&[&[2]]), reg(&[&[2, 0], &[0, 4]]), reg(&[&[2, 1], &[1, 2]]), reg(&[&[4, 1], &[1, 4]])] {
            for l in r.labels() {
                let c = r.contragredient(l).unwrap();
                assert_eq!(&r.contragredient(&c).unwrap(), l);
                assert_eq!(r.lowest_weight(&c).unwrap(), r.lowest_weight(l).unwrap());
            }
        }
    }

    #[test]
    fn resolve_any_representative() {
        let a2 = reg(&[&[2, 1], &[1, 2]]);
        let u = a2.labels()[2].clone();
        let rep = u.coset_rep(2).unwrap();
        let shifted = ModuleLabel::Untw(rep.add_lattice(&LatticeVector::from_i64(&[3, -1])));
        assert_eq!(a2.resolve(&shifted).unwrap(), u);
        let neg = ModuleLabel::Untw(rep.neg());
        assert_eq!(a2.resolve(&neg).unwrap(), u);
        assert!(matches!(a2.parse_label("T[1]+"), Err(Error::UnknownLabel(_))));
        assert!(matches!(a2.parse_label("U[1/2,0]"), Err(Error::NotInDual)));
        let r = reg(&[&[2]]);
        assert!(matches!(r.parse_label("U[1/2]"), Err(Error::UnknownLabel(_))));
        assert!(matches!(r.parse_label("C[0]+"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn character_shift_and_dual() {
        let r = reg(&[&[2, 0], &[0, 4]]);
        let lambda = DualVector::from_ratios(&[(1, 2), (0, 1)]);
        assert_eq!(r.shift_character(0, &lambda), 0b01);
        assert_eq!(r.dual_character(0), 0b01);
        let a2 = reg(&[&[2, 1], &[1, 2]]);
        assert_eq!(a2.num_characters(), 1);
        assert_eq!(a2.dim_t(), 2);
    }
}
