//! Restriction of irreducible `V_L^+`-modules to `⊗_i V_{Zβ_i}^+` (diagonal
//! Gram matrix) and to `V_{L_1}^+` for an orthogonal sublattice `L_1`.
//!
//! Every branching is checked at the level of characters by
//! [`verify_branch`].

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::convention::{Convention, Unit4};
use crate::error::{Error, Result};
use crate::lattice::{
    canonical_coset, coset_reps_mod_sublattice, from_sublattice_coords, rat, to_sublattice_coords, DualVector,
    EvenLattice, LatticeVector, OrthogonalSublattice, Rational,
};
use crate::qseries::{character, euler_product_inv, series_denominator, twisted_character, Product, QSeries};
use crate::sectors::{untwisted_rep, ModuleLabel, SectorRegistry, Sign};

/// The subalgebra a module is restricted to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subalgebra {
    /// `⊗_i V_{Zβ_i}^+` with `(β_i, β_i) = norms[i]`.
    Orthogonal { norms: Vec<BigInt> },
    /// `V_{L_1}^+`; the basis is given in coordinates of `L`.
    Sublattice(OrthogonalSublattice),
}

impl Subalgebra {
    /// The lattice carrying the part labels (for the sublattice route).
    pub fn sublattice(&self) -> Option<EvenLattice> {
        match self {
            Subalgebra::Orthogonal { .. } => None,
            Subalgebra::Sublattice(s) => Some(s.lattice()),
        }
    }
}

/// One summand of a branching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Part {
    /// A tensor product of rank-one labels, factor `i` over `[[norms[i]]]`.
    Tensor(Vec<ModuleLabel>),
    /// A `V_{L_1}^+`-module, coordinates in the basis of `L_1`.
    Sub(ModuleLabel),
    /// Twisted `V_{L_1}^+`-modules of the given sign whose `T`-dimensions add
    /// up to `multiplicity`.
    TwistedPlaceholder { sign: Sign, multiplicity: u64 },
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Part::Tensor(ls) => {
                let names: Vec<String> = ls.iter().map(ToString::to_string).collect();
                f.write_str(&names.join(" ⊗ "))
            }
            Part::Sub(l) => write!(f, "{l}"),
            Part::TwistedPlaceholder { sign, multiplicity } => write!(f, "T{sign} x{multiplicity}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BranchList {
    pub lattice: EvenLattice,
    pub convention: Convention,
    pub parent: ModuleLabel,
    pub subalgebra: Subalgebra,
    pub parts: Vec<Part>,
}

fn rank_one_registry(norm: &BigInt, convention: Convention) -> SectorRegistry {
    let l = EvenLattice::diagonal(std::slice::from_ref(norm)).expect("positive even norm");
    SectorRegistry::with_convention(&l, convention)
}

/// The `V_{Zβ}^+`-modules inside `V_{Zβ + xβ}`: one label, or both signs when
/// `2x ∈ Z`.
fn factor_labels(reg: &SectorRegistry, x: &Rational) -> Vec<ModuleLabel> {
    let two = x * rat(2, 1);
    if x.is_integer() {
        vec![ModuleLabel::VacPlus, ModuleLabel::VacMinus]
    } else if two.is_integer() {
        let half = DualVector::from_ratios(&[(1, 2)]);
        vec![ModuleLabel::CosetPM(half.clone(), Sign::Plus), ModuleLabel::CosetPM(half, Sign::Minus)]
    } else {
        vec![reg.resolve(&ModuleLabel::Untw(DualVector(vec![x.clone()]))).expect("dual vector")]
    }
}

fn real_sign(u: Unit4) -> Sign {
    Sign::from_negative(u.as_real_sign().expect("ratio of square roots of equal signs is real"))
}

/// Branching over `⊗_i V_{Zβ_i}^+` for a lattice with diagonal Gram matrix.
pub fn branch_orthogonal(reg: &SectorRegistry, m: &ModuleLabel) -> Result<BranchList> {
    let lattice = reg.lattice();
    if !lattice.is_diagonal() {
        return Err(Error::NotOrthogonalBase);
    }
    let m = reg.resolve(m)?;
    let d = lattice.rank();
    let convention = reg.convention();
    let norms: Vec<BigInt> = (0..d).map(|i| lattice.gram()[i][i].clone()).collect();
    let factors: Vec<SectorRegistry> = norms.iter().map(|n| rank_one_registry(n, convention)).collect();

    let parts = match &m {
        ModuleLabel::TwistedPM(chi, sign) => {
            let radical = &reg.mod_two().radical_basis;
            for (i, r) in radical.iter().enumerate() {
                debug_assert!(r.0.iter().enumerate().all(|(j, x)| (i == j) == !x.is_zero()));
            }
            let bits: Vec<u32> = (0..d).map(|i| (chi >> i) & 1).collect();
            sign_vectors(d, Some(*sign))
                .into_iter()
                .map(|signs| {
                    Part::Tensor(bits.iter().zip(signs).map(|(b, s)| ModuleLabel::TwistedPM(*b, s)).collect())
                })
                .collect()
        }
        _ => {
            let lambda = m.coset_rep(d).expect("untwisted");
            let options: Vec<Vec<ModuleLabel>> =
                factors.iter().zip(&lambda.0).map(|(f, x)| factor_labels(f, x)).collect();
            match m.sign() {
                None => cartesian(&options).into_iter().map(Part::Tensor).collect(),
                Some(s) => {
                    // required product of factor signs: s · c_{2λ} / Π c^{(i)}
                    let c = reg.c_two_lambda(&m).unwrap_or(Unit4::ONE);
                    let prod = factors
                        .iter()
                        .zip(&options)
                        .fold(Unit4::ONE, |acc, (f, o)| acc.mul(f.c_two_lambda(&o[0]).unwrap_or(Unit4::ONE)));
                    let want = s.mul(real_sign(c.mul(prod.inv())));
                    sign_vectors(d, Some(want))
                        .into_iter()
                        .map(|signs| {
                            Part::Tensor(options.iter().zip(signs).map(|(o, s)| with_sign(&o[0], s)).collect())
                        })
                        .collect()
                }
            }
        }
    };
    Ok(BranchList {
        lattice: lattice.clone(),
        convention,
        parent: m,
        subalgebra: Subalgebra::Orthogonal { norms },
        parts,
    })
}

fn with_sign(label: &ModuleLabel, s: Sign) -> ModuleLabel {
    match label {
        ModuleLabel::VacPlus | ModuleLabel::VacMinus => {
            if s.is_minus() {
                ModuleLabel::VacMinus
            } else {
                ModuleLabel::VacPlus
            }
        }
        ModuleLabel::CosetPM(v, _) => ModuleLabel::CosetPM(v.clone(), s),
        ModuleLabel::TwistedPM(c, _) => ModuleLabel::TwistedPM(*c, s),
        other => other.clone(),
    }
}

/// Sign vectors of length `d` in binary order (bit `i` set means factor `i`
/// is `-`), restricted to product `want` when given.
fn sign_vectors(d: usize, want: Option<Sign>) -> Vec<Vec<Sign>> {
    (0u64..(1 << d))
        .filter(|m| want.is_none_or(|w| w.is_minus() == (m.count_ones() % 2 == 1)))
        .map(|m| (0..d).map(|i| Sign::from_negative(m >> i & 1 == 1)).collect())
        .collect()
}

fn cartesian(options: &[Vec<ModuleLabel>]) -> Vec<Vec<ModuleLabel>> {
    options.iter().fold(vec![vec![]], |acc, opts| {
        acc.into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut p = prefix.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect()
    })
}

fn check_orthogonal(lattice: &EvenLattice, l1: &OrthogonalSublattice) -> Result<()> {
    let d = lattice.rank();
    if l1.basis.len() != d || l1.norms.len() != d || l1.basis.iter().any(|b| b.0.len() != d) {
        return Err(Error::NotFullRank);
    }
    for (i, a) in l1.basis.iter().enumerate() {
        if lattice.norm_int(a) != l1.norms[i] {
            return Err(Error::Malformed(format!("norm of sublattice vector {i} is not {}", l1.norms[i])));
        }
        for b in &l1.basis[i + 1..] {
            if !lattice.pair_int(a, b).is_zero() {
                return Err(Error::NotOrthogonalBase);
            }
        }
    }
    Ok(())
}

/// Branching over `V_{L_1}^+` for an orthogonal full-rank sublattice `L_1`.
pub fn branch_sublattice(reg: &SectorRegistry, l1: &OrthogonalSublattice, m: &ModuleLabel) -> Result<BranchList> {
    let lattice = reg.lattice();
    check_orthogonal(lattice, l1)?;
    let m = reg.resolve(m)?;
    let gammas = coset_reps_mod_sublattice(lattice, &l1.basis)?;
    let sub = l1.lattice();
    let convention = reg.convention();
    let d = lattice.rank();

    let parts = match &m {
        ModuleLabel::TwistedPM(_, sign) => {
            vec![Part::TwistedPlaceholder { sign: *sign, multiplicity: reg.dim_t() }]
        }
        _ => {
            let lambda = m.coset_rep(d).expect("untwisted");
            let mut parts = Vec::new();
            let mut seen: BTreeSet<DualVector> = BTreeSet::new();
            for g in &gammas {
                let mu = to_sublattice_coords(&l1.basis, &lambda.add_lattice(g));
                let key = canonical_coset(&sub, &mu).rep;
                if seen.contains(&key) {
                    continue;
                }
                let neg = canonical_coset(&sub, &key.neg()).rep;
                seen.insert(key.clone());
                seen.insert(neg.clone());
                // an untwisted parent has 2λ ∉ L, so its orbits are never self-paired
                let Some(s) = m.sign().filter(|_| neg == key) else {
                    parts.push(Part::Sub(ModuleLabel::Untw(untwisted_rep(&sub, &key))));
                    continue;
                };
                let sign = s.mul(sublattice_sign(reg, l1, &m, &lambda, &key));
                let label = if key.is_zero() {
                    with_sign(&ModuleLabel::VacPlus, sign)
                } else {
                    ModuleLabel::CosetPM(key, sign)
                };
                parts.push(Part::Sub(label));
            }
            parts
        }
    };
    Ok(BranchList {
        lattice: lattice.clone(),
        convention,
        parent: m,
        subalgebra: Subalgebra::Sublattice(l1.clone()),
        parts,
    })
}

/// `c_{2λ} ε(α, 2λ) / c_{2μ}` for `μ = λ + α`, `2μ ∈ L_1`.
fn sublattice_sign(
    reg: &SectorRegistry,
    l1: &OrthogonalSublattice,
    parent: &ModuleLabel,
    lambda: &DualVector,
    key: &DualVector,
) -> Sign {
    let mu = from_sublattice_coords(&l1.basis, key);
    let alpha = mu.sub(lambda).to_lattice().expect("μ - λ ∈ L");
    let two_lambda = lambda.double().to_lattice().expect("2λ ∈ L");
    let two_mu: LatticeVector = mu.double().to_lattice().expect("2μ ∈ L");
    let cocycle = reg.cocycle();
    let c_parent = reg.c_two_lambda(parent).unwrap_or(Unit4::ONE);
    let c_part = if key.is_zero() {
        Unit4::ONE
    } else {
        Unit4::sqrt_of_sign(cocycle.is_negative(&two_mu, &two_mu), reg.convention().sqrt)
    };
    let eps = if cocycle.is_negative(&alpha, &two_lambda) { Unit4(2) } else { Unit4::ONE };
    real_sign(c_parent.mul(eps).mul(c_part.inv()))
}

/// Registries of the subalgebra, built once per list.
enum SubRegistries {
    Factors(Vec<SectorRegistry>),
    Whole(SectorRegistry),
}

fn part_character(list: &BranchList, regs: &SubRegistries, part: &Part, n: u32) -> Result<QSeries> {
    let d = list.lattice.rank() as u32;
    match (part, regs) {
        (Part::Tensor(ls), SubRegistries::Factors(factors)) if ls.len() == factors.len() => {
            let mut acc: Option<QSeries> = None;
            for (l, reg) in ls.iter().zip(factors) {
                let c = character(reg, l, n)?;
                acc = Some(match acc {
                    None => c,
                    Some(a) => &a * &c,
                });
            }
            Ok(acc.expect("at least one factor"))
        }
        (Part::Sub(l), SubRegistries::Whole(reg)) => character(reg, l, n),
        (Part::TwistedPlaceholder { sign, multiplicity }, _) => Ok(twisted_character(d, *multiplicity, *sign, n)),
        _ => Err(Error::Malformed("part does not match the subalgebra".into())),
    }
}

/// Characters of the parts, in order.
pub fn part_characters(list: &BranchList, n: u32) -> Result<Vec<QSeries>> {
    let regs = match &list.subalgebra {
        Subalgebra::Orthogonal { norms } => {
            SubRegistries::Factors(norms.iter().map(|m| rank_one_registry(m, list.convention)).collect())
        }
        Subalgebra::Sublattice(s) => SubRegistries::Whole(SectorRegistry::with_convention(&s.lattice(), list.convention)),
    };
    list.parts.iter().map(|p| part_character(list, &regs, p, n)).collect()
}

/// `ch(parent) = Σ ch(parts)` exactly below `q^n`.
pub fn verify_branch(list: &BranchList, n: u32) -> bool {
    let reg = SectorRegistry::with_convention(&list.lattice, list.convention);
    let Ok(parent) = character(&reg, &list.parent, n) else {
        return false;
    };
    let Ok(chars) = part_characters(list, n) else {
        return false;
    };
    let order = rat(n as i64, 1);
    let sum = chars.iter().fold(QSeries::zero(parent.denom(), &order), |acc, c| &acc + c);
    sum == parent
}

/// The character of a `V_L^+`-module for `L = Zα`, `(α,α) = 2k`, assembled
/// from its decomposition into `M(1)^+`-modules `M(1)^±`, `M(1, β)` and
/// `M(1)(θ)^±`.
pub fn rank1_m1_branch(k: u32, m: &ModuleLabel, n: u32) -> Result<QSeries> {
    if n == 0 {
        return Err(Error::BadOrder);
    }
    let lattice = EvenLattice::from_rows(&[[2 * k as i64]])?;
    let reg = SectorRegistry::new(&lattice);
    let m = reg.resolve(m)?;
    let denom = series_denominator(&lattice);
    let order = rat(n as i64, 1);
    let phi_inv = euler_product_inv(1, n, Product::Minus);
    let half = rat(1, 2);
    // Σ_{m} q^{k (m + x)^2} over m ≥ m0
    let lattice_sum = |x: Rational, from: i64| {
        let mut s = QSeries::zero(denom, &order);
        let mut j = BigInt::from(from);
        loop {
            let v = Rational::from_integer(j.clone()) + &x;
            let w = &v * &v * Rational::from_integer(k.into());
            if w >= order && v >= Rational::zero() {
                break;
            }
            s.add_term(&w, Rational::one());
            j += 1;
        }
        s
    };
    let out = match &m {
        ModuleLabel::VacPlus | ModuleLabel::VacMinus => {
            let psi_inv = euler_product_inv(1, n, Product::Plus);
            let m1 = if m == ModuleLabel::VacPlus { &phi_inv + &psi_inv } else { &phi_inv - &psi_inv };
            let tail = &lattice_sum(Rational::zero(), 1) * &phi_inv;
            &m1.scale(&half) + &tail
        }
        ModuleLabel::CosetPM(..) => &lattice_sum(half.clone(), 0) * &phi_inv,
        ModuleLabel::Untw(v) => &lattice_sum(v.0[0].clone(), -(n as i64) - 2) * &phi_inv,
        ModuleLabel::TwistedPM(_, s) => twisted_character(1, 1, *s, n),
    };
    Ok(out.truncate(&order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::orthogonal_sublattice;

    fn reg(rows: &[&[i64]]) -> SectorRegistry {
        SectorRegistry::new(&EvenLattice::from_rows(rows).unwrap())
    }

    fn names(list: &BranchList) -> Vec<String> {
        list.parts.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn diag22_vacua() {
        let r = reg(&[&[2, 0], &[0, 2]]);
        let b = branch_orthogonal(&r, &ModuleLabel::VacPlus).unwrap();
        assert_eq!(names(&b), ["V+ ⊗ V+", "V- ⊗ V-"]);
        let b = branch_orthogonal(&r, &ModuleLabel::VacMinus).unwrap();
        assert_eq!(names(&b), ["V- ⊗ V+", "V+ ⊗ V-"]);
        assert!(verify_branch(&b, 10));
    }

    #[test]
    fn diag24_untwisted() {
        let r = reg(&[&[2, 0], &[0, 4]]);
        let u = r.parse_label("U[0,1/4]").unwrap();
        let b = branch_orthogonal(&r, &u).unwrap();
        assert_eq!(names(&b), ["V+ ⊗ U[1/4]", "V- ⊗ U[1/4]"]);
        assert!(verify_branch(&b, 10));
    }

    #[test]
    fn not_orthogonal() {
        let r = reg(&[&[2, 1], &[1, 2]]);
        assert!(matches!(branch_orthogonal(&r, &ModuleLabel::VacPlus), Err(Error::NotOrthogonalBase)));
    }

    #[test]
    fn a2_vacuum_over_sublattice() {
        let r = reg(&[&[2, 1], &[1, 2]]);
        let s = orthogonal_sublattice(r.lattice());
        let b = branch_sublattice(&r, &s, &ModuleLabel::VacPlus).unwrap();
        assert_eq!(b.parts.len(), 2);
        assert_eq!(b.parts[0], Part::Sub(ModuleLabel::VacPlus));
        assert!(verify_branch(&b, 10));
        let mut broken = b.clone();
        broken.parts.pop();
        assert!(!verify_branch(&broken, 10));
    }

    #[test]
    fn trivial_sublattice() {
        let r = reg(&[&[2, 0], &[0, 4]]);
        let s = orthogonal_sublattice(r.lattice());
        for l in r.labels() {
            let b = branch_sublattice(&r, &s, l).unwrap();
            if !l.is_twisted() {
                assert_eq!(b.parts, vec![Part::Sub(l.clone())]);
            }
            assert!(verify_branch(&b, 8));
        }
    }

    #[test]
    fn rank_one_heisenberg_sums() {
        for k in 1..=3 {
            let r = reg(&[&[2 * k as i64]]);
            for l in r.labels() {
                assert_eq!(rank1_m1_branch(k, l, 10).unwrap(), character(&r, l, 10).unwrap(), "{l}");
            }
        }
    }
}
