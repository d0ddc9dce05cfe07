//! Exact lattice geometry.
//!
//! An [`EvenLattice`] is a validated integer Gram matrix. Vectors are always
//! given by coordinates in the lattice basis: [`LatticeVector`] for integer
//! coordinates and [`DualVector`] for rational ones.

mod cocycle;
mod discriminant;
mod enumerate;
mod modtwo;
mod snf;
mod sublattice;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cocycle::TwoCocycle;
pub use discriminant::{CosetElement, DiscriminantGroup};
pub use enumerate::enumerate_coset_vectors;
pub use modtwo::ModTwoData;
pub use snf::{smith_normal_form, SmithForm};
pub use sublattice::{coset_reps_mod_sublattice, orthogonal_sublattice, OrthogonalSublattice};
pub(crate) use sublattice::{from_sublattice_coords, to_sublattice_coords};
pub use discriminant::canonical_coset;

pub type Rational = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Vector with integer coordinates in the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeVector(pub Vec<BigInt>);

/// Vector of `h = C ⊗ L` with rational coordinates in the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualVector(pub Vec<Rational>);

impl LatticeVector {
    pub fn from_i64(v: &[i64]) -> Self {
        LatticeVector(v.iter().map(|&x| int(x)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); rank])
    }

    pub fn to_dual(&self) -> DualVector {
        DualVector(self.0.iter().map(rat_int).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| a * k).collect())
    }
}

impl DualVector {
    pub fn zero(rank: usize) -> Self {
        DualVector(vec![Rational::zero(); rank])
    }

    pub fn from_ratios(v: &[(i64, i64)]) -> Self {
        DualVector(v.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// True when every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn to_lattice(&self) -> Option<LatticeVector> {
        self.is_integral()
            .then(|| LatticeVector(self.0.iter().map(|x| x.to_integer()).collect()))
    }

    pub fn neg(&self) -> DualVector {
        DualVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &DualVector) -> DualVector {
        DualVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DualVector) -> DualVector {
        DualVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add_lattice(&self, other: &LatticeVector) -> DualVector {
        DualVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: &Rational) -> DualVector {
        DualVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn double(&self) -> DualVector {
        self.scale(&rat(2, 1))
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }
}

impl fmt::Display for DualVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x)?;
        }
        f.write_str("]")
    }
}

/// Order used to break ties between vectors of equal norm: coordinates are
/// compared left to right by absolute value, and a positive entry precedes
/// its negative (`0 < 1 < -1 < 2 < -2 < ...`).
pub fn canonical_cmp(a: &[Rational], b: &[Rational]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = x
            .abs()
            .cmp(&y.abs())
            .then_with(|| x.is_negative().cmp(&y.is_negative()));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    a.len().cmp(&b.len())
}

/// A positive definite even lattice given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvenLattice {
    gram: Vec<Vec<BigInt>>,
    det: BigInt,
}

impl EvenLattice {
    /// Validates `gram`: square, symmetric, even diagonal and positive
    /// definite (checked through the leading principal minors).
    pub fn new(gram: Vec<Vec<BigInt>>) -> Result<Self> {
        let rank = gram.len();
        if rank == 0 {
            return Err(Error::Empty);
        }
        for (row, r) in gram.iter().enumerate() {
            if r.len() != rank {
                return Err(Error::NotSquare { row: row + 1, len: r.len(), rank });
            }
        }
        for i in 0..rank {
            for j in (i + 1)..rank {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric { row: i + 1, col: j + 1 });
                }
            }
        }
        for (i, row) in gram.iter().enumerate() {
            if row[i].is_odd() {
                return Err(Error::NotEven { index: i + 1 });
            }
        }
        let minors = leading_minors(&gram);
        if let Some(k) = minors.iter().position(|m| !m.is_positive()) {
            return Err(Error::NotPositiveDefinite { index: k + 1 });
        }
        let det = minors[rank - 1].clone();
        Ok(EvenLattice { gram, det })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    /// Diagonal lattice `diag(norms)`.
    pub fn diagonal(norms: &[BigInt]) -> Result<Self> {
        let d = norms.len();
        let mut gram = vec![vec![BigInt::zero(); d]; d];
        for (i, n) in norms.iter().enumerate() {
            gram[i][i] = n.clone();
        }
        Self::new(gram)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<BigInt>] {
        &self.gram
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn gram_i64(&self) -> Vec<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.gram
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().expect("gram entry fits in i64")).collect())
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        let d = self.rank();
        (0..d).all(|i| (0..d).all(|j| i == j || self.gram[i][j].is_zero()))
    }

    /// True when `(α, β)` is even for all `α, β ∈ L`.
    pub fn all_pairings_even(&self) -> bool {
        self.gram.iter().all(|r| r.iter().all(|x| x.is_even()))
    }

    pub fn pair_int(&self, a: &LatticeVector, b: &LatticeVector) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, ai) in a.0.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.0.iter().enumerate() {
                acc += ai * &self.gram[i][j] * bj;
            }
        }
        acc
    }

    pub fn norm_int(&self, a: &LatticeVector) -> BigInt {
        self.pair_int(a, a)
    }

    pub fn pair(&self, a: &DualVector, b: &DualVector) -> Rational {
        let mut acc = Rational::zero();
        for (i, ai) in a.0.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for (j, bj) in b.0.iter().enumerate() {
                if !bj.is_zero() {
                    row += bj * &self.gram[i][j];
                }
            }
            acc += ai * row;
        }
        acc
    }

    pub fn norm(&self, a: &DualVector) -> Rational {
        self.pair(a, a)
    }

    /// `G · c`: the pairings of `c` with the basis vectors.
    pub fn basis_pairings(&self, c: &DualVector) -> Vec<Rational> {
        self.gram
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&c.0)
                    .fold(Rational::zero(), |acc, (g, x)| acc + x * g)
            })
            .collect()
    }

    /// `c ∈ L°` iff all pairings with the basis are integers.
    pub fn in_dual(&self, c: &DualVector) -> bool {
        c.rank() == self.rank() && self.basis_pairings(c).iter().all(|x| x.is_integer())
    }

    pub fn check_dual(&self, c: &DualVector) -> Result<()> {
        if c.rank() != self.rank() {
            return Err(Error::DimensionMismatch { got: c.rank(), rank: self.rank() });
        }
        if !self.in_dual(c) {
            return Err(Error::NotInDual);
        }
        Ok(())
    }

    /// Solves `G c = n` exactly.
    pub fn solve(&self, n: &[Rational]) -> DualVector {
        let d = self.rank();
        let mut m: Vec<Vec<Rational>> = self
            .gram
            .iter()
            .zip(n)
            .map(|(row, rhs)| {
                let mut r: Vec<Rational> = row.iter().map(rat_int).collect();
                r.push(rhs.clone());
                r
            })
            .collect();
        for col in 0..d {
            let piv = (col..d).find(|&r| !m[r][col].is_zero()).expect("nonsingular gram");
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..d {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for k in col..=d {
                        let t = &m[col][k] * &f;
                        m[r][k] -= t;
                    }
                }
            }
        }
        DualVector(m.into_iter().map(|r| r[d].clone()).collect())
    }

    /// All `α ∈ L` with `(α, α) = 2`, closed under negation.
    pub fn norm2_vectors(&self) -> Vec<LatticeVector> {
        let zero = DualVector::zero(self.rank());
        enumerate_coset_vectors(self, &zero, &rat(2, 1))
            .expect("bound is non-negative")
            .into_iter()
            .filter(|v| self.norm(v) == rat(2, 1))
            .map(|v| v.to_lattice().expect("lattice vector"))
            .collect()
    }

    /// `Δ(λ) = {α ∈ L : (λ+α, λ+α) = min_norm}` for a canonical coset element.
    pub fn delta_set(&self, coset: &CosetElement) -> Vec<LatticeVector> {
        enumerate_coset_vectors(self, &coset.rep, &coset.min_norm)
            .expect("norm is non-negative")
            .into_iter()
            .filter(|v| self.norm(v) == coset.min_norm)
            .map(|v| v.sub(&coset.rep).to_lattice().expect("difference lies in L"))
            .collect()
    }
}

/// Determinant of a square integer matrix.
pub(crate) fn int_det(m: &[Vec<BigInt>]) -> BigInt {
    bareiss_det(m, m.len())
}

/// Leading principal minors via fraction-free (Bareiss) elimination.
fn leading_minors(gram: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = gram.len();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        out.push(bareiss_det(gram, k));
    }
    out
}

fn bareiss_det(gram: &[Vec<BigInt>], k: usize) -> BigInt {
    let mut m: Vec<Vec<BigInt>> = gram[..k].iter().map(|r| r[..k].to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for i in 0..k {
        if m[i][i].is_zero() {
            match ((i + 1)..k).find(|&r| !m[r][i].is_zero()) {
                Some(r) => {
                    m.swap(i, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for r in (i + 1)..k {
            for c in (i + 1)..k {
                let v = &m[r][c] * &m[i][i] - &m[r][i] * &m[i][c];
                m[r][c] = v / &prev;
            }
        }
        prev = m[i][i].clone();
    }
    sign * m[k - 1][k - 1].clone()
}
