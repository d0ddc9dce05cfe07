//! Orthogonal sublattices and representatives of `L/L_1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{canonical_cmp, enumerate_coset_vectors, int_det, rat_int, smith_normal_form};
use super::{DualVector, EvenLattice, LatticeVector, Rational};
use crate::error::{Error, Result};

/// A full-rank sublattice spanned by pairwise orthogonal vectors of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalSublattice {
    pub basis: Vec<LatticeVector>,
    /// Norms `(β_i, β_i)`, the diagonal of the sublattice Gram matrix.
    pub norms: Vec<BigInt>,
    pub index: BigInt,
}

impl OrthogonalSublattice {
    /// The sublattice as a lattice in its own right.
    pub fn lattice(&self) -> EvenLattice {
        EvenLattice::diagonal(&self.norms).expect("orthogonal basis of an even lattice")
    }
}

/// Gram–Schmidt on the input basis, each vector scaled by the least positive
/// integer that makes it integral.
pub fn orthogonal_sublattice(lattice: &EvenLattice) -> OrthogonalSublattice {
    let d = lattice.rank();
    if lattice.is_diagonal() {
        return OrthogonalSublattice {
            basis: (0..d).map(|i| unit(d, i)).collect(),
            norms: (0..d).map(|i| lattice.gram()[i][i].clone()).collect(),
            index: BigInt::one(),
        };
    }
    let mut star: Vec<DualVector> = Vec::with_capacity(d);
    for i in 0..d {
        let mut v = unit(d, i).to_dual();
        for s in &star {
            let mu = lattice.pair(&v, s) / lattice.norm(s);
            v = v.sub(&s.scale(&mu));
        }
        star.push(v);
    }
    let basis: Vec<LatticeVector> = star
        .iter()
        .map(|v| {
            let m = v.denominator_lcm();
            v.scale(&rat_int(&m)).to_lattice().expect("cleared denominators")
        })
        .collect();
    let norms: Vec<BigInt> = basis.iter().map(|b| lattice.norm_int(b)).collect();
    let prod = norms.iter().fold(BigInt::one(), |a, b| a * b);
    let index = (prod / lattice.det()).sqrt();
    OrthogonalSublattice { basis, norms, index }
}

fn unit(d: usize, i: usize) -> LatticeVector {
    let mut v = LatticeVector::zero(d);
    v.0[i] = BigInt::one();
    v
}

fn basis_matrix(basis: &[LatticeVector]) -> Vec<Vec<BigInt>> {
    basis.iter().map(|b| b.0.clone()).collect()
}

/// Inverse of an invertible integer matrix, over the rationals.
fn inverse(m: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(rat_int).collect();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("invertible");
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in 0..2 * n {
                    let t = &a[col][k] * &f;
                    a[r][k] -= t;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// `x · M` for a row vector `x`.
fn row_times(x: &[Rational], m: &[Vec<Rational>]) -> Vec<Rational> {
    let n = m.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| x.iter().zip(m).fold(Rational::zero(), |acc, (xi, row)| acc + xi * &row[j]))
        .collect()
}

/// Representatives of `L/L_1` for the sublattice spanned by `basis`: the zero
/// class first, each representative of minimal norm in its class, ties broken
/// by the canonical order.
pub fn coset_reps_mod_sublattice(
    lattice: &EvenLattice,
    basis: &[LatticeVector],
) -> Result<Vec<LatticeVector>> {
    let d = lattice.rank();
    if basis.len() != d || basis.iter().any(|b| b.0.len() != d) {
        return Err(Error::NotFullRank);
    }
    let b = basis_matrix(basis);
    if int_det(&b).is_zero() {
        return Err(Error::NotFullRank);
    }
    // U B V = D gives L_1 = ⊕ d_i w_i and L = ⊕ Z w_i with w_i the rows of V^{-1}
    let snf = smith_normal_form(&b);
    let w = inverse(&snf.right);
    let sub = sublattice_gram(lattice, basis);
    let b_rat: Vec<Vec<Rational>> = b.iter().map(|r| r.iter().map(rat_int).collect()).collect();
    let b_inv = inverse(&b);

    let mut keys: Vec<Vec<BigInt>> = vec![vec![]];
    for f in &snf.diagonal {
        let f = f.abs();
        keys = keys
            .into_iter()
            .flat_map(|k| {
                let mut out = Vec::new();
                let mut i = BigInt::zero();
                while i < f {
                    let mut n = k.clone();
                    n.push(i.clone());
                    out.push(n);
                    i += 1;
                }
                out
            })
            .collect();
    }

    let mut reps: Vec<(Rational, LatticeVector)> = keys
        .iter()
        .map(|k| {
            let coeffs: Vec<Rational> = k.iter().map(rat_int).collect();
            let gamma = row_times(&coeffs, &w);
            minimal_in_coset(lattice, &sub, &b_rat, &b_inv, &gamma)
        })
        .collect();
    reps.sort_by(|(na, a), (nb, b)| {
        let za = a.is_zero();
        let zb = b.is_zero();
        zb.cmp(&za)
            .then_with(|| na.cmp(nb))
            .then_with(|| canonical_cmp(&a.to_dual().0, &b.to_dual().0))
    });
    Ok(reps.into_iter().map(|(_, v)| v).collect())
}

fn sublattice_gram(lattice: &EvenLattice, basis: &[LatticeVector]) -> EvenLattice {
    let g: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| lattice.pair_int(a, b)).collect())
        .collect();
    EvenLattice::new(g).expect("full-rank sublattice of an even lattice")
}

fn minimal_in_coset(
    lattice: &EvenLattice,
    sub: &EvenLattice,
    b: &[Vec<Rational>],
    b_inv: &[Vec<Rational>],
    gamma: &[Rational],
) -> (Rational, LatticeVector) {
    // coordinates of γ in the sublattice basis, reduced into [0,1)
    let c: Vec<Rational> = row_times(gamma, b_inv).into_iter().map(|x| &x - x.floor()).collect();
    let start = DualVector(c);
    let bound = sub.norm(&start);
    let best = enumerate_coset_vectors(sub, &start, &bound)
        .expect("non-negative bound")
        .into_iter()
        .map(|v| {
            let x = DualVector(row_times(&v.0, b)).to_lattice().expect("vector of L");
            (lattice.norm_int(&x), x)
        })
        .min_by(|(na, a), (nb, b)| {
            na.cmp(nb)
                .then_with(|| canonical_cmp(&a.to_dual().0, &b.to_dual().0))
        })
        .expect("start vector is found");
    (rat_int(&best.0), best.1)
}

/// Coordinates of `v` (given in the basis of `L`) in the sublattice basis.
pub(crate) fn to_sublattice_coords(basis: &[LatticeVector], v: &DualVector) -> DualVector {
    let b = basis_matrix(basis);
    DualVector(row_times(&v.0, &inverse(&b)))
}

/// Coordinates in the basis of `L` of a vector given in the sublattice basis.
pub(crate) fn from_sublattice_coords(basis: &[LatticeVector], v: &DualVector) -> DualVector {
    let b: Vec<Vec<Rational>> = basis.iter().map(|r| r.0.iter().map(rat_int).collect()).collect();
    DualVector(row_times(&v.0, &b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int;
    use num_integer::Integer;

    #[test]
    fn diagonal_is_unchanged() {
        let l = EvenLattice::from_rows(&[[2, 0], [0, 4]]).unwrap();
        let s = orthogonal_sublattice(&l);
        assert_eq!(s.index, int(1));
        assert_eq!(s.norms, vec![int(2), int(4)]);
        assert_eq!(s.basis[1], LatticeVector::from_i64(&[0, 1]));
    }

    #[test]
    fn a2_sublattice() {
        let a2 = EvenLattice::from_rows(&[[2, 1], [1, 2]]).unwrap();
        let s = orthogonal_sublattice(&a2);
        assert_eq!(s.norms, vec![int(2), int(6)]);
        assert_eq!(s.index, int(2));
        assert_eq!(s.basis[1], LatticeVector::from_i64(&[-1, 2]));
        let reps = coset_reps_mod_sublattice(&a2, &s.basis).unwrap();
        assert_eq!(reps, vec![LatticeVector::zero(2), LatticeVector::from_i64(&[0, 1])]);
    }

    #[test]
    fn index_and_orthogonality() {
        for rows in [
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            vec![vec![4, 1], vec![1, 4]],
            vec![vec![2, 1, 0], vec![1, 2, 0], vec![0, 0, 2]],
            vec![vec![2, 1], vec![1, 4]],
        ] {
            let l = EvenLattice::from_rows(&rows).unwrap();
            let s = orthogonal_sublattice(&l);
            for (i, a) in s.basis.iter().enumerate() {
                for (j, b) in s.basis.iter().enumerate() {
                    if i != j {
                        assert!(l.pair_int(a, b).is_zero());
                    }
                }
                assert!(s.norms[i].is_even() && s.norms[i].is_positive());
            }
            let prod = s.norms.iter().fold(BigInt::one(), |a, b| a * b);
            assert_eq!(&s.index * &s.index * l.det(), prod);
            let reps = coset_reps_mod_sublattice(&l, &s.basis).unwrap();
            assert_eq!(int(reps.len() as i64), s.index);
        }
    }

    #[test]
    fn scaled_sublattice_reps() {
        let l = EvenLattice::from_rows(&[[2, 0], [0, 2]]).unwrap();
        let basis = vec![LatticeVector::from_i64(&[2, 0]), LatticeVector::from_i64(&[0, 2])];
        let reps = coset_reps_mod_sublattice(&l, &basis).unwrap();
        assert_eq!(reps.len(), 4);
        assert!(reps[0].is_zero());
        let full = vec![LatticeVector::from_i64(&[1, 0]), LatticeVector::from_i64(&[0, 1])];
        assert_eq!(coset_reps_mod_sublattice(&l, &full).unwrap(), vec![LatticeVector::zero(2)]);
    }

    #[test]
    fn degenerate_basis_is_rejected() {
        let l = EvenLattice::from_rows(&[[2, 0], [0, 2]]).unwrap();
        let basis = vec![LatticeVector::from_i64(&[1, 1]), LatticeVector::from_i64(&[2, 2])];
        assert_eq!(coset_reps_mod_sublattice(&l, &basis), Err(Error::NotFullRank));
    }
}
