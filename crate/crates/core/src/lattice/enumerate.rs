//! Fincke–Pohst enumeration of a shifted lattice `λ + L` in exact rationals.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{DualVector, EvenLattice, Rational};
use crate::error::{Error, Result};

/// Quadratic-form decomposition
/// `Q(x) = Σ_i q[i][i] · (x_i + Σ_{j>i} q[i][j] x_j)²`.
fn decompose(lattice: &EvenLattice) -> Vec<Vec<Rational>> {
    let d = lattice.rank();
    let mut q: Vec<Vec<Rational>> = lattice
        .gram()
        .iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    for i in 0..d {
        for j in (i + 1)..d {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in (i + 1)..d {
            for l in k..d {
                let t = &q[k][i] * &q[i][l];
                q[k][l] -= t;
            }
        }
    }
    q
}

/// Integers `n` with `(n - center)² ≤ radius_sq`.
fn integer_window(center: &Rational, radius_sq: &Rational) -> Vec<BigInt> {
    if radius_sq.is_negative() {
        return Vec::new();
    }
    let r: BigInt = radius_sq.ceil().to_integer().sqrt() + 1;
    let c: BigInt = center.floor().to_integer();
    let mut out = Vec::new();
    let mut n: BigInt = &c - &r;
    let hi = &c + &r + 1;
    while n <= hi {
        let diff = Rational::from_integer(n.clone()) - center;
        if &diff * &diff <= *radius_sq {
            out.push(n.clone());
        }
        n += 1;
    }
    out
}

/// All `v ∈ λ + L` with `(v, v) ≤ bound`, each exactly once, sorted by norm
/// and then lexicographically by coordinates.
pub fn enumerate_coset_vectors(
    lattice: &EvenLattice,
    shift: &DualVector,
    bound: &Rational,
) -> Result<Vec<DualVector>> {
    if bound.is_negative() {
        return Err(Error::BoundNegative);
    }
    let d = lattice.rank();
    if shift.rank() != d {
        return Err(Error::DimensionMismatch { got: shift.rank(), rank: d });
    }
    let q = decompose(lattice);
    let mut x = vec![Rational::zero(); d];
    let mut out = Vec::new();
    recurse(&q, &shift.0, d, bound.clone(), &mut x, &mut out);

    let mut keyed: Vec<(Rational, DualVector)> =
        out.into_iter().map(|v| (lattice.norm(&v), v)).collect();
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, v)| v).collect())
}

fn recurse(
    q: &[Vec<Rational>],
    shift: &[Rational],
    level: usize,
    remaining: Rational,
    x: &mut Vec<Rational>,
    out: &mut Vec<DualVector>,
) {
    if level == 0 {
        out.push(DualVector(x.clone()));
        return;
    }
    let i = level - 1;
    let d = q.len();
    let mut center = Rational::zero();
    for j in (i + 1)..d {
        center -= &q[i][j] * &x[j];
    }
    // x_i = shift_i + n with q_ii (x_i - center)² ≤ remaining
    let offset = &center - &shift[i];
    let radius_sq = &remaining / &q[i][i];
    for n in integer_window(&offset, &radius_sq) {
        let xi = &shift[i] + Rational::from_integer(n);
        let diff = &xi - &center;
        let used = &q[i][i] * &diff * &diff;
        x[i] = xi;
        recurse(q, shift, i, &remaining - used, x, out);
    }
    x[i] = Rational::zero();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;

    #[test]
    fn rank_one_examples() {
        let a1 = EvenLattice::from_rows(&[[2]]).unwrap();
        let v = enumerate_coset_vectors(&a1, &DualVector::zero(1), &rat(2, 1)).unwrap();
        assert_eq!(
            v,
            vec![
                DualVector::from_ratios(&[(0, 1)]),
                DualVector::from_ratios(&[(-1, 1)]),
                DualVector::from_ratios(&[(1, 1)]),
            ]
        );
        let half = DualVector::from_ratios(&[(1, 2)]);
        let v = enumerate_coset_vectors(&a1, &half, &rat(1, 2)).unwrap();
        assert_eq!(
            v,
            vec![DualVector::from_ratios(&[(-1, 2)]), DualVector::from_ratios(&[(1, 2)])]
        );
    }

    #[test]
    fn a2_roots_and_origin() {
        let a2 = EvenLattice::from_rows(&[[2, 1], [1, 2]]).unwrap();
        let v = enumerate_coset_vectors(&a2, &DualVector::zero(2), &rat(2, 1)).unwrap();
        assert_eq!(v.len(), 7);
        assert!(v[0].is_zero());
    }

    #[test]
    fn negative_bound_is_rejected() {
        let a1 = EvenLattice::from_rows(&[[2]]).unwrap();
        assert_eq!(
            enumerate_coset_vectors(&a1, &DualVector::zero(1), &rat(-1, 1)),
            Err(Error::BoundNegative)
        );
    }

    #[test]
    fn zero_bound_on_nonzero_coset_is_empty() {
        let a1 = EvenLattice::from_rows(&[[2]]).unwrap();
        let half = DualVector::from_ratios(&[(1, 2)]);
        assert!(enumerate_coset_vectors(&a1, &half, &rat(0, 1)).unwrap().is_empty());
    }
}
