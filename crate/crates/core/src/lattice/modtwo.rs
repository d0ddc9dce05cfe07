use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{EvenLattice, LatticeVector};

/// The commutator form of `L/2L` over the two-element field and its radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModTwoData {
    /// `B[i][j] = (β_i, β_j) mod 2`.
    pub form: Vec<Vec<u8>>,
    /// Basis of `rad B`, lifted to 0/1 lattice vectors, in reduced echelon order.
    pub radical_basis: Vec<LatticeVector>,
    pub r2: usize,
}

impl ModTwoData {
    pub fn new(lattice: &EvenLattice) -> Self {
        let d = lattice.rank();
        let form: Vec<Vec<u8>> = lattice
            .gram()
            .iter()
            .map(|r| r.iter().map(|x| if x.is_odd() { 1 } else { 0 }).collect())
            .collect();
        let radical_basis = nullspace_mod2(&form, d);
        let r2 = radical_basis.len();
        ModTwoData { form, radical_basis, r2 }
    }

    /// `B(α, β)` over the two-element field.
    pub fn bilinear(&self, a: &LatticeVector, b: &LatticeVector) -> u8 {
        let mut acc = 0u8;
        for (i, ai) in a.0.iter().enumerate() {
            if ai.is_even() {
                continue;
            }
            for (j, bj) in b.0.iter().enumerate() {
                if bj.is_odd() {
                    acc ^= self.form[i][j];
                }
            }
        }
        acc
    }

    /// `q(α) = (α, α)/2 mod 2`.
    pub fn quadratic(lattice: &EvenLattice, a: &LatticeVector) -> u8 {
        let half: num_bigint::BigInt = lattice.norm_int(a) / 2;
        half.mod_floor(&num_bigint::BigInt::from(2)).to_u8().expect("0 or 1")
    }

    /// `q` evaluated on each radical basis vector.
    pub fn quadratic_on_radical(&self, lattice: &EvenLattice) -> Vec<u8> {
        self.radical_basis.iter().map(|r| Self::quadratic(lattice, r)).collect()
    }
}

/// Nullspace of a symmetric 0/1 matrix over GF(2); one basis vector per free
/// column, with a 1 in that column.
fn nullspace_mod2(form: &[Vec<u8>], d: usize) -> Vec<LatticeVector> {
    let mut m: Vec<Vec<u8>> = form.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..d {
        let Some(p) = (row..d).find(|&r| m[r][col] == 1) else {
            continue;
        };
        m.swap(row, p);
        for r in 0..d {
            if r != row && m[r][col] == 1 {
                for c in 0..d {
                    m[r][c] ^= m[row][c];
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0i64; d];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m[r][f] as i64;
            }
            LatticeVector::from_i64(&v)
        })
        .collect()
}

impl EvenLattice {
    pub fn mod_two_data(&self) -> ModTwoData {
        ModTwoData::new(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let a1 = EvenLattice::from_rows(&[[2]]).unwrap().mod_two_data();
        assert_eq!(a1.form, vec![vec![0]]);
        assert_eq!(a1.r2, 1);
        let a2 = EvenLattice::from_rows(&[[2, 1], [1, 2]]).unwrap().mod_two_data();
        assert_eq!(a2.r2, 0);
        let d = EvenLattice::from_rows(&[[2, 0], [0, 4]]).unwrap().mod_two_data();
        assert_eq!(d.r2, 2);
        assert_eq!(
            d.radical_basis,
            vec![LatticeVector::from_i64(&[1, 0]), LatticeVector::from_i64(&[0, 1])]
        );
    }

    #[test]
    fn a3_radical() {
        let l = EvenLattice::from_rows(&[[2, -1, 0], [-1, 2, -1], [0, -1, 2]]).unwrap();
        let m = l.mod_two_data();
        assert_eq!(m.r2, 1);
        assert_eq!(m.radical_basis, vec![LatticeVector::from_i64(&[1, 0, 1])]);
    }

    fn lattices() -> Vec<EvenLattice> {
        vec![
            EvenLattice::from_rows(&[[2]]).unwrap(),
            EvenLattice::from_rows(&[[2, 1], [1, 2]]).unwrap(),
            EvenLattice::from_rows(&[[2, -1, 0], [-1, 2, -1], [0, -1, 2]]).unwrap(),
            EvenLattice::from_rows(&[[4, 1, 0], [1, 2, 0], [0, 0, 2]]).unwrap(),
            EvenLattice::from_rows(&[[2, 1, 1], [1, 2, 1], [1, 1, 2]]).unwrap(),
        ]
    }

    #[test]
    fn symplectic_part_has_even_dimension() {
        for l in lattices() {
            let m = l.mod_two_data();
            assert_eq!((l.rank() - m.r2) % 2, 0);
            assert!(m.r2 <= l.rank());
        }
    }

    proptest! {
        #[test]
        fn quadratic_refines_bilinear(
            a in proptest::collection::vec(-4i64..5, 3),
            b in proptest::collection::vec(-4i64..5, 3),
        ) {
            for l in lattices() {
                let d = l.rank();
                let m = l.mod_two_data();
                let (a, b) = (LatticeVector::from_i64(&a[..d]), LatticeVector::from_i64(&b[..d]));
                let lhs = ModTwoData::quadratic(&l, &a.add(&b));
                let rhs = ModTwoData::quadratic(&l, &a) ^ ModTwoData::quadratic(&l, &b) ^ m.bilinear(&a, &b);
                prop_assert_eq!(lhs, rhs);
                // well defined on L/2L
                let shifted = a.add(&b.scale(&2.into()));
                prop_assert_eq!(ModTwoData::quadratic(&l, &shifted), ModTwoData::quadratic(&l, &a) ^ ModTwoData::quadratic(&l, &b.scale(&2.into())));
                for r in &m.radical_basis {
                    prop_assert_eq!(m.bilinear(r, &a), 0);
                }
            }
        }
    }
}
