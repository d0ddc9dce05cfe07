//! The discriminant group `L°/L` and minimal-norm coset representatives.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{canonical_cmp, enumerate_coset_vectors, rat_int, smith_normal_form};
use super::{DualVector, EvenLattice, Rational};

/// `L°/L ≅ ⊕ Z/d_i` via the Smith normal form of the Gram matrix.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    pub invariant_factors: Vec<BigInt>,
    pub generators: Vec<DualVector>,
    pub order: BigInt,
    // rows of the left transform that survive (factor > 1)
    left_rows: Vec<Vec<BigInt>>,
}

/// A coset `λ + L` with its canonical minimal-norm representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetElement {
    pub rep: DualVector,
    pub min_norm: Rational,
}

impl DiscriminantGroup {
    pub fn new(lattice: &EvenLattice) -> Self {
        let snf = smith_normal_form(lattice.gram());
        let mut invariant_factors = Vec::new();
        let mut generators = Vec::new();
        let mut left_rows = Vec::new();
        for (i, d) in snf.diagonal.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            // G^{-1} = right · D^{-1} · left, so column i of `right` over d_i
            // generates the i-th cyclic factor.
            let g = DualVector(
                snf.right
                    .iter()
                    .map(|row| Rational::new(row[i].clone(), d.clone()))
                    .collect(),
            );
            invariant_factors.push(d.clone());
            generators.push(g);
            left_rows.push(snf.left[i].clone());
        }
        let order = invariant_factors.iter().fold(BigInt::one(), |a, b| a * b);
        DiscriminantGroup { invariant_factors, generators, order, left_rows }
    }

    /// Coordinates of `c + L` in `⊕ Z/d_i`, reduced into `[0, d_i)`.
    pub fn key(&self, lattice: &EvenLattice, c: &DualVector) -> Vec<BigInt> {
        let n: Vec<BigInt> = lattice
            .basis_pairings(c)
            .into_iter()
            .map(|x| {
                assert!(x.is_integer(), "vector not in dual lattice");
                x.to_integer()
            })
            .collect();
        self.left_rows
            .iter()
            .zip(&self.invariant_factors)
            .map(|(row, d)| {
                row.iter()
                    .zip(&n)
                    .fold(BigInt::zero(), |acc, (u, x)| acc + u * x)
                    .mod_floor(d)
            })
            .collect()
    }

    /// All group elements as coordinate tuples, in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![]];
        for d in &self.invariant_factors {
            let mut next = Vec::new();
            for prefix in &out {
                let mut k = BigInt::zero();
                while &k < d {
                    let mut p = prefix.clone();
                    p.push(k.clone());
                    next.push(p);
                    k += 1;
                }
            }
            out = next;
        }
        out
    }

    /// Some dual vector in the class with the given coordinates.
    pub fn element_vector(&self, key: &[BigInt]) -> DualVector {
        let rank = self.generators.first().map_or(0, |g| g.rank());
        let mut acc = DualVector::zero(rank);
        for (g, k) in self.generators.iter().zip(key) {
            acc = acc.add(&g.scale(&rat_int(k)));
        }
        acc
    }

    pub fn is_zero_key(key: &[BigInt]) -> bool {
        key.iter().all(Zero::is_zero)
    }

    pub fn neg_key(&self, key: &[BigInt]) -> Vec<BigInt> {
        key.iter()
            .zip(&self.invariant_factors)
            .map(|(k, d)| (-k).mod_floor(d))
            .collect()
    }

    pub fn add_keys(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter()
            .zip(b)
            .zip(&self.invariant_factors)
            .map(|((x, y), d)| (x + y).mod_floor(d))
            .collect()
    }
}

/// Reduces every coordinate into `[0, 1)`.
/// Coordinates shifted into `[-1/2, 1/2)`.
fn fractional_part(c: &DualVector) -> DualVector {
    let half = Rational::new(1.into(), 2.into());
    DualVector(c.0.iter().map(|x| x - (x + &half).floor()).collect())
}

/// Minimal-norm representative of `c + L`; ties go to the smallest vector in
/// [`canonical_cmp`] order.
pub fn canonical_coset(lattice: &EvenLattice, c: &DualVector) -> CosetElement {
    let start = fractional_part(c);
    let bound = lattice.norm(&start);
    let candidates = enumerate_coset_vectors(lattice, &start, &bound).expect("norm is non-negative");
    let min_norm = candidates
        .iter()
        .map(|v| lattice.norm(v))
        .min()
        .expect("start vector is always found");
    let rep = candidates
        .into_iter()
        .filter(|v| lattice.norm(v) == min_norm)
        .min_by(|a, b| canonical_cmp(&a.0, &b.0))
        .expect("nonempty");
    CosetElement { rep, min_norm }
}

impl EvenLattice {
    pub fn discriminant_group(&self) -> DiscriminantGroup {
        DiscriminantGroup::new(self)
    }

    /// One canonical element per class of `L°/L`, sorted by norm and then by
    /// the canonical order; the zero coset comes first.
    pub fn minimal_coset_reps(&self) -> Vec<CosetElement> {
        let disc = self.discriminant_group();
        let mut out: Vec<CosetElement> = disc
            .elements()
            .iter()
            .map(|key| canonical_coset(self, &disc.element_vector(key)))
            .collect();
        out.sort_by(|a, b| {
            a.min_norm
                .cmp(&b.min_norm)
                .then_with(|| canonical_cmp(&a.rep.0, &b.rep.0))
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int, rat};

    #[test]
    fn discriminant_examples() {
        let a1 = EvenLattice::from_rows(&[[2]]).unwrap();
        let g = a1.discriminant_group();
        assert_eq!(g.invariant_factors, vec![int(2)]);
        assert_eq!(g.order, int(2));

        let a2 = EvenLattice::from_rows(&[[2, 1], [1, 2]]).unwrap();
        let g = a2.discriminant_group();
        assert_eq!(g.invariant_factors, vec![int(3)]);

        let d24 = EvenLattice::from_rows(&[[2, 0], [0, 4]]).unwrap();
        let g = d24.discriminant_group();
        assert_eq!(g.invariant_factors, vec![int(2), int(4)]);
        assert_eq!(g.order, int(8));
    }

    #[test]
    fn generators_have_the_right_order() {
        let l = EvenLattice::from_rows(&[[4, 2, 0], [2, 6, 2], [0, 2, 4]]).unwrap();
        let g = l.discriminant_group();
        assert_eq!(&g.order, l.det());
        for (gen, d) in g.generators.iter().zip(&g.invariant_factors) {
            assert!(l.in_dual(gen));
            assert!(gen.scale(&rat_int(d)).is_integral());
        }
    }

    #[test]
    fn rank_one_reps() {
        let a1 = EvenLattice::from_rows(&[[2]]).unwrap();
        let reps = a1.minimal_coset_reps();
        assert_eq!(reps.len(), 2);
        assert_eq!(reps[0].rep, DualVector::zero(1));
        assert_eq!(reps[0].min_norm, rat(0, 1));
        assert_eq!(reps[1].rep, DualVector::from_ratios(&[(1, 2)]));
        assert_eq!(reps[1].min_norm, rat(1, 2));
    }

    #[test]
    fn a2_reps() {
        let a2 = EvenLattice::from_rows(&[[2, 1], [1, 2]]).unwrap();
        let reps = a2.minimal_coset_reps();
        assert_eq!(reps.len(), 3);
        assert!(reps[1..].iter().all(|c| c.min_norm == rat(2, 3)));
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let l = EvenLattice::from_rows(&[[4, 1], [1, 4]]).unwrap();
        for c in l.minimal_coset_reps() {
            assert_eq!(canonical_coset(&l, &c.rep), c);
            assert_eq!(l.norm(&c.rep), c.min_norm);
        }
    }

    #[test]
    fn keys_distinguish_cosets() {
        let l = EvenLattice::from_rows(&[[2, 0], [0, 4]]).unwrap();
        let g = l.discriminant_group();
        let reps = l.minimal_coset_reps();
        let mut keys: Vec<_> = reps.iter().map(|c| g.key(&l, &c.rep)).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 8);
    }
}
