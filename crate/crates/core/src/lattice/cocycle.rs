use num_integer::Integer;

use super::{EvenLattice, LatticeVector};
use crate::convention::CocycleNormalization;

/// Bimultiplicative 2-cocycle `ε: L × L → {±1}` with
/// `ε(α,β) ε(β,α) = (-1)^{(α,β)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCocycle {
    /// `true` where `ε(β_i, β_j) = -1`.
    negative: Vec<Vec<bool>>,
}

impl TwoCocycle {
    pub fn new(lattice: &EvenLattice, normalization: CocycleNormalization) -> Self {
        let d = lattice.rank();
        let g = lattice.gram();
        let negative = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let active = match normalization {
                            CocycleNormalization::Lower => i > j,
                            CocycleNormalization::Upper => i < j,
                        };
                        active && g[i][j].is_odd()
                    })
                    .collect()
            })
            .collect();
        TwoCocycle { negative }
    }

    /// Value on a pair of basis vectors.
    pub fn basis_value(&self, i: usize, j: usize) -> i8 {
        if self.negative[i][j] {
            -1
        } else {
            1
        }
    }

    /// `true` when `ε(α, β) = -1`.
    pub fn is_negative(&self, a: &LatticeVector, b: &LatticeVector) -> bool {
        let mut parity = false;
        for (i, ai) in a.0.iter().enumerate() {
            if ai.is_even() {
                continue;
            }
            for (j, bj) in b.0.iter().enumerate() {
                if self.negative[i][j] && bj.is_odd() {
                    parity = !parity;
                }
            }
        }
        parity
    }

    pub fn value(&self, a: &LatticeVector, b: &LatticeVector) -> i8 {
        if self.is_negative(a, b) {
            -1
        } else {
            1
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.negative.iter().all(|r| r.iter().all(|x| !x))
    }
}

impl EvenLattice {
    pub fn epsilon_cocycle(&self) -> TwoCocycle {
        TwoCocycle::new(self, CocycleNormalization::default())
    }
}

/// `(-1)^{(α,β)}` as a boolean "is negative".
#[cfg(test)]
pub(crate) fn commutator_negative(lattice: &EvenLattice, a: &LatticeVector, b: &LatticeVector) -> bool {
    lattice.pair_int(a, b).is_odd()
}
