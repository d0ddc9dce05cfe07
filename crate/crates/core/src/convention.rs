//! Sign conventions that only affect bookkeeping.
//!
//! Two independent choices feed into the `±` labels of coset and twisted
//! modules: which triangle of the basis carries the `-1` entries of the
//! bimultiplicative 2-cocycle, and which square root `c_{2λ}` of
//! `ε(2λ, 2λ)` is used to normalize `θ` on `V_{λ+L}` when `2λ ∈ L`.
//! Counts, weights, characters and certificates must not depend on either.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CocycleNormalization {
    /// `ε(β_i, β_j) = (-1)^{(β_i,β_j)}` for `i > j`, `+1` otherwise.
    #[default]
    Lower,
    /// `ε(β_i, β_j) = (-1)^{(β_i,β_j)}` for `i < j`, `+1` otherwise.
    Upper,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SqrtBranch {
    /// `c = 1` when `ε(2λ,2λ) = 1`, `c = i` when it is `-1`.
    #[default]
    Principal,
    /// The negated root.
    Alternate,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Convention {
    pub cocycle: CocycleNormalization,
    pub sqrt: SqrtBranch,
}

impl Convention {
    pub fn all() -> [Convention; 4] {
        use CocycleNormalization::*;
        use SqrtBranch::*;
        [
            Convention { cocycle: Lower, sqrt: Principal },
            Convention { cocycle: Lower, sqrt: Alternate },
            Convention { cocycle: Upper, sqrt: Principal },
            Convention { cocycle: Upper, sqrt: Alternate },
        ]
    }
}

/// A fourth root of unity `i^k`, stored as `k mod 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Unit4(pub u8);

impl Unit4 {
    pub const ONE: Unit4 = Unit4(0);

    /// Square root of `±1` under the given branch.
    pub fn sqrt_of_sign(negative: bool, branch: SqrtBranch) -> Unit4 {
        let base = if negative { 1 } else { 0 };
        match branch {
            SqrtBranch::Principal => Unit4(base),
            SqrtBranch::Alternate => Unit4((base + 2) % 4),
        }
    }

    pub fn mul(self, other: Unit4) -> Unit4 {
        Unit4((self.0 + other.0) % 4)
    }

    pub fn inv(self) -> Unit4 {
        Unit4((4 - self.0) % 4)
    }

    /// `Some(true)` for `-1`, `Some(false)` for `+1`, `None` for `±i`.
    pub fn as_real_sign(self) -> Option<bool> {
        match self.0 {
            0 => Some(false),
            2 => Some(true),
            _ => None,
        }
    }
}

impl std::fmt::Display for Unit4 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self.0 {
            0 => "1",
            1 => "i",
            2 => "-1",
            _ => "-i",
        })
    }
}
