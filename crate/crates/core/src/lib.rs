//! Exact computations for the orbifold vertex operator algebra `V_L^+` of a
//! positive definite even lattice `L`.
//!
//! Everything starts from an integer Gram matrix. From it the crate derives
//! the discriminant group and minimal coset representatives, the list of
//! irreducible `V_L^+`-modules with their lowest weights and top levels,
//! exact truncated characters, fusion-rule vanishing gates, branching rules
//! over orthogonal sublattices, and finally a per-pair certificate that no
//! irreducible module has a nontrivial extension by another.
//!
//! No floating point is used anywhere: integers are arbitrary precision and
//! all rationals are exact.

pub mod branching;
pub mod certifier;
pub mod convention;
pub mod error;
pub mod fusion;
pub mod io;
pub mod lattice;
pub mod qseries;
pub mod sectors;

pub use convention::Convention;
pub use error::{Error, Result};
pub use lattice::{DualVector, EvenLattice, LatticeVector, Rational};
pub use qseries::QSeries;
pub use sectors::{ModuleLabel, SectorRegistry, Sign};
