//! Computations in finite p-groups given by power-commutator presentations:
//! Hall collection, lower central series and maximal-class structure,
//! Rocco's group `nu(G)` via a nilpotent quotient algorithm, the exterior
//! square `[G, G^phi] / kappa(G)` and the Schur multiplier `M(G)`, with an
//! independent bar-resolution computation of `H_2(G, Z)` for small groups.

pub mod analysis;
pub mod bar;
pub mod error;
pub mod fp;
pub mod harness;
pub mod hom;
pub mod linalg;
pub mod nq;
pub mod nu;
pub mod pcp;
pub mod subgroup;
pub mod tensor;

pub use analysis::AbelianInvariants;
pub use error::{Error, Result};
pub use fp::FpPresentation;
pub use nq::{nilpotent_quotient, QuotientResult};
pub use nu::build_nu_presentation;
pub use hom::Homomorphism;
pub use pcp::{Element, GroupOrder, PcPresentation, Word};
pub use subgroup::Subgroup;
pub use tensor::{schur_multiplier, NuGroup};

/// Arbitrary-precision integer matrix.
pub type IntMatrix = linalg::Matrix<num_bigint::BigInt>;
/// Fixed-width matrix used on hot paths; overflow is reported, not wrapped.
pub type SmallIntMatrix = linalg::Matrix<i128>;
