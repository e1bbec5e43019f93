//! Exact computations with finite-dimensional Lie color algebras.
//!
//! An algebra is given by a homogeneous basis graded by a finite abelian
//! group Γ, a bicharacter ε on Γ, and structure constants in the cyclotomic
//! field Q(ζ_m) with m the exponent of Γ. On top of that the crate computes
//! derivation and n-derivation spaces as kernels of exact linear systems and
//! checks the structural relations between them (n-derivations of a perfect
//! centerless algebra are derivations; n-derivations of its derivation
//! algebra are inner).

pub mod algebra;
pub mod catalog;
pub mod derivations;
pub mod format;
pub mod grading;
pub mod linalg;
pub mod scalars;
pub mod verify;

pub use algebra::{AlgebraError, AxiomReport, BracketEntry, ColorAlgebra, GradedVector};
pub use derivations::{
    ad, delta, derivation_color_algebra, derivation_space, inner_derivation_space, is_n_derivation,
    map_bracket, n_derivation_space, DerivationAlgebra, DerivationError, DerivationSpace,
    GradedMap,
};
pub use format::{fingerprint, parse_algebra_file, serialize_algebra, FormatError};
pub use grading::{Bicharacter, BicharacterReport, GradingError, GradingGroup, GroupElement};
pub use linalg::{LinalgError, Matrix, Subspace};
pub use scalars::{CycloScalar, Rational, ScalarError};
pub use verify::Verifier;
