//! Exact computation of the equivariant signature of directed strongly
//! invertible knots.
//!
//! A symmetric knot diagram reduces to an equivariant Goeritz form: two
//! symmetric integer blocks and a correction term. The crate derives that
//! form from incidence data, computes its signature invariants exactly (by
//! congruence elimination and, independently, by principal-minor sign
//! products), applies the three equivariant unknotting moves at matrix and
//! diagram level, and verifies the per-move signature bounds together with
//! the unknotting-number lower bounds they imply.
//!
//! The linear-algebra layer is generic over an exact integer scalar
//! ([`scalar::IntScalar`]); the crate-root aliases pin the default to
//! arbitrary precision. There is no floating point anywhere.

pub mod bounds;
pub mod corpus;
pub mod diagram;
pub mod document;
pub mod goeritz;
pub mod matrix;
pub mod moves;
pub mod scalar;
pub mod script;
pub mod selftest;
pub mod sign;
pub mod signature;

#[cfg(test)]
pub(crate) mod testutil;

/// Default exact integer scalar.
pub type Int = num_bigint::BigInt;
/// Exact rational over [`Int`].
pub type Rat = num_rational::BigRational;
/// Symmetric matrix over the default scalar.
pub type SymIntMatrix = matrix::SymMatrix<Int>;
/// Equivariant Goeritz form over the default scalar.
pub type EquivariantGoeritz = goeritz::Goeritz<Int>;

pub use bounds::{
    check_move_bound, delta_sigma, lower_bounds, move_bound, rank_one_diagnostics,
    verify_sequence, BoundReport, BoundStep, BoundsError, LowerBounds, RankOneDiagnostics,
};
pub use diagram::{
    Crossing, CrossingColor, DiagramError, Locus, RegionRef, SymmetricDiagram, ValidationReport,
};
pub use document::{parse_document, serialize_document, Document, DocumentBody, DocumentError};
pub use goeritz::{DetIdentityReport, Goeritz, GoeritzError};
pub use matrix::{MatrixError, SymMatrix};
pub use moves::{
    apply_move_diagram, apply_move_matrix, move_projection, resolution_form, resolution_matrix,
    DiagramMove, MoveError, MoveSpec,
};
pub use scalar::IntScalar;
pub use script::{move_script_parse, ScriptError, ScriptErrorKind};
pub use sign::Sign;
pub use signature::{
    equivariant_signature, inertia, sigma_series, sigma_series_with_preference, signature_jones,
    Inertia, SignatureError, SigmaSeries,
};
