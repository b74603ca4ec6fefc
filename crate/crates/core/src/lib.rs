//! Exact-arithmetic toolkit for finite-dimensional ternary and binary
//! algebras given by structure constants.
//!
//! Everything here is computed over the rationals or the Gaussian rationals,
//! with no floating point anywhere:
//!
//! - [`exactmath`] — big-rational scalars (optionally with an imaginary part)
//!   and exact dense linear algebra (rank, nullspace, products).
//! - [`algebras`] — structure-constant algebras, evaluation, exhaustive
//!   identity checking (associativity variants, symmetry, Jacobi-type and
//!   fundamental identities), the induced skew bracket, and a small registry
//!   of built-in examples.
//! - [`cochain`] — cochain spaces, the circle operation, the coboundary
//!   operators of the partial, weak, skew and associative (Hochschild)
//!   theories, their matrixization, and cohomology dimensions.
//! - [`freeterm`] — symbolic multilinear terms over formal variables with
//!   opaque cochain symbols, directed rewriting modulo a chosen identity, and
//!   operator composition; the substrate for the symbolic verifications.
//! - [`nogo`] — coefficient-ansatz solving showing that no degree-3
//!   coboundary extends the degree-1/2 operators of the partial ternary and
//!   skew binary theories.
//! - [`takhtajan`] — the induced binary algebra on `W = V ⊗ V`, the cochain
//!   lift to `W`, the associative-type parameter analysis, and the recovery
//!   of the weak complex through the Hochschild coboundary.
//! - [`format`] — the TOML document formats for algebras and cochains used
//!   by the command-line front end.

pub mod algebras;
pub mod cochain;
pub mod exactmath;
pub mod format;
pub mod freeterm;
pub mod nogo;
pub mod takhtajan;

pub use algebras::{Algebra, BinaryAlgebra, IdentityKind, IdentityReport, TernaryAlgebra};
pub use cochain::{Cochain, CohomologyReport, Theory};
pub use exactmath::{ExactMatrix, FieldKind, Scalar};
pub use freeterm::{LinearForm, RewriteRule, Term};
