//! Exact-arithmetic decision procedures for Lie derivations on trivial
//! extension algebras.
//!
//! A trivial extension `A ⋉ X` glues a square-zero copy of a bimodule
//! `X` onto a finite-dimensional unital algebra `A`. A linear map `L` on
//! an algebra is a *Lie derivation* if it satisfies the Leibniz rule on
//! commutators, and *proper* if it splits as `D + ℓ` with `D` a
//! derivation and `ℓ` a central-valued map vanishing on commutators.
//! This crate decides properness — and the algebra-wide property that
//! every Lie derivation is proper — by exact linear algebra over the
//! rationals, and produces machine-checkable witnesses for every verdict:
//!
//! - [`exact`]: rational scalars, dense matrices, canonical (RREF-based)
//!   subspaces with deterministic solves.
//! - [`algebra`]: structure-constant algebras, bimodules, idempotents,
//!   corners, and bounded idempotent searches.
//! - [`extension`]: assembling `A ⋉ X`, the compatible-idempotent
//!   condition `p x q = x`, and triangular algebras `Tri(A, X, B)`.
//! - [`derivations`]: derivation and Lie-derivation spaces, blockwise
//!   conditions on extensions, and their carved subspace forms.
//! - [`properness`]: properness certificates, the central-witness
//!   characterization on extensions, sufficiency conditions for the
//!   algebra-wide property, loyalty, and the corner isomorphism τ.
//! - [`corpus`]: built-in instances with provenance-tagged expected
//!   facts, deterministic families, and the invariant campaign.
//! - [`json`]: the exact-rational file formats the CLI reads and writes.
//!
//! Every subspace is held in reduced row-echelon form, so equal spaces
//! compare equal structurally and all witnesses are canonical: the same
//! query always returns byte-identical output.

pub mod algebra;
pub mod corpus;
pub mod derivations;
pub mod error;
pub mod exact;
pub mod extension;
pub mod json;
pub mod properness;

pub use algebra::{Bimodule, Idempotent, StructureAlgebra};
pub use error::Error;
pub use exact::{Matrix, Scalar, Subspace};
pub use extension::{StarContext, TrivialExtension};
