//! Structure-constant algebras and bimodules: validation, centers,
//! commutators, idempotents, corners, and subalgebra closures.

pub mod bimodule;
pub mod builders;
pub mod idempotent;
pub mod structure;

pub use bimodule::{Bimodule, BimoduleValidation};
pub use idempotent::{corner, find_idempotents, w_subalgebra, Corner, Idempotent, IdempotentSearch};
pub use structure::{AlgebraValidation, StructureAlgebra};
