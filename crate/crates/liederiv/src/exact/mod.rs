//! Exact rational linear algebra: scalars, dense matrices, and canonical
//! subspaces. Everything downstream (derivation spaces, properness
//! decisions) reduces to the kernels, solves, and lattice operations here.

pub mod matrix;
pub mod scalar;
pub mod subspace;

pub use matrix::Matrix;
pub use scalar::Scalar;
pub use subspace::Subspace;
