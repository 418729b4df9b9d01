//! Exact linear algebra over Q and prime fields: scalars, dense matrices,
//! RREF-canonical subspaces, Kronecker products. Everything downstream keeps
//! equality bit-exact, so no tolerances appear anywhere in this crate.

mod field;
mod matrix;
mod subspace;

pub use field::{Field, Scalar};
pub use matrix::{kron_apply2, kron_apply3, kron_apply_many, sparse_sub, Accum, Matrix, SparseVec};
pub use subspace::Subspace;
