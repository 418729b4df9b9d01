//! Coalgebras by structure constants: axiom checking, morphisms with
//! certification levels, iterated comultiplication, and the fixed-point
//! computation of the largest subcoalgebra inside a subspace.

mod coalgebra;
mod morphism;
mod subcoalgebra;

pub use coalgebra::{check_coalgebra, Coalgebra};
pub use morphism::{Certificate, Level, Morphism, Object};
pub use subcoalgebra::{largest_subcoalgebra, largest_subcoalgebra_stats, restrict, Subcoalgebra};
