//! Bialgebras and Hopf algebras over a validated coalgebra core, plus
//! convolution and the antipode-agreement locus.

mod bialgebra;
mod hopf;

pub use bialgebra::{check_bialgebra, op_cop, Bialgebra};
pub use hopf::{
    antipode_core, check_hopf, convolve, object_for, restrict_bialgebra, restrict_hopf,
    AntipodeCore, HopfAlgebra,
};
