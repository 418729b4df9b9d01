//! Exact-arithmetic computations with coalgebras, bialgebras and Hopf
//! algebras presented by structure constants over Q or a prime field:
//! validated constructors, certified morphisms, equalizers by two
//! independent methods, products of cocommutative factors, finite limits,
//! truncated cofree coalgebras, and a zoo of worked objects.

pub mod coalg;
pub mod cofree;
pub mod equalizer;
pub mod error;
pub mod linalg;
pub mod product;
pub mod report;
pub mod structures;
pub mod zoo;

pub use coalg::{
    check_coalgebra, largest_subcoalgebra, largest_subcoalgebra_stats, restrict, Certificate,
    Coalgebra, Level, Morphism, Object, Subcoalgebra,
};
pub use cofree::{
    lift_to_cofree, product_conilpotent, truncated_cofree, Coaugmented, ConilpotentProduct,
    TruncatedCofree,
};
pub use equalizer::{
    equalize, equalize_bialg, equalize_bialg_with, equalize_coalg, equalize_coalg_with,
    equalize_hopf, equalize_hopf_with, factor_through, ClosureFlags, Equalizer, Method,
};
pub use error::Error;
pub use linalg::{Field, Matrix, Scalar, SparseVec, Subspace};
pub use product::{
    induced_pair, limit, mediate_limit, mediate_product, product, product_bialg, product_coalg,
    product_hopf, tensor_coalgebra, trivial_coalgebra, trivial_product, Arrow, Diagram, Limit,
    Product, MAX_TENSOR_DIM,
};
pub use report::{CheckReport, Identity, Violation};
pub use structures::{
    antipode_core, check_bialgebra, check_hopf, convolve, object_for, op_cop, restrict_bialgebra,
    restrict_hopf, AntipodeCore, Bialgebra, HopfAlgebra,
};
