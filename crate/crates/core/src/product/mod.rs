//! Finite products and limits in the cocommutative fragment: tensor
//! carriers, counit-slot projections, componentwise algebra structure,
//! mediating morphisms, and limits as equalizers of the induced pair.

mod diagram;
mod limit;
#[allow(clippy::module_inception)]
mod product;
mod tensor;

pub use diagram::{Arrow, Diagram};
pub use limit::{induced_pair, limit, mediate_limit, Limit};
pub use product::{
    mediate_product, product, product_bialg, product_coalg, product_hopf, trivial_product, Product,
};
pub use tensor::{
    digits_of, index_of, projection_matrix, tensor_coalgebra, trivial_coalgebra, MAX_TENSOR_DIM,
};
