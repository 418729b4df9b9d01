use std::sync::Arc;

use crate::coalg::Coalgebra;
use crate::error::Error;
use crate::linalg::{Accum, Field, Matrix, Scalar};

/// Hard ceiling on tensor carrier dimension; beyond it the exact dense
/// kernels stop being desk-scale.
pub const MAX_TENSOR_DIM: usize = 4096;

/// Multi-index to flat index, row-major (leftmost factor largest stride).
pub fn index_of(digits: &[usize], dims: &[usize]) -> usize {
    debug_assert_eq!(digits.len(), dims.len());
    let mut idx = 0;
    for (d, n) in digits.iter().zip(dims) {
        debug_assert!(d < n);
        idx = idx * n + d;
    }
    idx
}

/// Flat index to multi-index, row-major.
pub fn digits_of(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; dims.len()];
    for t in (0..dims.len()).rev() {
        digits[t] = idx % dims[t];
        idx /= dims[t];
    }
    debug_assert_eq!(idx, 0);
    digits
}

/// The one-dimensional coalgebra k: a single group-like basis vector.
pub fn trivial_coalgebra(field: Field) -> Arc<Coalgebra> {
    let delta = Matrix::from_triplets(field, 1, 1, &[(0, 0, field.one())])
        .expect("trivial comultiplication is well-formed");
    let eps = Matrix::from_triplets(field, 1, 1, &[(0, 0, field.one())])
        .expect("trivial counit is well-formed");
    Coalgebra::new("k", 1, delta, eps).expect("k satisfies the coalgebra axioms")
}

/// Tensor product of finitely many coalgebras with componentwise
/// comultiplication; the empty tensor is k. This is the carrier the product
/// construction uses in the cocommutative fragment, but the carrier itself
/// exists for arbitrary factors.
pub fn tensor_coalgebra(factors: &[Arc<Coalgebra>], name: impl Into<String>) -> Result<Arc<Coalgebra>, Error> {
    let name = name.into();
    if factors.is_empty() {
        return Err(Error::Precondition(
            "the empty tensor needs an explicit field; build trivial_coalgebra directly".into(),
        ));
    }
    let field = factors[0].field();
    for f in factors {
        if f.field() != field {
            return Err(Error::FieldMismatch { left: field, right: f.field() });
        }
    }
    let dims: Vec<usize> = factors.iter().map(|f| f.dim()).collect();
    let total: usize = dims.iter().try_fold(1usize, |acc, &n| {
        let next = acc.checked_mul(n)?;
        (next <= MAX_TENSOR_DIM).then_some(next)
    }).ok_or_else(|| Error::Unsupported(format!(
        "tensor carrier dimension exceeds the {MAX_TENSOR_DIM} budget for factors of dimensions {dims:?}"
    )))?;

    let mut delta = Matrix::zeros(field, total * total, total);
    let mut eps = Matrix::zeros(field, 1, total);
    for idx in 0..total {
        let digits = digits_of(idx, &dims);
        // Accumulate (left-index, right-index, coefficient) triples factor
        // by factor; row-major means extending by `j*dim + j_t`.
        let mut parts: Vec<(usize, usize, Scalar)> = vec![(0, 0, field.one())];
        for (t, factor) in factors.iter().enumerate() {
            let n_t = dims[t];
            let mut next = Vec::with_capacity(parts.len());
            for (jk, c) in factor.delta_col(digits[t]) {
                let (j_t, k_t) = (jk / n_t, jk % n_t);
                for (j, k, v) in &parts {
                    next.push((j * n_t + j_t, k * n_t + k_t, v * &c));
                }
            }
            parts = next;
        }
        let mut col = Accum::new();
        for (j, k, v) in parts {
            col.add(j * total + k, v);
        }
        delta.set_sparse_col(idx, &col.into_sparse());

        let mut e = field.one();
        for (t, factor) in factors.iter().enumerate() {
            e = &e * factor.epsilon().at(0, digits[t]);
        }
        eps.set(0, idx, e);
    }
    Coalgebra::new(name, total, delta, eps)
}

/// Projection onto factor `t`: counits everywhere else. Always a coalgebra
/// map from the tensor carrier.
pub fn projection_matrix(factors: &[Arc<Coalgebra>], t: usize) -> Matrix {
    assert!(t < factors.len());
    let field = factors[0].field();
    let dims: Vec<usize> = factors.iter().map(|f| f.dim()).collect();
    let total: usize = dims.iter().product();
    let mut out = Matrix::zeros(field, dims[t], total);
    for idx in 0..total {
        let digits = digits_of(idx, &dims);
        let mut coeff = field.one();
        for (s, factor) in factors.iter().enumerate() {
            if s != t {
                coeff = &coeff * factor.epsilon().at(0, digits[s]);
            }
        }
        if !coeff.is_zero() {
            out.set(digits[t], idx, coeff);
        }
    }
    out
}
