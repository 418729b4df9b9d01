use std::sync::Arc;

use crate::error::Error;
use crate::linalg::{Accum, Field, Matrix, Scalar, SparseVec};
use crate::report::{CheckReport, Identity};

/// Finite-dimensional coalgebra by structure constants. Column i of `delta`
/// holds the coordinates of Delta(e_i) in the ordered basis e_j (x) e_k of
/// C (x) C (row index j * dim + k); `epsilon` is a single row.
///
/// Construction validates coassociativity and both counit laws, so a value
/// of this type is always a genuine coalgebra. The cocommutativity flag is
/// computed once here and reused by the product routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coalgebra {
    name: String,
    field: Field,
    dim: usize,
    delta: Matrix,
    epsilon: Matrix,
    cocommutative: bool,
}

/// Shape validation shared by the checker and the constructor.
fn validate_shapes(dim: usize, delta: &Matrix, epsilon: &Matrix) -> Result<Field, Error> {
    let field = delta.field();
    if epsilon.field() != field {
        return Err(Error::FieldMismatch { left: field, right: epsilon.field() });
    }
    if delta.rows() != dim * dim || delta.cols() != dim {
        return Err(Error::Malformed(format!(
            "delta must be {}x{dim} for dimension {dim}, found {}x{}",
            dim * dim,
            delta.rows(),
            delta.cols()
        )));
    }
    if epsilon.rows() != 1 || epsilon.cols() != dim {
        return Err(Error::Malformed(format!(
            "epsilon must be 1x{dim}, found {}x{}",
            epsilon.rows(),
            epsilon.cols()
        )));
    }
    Ok(field)
}

/// Runs the coalgebra axiom suite on raw structure constants. A malformed
/// shape is an error; a violated identity is reported, not an error.
pub fn check_coalgebra(dim: usize, delta: &Matrix, epsilon: &Matrix) -> Result<CheckReport, Error> {
    validate_shapes(dim, delta, epsilon)?;
    for i in 0..dim {
        let x = delta.sparse_col(i);
        // (Delta (x) id) Delta(e_i) against (id (x) Delta) Delta(e_i),
        // accumulated sparsely in C^(x)3 with index a*n^2 + b*n + c.
        let mut lhs = Accum::new();
        let mut rhs = Accum::new();
        for (jk, coeff) in &x {
            let j = jk / dim;
            let k = jk % dim;
            for (ab, d) in delta.sparse_col(j) {
                let a = ab / dim;
                let b = ab % dim;
                lhs.add(a * dim * dim + b * dim + k, coeff * &d);
            }
            for (ab, d) in delta.sparse_col(k) {
                let a = ab / dim;
                let b = ab % dim;
                rhs.add(j * dim * dim + a * dim + b, coeff * &d);
            }
        }
        if lhs.into_sparse() != rhs.into_sparse() {
            return Ok(CheckReport::fail(Identity::Coassociativity, i));
        }
        // Counit laws: (eps (x) id) Delta = id and (id (x) eps) Delta = id.
        let mut left = vec![delta.field().zero(); dim];
        let mut right = vec![delta.field().zero(); dim];
        for (jk, coeff) in &x {
            let j = jk / dim;
            let k = jk % dim;
            left[k] = &left[k] + &(epsilon.at(0, j) * coeff);
            right[j] = &right[j] + &(epsilon.at(0, k) * coeff);
        }
        let expected = |t: usize| {
            if t == i {
                delta.field().one()
            } else {
                delta.field().zero()
            }
        };
        if (0..dim).any(|t| left[t] != expected(t)) {
            return Ok(CheckReport::fail(Identity::CounitLeft, i));
        }
        if (0..dim).any(|t| right[t] != expected(t)) {
            return Ok(CheckReport::fail(Identity::CounitRight, i));
        }
    }
    Ok(CheckReport::pass())
}

impl Coalgebra {
    /// Validating constructor. Shape problems come back as malformed-input
    /// errors; well-shaped constants that fail an axiom come back as axiom
    /// errors carrying the first violated identity and basis index.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        delta: Matrix,
        epsilon: Matrix,
    ) -> Result<Arc<Coalgebra>, Error> {
        let name = name.into();
        let field = validate_shapes(dim, &delta, &epsilon)?;
        let report = check_coalgebra(dim, &delta, &epsilon)?;
        if let Some(violation) = report.violation {
            return Err(Error::Axiom { object: name, violation });
        }
        let cocommutative = (0..dim).all(|i| {
            (0..dim).all(|j| (0..dim).all(|k| delta.at(j * dim + k, i) == delta.at(k * dim + j, i)))
        });
        Ok(Arc::new(Coalgebra { name, field, dim, delta, epsilon, cocommutative }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn delta(&self) -> &Matrix {
        &self.delta
    }

    pub fn epsilon(&self) -> &Matrix {
        &self.epsilon
    }

    /// Delta(e_i) found column-sparsely, indices j * dim + k.
    pub fn delta_col(&self, i: usize) -> SparseVec {
        self.delta.sparse_col(i)
    }

    /// Delta applied to an arbitrary sparse vector.
    pub fn delta_of(&self, x: &SparseVec) -> SparseVec {
        self.delta.apply_sparse(x)
    }

    pub fn counit_of(&self, x: &SparseVec) -> Scalar {
        let mut out = self.field.zero();
        for (i, v) in x {
            out = &out + &(self.epsilon.at(0, *i) * v);
        }
        out
    }

    pub fn is_cocommutative(&self) -> bool {
        self.cocommutative
    }

    /// Structural comparison ignoring the name. Used for domain/codomain
    /// compatibility checks where identity of presentation is what matters.
    pub fn same_structure(&self, other: &Coalgebra) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.delta == other.delta
            && self.epsilon == other.epsilon
    }

    /// Column i of the iterated comultiplication into C^(x)k (k >= 1),
    /// computed without materializing the full matrix. Coassociativity makes
    /// the bracket order irrelevant; comultiplication is applied to the
    /// leading tensor factor at every step.
    pub fn iterated_delta_col(&self, i: usize, k: usize) -> SparseVec {
        assert!(k >= 1);
        let n = self.dim;
        let mut cur: SparseVec = vec![(i, self.field.one())];
        let mut width = 1usize; // current tensor power, indices in [0, n^width)
        for _ in 1..k {
            let stride = n.pow((width - 1) as u32);
            let mut acc = Accum::new();
            for (idx, coeff) in &cur {
                let lead = idx / stride;
                let rest = idx % stride;
                for (ab, d) in self.delta.sparse_col(lead) {
                    let a = ab / n;
                    let b = ab % n;
                    acc.add(a * stride * n + b * stride + rest, coeff * &d);
                }
            }
            cur = acc.into_sparse();
            width += 1;
        }
        cur
    }

    /// Matrix of Delta^(k-1): C -> C^(x)k, with Delta^(0) = id and
    /// Delta^(1) = Delta. The materialized size n^k * n is guarded.
    pub fn iterated_delta(&self, k: usize) -> Result<Matrix, Error> {
        if k == 0 {
            return Err(Error::Precondition("iterated_delta requires k >= 1".into()));
        }
        let n = self.dim as u128;
        let mut size: u128 = 1;
        for _ in 0..k {
            size = size.saturating_mul(n);
        }
        if size.saturating_mul(n) > (1 << 22) {
            return Err(Error::Unsupported(format!(
                "iterated_delta would materialize a {size}x{} matrix",
                self.dim
            )));
        }
        let mut m = Matrix::zeros(self.field, (size as usize).max(1), self.dim);
        for i in 0..self.dim {
            let col = self.iterated_delta_col(i, k);
            m.set_sparse_col(i, &col);
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn group_like_coalgebra_passes_and_broken_counit_fails_at_the_right_index() {
        let q = Field::Rational;
        // Two group-like elements: Delta(e_i) = e_i (x) e_i, eps = 1.
        let delta = Matrix::from_triplets(
            q,
            4,
            2,
            &[(0, 0, q.one()), (3, 1, q.one())],
        )
        .unwrap();
        let eps_good = Matrix::from_rows(q, 2, vec![vec![q.one(), q.one()]]).unwrap();
        assert!(check_coalgebra(2, &delta, &eps_good).unwrap().pass);

        let eps_bad = Matrix::from_rows(q, 2, vec![vec![q.one(), q.zero()]]).unwrap();
        let report = check_coalgebra(2, &delta, &eps_bad).unwrap();
        let v = report.violation.unwrap();
        assert_eq!(v.identity, Identity::CounitLeft);
        assert_eq!(v.basis_index, 1);
    }

    #[test]
    fn non_coassociative_constants_fail() {
        let q = Field::Rational;
        // Delta(e_0) = e_0 (x) e_1 is not coassociative with Delta(e_1) = e_1 (x) e_1.
        let delta =
            Matrix::from_triplets(q, 4, 2, &[(1, 0, q.one()), (3, 1, q.one())]).unwrap();
        let eps = Matrix::from_rows(q, 2, vec![vec![q.one(), q.one()]]).unwrap();
        let report = check_coalgebra(2, &delta, &eps).unwrap();
        assert!(!report.pass);
        let err = Coalgebra::new("bad", 2, delta, eps).unwrap_err();
        assert!(matches!(err, Error::Axiom { .. }));
    }

    #[test]
    fn shape_problems_are_malformed_not_axiom() {
        let q = Field::Rational;
        let delta = Matrix::zeros(q, 3, 2);
        let eps = Matrix::zeros(q, 1, 2);
        assert!(matches!(check_coalgebra(2, &delta, &eps), Err(Error::Malformed(_))));
    }

    #[test]
    fn iterated_delta_edges() {
        let kz2 = zoo::group_algebra(zoo::GroupTable::cyclic(2), Field::Rational).unwrap();
        let c = kz2.coalgebra().clone();
        assert!(c.iterated_delta(0).is_err());
        assert_eq!(c.iterated_delta(1).unwrap(), Matrix::identity(Field::Rational, 2));
        assert_eq!(c.iterated_delta(2).unwrap(), *c.delta());
        // Delta^(2) of the generator g lands on g (x) g (x) g.
        let cube = c.iterated_delta(3).unwrap();
        assert_eq!(cube.sparse_col(1), vec![(7, Field::Rational.one())]);
    }

    #[test]
    fn iterated_delta_bracketing_is_immaterial() {
        let h4 = zoo::sweedler_h4(Field::Rational).unwrap();
        let c = h4.coalgebra().clone();
        let n = c.dim();
        // Recompute Delta^(2) by expanding the trailing factor instead.
        for i in 0..n {
            let via_lead = c.iterated_delta_col(i, 3);
            let mut acc = Accum::new();
            for (jk, coeff) in c.delta_col(i) {
                let j = jk / n;
                let k = jk % n;
                for (ab, d) in c.delta_col(k) {
                    acc.add(j * n * n + ab, &coeff * &d);
                }
            }
            assert_eq!(via_lead, acc.into_sparse());
        }
    }

    #[test]
    fn cocommutativity_flag() {
        let q = Field::Rational;
        let kz3 = zoo::group_algebra(zoo::GroupTable::cyclic(3), q).unwrap();
        assert!(kz3.coalgebra().is_cocommutative());
        let mc2 = zoo::matrix_comatrix(2, q).unwrap();
        assert!(!mc2.is_cocommutative());
        let h4 = zoo::sweedler_h4(q).unwrap();
        assert!(!h4.coalgebra().is_cocommutative());
    }
}
