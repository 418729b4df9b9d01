use crate::error::Error;
use crate::linalg::field::{Field, Scalar};
use crate::linalg::matrix::Matrix;

/// Subspace of k^n held by its canonical basis: rows in reduced row echelon
/// form with zero rows dropped. Two subspaces are equal exactly when their
/// basis matrices are identical, so derived equality is semantic equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Canonicalizes a spanning set. Rows may be dependent or zero.
    pub fn span(field: Field, ambient: usize, rows: Vec<Vec<Scalar>>) -> Result<Subspace, Error> {
        let m = Matrix::from_rows(field, ambient, rows)?;
        Ok(Subspace::from_matrix(&m))
    }

    /// Canonicalizes the row space of a matrix.
    pub fn from_matrix(m: &Matrix) -> Subspace {
        let (r, pivots) = m.rref_with_pivots();
        let k = pivots.len();
        let basis = Matrix::from_fn(m.field(), k, m.cols(), |i, j| r.at(i, j).clone());
        Subspace { ambient: m.cols(), basis, pivots }
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        self.basis.row(i).to_vec()
    }

    /// Coordinates of v in the canonical basis, or None when v lies outside.
    /// With an RREF basis the candidate coordinates are read off the pivot
    /// columns; membership is then a single reconstruction check.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual: Vec<Scalar> = v.to_vec();
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.ambient {
                let b = self.basis.at(i, j);
                if !b.is_zero() {
                    residual[j] = &residual[j] - &(c * b);
                }
            }
        }
        if residual.iter().all(Scalar::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient
            && (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.compatible(other)?;
        if self.dim() == 0 {
            return Ok(other.clone());
        }
        if other.dim() == 0 {
            return Ok(self.clone());
        }
        Ok(Subspace::from_matrix(&Matrix::vstack(&[&self.basis, &other.basis])))
    }

    /// Intersection via annihilators: x is in both spaces exactly when both
    /// annihilator systems vanish on x.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.compatible(other)?;
        let a1 = self.annihilator();
        let a2 = other.annihilator();
        Ok(Matrix::vstack(&[&a1, &a2]).kernel())
    }

    /// A matrix A with ker(A) equal to this subspace, (ambient - dim) rows.
    pub fn annihilator(&self) -> Matrix {
        if self.dim() == 0 {
            return Matrix::identity(self.field(), self.ambient);
        }
        self.basis.kernel().basis.clone()
    }

    fn compatible(&self, other: &Subspace) -> Result<(), Error> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch { left: self.field(), right: other.field() });
        }
        if self.ambient != other.ambient {
            return Err(Error::Malformed(format!(
                "ambient dimension mismatch: {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }
}
