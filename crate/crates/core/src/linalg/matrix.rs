use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::linalg::field::{Field, Scalar};
use crate::linalg::subspace::Subspace;

/// Dense row-major matrix over a single field. The field tag is stored
/// explicitly so zero-row and zero-column matrices keep their field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Sparse vector: strictly increasing indices, no explicit zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Accumulator for building sparse vectors out of unsorted contributions.
#[derive(Debug, Default)]
pub struct Accum {
    map: BTreeMap<usize, Scalar>,
}

impl Accum {
    pub fn new() -> Self {
        Accum { map: BTreeMap::new() }
    }

    pub fn add(&mut self, index: usize, value: Scalar) {
        if value.is_zero() {
            return;
        }
        match self.map.remove(&index) {
            Some(old) => {
                let sum = &old + &value;
                if !sum.is_zero() {
                    self.map.insert(index, sum);
                }
            }
            None => {
                self.map.insert(index, value);
            }
        }
    }

    pub fn into_sparse(self) -> SparseVec {
        self.map.into_iter().collect()
    }
}

/// Applies a Kronecker product of arbitrarily many factors to a sparse
/// vector without materializing the product matrix. Index conventions are
/// row-major: the leftmost factor owns the largest stride.
pub fn kron_apply_many(mats: &[&Matrix], x: &SparseVec) -> SparseVec {
    assert!(!mats.is_empty(), "kron_apply_many needs at least one factor");
    let k = mats.len();
    let mut acc = Accum::new();
    for (idx, v) in x {
        let mut digits = vec![0usize; k];
        let mut rem = *idx;
        for t in (0..k).rev() {
            digits[t] = rem % mats[t].cols();
            rem /= mats[t].cols();
        }
        debug_assert_eq!(rem, 0, "input index out of range");
        expand_factors(mats, &digits, 0, 0, v.clone(), &mut acc);
    }
    acc.into_sparse()
}

fn expand_factors(
    mats: &[&Matrix],
    digits: &[usize],
    t: usize,
    row_acc: usize,
    coeff: Scalar,
    acc: &mut Accum,
) {
    if t == mats.len() {
        acc.add(row_acc, coeff);
        return;
    }
    for (r, a) in mats[t].sparse_col(digits[t]) {
        expand_factors(mats, digits, t + 1, row_acc * mats[t].rows() + r, &coeff * &a, acc);
    }
}

/// Componentwise difference of two sparse vectors; empty means equal.
pub fn sparse_sub(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut acc = Accum::new();
    for (i, v) in a {
        acc.add(*i, v.clone());
    }
    for (i, v) in b {
        acc.add(*i, -v);
    }
    acc.into_sparse()
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds from explicit rows; every entry must share `field` and every
    /// row must have length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Matrix, Error> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Malformed(format!(
                    "row {i} has length {} but the matrix has {cols} columns",
                    row.len()
                )));
            }
            for v in row {
                if v.field() != field {
                    return Err(Error::FieldMismatch { left: field, right: v.field() });
                }
            }
            entries.extend(row.iter().cloned());
        }
        Ok(Matrix { field, rows: rows.len(), cols, entries })
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c);
                assert_eq!(v.field(), field, "from_fn produced a foreign-field entry");
                entries.push(v);
            }
        }
        Matrix { field, rows, cols, entries }
    }

    /// Sparse triplet constructor; duplicate positions are summed.
    pub fn from_triplets(
        field: Field,
        rows: usize,
        cols: usize,
        triplets: &[(usize, usize, Scalar)],
    ) -> Result<Matrix, Error> {
        let mut m = Matrix::zeros(field, rows, cols);
        for (r, c, v) in triplets {
            if *r >= rows || *c >= cols {
                return Err(Error::Malformed(format!(
                    "triplet ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            if v.field() != field {
                return Err(Error::FieldMismatch { left: field, right: v.field() });
            }
            let cur = m.at(*r, *c).clone();
            m.set(*r, *c, &cur + v);
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert!(r < self.rows && c < self.cols);
        debug_assert_eq!(v.field(), self.field);
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    /// Nonzero entries of column `c` as (row, value) pairs.
    pub fn sparse_col(&self, c: usize) -> SparseVec {
        (0..self.rows)
            .filter_map(|r| {
                let v = self.at(r, c);
                if v.is_zero() {
                    None
                } else {
                    Some((r, v.clone()))
                }
            })
            .collect()
    }

    pub fn set_sparse_col(&mut self, c: usize, col: &SparseVec) {
        for (r, v) in col {
            self.set(*r, c, v.clone());
        }
    }

    /// Nonzero entries of row `r` as (column, value) pairs.
    pub fn sparse_row(&self, r: usize) -> SparseVec {
        self.row(r)
            .iter()
            .enumerate()
            .filter_map(|(c, v)| if v.is_zero() { None } else { Some((c, v.clone())) })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        assert_eq!(s.field(), self.field);
        Matrix::from_fn(self.field, self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        assert_eq!(self.field, rhs.field, "field mismatch in add");
        Matrix::from_fn(self.field, self.rows, self.cols, |r, c| self.at(r, c) + rhs.at(r, c))
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sub");
        assert_eq!(self.field, rhs.field, "field mismatch in sub");
        Matrix::from_fn(self.field, self.rows, self.cols, |r, c| self.at(r, c) - rhs.at(r, c))
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |r, c| -self.at(r, c))
    }

    /// Matrix product; panics on shape or field mismatch (callers validate at
    /// the public boundary).
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        assert_eq!(self.field, rhs.field, "field mismatch in mul");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(r, c).clone();
                    out.set(r, c, &cur + &(a * b));
                }
            }
        }
        out
    }

    /// Applies the matrix to a dense vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "shape mismatch in apply");
        let mut out = vec![self.field.zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for r in 0..self.rows {
                let a = self.at(r, c);
                if !a.is_zero() {
                    out[r] = &out[r] + &(a * x);
                }
            }
        }
        out
    }

    /// Applies the matrix to a sparse vector, returning a sparse result.
    pub fn apply_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accum::new();
        for (c, x) in v {
            debug_assert!(*c < self.cols);
            for r in 0..self.rows {
                let a = self.at(r, *c);
                if !a.is_zero() {
                    acc.add(r, a * x);
                }
            }
        }
        acc.into_sparse()
    }

    /// Vertical concatenation; all blocks must agree in columns and field.
    pub fn vstack(blocks: &[&Matrix]) -> Matrix {
        assert!(!blocks.is_empty());
        let field = blocks[0].field;
        let cols = blocks[0].cols;
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "shape mismatch in vstack");
            assert_eq!(b.field, field, "field mismatch in vstack");
            entries.extend(b.entries.iter().cloned());
            rows += b.rows;
        }
        Matrix { field, rows, cols, entries }
    }

    /// Kronecker product in row-major convention: the result maps
    /// x (x) y to (self x) (x) (rhs y), with (i, j) pairs flattened as
    /// i * rhs_dim + j on both sides.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.field, rhs.field, "field mismatch in kron");
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Matrix::zeros(self.field, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.at(k, l);
                        if !b.is_zero() {
                            out.set(i * rhs.rows + k, j * rhs.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    /// RREF together with the pivot column list (strictly increasing).
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // Find a row at or below r with a nonzero entry in column c.
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let a = m.at(r, j).clone();
                    let b = m.at(pr, j).clone();
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = m.at(r, c).inverse().expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = m.at(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.at(i, c).is_zero() {
                    continue;
                }
                let factor = m.at(i, c).clone();
                for j in 0..m.cols {
                    let v = m.at(i, j) - &(&factor * m.at(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Right kernel {x : Mx = 0} as a canonical subspace of the column space.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref_with_pivots();
        let mut basis_rows = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row_idx, &p) in pivots.iter().enumerate() {
                v[p] = -r.at(row_idx, free);
            }
            basis_rows.push(v);
        }
        Subspace::span(self.field, self.cols, basis_rows)
            .expect("kernel basis rows are well formed")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Applies a (x) b to a sparse vector of C (x) D without materializing the
/// Kronecker matrix. Indices follow the row-major tensor convention.
pub fn kron_apply2(a: &Matrix, b: &Matrix, x: &SparseVec) -> SparseVec {
    let mut acc = Accum::new();
    for (idx, coeff) in x {
        let p = idx / b.cols();
        let q = idx % b.cols();
        let col_a = a.sparse_col(p);
        let col_b = b.sparse_col(q);
        for (r, av) in &col_a {
            let c = &(av * coeff);
            for (s, bv) in &col_b {
                acc.add(r * b.rows() + s, c * bv);
            }
        }
    }
    acc.into_sparse()
}

/// Applies a (x) b (x) c to a sparse vector of a triple tensor power.
pub fn kron_apply3(a: &Matrix, b: &Matrix, c: &Matrix, x: &SparseVec) -> SparseVec {
    let mut acc = Accum::new();
    for (idx, coeff) in x {
        let r3 = idx % c.cols();
        let rest = idx / c.cols();
        let r2 = rest % b.cols();
        let r1 = rest / b.cols();
        let col_a = a.sparse_col(r1);
        let col_b = b.sparse_col(r2);
        let col_c = c.sparse_col(r3);
        for (i, av) in &col_a {
            let ca = &(av * coeff);
            for (j, bv) in &col_b {
                let cab = &(ca * bv);
                for (k, cv) in &col_c {
                    acc.add((i * b.rows() + j) * c.rows() + k, cab * cv);
                }
            }
        }
    }
    acc.into_sparse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: Vec<Vec<i64>>) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(
            Field::Rational,
            cols,
            rows.into_iter()
                .map(|r| r.into_iter().map(|n| Field::Rational.integer(n)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rref_is_identity_on_identity() {
        let id = Matrix::identity(Field::Rational, 4);
        assert_eq!(id.rref(), id);
    }

    #[test]
    fn rref_collapses_proportional_rows() {
        let m = qm(vec![vec![2, 4], vec![1, 2]]);
        let (r, pivots) = m.rref_with_pivots();
        assert_eq!(pivots, vec![0]);
        assert_eq!(r.row(0), &[Field::Rational.integer(1), Field::Rational.integer(2)][..]);
        assert!(r.row(1).iter().all(Scalar::is_zero));
    }

    #[test]
    fn rref_over_f2() {
        let f2 = Field::prime(2).unwrap();
        let m = Matrix::from_rows(
            f2,
            2,
            vec![vec![f2.one(), f2.one()], vec![f2.one(), f2.zero()]],
        )
        .unwrap();
        assert_eq!(m.rref(), Matrix::identity(f2, 2));
    }

    #[test]
    fn kernel_of_single_relation() {
        let m = qm(vec![vec![1, 1, 0]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 2);
        let q = Field::Rational;
        let expected = Subspace::span(
            q,
            3,
            vec![
                vec![q.integer(1), q.integer(-1), q.zero()],
                vec![q.zero(), q.zero(), q.one()],
            ],
        )
        .unwrap();
        assert_eq!(k, expected);
    }

    #[test]
    fn kernel_of_zero_row_matrix_is_everything() {
        let m = Matrix::zeros(Field::Rational, 0, 3);
        assert_eq!(m.kernel().dim(), 3);
    }

    #[test]
    fn kron_identity_blocks() {
        let q = Field::Rational;
        assert_eq!(Matrix::identity(q, 2).kron(&Matrix::identity(q, 3)), Matrix::identity(q, 6));
        let a = qm(vec![vec![2]]);
        let b = qm(vec![vec![3]]);
        assert_eq!(a.kron(&b), qm(vec![vec![6]]));
    }

    #[test]
    fn kron_follows_row_major_convention() {
        // kron(a, b) applied to e_i (x) e_j must be (a e_i) (x) (b e_j).
        let a = qm(vec![vec![1, 2], vec![3, 4]]);
        let b = qm(vec![vec![0, 1], vec![1, 0], vec![5, 7]]);
        let k = a.kron(&b);
        for i in 0..2 {
            for j in 0..2 {
                let x: SparseVec = vec![(i * 2 + j, Field::Rational.one())];
                let lhs = kron_apply2(&a, &b, &x);
                let dense = k.apply_sparse(&x);
                assert_eq!(lhs, dense);
                for (idx, v) in &lhs {
                    let r = idx / 3;
                    let s = idx % 3;
                    assert_eq!(v, &(a.at(r, i) * b.at(s, j)));
                }
            }
        }
    }

    #[test]
    fn triplet_constructor_sums_duplicates_and_rejects_out_of_range() {
        let q = Field::Rational;
        let m = Matrix::from_triplets(q, 2, 2, &[(0, 0, q.one()), (0, 0, q.one())]).unwrap();
        assert_eq!(m.at(0, 0), &q.integer(2));
        assert!(Matrix::from_triplets(q, 2, 2, &[(2, 0, q.one())]).is_err());
    }

    #[test]
    fn from_rows_rejects_mixed_fields_and_ragged_rows() {
        let q = Field::Rational;
        let f2 = Field::prime(2).unwrap();
        let got = Matrix::from_rows(q, 2, vec![vec![q.one(), f2.one()]]);
        assert!(matches!(got, Err(Error::FieldMismatch { .. })));
        let got = Matrix::from_rows(q, 2, vec![vec![q.one()]]);
        assert!(matches!(got, Err(Error::Malformed(_))));
    }
}
