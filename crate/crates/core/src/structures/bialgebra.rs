use std::sync::Arc;

use crate::coalg::Coalgebra;
use crate::error::Error;
use crate::linalg::{sparse_sub, Accum, Matrix, Scalar, SparseVec};
use crate::report::{CheckReport, Identity};

/// Bialgebra: a validated coalgebra plus multiplication (dim x dim^2, column
/// i * dim + j holds the coordinates of e_i * e_j) and a unit vector
/// (dim x 1). Construction verifies associativity, both unit laws, and the
/// compatibility axioms in the form "comultiplication and counit are algebra
/// maps".
#[derive(Debug, Clone)]
pub struct Bialgebra {
    coalgebra: Arc<Coalgebra>,
    mult: Matrix,
    unit: Matrix,
}

fn validate_shapes(c: &Coalgebra, mult: &Matrix, unit: &Matrix) -> Result<(), Error> {
    let n = c.dim();
    if mult.field() != c.field() {
        return Err(Error::FieldMismatch { left: c.field(), right: mult.field() });
    }
    if unit.field() != c.field() {
        return Err(Error::FieldMismatch { left: c.field(), right: unit.field() });
    }
    if mult.rows() != n || mult.cols() != n * n {
        return Err(Error::Malformed(format!(
            "mult must be {n}x{}, found {}x{}",
            n * n,
            mult.rows(),
            mult.cols()
        )));
    }
    if unit.rows() != n || unit.cols() != 1 {
        return Err(Error::Malformed(format!(
            "unit must be {n}x1, found {}x{}",
            unit.rows(),
            unit.cols()
        )));
    }
    Ok(())
}

/// Bialgebra axiom suite over a validated coalgebra. Malformed shapes are
/// errors, violated identities are reported.
pub fn check_bialgebra(c: &Coalgebra, mult: &Matrix, unit: &Matrix) -> Result<CheckReport, Error> {
    validate_shapes(c, mult, unit)?;
    let n = c.dim();
    let field = c.field();
    let mcol = |i: usize, j: usize| mult.sparse_col(i * n + j);
    let unit_sparse = mult_unit_sparse(unit);

    // Associativity: (xy)z = x(yz) on basis triples.
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut lhs = Accum::new();
                for (r, a) in mcol(i, j) {
                    for (t, b) in mcol(r, k) {
                        lhs.add(t, &a * &b);
                    }
                }
                let mut rhs = Accum::new();
                for (s, a) in mcol(j, k) {
                    for (t, b) in mcol(i, s) {
                        rhs.add(t, &a * &b);
                    }
                }
                if lhs.into_sparse() != rhs.into_sparse() {
                    return Ok(CheckReport::fail(
                        Identity::MultAssociativity,
                        (i * n + j) * n + k,
                    ));
                }
            }
        }
    }
    // Unit laws: 1 * x = x = x * 1.
    for i in 0..n {
        let mut left = Accum::new();
        let mut right = Accum::new();
        for (r, u) in &unit_sparse {
            for (t, b) in mcol(*r, i) {
                left.add(t, u * &b);
            }
            for (t, b) in mcol(i, *r) {
                right.add(t, u * &b);
            }
        }
        let expected: SparseVec = vec![(i, field.one())];
        if left.into_sparse() != expected {
            return Ok(CheckReport::fail(Identity::UnitLeft, i));
        }
        if right.into_sparse() != expected {
            return Ok(CheckReport::fail(Identity::UnitRight, i));
        }
    }
    // Delta(xy) = Delta(x) Delta(y) with the middle flip.
    for i in 0..n {
        for j in 0..n {
            let lhs = c.delta_of(&mcol(i, j));
            let mut rhs = Accum::new();
            for (ab, c1) in c.delta_col(i) {
                let a = ab / n;
                let b = ab % n;
                for (cd, c2) in c.delta_col(j) {
                    let cc = cd / n;
                    let d = cd % n;
                    let coeff = &c1 * &c2;
                    for (r, x) in mcol(a, cc) {
                        let cx = &coeff * &x;
                        for (s, y) in mcol(b, d) {
                            rhs.add(r * n + s, &cx * &y);
                        }
                    }
                }
            }
            if !sparse_sub(&lhs, &rhs.into_sparse()).is_empty() {
                return Ok(CheckReport::fail(Identity::ComultMultiplicative, i * n + j));
            }
            // eps(xy) = eps(x) eps(y).
            let lhs_eps = c.counit_of(&mcol(i, j));
            let rhs_eps = c.epsilon().at(0, i) * c.epsilon().at(0, j);
            if lhs_eps != rhs_eps {
                return Ok(CheckReport::fail(Identity::CounitMultiplicative, i * n + j));
            }
        }
    }
    // Delta(1) = 1 (x) 1 and eps(1) = 1.
    let lhs = c.delta_of(&unit_sparse);
    let mut rhs = Accum::new();
    for (r, x) in &unit_sparse {
        for (s, y) in &unit_sparse {
            rhs.add(r * n + s, x * y);
        }
    }
    if !sparse_sub(&lhs, &rhs.into_sparse()).is_empty() {
        return Ok(CheckReport::fail(Identity::ComultUnit, 0));
    }
    if !c.counit_of(&unit_sparse).is_one() {
        return Ok(CheckReport::fail(Identity::CounitUnit, 0));
    }
    Ok(CheckReport::pass())
}

fn mult_unit_sparse(unit: &Matrix) -> SparseVec {
    (0..unit.rows())
        .filter_map(|r| {
            let v = unit.at(r, 0);
            if v.is_zero() {
                None
            } else {
                Some((r, v.clone()))
            }
        })
        .collect()
}

impl Bialgebra {
    pub fn new(coalgebra: Arc<Coalgebra>, mult: Matrix, unit: Matrix) -> Result<Arc<Bialgebra>, Error> {
        let report = check_bialgebra(&coalgebra, &mult, &unit)?;
        if let Some(violation) = report.violation {
            return Err(Error::Axiom { object: coalgebra.name().to_string(), violation });
        }
        Ok(Arc::new(Bialgebra { coalgebra, mult, unit }))
    }

    pub fn coalgebra(&self) -> &Arc<Coalgebra> {
        &self.coalgebra
    }

    pub fn name(&self) -> &str {
        self.coalgebra.name()
    }

    pub fn dim(&self) -> usize {
        self.coalgebra.dim()
    }

    pub fn mult(&self) -> &Matrix {
        &self.mult
    }

    pub fn unit(&self) -> &Matrix {
        &self.unit
    }

    pub fn unit_sparse(&self) -> SparseVec {
        mult_unit_sparse(&self.unit)
    }

    /// Coordinates of e_i * e_j.
    pub fn mult_col(&self, i: usize, j: usize) -> SparseVec {
        self.mult.sparse_col(i * self.dim() + j)
    }

    /// Product of two arbitrary sparse elements.
    pub fn product_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accum::new();
        for (i, a) in x {
            for (j, b) in y {
                let c = a * b;
                for (t, m) in self.mult_col(*i, *j) {
                    acc.add(t, &c * &m);
                }
            }
        }
        acc.into_sparse()
    }

    /// The convolution identity eta . eps as a dim x dim matrix.
    pub fn unit_counit(&self) -> Matrix {
        self.unit.mul(self.coalgebra.epsilon())
    }

    /// Structural comparison ignoring names.
    pub fn same_structure(&self, other: &Bialgebra) -> bool {
        self.coalgebra.same_structure(&other.coalgebra)
            && self.mult == other.mult
            && self.unit == other.unit
    }
}

/// The opposite-coopposite bialgebra: multiplication arguments swapped and
/// comultiplication legs flipped. Valid exactly when the input is, which the
/// constructor re-verifies.
pub fn op_cop(b: &Bialgebra) -> Result<Arc<Bialgebra>, Error> {
    let n = b.dim();
    let field = b.coalgebra().field();
    let mut delta = Matrix::zeros(field, n * n, n);
    for i in 0..n {
        let flipped: Vec<(usize, Scalar)> = b
            .coalgebra()
            .delta_col(i)
            .into_iter()
            .map(|(jk, v)| ((jk % n) * n + jk / n, v))
            .collect();
        let mut acc = Accum::new();
        for (idx, v) in flipped {
            acc.add(idx, v);
        }
        delta.set_sparse_col(i, &acc.into_sparse());
    }
    let mut mult = Matrix::zeros(field, n, n * n);
    for i in 0..n {
        for j in 0..n {
            mult.set_sparse_col(i * n + j, &b.mult_col(j, i));
        }
    }
    let coalg = Coalgebra::new(
        format!("{}^opcop", b.name()),
        n,
        delta,
        b.coalgebra().epsilon().clone(),
    )?;
    Bialgebra::new(coalg, mult, b.unit().clone())
}
