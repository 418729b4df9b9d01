use std::sync::Arc;

use crate::coalg::coalgebra::Coalgebra;
use crate::coalg::morphism::{Level, Morphism, Object};
use crate::error::Error;
use crate::linalg::{sparse_sub, Accum, Matrix, Scalar, SparseVec, Subspace};

/// A subspace of a coalgebra that is closed under comultiplication, packaged
/// with the restricted structure constants (in the carrier's canonical basis)
/// and the certified inclusion map.
#[derive(Debug, Clone)]
pub struct Subcoalgebra {
    parent: Arc<Coalgebra>,
    carrier: Subspace,
    restricted: Arc<Coalgebra>,
    inclusion: Morphism,
}

impl Subcoalgebra {
    pub fn parent(&self) -> &Arc<Coalgebra> {
        &self.parent
    }

    pub fn carrier(&self) -> &Subspace {
        &self.carrier
    }

    pub fn restricted(&self) -> &Arc<Coalgebra> {
        &self.restricted
    }

    pub fn inclusion(&self) -> &Morphism {
        &self.inclusion
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }
}

fn sparse_of_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(i, s)| (i, s.clone()))
        .collect()
}

/// Restricts the parent structure to a comultiplication-closed subspace.
/// With an RREF carrier basis, the coordinates of Delta(b_a) in the basis
/// b_u (x) b_v are read off the pivot-pair positions; the reconstruction is
/// then compared against Delta(b_a), which simultaneously verifies closure.
/// A carrier that is not closed is rejected as a precondition error; callers
/// that reach this with a theorem-guaranteed carrier map that to an
/// internal-consistency error.
pub fn restrict(
    parent: &Arc<Coalgebra>,
    carrier: &Subspace,
    name: impl Into<String>,
) -> Result<Subcoalgebra, Error> {
    let n = parent.dim();
    if carrier.ambient_dim() != n {
        return Err(Error::Malformed(format!(
            "carrier lives in dimension {}, parent has dimension {n}",
            carrier.ambient_dim()
        )));
    }
    if carrier.field() != parent.field() {
        return Err(Error::FieldMismatch { left: parent.field(), right: carrier.field() });
    }
    let k = carrier.dim();
    let pivots = carrier.pivots().to_vec();
    let basis = carrier.basis();

    let mut delta_r = Matrix::zeros(parent.field(), k * k, k);
    let mut eps_r = Matrix::zeros(parent.field(), 1, k);
    for a in 0..k {
        let ba = sparse_of_dense(basis.row(a));
        let image = parent.delta_of(&ba);
        // Candidate coordinates of Delta(b_a) at the pivot pairs.
        let mut coords: SparseVec = Vec::new();
        for (idx, val) in &image {
            let j = idx / n;
            let l = idx % n;
            if let (Ok(u), Ok(v)) = (pivots.binary_search(&j), pivots.binary_search(&l)) {
                coords.push((u * k + v, val.clone()));
            }
        }
        // Reconstruction check: sum coords (b_u (x) b_v) must equal Delta(b_a).
        let mut rebuilt = Accum::new();
        for (uv, c) in &coords {
            let u = uv / k;
            let v = uv % k;
            for (j, x) in sparse_of_dense(basis.row(u)) {
                let cx = &(c * &x);
                for (l, y) in sparse_of_dense(basis.row(v)) {
                    rebuilt.add(j * n + l, cx * &y);
                }
            }
        }
        if !sparse_sub(&image, &rebuilt.into_sparse()).is_empty() {
            return Err(Error::Precondition(format!(
                "carrier basis vector {a} is not mapped into carrier (x) carrier"
            )));
        }
        delta_r.set_sparse_col(a, &coords);
        eps_r.set(0, a, parent.counit_of(&ba));
    }

    let restricted = Coalgebra::new(name, k, delta_r, eps_r)?;
    let inclusion = Morphism::linear(
        format!("incl_{}", restricted.name()),
        Object::Coalgebra(restricted.clone()),
        Object::Coalgebra(parent.clone()),
        basis.transpose(),
    )?
    .certified(Level::Coalgebra)?;
    Ok(Subcoalgebra {
        parent: parent.clone(),
        carrier: carrier.clone(),
        restricted,
        inclusion,
    })
}

/// The largest subcoalgebra of the parent contained in W, equivalently the
/// sum of all subcoalgebras inside W. Descends through
/// W_{t+1} = { c in W_t : Delta(c) in W_t (x) W_t } until stable; each step
/// is one kernel solve. Membership in W (x) W is expressed through the
/// annihilator A of W (ker A = W): over a field W (x) C intersect C (x) W
/// equals W (x) W, so stacking (A (x) id) Delta and (id (x) A) Delta gives
/// the full condition in a single system.
pub fn largest_subcoalgebra(
    parent: &Arc<Coalgebra>,
    w: &Subspace,
) -> Result<Subcoalgebra, Error> {
    largest_subcoalgebra_stats(parent, w).map(|(s, _)| s)
}

/// Same computation, also reporting how many strict shrink steps ran.
pub fn largest_subcoalgebra_stats(
    parent: &Arc<Coalgebra>,
    w: &Subspace,
) -> Result<(Subcoalgebra, usize), Error> {
    let n = parent.dim();
    if w.ambient_dim() != n {
        return Err(Error::Malformed(format!(
            "subspace lives in dimension {}, coalgebra has dimension {n}",
            w.ambient_dim()
        )));
    }
    if w.field() != parent.field() {
        return Err(Error::FieldMismatch { left: parent.field(), right: w.field() });
    }

    let finish = |carrier: &Subspace, shrinks: usize| {
        let name = format!("{}|{}", parent.name(), carrier.dim());
        restrict(parent, carrier, name)
            .map_err(|e| match e {
                Error::Precondition(msg) => Error::Inconsistency(format!(
                    "fixed point of the subcoalgebra descent is not comultiplication-closed: {msg}"
                )),
                other => other,
            })
            .map(|s| (s, shrinks))
    };

    let mut cur = w.clone();
    let mut shrinks = 0usize;
    loop {
        // Each pass either stops or strictly shrinks, so dim(W) + 1 passes
        // is a hard ceiling; exceeding it means the descent is broken.
        assert!(
            shrinks <= w.dim() + 1,
            "subcoalgebra descent failed to stabilize within dim(W) + 1 iterations"
        );
        let k = cur.dim();
        if k == 0 {
            return finish(&cur, shrinks);
        }
        let a = cur.annihilator();
        let rows_a = a.rows();
        if rows_a == 0 {
            // W is the whole coalgebra; it is trivially closed.
            return finish(&cur, shrinks);
        }
        // Condition matrix over the coordinates of W_t: for c = sum y_a b_a,
        // rows stack (A (x) id) Delta(c) above (id (x) A) Delta(c).
        let mut cond = Matrix::zeros(parent.field(), 2 * rows_a * n, k);
        for col in 0..k {
            let b = sparse_of_dense(cur.basis().row(col));
            let image = parent.delta_of(&b);
            let mut out = Accum::new();
            for (idx, val) in &image {
                let j = idx / n;
                let l = idx % n;
                for r in 0..rows_a {
                    let aj = a.at(r, j);
                    if !aj.is_zero() {
                        out.add(r * n + l, aj * val);
                    }
                    let al = a.at(r, l);
                    if !al.is_zero() {
                        out.add(rows_a * n + j * rows_a + r, al * val);
                    }
                }
            }
            cond.set_sparse_col(col, &out.into_sparse());
        }
        let coeff_kernel = cond.kernel();
        if coeff_kernel.dim() == k {
            return finish(&cur, shrinks);
        }
        cur = Subspace::from_matrix(&coeff_kernel.basis().mul(cur.basis()));
        shrinks += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::zoo;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn whole_space_is_its_own_largest_subcoalgebra() {
        let kz4 = zoo::group_algebra(zoo::GroupTable::cyclic(4), q()).unwrap();
        let c = kz4.coalgebra().clone();
        let (sub, shrinks) =
            largest_subcoalgebra_stats(&c, &Subspace::full(q(), 4)).unwrap();
        assert_eq!(sub.dim(), 4);
        assert_eq!(shrinks, 0);
        assert!(sub.restricted().same_structure(&c));
    }

    #[test]
    fn zero_subspace_yields_the_null_coalgebra() {
        let kz2 = zoo::group_algebra(zoo::GroupTable::cyclic(2), q()).unwrap();
        let sub = largest_subcoalgebra(kz2.coalgebra(), &Subspace::zero(q(), 2)).unwrap();
        assert_eq!(sub.dim(), 0);
        assert_eq!(sub.restricted().dim(), 0);
    }

    #[test]
    fn kz4_mixed_span_shrinks_once_to_the_group_like_part() {
        // W = span{e, g + g^3, g^2} inside kZ4; the only subcoalgebra inside
        // is span{e, g^2}, reached after exactly one shrink step.
        let kz4 = zoo::group_algebra(zoo::GroupTable::cyclic(4), q()).unwrap();
        let c = kz4.coalgebra().clone();
        let w = Subspace::span(
            q(),
            4,
            vec![
                vec![q().one(), q().zero(), q().zero(), q().zero()],
                vec![q().zero(), q().one(), q().zero(), q().one()],
                vec![q().zero(), q().zero(), q().one(), q().zero()],
            ],
        )
        .unwrap();
        let (sub, shrinks) = largest_subcoalgebra_stats(&c, &w).unwrap();
        assert_eq!(shrinks, 1);
        assert_eq!(sub.dim(), 2);
        let expected = Subspace::span(
            q(),
            4,
            vec![
                vec![q().one(), q().zero(), q().zero(), q().zero()],
                vec![q().zero(), q().zero(), q().one(), q().zero()],
            ],
        )
        .unwrap();
        assert_eq!(*sub.carrier(), expected);
    }

    #[test]
    fn diagonal_span_of_the_comatrix_coalgebra_collapses_to_zero() {
        // span{e11, e22} in M^c(2) contains no subcoalgebra except 0 because
        // Delta(e11) needs e12 (x) e21.
        let mc2 = zoo::matrix_comatrix(2, q()).unwrap();
        let w = Subspace::span(
            q(),
            4,
            vec![
                vec![q().one(), q().zero(), q().zero(), q().zero()],
                vec![q().zero(), q().zero(), q().zero(), q().one()],
            ],
        )
        .unwrap();
        let sub = largest_subcoalgebra(&mc2, &w).unwrap();
        assert_eq!(sub.dim(), 0);
    }

    #[test]
    fn restriction_rejects_a_non_closed_carrier() {
        let mc2 = zoo::matrix_comatrix(2, q()).unwrap();
        let w = Subspace::span(q(), 4, vec![vec![q().one(), q().zero(), q().zero(), q().zero()]])
            .unwrap();
        assert!(matches!(restrict(&mc2, &w, "bad"), Err(Error::Precondition(_))));
    }

    #[test]
    fn restricted_constants_live_in_the_carrier_basis() {
        let kz4 = zoo::group_algebra(zoo::GroupTable::cyclic(4), q()).unwrap();
        let w = Subspace::span(
            q(),
            4,
            vec![
                vec![q().one(), q().zero(), q().zero(), q().zero()],
                vec![q().zero(), q().zero(), q().one(), q().zero()],
            ],
        )
        .unwrap();
        let sub = restrict(kz4.coalgebra(), &w, "evens").unwrap();
        // Both carrier vectors are group-like, so the restricted coalgebra is
        // the 2-dimensional group-like coalgebra.
        let r = sub.restricted();
        assert_eq!(r.dim(), 2);
        assert_eq!(r.delta_col(0), vec![(0, q().one())]);
        assert_eq!(r.delta_col(1), vec![(3, q().one())]);
        // Inclusion is certified and its matrix is the carrier basis transposed.
        assert_eq!(sub.inclusion().matrix(), &w.basis().transpose());
    }
}
