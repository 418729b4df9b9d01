//! Definitional reference implementations. These recompute the library's
//! structural answers by exhaustive search over a prime field, with no
//! shared code paths, so agreement is meaningful evidence.

use std::sync::Arc;

use hopflim_core::{Coalgebra, Error, Matrix, Morphism, Subspace};

use crate::enumerate::enumerate_subspaces;

/// Whether Delta maps every vector of `v` into `v` (x) `v`, checked from
/// the definition: the tensor square is materialized as a subspace of the
/// n^2-dimensional ambient space and membership is tested per basis vector.
fn delta_closed(parent: &Coalgebra, v: &Subspace) -> bool {
    let n = parent.dim();
    let field = parent.field();
    let k = v.dim();
    if k == 0 {
        return true;
    }
    let mut square_rows = Vec::with_capacity(k * k);
    for a in 0..k {
        let ba = v.basis_vector(a);
        for b in 0..k {
            let bb = v.basis_vector(b);
            let mut row = vec![field.zero(); n * n];
            for (i, x) in ba.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in bb.iter().enumerate() {
                    row[i * n + j] = x * y;
                }
            }
            square_rows.push(row);
        }
    }
    let square = Subspace::span(field, n * n, square_rows).expect("tensor-square span");
    (0..k).all(|a| square.contains(&parent.delta().apply(&v.basis_vector(a))))
}

/// The largest subcoalgebra contained in `w`, computed as the sum of every
/// Delta-closed subspace inside `w` — the definition, taken literally over
/// an enumerable field.
pub fn brute_force_largest_subcoalgebra(
    parent: &Arc<Coalgebra>,
    w: &Subspace,
) -> Result<Subspace, Error> {
    if w.ambient_dim() != parent.dim() {
        return Err(Error::Malformed(format!(
            "subspace lives in dimension {}, coalgebra has dimension {}",
            w.ambient_dim(),
            parent.dim()
        )));
    }
    let mut best = Subspace::zero(parent.field(), parent.dim());
    for v in enumerate_subspaces(parent.field(), parent.dim())? {
        if w.contains_subspace(&v) && delta_closed(parent, &v) {
            best = best.sum(&v)?;
        }
    }
    // The sum of subcoalgebras is itself one; fail loudly if not.
    assert!(
        delta_closed(parent, &best),
        "sum of Delta-closed subspaces must be Delta-closed"
    );
    Ok(best)
}

/// The carrier of the equalizer of a parallel pair, from the definition:
/// the largest subcoalgebra of ker(f - g).
pub fn brute_force_equalizer_carrier(f: &Morphism, g: &Morphism) -> Result<Subspace, Error> {
    if !f.dom().same_structure(g.dom()) || !f.cod().same_structure(g.cod()) {
        return Err(Error::Precondition(
            "oracle needs a parallel pair".into(),
        ));
    }
    let difference: Matrix = f.matrix().sub(g.matrix());
    brute_force_largest_subcoalgebra(&f.dom().coalgebra().clone(), &difference.kernel())
}
