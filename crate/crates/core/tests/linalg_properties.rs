//! Property tests for the exact linear-algebra kernel: canonicality of the
//! reduced row echelon form, rank-nullity, Kronecker-product laws, and the
//! subspace lattice identities that the coalgebra layer leans on.

use hopflim_core::{Field, Matrix, Subspace};
use proptest::prelude::*;

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::prime(2).unwrap()),
        Just(Field::prime(3).unwrap()),
        Just(Field::prime(5).unwrap()),
        Just(Field::prime(13).unwrap()),
        Just(Field::prime(251).unwrap()),
    ]
}

fn matrices(max_dim: usize) -> impl Strategy<Value = Matrix> {
    (fields(), 1..=max_dim, 1..=max_dim)
        .prop_flat_map(|(f, r, c)| {
            proptest::collection::vec(-4i64..=4, r * c)
                .prop_map(move |ints| Matrix::from_fn(f, r, c, |i, j| f.integer(ints[i * c + j])))
        })
}

/// Two matrices over the same field and ambient dimension, read as row
/// spaces.
fn subspace_pairs() -> impl Strategy<Value = (Subspace, Subspace)> {
    (fields(), 1usize..=4, 1usize..=4, 1usize..=4)
        .prop_flat_map(|(f, n, r1, r2)| {
            let first = proptest::collection::vec(-3i64..=3, r1 * n);
            let second = proptest::collection::vec(-3i64..=3, r2 * n);
            (first, second).prop_map(move |(a, b)| {
                let m1 = Matrix::from_fn(f, r1, n, |i, j| f.integer(a[i * n + j]));
                let m2 = Matrix::from_fn(f, r2, n, |i, j| f.integer(b[i * n + j]));
                (Subspace::from_matrix(&m1), Subspace::from_matrix(&m2))
            })
        })
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in matrices(5)) {
        let r = m.rref();
        prop_assert_eq!(r.rref(), r);
    }

    #[test]
    fn rank_plus_nullity_is_the_column_count(m in matrices(5)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
    }

    #[test]
    fn row_operations_do_not_change_the_rref(
        m in matrices(4),
        c in -3i64..=3,
        i in 0usize..4,
        j in 0usize..4,
    ) {
        // Add c times row j to row i (when distinct and in range): the row
        // space is unchanged, so the canonical form must be bit-identical.
        let (i, j) = (i % m.rows(), j % m.rows());
        prop_assume!(i != j);
        let f = m.field();
        let mut rows: Vec<Vec<_>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        let scaled: Vec<_> = rows[j].iter().map(|v| &f.integer(c) * v).collect();
        for (a, b) in rows[i].iter_mut().zip(scaled) {
            *a = &*a + &b;
        }
        let m2 = Matrix::from_rows(f, m.cols(), rows).unwrap();
        prop_assert_eq!(m.rref(), m2.rref());
    }

    #[test]
    fn row_swaps_do_not_change_the_rref(m in matrices(4)) {
        let mut rows: Vec<Vec<_>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        rows.reverse();
        let m2 = Matrix::from_rows(m.field(), m.cols(), rows).unwrap();
        prop_assert_eq!(m.rref(), m2.rref());
    }

    #[test]
    fn kronecker_product_is_associative(
        a in matrices(3),
        bc in (1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3)
    ) {
        let f = a.field();
        let (rb, cb, rc, cc) = bc;
        let b = Matrix::from_fn(f, rb, cb, |i, j| f.integer(((i + 2 * j) % 5) as i64 - 2));
        let c = Matrix::from_fn(f, rc, cc, |i, j| f.integer(((2 * i + j) % 3) as i64 - 1));
        prop_assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
    }

    #[test]
    fn kronecker_respects_matrix_products(
        dims in (1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3),
        f in fields(),
    ) {
        // (A1 (x) B1)(A2 (x) B2) = A1 A2 (x) B1 B2.
        let (p, q, r, s) = dims;
        let a1 = Matrix::from_fn(f, p, q, |i, j| f.integer((i * 3 + j) as i64 % 4 - 1));
        let a2 = Matrix::from_fn(f, q, r, |i, j| f.integer((i + 2 * j) as i64 % 5 - 2));
        let b1 = Matrix::from_fn(f, r, s, |i, j| f.integer((2 * i + j) as i64 % 3 - 1));
        let b2 = Matrix::from_fn(f, s, p, |i, j| f.integer((i * j) as i64 % 4 - 2));
        prop_assert_eq!(
            a1.kron(&b1).mul(&a2.kron(&b2)),
            a1.mul(&a2).kron(&b1.mul(&b2))
        );
    }

    #[test]
    fn sparse_kronecker_application_matches_materialization(
        a in matrices(3),
        dims in (1usize..=3, 1usize..=3),
        fills in proptest::collection::vec(-2i64..=2, 9),
        picks in proptest::collection::vec(-2i64..=2, 9),
    ) {
        let f = a.field();
        let b = Matrix::from_fn(f, dims.0, dims.1, |i, j| {
            f.integer(fills[(i * dims.1 + j) % fills.len()])
        });
        let n = a.cols() * b.cols();
        let x: Vec<_> = (0..n).map(|i| f.integer(picks[i % picks.len()])).collect();
        let sparse: Vec<(usize, _)> = x
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        let expected = a.kron(&b).apply(&x);
        let got = hopflim_core::linalg::kron_apply2(&a, &b, &sparse);
        let mut dense = vec![f.zero(); a.rows() * b.rows()];
        for (i, v) in got {
            dense[i] = v;
        }
        prop_assert_eq!(dense, expected);
    }

    #[test]
    fn intersection_is_the_meet(pair in subspace_pairs()) {
        let (u, w) = pair;
        let meet = u.intersect(&w).unwrap();
        prop_assert!(u.contains_subspace(&meet));
        prop_assert!(w.contains_subspace(&meet));
        let join = u.sum(&w).unwrap();
        prop_assert!(join.contains_subspace(&u));
        prop_assert!(join.contains_subspace(&w));
        // Modular dimension law.
        prop_assert_eq!(join.dim() + meet.dim(), u.dim() + w.dim());
    }

    #[test]
    fn intersection_with_itself_is_identity(pair in subspace_pairs()) {
        let (u, _) = pair;
        prop_assert_eq!(u.intersect(&u).unwrap(), u.clone());
        prop_assert_eq!(u.sum(&u).unwrap(), u);
    }

    #[test]
    fn annihilator_kernel_recovers_the_subspace(pair in subspace_pairs()) {
        let (u, _) = pair;
        prop_assert_eq!(u.annihilator().kernel(), u);
    }

    #[test]
    fn coordinates_round_trip_inside_the_span(pair in subspace_pairs(), picks in proptest::collection::vec(-3i64..=3, 4)) {
        let (u, _) = pair;
        let f = u.field();
        // Take a combination of basis vectors; coords must reproduce it.
        let mut v = vec![f.zero(); u.ambient_dim()];
        for (b, c) in picks.iter().take(u.dim()).enumerate() {
            let bv = u.basis_vector(b);
            for (slot, x) in v.iter_mut().zip(bv) {
                *slot = &*slot + &(&f.integer(*c) * &x);
            }
        }
        let coords = u.coords(&v);
        prop_assert!(coords.is_some());
        let coords = coords.unwrap();
        let mut back = vec![f.zero(); u.ambient_dim()];
        for (b, c) in coords.iter().enumerate() {
            let bv = u.basis_vector(b);
            for (slot, x) in back.iter_mut().zip(bv) {
                *slot = &*slot + &(c * &x);
            }
        }
        prop_assert_eq!(back, v);
    }

    #[test]
    fn vectors_outside_the_span_have_no_coordinates(pair in subspace_pairs()) {
        let (u, _) = pair;
        prop_assume!(u.dim() < u.ambient_dim());
        let f = u.field();
        // Some standard basis vector escapes the span (not all can lie in a
        // proper subspace); coords must reject it.
        let mut rejected = false;
        for i in 0..u.ambient_dim() {
            let mut e = vec![f.zero(); u.ambient_dim()];
            e[i] = f.one();
            if u.coords(&e).is_none() {
                rejected = true;
                break;
            }
        }
        prop_assert!(rejected);
    }

    #[test]
    fn transpose_is_an_involution_and_antihomomorphism(a in matrices(4), seed in -3i64..=3) {
        let f = a.field();
        let b = Matrix::from_fn(f, a.cols(), 3, |i, j| f.integer((i as i64 + seed * j as i64) % 5 - 2));
        prop_assert_eq!(a.transpose().transpose(), a.clone());
        prop_assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
    }
}
