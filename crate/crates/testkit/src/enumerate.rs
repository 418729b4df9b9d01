//! Exhaustive enumeration over small finite fields: all elements, all
//! subspaces of a low-dimensional ambient space, and all group-like
//! elements of a coalgebra. Counts are validated against Gaussian
//! binomials, so a bug in the enumerator cannot silently shrink the search
//! space.

use hopflim_core::{Coalgebra, Error, Field, Scalar, Subspace};

/// All elements of a finite field, or an error over the rationals.
pub fn field_elements(field: Field) -> Result<Vec<Scalar>, Error> {
    match field {
        Field::Rational => Err(Error::Unsupported(
            "cannot enumerate the rationals; use a prime field".into(),
        )),
        Field::Prime(p) => Ok((0..p as i64).map(|i| field.integer(i)).collect()),
    }
}

/// Gaussian binomial coefficient: the number of k-dimensional subspaces of
/// an n-dimensional space over the field with q elements. Computed by the
/// Pascal-style recurrence, exactly.
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let n = n as usize;
    let k = k as usize;
    // row[j] = [i choose j]_q while sweeping i upward.
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 1..=n {
        for j in (1..=k).rev() {
            row[j] = row[j - 1] + (q as u128).pow(j as u32) * row[j];
        }
    }
    row[k]
}

/// Total number of subspaces of an n-dimensional space over F_q.
pub fn subspace_count(n: u64, q: u64) -> u128 {
    (0..=n).map(|k| gaussian_binomial(n, k, q)).sum()
}

const MAX_ENUMERATED_SUBSPACES: u128 = 1 << 20;

/// Every subspace of the ambient space, each exactly once, as its reduced
/// row echelon basis. Walks all pivot-column sets and all fillings of the
/// free entries; the result length is checked against [`subspace_count`].
pub fn enumerate_subspaces(field: Field, ambient: usize) -> Result<Vec<Subspace>, Error> {
    let elements = field_elements(field)?;
    let q = elements.len() as u64;
    let total = subspace_count(ambient as u64, q);
    if total > MAX_ENUMERATED_SUBSPACES {
        return Err(Error::Unsupported(format!(
            "{total} subspaces of F_{q}^{ambient} is beyond the enumeration budget"
        )));
    }
    let mut out = Vec::with_capacity(total as usize);
    out.push(Subspace::zero(field, ambient));
    for k in 1..=ambient {
        for pivots in combinations(ambient, k) {
            // Free entries of an RREF matrix with these pivots: row i may be
            // nonzero at columns right of its pivot that are not pivots
            // themselves.
            let mut free = Vec::new();
            for (i, &p) in pivots.iter().enumerate() {
                for j in (p + 1)..ambient {
                    if !pivots.contains(&j) {
                        free.push((i, j));
                    }
                }
            }
            let mut counter = vec![0usize; free.len()];
            loop {
                let mut rows = vec![vec![field.zero(); ambient]; k];
                for (i, &p) in pivots.iter().enumerate() {
                    rows[i][p] = field.one();
                }
                for (slot, &(i, j)) in counter.iter().zip(&free) {
                    rows[i][j] = elements[*slot].clone();
                }
                out.push(Subspace::span(field, ambient, rows).expect("rref rows are a basis"));
                if !advance(&mut counter, elements.len()) {
                    break;
                }
            }
        }
    }
    assert_eq!(out.len() as u128, total, "enumeration missed subspaces");
    Ok(out)
}

/// All k-subsets of 0..n in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Odometer increment over base-`radix` digits; false once wrapped to zero.
fn advance(counter: &mut [usize], radix: usize) -> bool {
    for digit in counter.iter_mut() {
        *digit += 1;
        if *digit < radix {
            return true;
        }
        *digit = 0;
    }
    false
}

const MAX_GROUPLIKE_SCAN: u128 = 1 << 16;

/// Every group-like element of a coalgebra over a prime field, found by
/// scanning all vectors: g is group-like when Delta(g) = g (x) g and
/// eps(g) = 1. (Nonzero vectors with Delta(g) = g (x) g automatically have
/// eps(g) = 1 by the counit law, so the eps test is a cheap prefilter.)
pub fn enumerate_grouplikes(c: &Coalgebra) -> Result<Vec<Vec<Scalar>>, Error> {
    let elements = field_elements(c.field())?;
    let q = elements.len() as u128;
    let n = c.dim();
    let total = q.checked_pow(n as u32).filter(|t| *t <= MAX_GROUPLIKE_SCAN);
    let Some(total) = total else {
        return Err(Error::Unsupported(format!(
            "scanning {q}^{n} vectors for group-likes is beyond the search budget"
        )));
    };
    let mut out = Vec::new();
    let mut counter = vec![0usize; n];
    for step in 0..total {
        if step > 0 && !advance(&mut counter, elements.len()) {
            break;
        }
        let v: Vec<Scalar> = counter.iter().map(|&d| elements[d].clone()).collect();
        let eps = c.epsilon().apply(&v);
        if !eps[0].is_one() {
            continue;
        }
        let dv = c.delta().apply(&v);
        let square: Vec<Scalar> = (0..n * n).map(|ij| &v[ij / n] * &v[ij % n]).collect();
        if dv == square {
            out.push(v);
        }
    }
    Ok(out)
}
