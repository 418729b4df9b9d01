//! Instance generators: seeded random parallel pairs spanning several
//! families of objects and maps, plus a curated corpus of small coalgebras
//! over F_2 sized for exhaustive oracle work.

use std::sync::Arc;

use hopflim_core::zoo::{self, GroupTable};
use hopflim_core::{
    tensor_coalgebra, Coalgebra, Error, Field, Level, Matrix, Morphism, Object,
};
use rand::Rng;

/// A labeled parallel pair, certified at (at least) `level`, ready to be
/// equalized at that level.
pub struct ParallelPair {
    pub label: String,
    pub f: Morphism,
    pub g: Morphism,
    pub level: Level,
}

fn small_fields() -> Vec<Field> {
    vec![
        Field::Rational,
        Field::prime(2).unwrap(),
        Field::prime(3).unwrap(),
        Field::prime(5).unwrap(),
        Field::prime(7).unwrap(),
    ]
}

fn small_group(rng: &mut impl Rng) -> GroupTable {
    match rng.gen_range(0..7) {
        0 => GroupTable::cyclic(2),
        1 => GroupTable::cyclic(3),
        2 => GroupTable::cyclic(4),
        3 => GroupTable::cyclic(5),
        4 => GroupTable::cyclic(6),
        5 => GroupTable::klein(),
        _ => GroupTable::symmetric3(),
    }
}

fn abelian_group(rng: &mut impl Rng) -> GroupTable {
    match rng.gen_range(0..6) {
        0 => GroupTable::cyclic(2),
        1 => GroupTable::cyclic(3),
        2 => GroupTable::cyclic(4),
        3 => GroupTable::cyclic(5),
        4 => GroupTable::cyclic(6),
        _ => GroupTable::klein(),
    }
}

/// Draws one parallel pair from a mixed instance space: pairs of group
/// homomorphisms, power maps, antipode squares on the four-dimensional
/// examples, comatrix conjugations, and tensor products of group maps.
pub fn random_parallel_pair(rng: &mut impl Rng) -> Result<ParallelPair, Error> {
    let fields = small_fields();
    let field = fields[rng.gen_range(0..fields.len())];
    match rng.gen_range(0..6) {
        0 => {
            let dom = zoo::group_algebra(small_group(rng), field)?;
            let cod = zoo::group_algebra(small_group(rng), field)?;
            let homs = zoo::homs_between(dom.table(), cod.table())?;
            let fi = rng.gen_range(0..homs.len());
            let gi = rng.gen_range(0..homs.len());
            let f = zoo::hom_morphism(&dom, &cod, &homs[fi])?;
            let g = zoo::hom_morphism(&dom, &cod, &homs[gi])?;
            Ok(ParallelPair {
                label: format!(
                    "hom pair {} -> {} over {field}, #{fi} vs #{gi}",
                    dom.table().name(),
                    cod.table().name()
                ),
                f,
                g,
                level: Level::Hopf,
            })
        }
        1 => {
            let ga = zoo::group_algebra(abelian_group(rng), field)?;
            let order = ga.table().order();
            let (a, b) = (rng.gen_range(0..2 * order), rng.gen_range(0..2 * order));
            Ok(ParallelPair {
                label: format!("powers {a} vs {b} on k{} over {field}", ga.table().name()),
                f: zoo::power_map(&ga, a)?,
                g: zoo::power_map(&ga, b)?,
                level: Level::Hopf,
            })
        }
        2 => {
            let ga = zoo::group_algebra(abelian_group(rng), field)?;
            let k = rng.gen_range(0..ga.table().order());
            Ok(ParallelPair {
                label: format!(
                    "inversion vs power {k} on k{} over {field}",
                    ga.table().name()
                ),
                f: zoo::inverse_morphism(&ga),
                g: zoo::power_map(&ga, k)?,
                level: Level::Hopf,
            })
        }
        3 => {
            // Identity against the antipode square on a four-dimensional
            // pointed example; the antipode square is a Hopf automorphism.
            let hopf = if field == Field::prime(7).unwrap() && rng.gen_bool(0.5) {
                zoo::taft(3, field)?
            } else if field == Field::prime(2).unwrap() {
                // Sweedler needs 2 invertible; fall back to a group algebra.
                zoo::group_algebra(GroupTable::cyclic(4), field)?
                    .object()
                    .hopf()
                    .unwrap()
                    .clone()
            } else {
                zoo::sweedler_h4(field)?
            };
            let obj = Object::Hopf(hopf.clone());
            let s2 = hopf.antipode().mul(hopf.antipode());
            let f = Morphism::identity(&obj);
            let g = Morphism::linear("S.S", obj.clone(), obj.clone(), s2)?
                .certified(Level::Hopf)?;
            Ok(ParallelPair {
                label: format!("identity vs antipode square on {} over {field}", obj.name()),
                f,
                g,
                level: Level::Hopf,
            })
        }
        4 => {
            let p = random_invertible(rng, field, 2);
            let q = random_invertible(rng, field, 2);
            let f = comatrix_conjugation(&p)?;
            let g = comatrix_conjugation(&q)?;
            Ok(ParallelPair {
                label: format!("comatrix conjugation pair over {field}"),
                f,
                g,
                level: Level::Coalgebra,
            })
        }
        _ => {
            let (na, nb) = (rng.gen_range(2..=4), rng.gen_range(2..=4));
            let ga = zoo::group_algebra(GroupTable::cyclic(na), field)?;
            let gb = zoo::group_algebra(GroupTable::cyclic(nb), field)?;
            let tensor = tensor_coalgebra(
                &[ga.coalgebra().clone(), gb.coalgebra().clone()],
                format!("k{} (x) k{}", ga.table().name(), gb.table().name()),
            )?;
            let obj = Object::Coalgebra(tensor);
            let pick = |rng: &mut dyn rand::RngCore, ga: &zoo::GroupAlgebra, n: usize| {
                zoo::power_map(ga, rng.gen_range(0..n)).map(|m| m.matrix().clone())
            };
            let f1 = pick(rng, &ga, na)?;
            let f2 = pick(rng, &gb, nb)?;
            let g1 = pick(rng, &ga, na)?;
            let g2 = pick(rng, &gb, nb)?;
            let f = Morphism::linear("p1 (x) p2", obj.clone(), obj.clone(), f1.kron(&f2))?
                .certified(Level::Coalgebra)?;
            let g = Morphism::linear("q1 (x) q2", obj.clone(), obj.clone(), g1.kron(&g2))?
                .certified(Level::Coalgebra)?;
            Ok(ParallelPair {
                label: format!("tensor power pair on {} over {field}", obj.name()),
                f,
                g,
                level: Level::Coalgebra,
            })
        }
    }
}

/// A random invertible matrix over the field, by rejection on rank.
fn random_invertible(rng: &mut impl Rng, field: Field, n: usize) -> Matrix {
    loop {
        let m = Matrix::from_fn(field, n, n, |_, _| field.integer(rng.gen_range(-2..=2)));
        if m.rank() == n {
            return m;
        }
    }
}

/// Conjugation by an invertible matrix, transported to the comatrix
/// coalgebra: the algebra automorphism A -> P A P^{-1} of the n x n matrix
/// algebra dualizes to a coalgebra automorphism of M^c(n), whose matrix is
/// the transpose of P (x) (P^{-1})^T.
pub fn comatrix_conjugation(p: &Matrix) -> Result<Morphism, Error> {
    let n = p.rows();
    if p.cols() != n {
        return Err(Error::Malformed("conjugator must be square".into()));
    }
    let p_inv = invert(p)?;
    let mc = zoo::matrix_comatrix(n, p.field())?;
    let obj = Object::Coalgebra(mc);
    let matrix = p.kron(&p_inv.transpose()).transpose();
    Morphism::linear("conjugation", obj.clone(), obj, matrix)?.certified(Level::Coalgebra)
}

/// Gauss-Jordan inverse; an error if the matrix is singular.
fn invert(m: &Matrix) -> Result<Matrix, Error> {
    let n = m.rows();
    let field = m.field();
    let augmented = Matrix::from_fn(field, n, 2 * n, |i, j| {
        if j < n {
            m.at(i, j).clone()
        } else if j == n + i {
            field.one()
        } else {
            field.zero()
        }
    })
    .rref();
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j { field.one() } else { field.zero() };
            if *augmented.at(i, j) != expected {
                return Err(Error::Precondition("matrix is singular".into()));
            }
        }
    }
    Ok(Matrix::from_fn(field, n, n, |i, j| {
        augmented.at(i, j + n).clone()
    }))
}

/// The coalgebra dual to the upper-triangular 2 x 2 matrix algebra, with
/// basis dual to (e11, e12, e22): one basis vector is group-like, one is
/// skew-primitive between the two group-likes.
pub fn dual_upper_triangular(field: Field) -> Result<Arc<Coalgebra>, Error> {
    let n = 3;
    let mut mult = Matrix::zeros(field, n, n * n);
    // e11 e11 = e11, e11 e12 = e12, e12 e22 = e12, e22 e22 = e22.
    mult.set(0, 0, field.one());
    mult.set(1, 1, field.one());
    mult.set(1, 5, field.one());
    mult.set(2, 8, field.one());
    let mut unit = Matrix::zeros(field, n, 1);
    unit.set(0, 0, field.one());
    unit.set(2, 0, field.one());
    zoo::dual_coalgebra("UT2*", n, &mult, &unit)
}

/// Small coalgebras over F_2, none larger than dimension 4, for exhaustive
/// subspace enumeration: cyclic and Klein group algebras, the dual of the
/// upper-triangular algebra, the 2 x 2 comatrix coalgebra, and a divided
/// power chain.
pub fn curated_f2_coalgebras() -> Vec<Arc<Coalgebra>> {
    let f2 = Field::prime(2).unwrap();
    vec![
        zoo::group_algebra(GroupTable::cyclic(2), f2)
            .unwrap()
            .coalgebra()
            .clone(),
        zoo::group_algebra(GroupTable::cyclic(3), f2)
            .unwrap()
            .coalgebra()
            .clone(),
        zoo::group_algebra(GroupTable::cyclic(4), f2)
            .unwrap()
            .coalgebra()
            .clone(),
        zoo::group_algebra(GroupTable::klein(), f2)
            .unwrap()
            .coalgebra()
            .clone(),
        dual_upper_triangular(f2).unwrap(),
        zoo::matrix_comatrix(2, f2).unwrap(),
        zoo::divided_powers(3, f2).unwrap().coalgebra().clone(),
    ]
}
