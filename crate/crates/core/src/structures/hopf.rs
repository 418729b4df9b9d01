use std::sync::Arc;

use crate::coalg::{largest_subcoalgebra, Morphism, Object, Subcoalgebra};
use crate::error::Error;
use crate::linalg::{Accum, Matrix};
use crate::report::{CheckReport, Identity};
use crate::structures::Bialgebra;

/// Hopf algebra: a validated bialgebra plus an antipode matrix satisfying
/// both convolution-inverse identities m(S (x) id)Delta = eta.eps =
/// m(id (x) S)Delta. Verified at construction.
#[derive(Debug, Clone)]
pub struct HopfAlgebra {
    bialgebra: Arc<Bialgebra>,
    antipode: Matrix,
}

/// Antipode axiom suite over a validated bialgebra.
pub fn check_hopf(b: &Bialgebra, antipode: &Matrix) -> Result<CheckReport, Error> {
    let n = b.dim();
    if antipode.field() != b.coalgebra().field() {
        return Err(Error::FieldMismatch {
            left: b.coalgebra().field(),
            right: antipode.field(),
        });
    }
    if antipode.rows() != n || antipode.cols() != n {
        return Err(Error::Malformed(format!(
            "antipode must be {n}x{n}, found {}x{}",
            antipode.rows(),
            antipode.cols()
        )));
    }
    let target = b.unit_counit();
    let left = convolution_matrix(b, antipode, &Matrix::identity(b.coalgebra().field(), n));
    for i in 0..n {
        if left.sparse_col(i) != target.sparse_col(i) {
            return Ok(CheckReport::fail(Identity::AntipodeLeft, i));
        }
    }
    let right = convolution_matrix(b, &Matrix::identity(b.coalgebra().field(), n), antipode);
    for i in 0..n {
        if right.sparse_col(i) != target.sparse_col(i) {
            return Ok(CheckReport::fail(Identity::AntipodeRight, i));
        }
    }
    Ok(CheckReport::pass())
}

/// m_B . (f (x) g) . Delta_B for two dim x dim matrices on the same
/// bialgebra, computed column by column without materializing f (x) g.
fn convolution_matrix(b: &Bialgebra, f: &Matrix, g: &Matrix) -> Matrix {
    let n = b.dim();
    let mut out = Matrix::zeros(b.coalgebra().field(), n, n);
    for i in 0..n {
        let mut acc = Accum::new();
        for (jk, c) in b.coalgebra().delta_col(i) {
            let (j, k) = (jk / n, jk % n);
            for (r, a) in f.sparse_col(j) {
                let ca = &c * &a;
                for (s, bb) in g.sparse_col(k) {
                    let cab = &ca * &bb;
                    for (t, m) in b.mult_col(r, s) {
                        acc.add(t, &cab * &m);
                    }
                }
            }
        }
        out.set_sparse_col(i, &acc.into_sparse());
    }
    out
}

impl HopfAlgebra {
    pub fn new(bialgebra: Arc<Bialgebra>, antipode: Matrix) -> Result<Arc<HopfAlgebra>, Error> {
        let report = check_hopf(&bialgebra, &antipode)?;
        if let Some(violation) = report.violation {
            return Err(Error::Axiom {
                object: bialgebra.name().to_string(),
                violation,
            });
        }
        Ok(Arc::new(HopfAlgebra { bialgebra, antipode }))
    }

    pub fn bialgebra(&self) -> &Arc<Bialgebra> {
        &self.bialgebra
    }

    pub fn coalgebra(&self) -> &Arc<crate::coalg::Coalgebra> {
        self.bialgebra.coalgebra()
    }

    pub fn name(&self) -> &str {
        self.bialgebra.name()
    }

    pub fn dim(&self) -> usize {
        self.bialgebra.dim()
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    pub fn same_structure(&self, other: &HopfAlgebra) -> bool {
        self.bialgebra.same_structure(&other.bialgebra) && self.antipode == other.antipode
    }
}

/// Convolution product of two morphisms into a common bialgebra codomain:
/// f * g = m . (f (x) g) . Delta. The result is linear-only; convolution
/// products of coalgebra maps are generally not coalgebra maps.
pub fn convolve(f: &Morphism, g: &Morphism) -> Result<Morphism, Error> {
    if !f.dom().same_structure(g.dom()) || !f.cod().same_structure(g.cod()) {
        return Err(Error::Precondition(
            "convolution requires a common domain and a common codomain".into(),
        ));
    }
    let Some(cod_b) = f.cod().bialgebra() else {
        return Err(Error::Precondition(format!(
            "convolution needs an algebra structure on the codomain; {} is a bare coalgebra",
            f.cod().name()
        )));
    };
    let n = f.dom().dim();
    let dom_c = f.dom().coalgebra();
    let mut out = Matrix::zeros(dom_c.field(), cod_b.dim(), n);
    for i in 0..n {
        let mut acc = Accum::new();
        for (jk, c) in dom_c.delta_col(i) {
            let (j, k) = (jk / n, jk % n);
            for (r, a) in f.matrix().sparse_col(j) {
                let ca = &c * &a;
                for (s, bb) in g.matrix().sparse_col(k) {
                    let cab = &ca * &bb;
                    for (t, m) in cod_b.mult_col(r, s) {
                        acc.add(t, &cab * &m);
                    }
                }
            }
        }
        out.set_sparse_col(i, &acc.into_sparse());
    }
    Morphism::linear(
        format!("conv({}, {})", f.name(), g.name()),
        f.dom().clone(),
        f.cod().clone(),
        out,
    )
}

/// Where a candidate antipode behaves like one: the largest subcoalgebra of
/// the locus on which both convolution identities hold, together with the
/// observed algebraic closure properties of that subcoalgebra.
#[derive(Debug, Clone)]
pub struct AntipodeCore {
    pub sub: Subcoalgebra,
    pub mult_closed: bool,
    pub unit_in: bool,
    pub antipode_stable: bool,
}

/// Largest subcoalgebra of { x : (S * id)(x) = eta.eps(x) = (id * S)(x) }.
/// For an honest antipode this is the whole object; for a merely-candidate
/// antipode it is the locus where Hopf reasoning applies. Closure of the
/// carrier under multiplication, the unit, and S itself is reported, not
/// assumed.
pub fn antipode_core(b: &Arc<Bialgebra>, antipode: &Matrix) -> Result<AntipodeCore, Error> {
    let n = b.dim();
    let field = b.coalgebra().field();
    if antipode.field() != field {
        return Err(Error::FieldMismatch { left: field, right: antipode.field() });
    }
    if antipode.rows() != n || antipode.cols() != n {
        return Err(Error::Malformed(format!(
            "antipode must be {n}x{n}, found {}x{}",
            antipode.rows(),
            antipode.cols()
        )));
    }
    let id = Matrix::identity(field, n);
    let target = b.unit_counit();
    let left = convolution_matrix(b, antipode, &id).sub(&target);
    let right = convolution_matrix(b, &id, antipode).sub(&target);
    let locus = Matrix::vstack(&[&left, &right]).kernel();
    let sub = largest_subcoalgebra(b.coalgebra(), &locus)?;

    let carrier = sub.carrier();
    let mut mult_closed = true;
    'outer: for u in 0..carrier.dim() {
        for v in 0..carrier.dim() {
            let prod = b.product_sparse(
                &carrier.basis().sparse_row(u),
                &carrier.basis().sparse_row(v),
            );
            if carrier.coords(&sparse_to_dense(field, n, &prod)).is_none() {
                mult_closed = false;
                break 'outer;
            }
        }
    }
    let unit_in = carrier.contains(&b.unit().col(0));
    let antipode_stable = (0..carrier.dim()).all(|u| {
        let img = antipode.apply_sparse(&carrier.basis().sparse_row(u));
        carrier.coords(&sparse_to_dense(field, n, &img)).is_some()
    });
    Ok(AntipodeCore { sub, mult_closed, unit_in, antipode_stable })
}

fn sparse_to_dense(
    field: crate::linalg::Field,
    n: usize,
    v: &crate::linalg::SparseVec,
) -> Vec<crate::linalg::Scalar> {
    let mut out = vec![field.zero(); n];
    for (i, s) in v {
        out[*i] = s.clone();
    }
    out
}

/// Restrict a bialgebra structure to a comultiplication-closed carrier that
/// is also closed under multiplication and contains the unit. The carrier is
/// handed over as an already-restricted subcoalgebra; closure failures are
/// preconditions here because callers check them first.
pub fn restrict_bialgebra(b: &Arc<Bialgebra>, sub: &Subcoalgebra) -> Result<Arc<Bialgebra>, Error> {
    let field = b.coalgebra().field();
    let n = b.dim();
    let carrier = sub.carrier();
    let k = carrier.dim();
    let mut mult = Matrix::zeros(field, k, k * k);
    for u in 0..k {
        for v in 0..k {
            let prod = b.product_sparse(
                &carrier.basis().sparse_row(u),
                &carrier.basis().sparse_row(v),
            );
            let Some(coords) = carrier.coords(&sparse_to_dense(field, n, &prod)) else {
                return Err(Error::Precondition(format!(
                    "carrier of {} is not closed under multiplication",
                    sub.restricted().name()
                )));
            };
            for (t, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    mult.set(t, u * k + v, c.clone());
                }
            }
        }
    }
    let Some(unit_coords) = carrier.coords(&b.unit().col(0)) else {
        return Err(Error::Precondition(format!(
            "carrier of {} does not contain the unit",
            sub.restricted().name()
        )));
    };
    let mut unit = Matrix::zeros(field, k, 1);
    for (t, c) in unit_coords.iter().enumerate() {
        unit.set(t, 0, c.clone());
    }
    Bialgebra::new(sub.restricted().clone(), mult, unit)
}

/// Restrict a Hopf structure to a carrier that is additionally stable under
/// the antipode.
pub fn restrict_hopf(h: &HopfAlgebra, sub: &Subcoalgebra) -> Result<Arc<HopfAlgebra>, Error> {
    let field = h.coalgebra().field();
    let n = h.dim();
    let restricted_b = restrict_bialgebra(h.bialgebra(), sub)?;
    let carrier = sub.carrier();
    let k = carrier.dim();
    let mut s = Matrix::zeros(field, k, k);
    for u in 0..k {
        let img = h.antipode().apply_sparse(&carrier.basis().sparse_row(u));
        let Some(coords) = carrier.coords(&sparse_to_dense(field, n, &img)) else {
            return Err(Error::Precondition(format!(
                "carrier of {} is not antipode-stable",
                sub.restricted().name()
            )));
        };
        for (t, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                s.set(t, u, c.clone());
            }
        }
    }
    HopfAlgebra::new(restricted_b, s)
}

/// Promote an object to the strongest level its structure supports, given a
/// bialgebra and possibly an antipode. Convenience for builders.
pub fn object_for(b: Arc<Bialgebra>, antipode: Option<Matrix>) -> Result<Object, Error> {
    match antipode {
        None => Ok(Object::Bialgebra(b)),
        Some(s) => Ok(Object::Hopf(HopfAlgebra::new(b, s)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Field, Subspace};
    use crate::zoo;

    #[test]
    fn sweedler_antipode_satisfies_both_convolution_identities() {
        let h4 = zoo::sweedler_h4(Field::Rational).unwrap();
        let report = check_hopf(h4.bialgebra(), h4.antipode()).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn identity_is_not_an_antipode_for_sweedler() {
        let h4 = zoo::sweedler_h4(Field::Rational).unwrap();
        let id = Matrix::identity(Field::Rational, 4);
        let report = check_hopf(h4.bialgebra(), &id).unwrap();
        let v = report.violation.unwrap();
        assert_eq!(v.identity, Identity::AntipodeLeft);
        // First failure at the group-like g: m(g (x) g) = 1 but eta.eps(g) = 1
        // holds, so g passes; x is where it breaks.
        assert_eq!(v.basis_index, 2);
    }

    #[test]
    fn convolving_the_antipode_with_the_identity_gives_unit_counit() {
        let h4 = zoo::sweedler_h4(Field::Rational).unwrap();
        let obj = Object::Hopf(h4.clone());
        let id = Morphism::identity(&obj);
        let s = Morphism::linear("S", obj.clone(), obj.clone(), h4.antipode().clone()).unwrap();
        let conv = convolve(&s, &id).unwrap();
        assert_eq!(conv.matrix(), &h4.bialgebra().unit_counit());
        let conv2 = convolve(&id, &s).unwrap();
        assert_eq!(conv2.matrix(), &h4.bialgebra().unit_counit());
    }

    #[test]
    fn convolution_is_associative_on_random_endomorphisms() {
        // (f * g) * h = f * (g * h) is the associativity of convolution;
        // checked on hand-picked non-commuting maps of the Sweedler object.
        let h4 = zoo::sweedler_h4(Field::Rational).unwrap();
        let obj = Object::Hopf(h4.clone());
        let q = Field::Rational;
        let mk = |name: &str, entries: &[(usize, usize, i64)]| {
            let triplets: Vec<(usize, usize, crate::linalg::Scalar)> = entries
                .iter()
                .map(|&(r, c, v)| (r, c, q.integer(v)))
                .collect();
            let m = Matrix::from_triplets(q, 4, 4, &triplets).unwrap();
            Morphism::linear(name, obj.clone(), obj.clone(), m).unwrap()
        };
        let f = mk("f", &[(0, 0, 1), (1, 2, 3), (2, 1, 1), (3, 3, 2)]);
        let g = mk("g", &[(0, 1, 1), (1, 0, 5), (2, 2, 1), (3, 2, 1)]);
        let h = mk("h", &[(0, 3, 2), (1, 1, 1), (2, 0, 1), (3, 0, 7)]);
        let lhs = convolve(&convolve(&f, &g).unwrap(), &h).unwrap();
        let rhs = convolve(&f, &convolve(&g, &h).unwrap()).unwrap();
        assert_eq!(lhs.matrix(), rhs.matrix());
    }

    #[test]
    fn antipode_core_of_a_real_hopf_algebra_is_everything() {
        let h4 = zoo::sweedler_h4(Field::Rational).unwrap();
        let core = antipode_core(h4.bialgebra(), h4.antipode()).unwrap();
        assert_eq!(core.sub.dim(), 4);
        assert!(core.mult_closed && core.unit_in && core.antipode_stable);
    }

    #[test]
    fn antipode_core_of_the_idempotent_monoid_bialgebra_is_the_unit_line() {
        // k{1, z} with z*z = z, Delta(z) = z (x) z has no antipode; the
        // identity map is a candidate. (S * id)(z) = z*z = z, but
        // eta.eps(z) = 1, so z is excluded and only the unit line remains.
        let b = zoo::idempotent_monoid_bialgebra(Field::Rational).unwrap();
        let id = Matrix::identity(Field::Rational, 2);
        let core = antipode_core(&b, &id).unwrap();
        assert_eq!(core.sub.dim(), 1);
        assert!(core
            .sub
            .carrier()
            .contains(&[Field::Rational.one(), Field::Rational.zero()]));
        assert!(core.mult_closed && core.unit_in && core.antipode_stable);
    }

    #[test]
    fn restriction_of_a_group_algebra_to_a_subgroup_line_is_hopf() {
        // Inside kZ4 the span of {e, g^2} is the group algebra of the
        // subgroup {e, g^2}; restriction must produce a valid Hopf object.
        let kz4 = zoo::group_algebra(zoo::GroupTable::cyclic(4), Field::Rational).unwrap();
        let f = Field::Rational;
        let carrier = Subspace::span(
            f,
            4,
            vec![
                vec![f.one(), f.zero(), f.zero(), f.zero()],
                vec![f.zero(), f.zero(), f.one(), f.zero()],
            ],
        )
        .unwrap();
        let sub = crate::coalg::restrict(kz4.coalgebra(), &carrier, "kZ2-in-kZ4").unwrap();
        let h = restrict_hopf(&kz4.hopf, &sub).unwrap();
        assert_eq!(h.dim(), 2);
        let kz2 = zoo::group_algebra(zoo::GroupTable::cyclic(2), Field::Rational).unwrap();
        assert!(h.same_structure(&kz2.hopf));
    }
}
