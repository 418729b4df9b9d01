use std::fmt;
use std::sync::Arc;

use crate::coalg::coalgebra::Coalgebra;
use crate::error::Error;
use crate::linalg::{kron_apply2, sparse_sub, Accum, Field, Matrix};
use crate::report::{CheckReport, Identity, Violation};
use crate::structures::{Bialgebra, HopfAlgebra};

/// Structure level of an object or a requested certification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    Coalgebra,
    Bialgebra,
    Hopf,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Coalgebra => f.write_str("coalgebra"),
            Level::Bialgebra => f.write_str("bialgebra"),
            Level::Hopf => f.write_str("hopf"),
        }
    }
}

/// An object at whichever structure level it carries. Higher levels embed
/// the lower ones, so the underlying coalgebra is always reachable.
#[derive(Debug, Clone)]
pub enum Object {
    Coalgebra(Arc<Coalgebra>),
    Bialgebra(Arc<Bialgebra>),
    Hopf(Arc<HopfAlgebra>),
}

impl Object {
    pub fn coalgebra(&self) -> &Arc<Coalgebra> {
        match self {
            Object::Coalgebra(c) => c,
            Object::Bialgebra(b) => b.coalgebra(),
            Object::Hopf(h) => h.bialgebra().coalgebra(),
        }
    }

    pub fn bialgebra(&self) -> Option<&Arc<Bialgebra>> {
        match self {
            Object::Coalgebra(_) => None,
            Object::Bialgebra(b) => Some(b),
            Object::Hopf(h) => Some(h.bialgebra()),
        }
    }

    pub fn hopf(&self) -> Option<&Arc<HopfAlgebra>> {
        match self {
            Object::Hopf(h) => Some(h),
            _ => None,
        }
    }

    pub fn level(&self) -> Level {
        match self {
            Object::Coalgebra(_) => Level::Coalgebra,
            Object::Bialgebra(_) => Level::Bialgebra,
            Object::Hopf(_) => Level::Hopf,
        }
    }

    pub fn name(&self) -> &str {
        self.coalgebra().name()
    }

    pub fn dim(&self) -> usize {
        self.coalgebra().dim()
    }

    pub fn field(&self) -> Field {
        self.coalgebra().field()
    }

    /// Structural agreement of the underlying coalgebras. Composition and
    /// equalizer preconditions compare presentations, not names or levels.
    pub fn same_structure(&self, other: &Object) -> bool {
        self.coalgebra().same_structure(other.coalgebra())
    }
}

/// What has been verified about a morphism, ordered by strength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Certificate {
    LinearOnly,
    CoalgebraMap,
    BialgebraMap,
    HopfMap,
}

impl Certificate {
    pub fn for_level(level: Level) -> Certificate {
        match level {
            Level::Coalgebra => Certificate::CoalgebraMap,
            Level::Bialgebra => Certificate::BialgebraMap,
            Level::Hopf => Certificate::HopfMap,
        }
    }

    pub fn covers(self, level: Level) -> bool {
        self >= Certificate::for_level(level)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::LinearOnly => f.write_str("linear-only"),
            Certificate::CoalgebraMap => f.write_str("coalgebra"),
            Certificate::BialgebraMap => f.write_str("bialgebra"),
            Certificate::HopfMap => f.write_str("hopf"),
        }
    }
}

/// Linear map between objects, stored as a cod.dim x dom.dim matrix over the
/// common field, together with the strongest verified certificate.
#[derive(Debug, Clone)]
pub struct Morphism {
    name: String,
    dom: Object,
    cod: Object,
    matrix: Matrix,
    certificate: Certificate,
}

impl Morphism {
    /// Wraps a raw matrix as an unverified (linear-only) morphism.
    pub fn linear(
        name: impl Into<String>,
        dom: Object,
        cod: Object,
        matrix: Matrix,
    ) -> Result<Morphism, Error> {
        if matrix.field() != dom.field() {
            return Err(Error::FieldMismatch { left: dom.field(), right: matrix.field() });
        }
        if dom.field() != cod.field() {
            return Err(Error::FieldMismatch { left: dom.field(), right: cod.field() });
        }
        if matrix.rows() != cod.dim() || matrix.cols() != dom.dim() {
            return Err(Error::Malformed(format!(
                "morphism matrix must be {}x{}, found {}x{}",
                cod.dim(),
                dom.dim(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Morphism {
            name: name.into(),
            dom,
            cod,
            matrix,
            certificate: Certificate::LinearOnly,
        })
    }

    /// The identity, certified at the object's own level.
    pub fn identity(obj: &Object) -> Morphism {
        Morphism {
            name: format!("id_{}", obj.name()),
            dom: obj.clone(),
            cod: obj.clone(),
            matrix: Matrix::identity(obj.field(), obj.dim()),
            certificate: Certificate::for_level(obj.level()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dom(&self) -> &Object {
        &self.dom
    }

    pub fn cod(&self) -> &Object {
        &self.cod
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    pub fn rename(mut self, name: impl Into<String>) -> Morphism {
        self.name = name.into();
        self
    }

    /// Checks the two coalgebra-map identities and reports the first failure:
    /// Delta_cod . F = (F (x) F) . Delta_dom and eps_cod . F = eps_dom.
    pub fn check_coalgebra_map(&self) -> CheckReport {
        let dom = self.dom.coalgebra();
        let cod = self.cod.coalgebra();
        for i in 0..dom.dim() {
            let fx = self.matrix.sparse_col(i);
            let lhs = cod.delta_of(&fx);
            let rhs = kron_apply2(&self.matrix, &self.matrix, &dom.delta_col(i));
            if !sparse_sub(&lhs, &rhs).is_empty() {
                return CheckReport::fail(Identity::MapComult, i);
            }
            if cod.counit_of(&fx) != *dom.epsilon().at(0, i) {
                return CheckReport::fail(Identity::MapCounit, i);
            }
        }
        CheckReport::pass()
    }

    /// Checks the algebra-map identities against the bialgebra structures:
    /// F . m_dom = m_cod . (F (x) F) and F . unit_dom = unit_cod.
    fn check_algebra_map(&self, dom: &Bialgebra, cod: &Bialgebra) -> CheckReport {
        let n = dom.coalgebra().dim();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.matrix.apply_sparse(&dom.mult_col(i, j));
                let mut acc = Accum::new();
                for (r, a) in self.matrix.sparse_col(i) {
                    for (s, b) in self.matrix.sparse_col(j) {
                        let c = &a * &b;
                        for (t, m) in cod.mult_col(r, s) {
                            acc.add(t, &c * &m);
                        }
                    }
                }
                if !sparse_sub(&lhs, &acc.into_sparse()).is_empty() {
                    return CheckReport::fail(Identity::MapMult, i * n + j);
                }
            }
        }
        let image_of_unit = self.matrix.mul(dom.unit());
        if image_of_unit != *cod.unit() {
            return CheckReport::fail(Identity::MapUnit, 0);
        }
        CheckReport::pass()
    }

    /// Verifies the identities demanded by `level` and upgrades the
    /// certificate. An identity failure is an axiom error naming the
    /// identity and basis index; a missing structure level on either end is
    /// a precondition error. For Hopf certification the antipode identity is
    /// checked last; a bialgebra map between validated Hopf algebras that
    /// fails it indicates a bug, so that failure is an internal-consistency
    /// error rather than an axiom error.
    pub fn certified(mut self, level: Level) -> Result<Morphism, Error> {
        if self.certificate.covers(level) {
            return Ok(self);
        }
        let fail = |name: &str, violation: Violation| Error::Axiom {
            object: format!("morphism {name}"),
            violation,
        };
        // Coalgebra layer.
        if self.certificate < Certificate::CoalgebraMap {
            let report = self.check_coalgebra_map();
            if let Some(v) = report.violation {
                return Err(fail(&self.name, v));
            }
            self.certificate = Certificate::CoalgebraMap;
        }
        if level == Level::Coalgebra {
            return Ok(self);
        }
        // Bialgebra layer.
        let (Some(dom_b), Some(cod_b)) = (self.dom.bialgebra(), self.cod.bialgebra()) else {
            return Err(Error::Precondition(format!(
                "cannot certify {} at {level} level: an endpoint is a bare coalgebra",
                self.name
            )));
        };
        if self.certificate < Certificate::BialgebraMap {
            let report = self.check_algebra_map(dom_b, cod_b);
            if let Some(v) = report.violation {
                return Err(fail(&self.name, v));
            }
            self.certificate = Certificate::BialgebraMap;
        }
        if level == Level::Bialgebra {
            return Ok(self);
        }
        // Hopf layer.
        let (Some(dom_h), Some(cod_h)) = (self.dom.hopf(), self.cod.hopf()) else {
            return Err(Error::Precondition(format!(
                "cannot certify {} at hopf level: an endpoint carries no antipode",
                self.name
            )));
        };
        let lhs = self.matrix.mul(dom_h.antipode());
        let rhs = cod_h.antipode().mul(&self.matrix);
        if lhs != rhs {
            return Err(Error::Inconsistency(format!(
                "bialgebra map {} between Hopf algebras fails to commute with the antipodes",
                self.name
            )));
        }
        self.certificate = Certificate::HopfMap;
        Ok(self)
    }

    /// f.compose(g) is f after g. Domains are compared structurally; the
    /// certificate of the composite is the weaker of the two.
    pub fn compose(&self, g: &Morphism) -> Result<Morphism, Error> {
        if !self.dom.same_structure(g.cod()) {
            return Err(Error::Precondition(format!(
                "cannot compose {} after {}: middle objects differ",
                self.name, g.name
            )));
        }
        Ok(Morphism {
            name: format!("{} . {}", self.name, g.name),
            dom: g.dom.clone(),
            cod: self.cod.clone(),
            matrix: self.matrix.mul(&g.matrix),
            certificate: self.certificate.min(g.certificate),
        })
    }

    /// Same underlying linear map.
    pub fn equal_matrix(&self, other: &Morphism) -> bool {
        self.matrix == other.matrix
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn identity_is_certified_at_object_level() {
        let kz2 = zoo::group_algebra(zoo::GroupTable::cyclic(2), Field::Rational).unwrap();
        let id = Morphism::identity(&Object::Hopf(kz2.hopf.clone()));
        assert_eq!(id.certificate(), Certificate::HopfMap);
    }

    #[test]
    fn group_inversion_on_kz4_is_a_coalgebra_map() {
        let kz4 = zoo::group_algebra(zoo::GroupTable::cyclic(4), Field::Rational).unwrap();
        let inv = zoo::inverse_morphism(&kz4);
        assert!(inv.check_coalgebra_map().pass);
    }

    #[test]
    fn scaling_a_group_like_is_not_a_coalgebra_map() {
        let q = Field::Rational;
        let kz2 = zoo::group_algebra(zoo::GroupTable::cyclic(2), q).unwrap();
        let obj = Object::Coalgebra(kz2.coalgebra().clone());
        let mut m = Matrix::identity(q, 2);
        m.set(1, 1, q.integer(2));
        let f = Morphism::linear("double_g", obj.clone(), obj, m).unwrap();
        let report = f.check_coalgebra_map();
        let v = report.violation.unwrap();
        assert_eq!(v.identity, Identity::MapComult);
        assert_eq!(v.basis_index, 1);
        assert!(f.certified(Level::Coalgebra).is_err());
    }

    #[test]
    fn certification_upgrades_are_monotone() {
        let kz3 = zoo::group_algebra(zoo::GroupTable::cyclic(3), Field::Rational).unwrap();
        let obj = Object::Hopf(kz3.hopf.clone());
        let raw = Morphism::linear(
            "id_raw",
            obj.clone(),
            obj,
            Matrix::identity(Field::Rational, 3),
        )
        .unwrap();
        assert_eq!(raw.certificate(), Certificate::LinearOnly);
        let cert = raw.certified(Level::Hopf).unwrap();
        assert_eq!(cert.certificate(), Certificate::HopfMap);
    }

    #[test]
    fn bialgebra_certification_needs_bialgebra_endpoints() {
        let q = Field::Rational;
        let mc2 = zoo::matrix_comatrix(2, q).unwrap();
        let obj = Object::Coalgebra(mc2);
        let id = Morphism::linear("id", obj.clone(), obj.clone(), Matrix::identity(q, 4)).unwrap();
        assert!(matches!(id.certified(Level::Bialgebra), Err(Error::Precondition(_))));
    }

    #[test]
    fn composition_tracks_the_weaker_certificate() {
        let kz2 = zoo::group_algebra(zoo::GroupTable::cyclic(2), Field::Rational).unwrap();
        let obj = Object::Hopf(kz2.hopf.clone());
        let id = Morphism::identity(&obj);
        let raw = Morphism::linear(
            "raw",
            obj.clone(),
            obj,
            Matrix::identity(Field::Rational, 2),
        )
        .unwrap();
        let comp = id.compose(&raw).unwrap();
        assert_eq!(comp.certificate(), Certificate::LinearOnly);
    }
}
