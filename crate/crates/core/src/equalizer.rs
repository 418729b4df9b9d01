//! Equalizers of parallel pairs of coalgebra / bialgebra / Hopf algebra
//! maps. Two exact methods are implemented and cross-checked:
//!
//! * `descent`: the largest subcoalgebra contained in ker(f - g), computed
//!   by the iterated shrinking descent;
//! * `direct`: the kernel of (id (x) (f - g) (x) id) . Delta^2 in one linear
//!   solve, no iteration.
//!
//! Their agreement is a theorem, so any observed disagreement is reported as
//! an internal consistency failure, never papered over.

use std::fmt;

use crate::coalg::{
    largest_subcoalgebra, restrict, Certificate, Level, Morphism, Object, Subcoalgebra,
};
use crate::error::Error;
use crate::linalg::{Matrix, Subspace};
use crate::structures::{restrict_bialgebra, restrict_hopf};

/// How the equalizer carrier is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Iterated largest-subcoalgebra descent inside ker(f - g).
    Descent,
    /// Single kernel of (id (x) (f - g) (x) id) . Delta^2.
    Direct,
    /// Run both and insist on bit-exact agreement.
    Both,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Descent => "descent",
            Method::Direct => "direct",
            Method::Both => "both",
        })
    }
}

/// Observed closure properties of an equalizer carrier at bialgebra level
/// and above. These are verified facts, not assumptions; a failure never
/// reaches this struct because it aborts the construction instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureFlags {
    pub mult_closed: bool,
    pub unit_in: bool,
    /// None below Hopf level.
    pub antipode_stable: Option<bool>,
}

/// An equalizer: the carrier subcoalgebra, the restricted object at the
/// requested level, and the inclusion certified at that level.
#[derive(Debug, Clone)]
pub struct Equalizer {
    pub f: Morphism,
    pub g: Morphism,
    pub sub: Subcoalgebra,
    pub object: Object,
    pub inclusion: Morphism,
    pub method: Method,
    pub closure: Option<ClosureFlags>,
}

impl Equalizer {
    pub fn dim(&self) -> usize {
        self.sub.dim()
    }

    pub fn level(&self) -> Level {
        self.object.level()
    }
}

fn validate_pair(f: &Morphism, g: &Morphism, level: Level) -> Result<(), Error> {
    if !f.dom().same_structure(g.dom()) || !f.cod().same_structure(g.cod()) {
        return Err(Error::Precondition(format!(
            "equalizer needs a parallel pair; {} : {} -> {} and {} : {} -> {} do not share endpoints",
            f.name(),
            f.dom().name(),
            f.cod().name(),
            g.name(),
            g.dom().name(),
            g.cod().name()
        )));
    }
    for m in [f, g] {
        if !m.certificate().covers(level) {
            return Err(Error::Precondition(format!(
                "{} is certified as {} but an equalizer at {level} level needs {}",
                m.name(),
                m.certificate(),
                Certificate::for_level(level)
            )));
        }
    }
    if level >= Level::Bialgebra && f.dom().bialgebra().is_none() {
        return Err(Error::Precondition(format!(
            "{} carries no multiplication; cannot equalize at {level} level",
            f.dom().name()
        )));
    }
    if level == Level::Hopf && f.dom().hopf().is_none() {
        return Err(Error::Precondition(format!(
            "{} carries no antipode; cannot equalize at {level} level",
            f.dom().name()
        )));
    }
    Ok(())
}

fn carrier_descent(f: &Morphism, g: &Morphism) -> Result<Subspace, Error> {
    let w = f.matrix().sub(g.matrix()).kernel();
    let sub = largest_subcoalgebra(f.dom().coalgebra(), &w)?;
    Ok(sub.carrier().clone())
}

fn carrier_direct(f: &Morphism, g: &Morphism) -> Result<Subspace, Error> {
    let c = f.dom().coalgebra();
    let n = c.dim();
    let m = f.cod().dim();
    let d = f.matrix().sub(g.matrix());
    // Column i holds (id (x) d (x) id) applied to Delta^2(e_i), living in
    // C (x) D (x) C with row index a*(m*n) + r*n + b.
    let mut cond = Matrix::zeros(c.field(), n * m * n, n);
    for i in 0..n {
        let mut col = crate::linalg::Accum::new();
        for (abc, v) in c.iterated_delta_col(i, 3) {
            let a = abc / (n * n);
            let b = (abc / n) % n;
            let cc = abc % n;
            for (r, dv) in d.sparse_col(b) {
                col.add(a * (m * n) + r * n + cc, &v * &dv);
            }
        }
        cond.set_sparse_col(i, &col.into_sparse());
    }
    Ok(cond.kernel())
}

fn cross_check(
    f: &Morphism,
    g: &Morphism,
    direct: &Subspace,
    descent: &Subspace,
) -> Result<(), Error> {
    if direct == descent {
        return Ok(());
    }
    Err(Error::Inconsistency(format!(
        "equalizer methods disagree on ({}, {}): direct gives dim {} with basis {:?}, \
         descent gives dim {} with basis {:?}",
        f.name(),
        g.name(),
        direct.dim(),
        direct.basis(),
        descent.dim(),
        descent.basis()
    )))
}

fn carrier_for(f: &Morphism, g: &Morphism, method: Method) -> Result<Subspace, Error> {
    match method {
        Method::Descent => carrier_descent(f, g),
        Method::Direct => {
            let direct = carrier_direct(f, g)?;
            if cfg!(debug_assertions) {
                let descent = carrier_descent(f, g)?;
                cross_check(f, g, &direct, &descent)?;
            }
            Ok(direct)
        }
        Method::Both => {
            let direct = carrier_direct(f, g)?;
            let descent = carrier_descent(f, g)?;
            cross_check(f, g, &direct, &descent)?;
            Ok(direct)
        }
    }
}

/// Carrier subcoalgebra shared by every level. A restriction failure here is
/// an internal inconsistency: both methods provably produce
/// comultiplication-closed subspaces.
fn carrier_sub(f: &Morphism, g: &Morphism, method: Method) -> Result<Subcoalgebra, Error> {
    let carrier = carrier_for(f, g, method)?;
    let name = format!("eq({}, {})", f.name(), g.name());
    restrict(f.dom().coalgebra(), &carrier, name).map_err(|e| match e {
        Error::Precondition(msg) => {
            Error::Inconsistency(format!("equalizer carrier is not a subcoalgebra: {msg}"))
        }
        other => other,
    })
}

fn certified_inclusion(object: &Object, parent: &Object, sub: &Subcoalgebra, level: Level) -> Result<Morphism, Error> {
    let incl = Morphism::linear(
        format!("incl_{}", object.name()),
        object.clone(),
        parent.clone(),
        sub.carrier().basis().transpose(),
    )?;
    incl.certified(level).map_err(|e| {
        Error::Inconsistency(format!(
            "equalizer inclusion failed {level}-level certification: {e}"
        ))
    })
}

/// Equalizer in the coalgebra category; `Direct` is the default method.
pub fn equalize_coalg(f: &Morphism, g: &Morphism) -> Result<Equalizer, Error> {
    equalize_coalg_with(f, g, Method::Direct)
}

pub fn equalize_coalg_with(f: &Morphism, g: &Morphism, method: Method) -> Result<Equalizer, Error> {
    validate_pair(f, g, Level::Coalgebra)?;
    let sub = carrier_sub(f, g, method)?;
    let object = Object::Coalgebra(sub.restricted().clone());
    let inclusion = certified_inclusion(&object, f.dom(), &sub, Level::Coalgebra)?;
    Ok(Equalizer {
        f: f.clone(),
        g: g.clone(),
        sub,
        object,
        inclusion,
        method,
        closure: None,
    })
}

fn closure_report(f: &Morphism, sub: &Subcoalgebra, level: Level) -> Result<ClosureFlags, Error> {
    let b = f
        .dom()
        .bialgebra()
        .expect("validate_pair admits only bialgebra domains here");
    let carrier = sub.carrier();
    let n = b.dim();
    let field = b.coalgebra().field();
    let dense = |v: &crate::linalg::SparseVec| {
        let mut out = vec![field.zero(); n];
        for (i, s) in v {
            out[*i] = s.clone();
        }
        out
    };
    for u in 0..carrier.dim() {
        for w in 0..carrier.dim() {
            let prod = b.product_sparse(&carrier.basis().sparse_row(u), &carrier.basis().sparse_row(w));
            if carrier.coords(&dense(&prod)).is_none() {
                return Err(Error::Inconsistency(format!(
                    "equalizer carrier of bialgebra maps is not closed under multiplication \
                     (basis pair {u}, {w}); this contradicts the subbialgebra property"
                )));
            }
        }
    }
    if !carrier.contains(&b.unit().col(0)) {
        return Err(Error::Inconsistency(
            "equalizer carrier of bialgebra maps does not contain the unit".into(),
        ));
    }
    let antipode_stable = if level == Level::Hopf {
        let h = f
            .dom()
            .hopf()
            .expect("validate_pair admits only Hopf domains here");
        for u in 0..carrier.dim() {
            let img = h.antipode().apply_sparse(&carrier.basis().sparse_row(u));
            if carrier.coords(&dense(&img)).is_none() {
                return Err(Error::Inconsistency(format!(
                    "equalizer carrier of Hopf maps is not antipode-stable (basis vector {u}); \
                     this contradicts the Hopf-subalgebra property"
                )));
            }
        }
        Some(true)
    } else {
        None
    };
    Ok(ClosureFlags { mult_closed: true, unit_in: true, antipode_stable })
}

/// Equalizer in the bialgebra category: the coalgebra-level carrier, which
/// is then verified to be a subbialgebra and restricted accordingly.
pub fn equalize_bialg(f: &Morphism, g: &Morphism) -> Result<Equalizer, Error> {
    equalize_bialg_with(f, g, Method::Direct)
}

pub fn equalize_bialg_with(f: &Morphism, g: &Morphism, method: Method) -> Result<Equalizer, Error> {
    validate_pair(f, g, Level::Bialgebra)?;
    let sub = carrier_sub(f, g, method)?;
    let closure = closure_report(f, &sub, Level::Bialgebra)?;
    let b = f.dom().bialgebra().unwrap();
    let restricted = restrict_bialgebra(&b, &sub)?;
    let object = Object::Bialgebra(restricted);
    let inclusion = certified_inclusion(&object, f.dom(), &sub, Level::Bialgebra)?;
    Ok(Equalizer {
        f: f.clone(),
        g: g.clone(),
        sub,
        object,
        inclusion,
        method,
        closure: Some(closure),
    })
}

/// Equalizer in the Hopf category: additionally antipode-stable, restricted
/// to a Hopf object.
pub fn equalize_hopf(f: &Morphism, g: &Morphism) -> Result<Equalizer, Error> {
    equalize_hopf_with(f, g, Method::Direct)
}

pub fn equalize_hopf_with(f: &Morphism, g: &Morphism, method: Method) -> Result<Equalizer, Error> {
    validate_pair(f, g, Level::Hopf)?;
    let sub = carrier_sub(f, g, method)?;
    let closure = closure_report(f, &sub, Level::Hopf)?;
    let h = f.dom().hopf().unwrap();
    let restricted = restrict_hopf(&h, &sub)?;
    let object = Object::Hopf(restricted);
    let inclusion = certified_inclusion(&object, f.dom(), &sub, Level::Hopf)?;
    Ok(Equalizer {
        f: f.clone(),
        g: g.clone(),
        sub,
        object,
        inclusion,
        method,
        closure: Some(closure),
    })
}

/// Dispatch on level.
pub fn equalize(f: &Morphism, g: &Morphism, level: Level, method: Method) -> Result<Equalizer, Error> {
    match level {
        Level::Coalgebra => equalize_coalg_with(f, g, method),
        Level::Bialgebra => equalize_bialg_with(f, g, method),
        Level::Hopf => equalize_hopf_with(f, g, method),
    }
}

/// The universal property: a map h with f.h = g.h factors uniquely through
/// the equalizer. Returns the unique u with inclusion . u = h.
pub fn factor_through(eq: &Equalizer, h: &Morphism) -> Result<Morphism, Error> {
    if !h.cod().same_structure(eq.f.dom()) {
        return Err(Error::Precondition(format!(
            "{} lands in {}, not in the equalized object {}",
            h.name(),
            h.cod().name(),
            eq.f.dom().name()
        )));
    }
    if !h.certificate().covers(Level::Coalgebra) {
        return Err(Error::Precondition(format!(
            "{} is only certified as {}; factoring needs a coalgebra map",
            h.name(),
            h.certificate()
        )));
    }
    let fh = eq.f.matrix().mul(h.matrix());
    let gh = eq.g.matrix().mul(h.matrix());
    if fh != gh {
        return Err(Error::Precondition(format!(
            "{} does not equalize the pair ({}, {})",
            h.name(),
            eq.f.name(),
            eq.g.name()
        )));
    }
    let carrier = eq.sub.carrier();
    let k = carrier.dim();
    let mut u = Matrix::zeros(h.matrix().field(), k, h.dom().dim());
    for j in 0..h.dom().dim() {
        let Some(coords) = carrier.coords(&h.matrix().col(j)) else {
            return Err(Error::Inconsistency(format!(
                "image of certified equalizing map {} leaves the equalizer carrier at basis \
                 vector {j}",
                h.name()
            )));
        };
        for (r, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                u.set(r, j, c.clone());
            }
        }
    }
    let u = Morphism::linear(
        format!("factor({})", h.name()),
        h.dom().clone(),
        eq.object.clone(),
        u,
    )?;
    if eq.inclusion.matrix().mul(u.matrix()) != *h.matrix() {
        return Err(Error::Inconsistency(format!(
            "factored map does not reconstruct {} through the inclusion",
            h.name()
        )));
    }
    let target_level = match h.certificate() {
        Certificate::HopfMap => eq.level().min(Level::Hopf),
        Certificate::BialgebraMap => eq.level().min(Level::Bialgebra),
        _ => Level::Coalgebra,
    };
    u.certified(target_level).map_err(|e| {
        Error::Inconsistency(format!(
            "mediating map through an equalizer failed {target_level}-level certification: {e}"
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::zoo;

    fn kz4_id_inv() -> (Morphism, Morphism) {
        let kz4 = zoo::group_algebra(zoo::GroupTable::cyclic(4), Field::Rational).unwrap();
        let obj = Object::Hopf(kz4.hopf.clone());
        let id = Morphism::identity(&obj);
        let inv = zoo::inverse_morphism(&kz4);
        (id, inv)
    }

    #[test]
    fn group_inversion_equalizer_is_the_involution_span() {
        // In kZ4, g^a = g^{-a} exactly for a in {0, 2}; both methods must
        // land on span{e, g^2}.
        let (id, inv) = kz4_id_inv();
        for method in [Method::Descent, Method::Direct, Method::Both] {
            let eq = equalize_coalg_with(&id, &inv, method).unwrap();
            assert_eq!(eq.dim(), 2);
            let f = Field::Rational;
            assert!(eq.sub.carrier().contains(&[f.one(), f.zero(), f.zero(), f.zero()]));
            assert!(eq.sub.carrier().contains(&[f.zero(), f.zero(), f.one(), f.zero()]));
        }
    }

    #[test]
    fn equalizing_a_map_with_itself_recovers_the_whole_object() {
        let (id, _) = kz4_id_inv();
        let eq = equalize_coalg(&id, &id).unwrap();
        assert_eq!(eq.dim(), 4);
        assert!(eq.sub.restricted().same_structure(id.dom().coalgebra()));
    }

    #[test]
    fn hopf_equalizer_of_id_and_square_of_antipode_on_sweedler() {
        // S^2 = conjugation by g fixes exactly span{1, g}; it is a Hopf
        // subalgebra, the group algebra of Z2.
        let h4 = zoo::sweedler_h4(Field::Rational).unwrap();
        let obj = Object::Hopf(h4.clone());
        let id = Morphism::identity(&obj);
        let s2 = Morphism::linear(
            "S^2",
            obj.clone(),
            obj.clone(),
            h4.antipode().mul(h4.antipode()),
        )
        .unwrap()
        .certified(Level::Hopf)
        .unwrap();
        let eq = equalize_hopf(&id, &s2).unwrap();
        assert_eq!(eq.dim(), 2);
        let f = Field::Rational;
        assert!(eq.sub.carrier().contains(&[f.one(), f.zero(), f.zero(), f.zero()]));
        assert!(eq.sub.carrier().contains(&[f.zero(), f.one(), f.zero(), f.zero()]));
        let flags = eq.closure.unwrap();
        assert!(flags.mult_closed && flags.unit_in && flags.antipode_stable == Some(true));
        let kz2 = zoo::group_algebra(zoo::GroupTable::cyclic(2), Field::Rational).unwrap();
        assert!(eq.object.hopf().unwrap().same_structure(&kz2.hopf));
    }

    #[test]
    fn bialgebra_equalizer_of_frobenius_like_powers_on_kz6() {
        // t -> t^5 on Z6 is inversion, a Hopf endomorphism; agreement with
        // the identity happens on the group-likes fixed by inversion: e, t^3.
        let kz6 = zoo::group_algebra(zoo::GroupTable::cyclic(6), Field::Rational).unwrap();
        let obj = Object::Hopf(kz6.hopf.clone());
        let id = Morphism::identity(&obj);
        let fifth = zoo::power_map(&kz6, 5).unwrap();
        let eq = equalize_bialg(&id, &fifth).unwrap();
        assert_eq!(eq.dim(), 2);
        let f = Field::Rational;
        assert!(eq.sub.carrier().contains(&[f.one(), f.zero(), f.zero(), f.zero(), f.zero(), f.zero()]));
        assert!(eq.sub.carrier().contains(&[f.zero(), f.zero(), f.zero(), f.one(), f.zero(), f.zero()]));
        assert!(eq.closure.unwrap().antipode_stable.is_none());
    }

    #[test]
    fn matrix_like_coalgebra_equalizer_collapses_to_zero() {
        // On the 4-dimensional comatrix coalgebra, compare the identity with
        // the transposition flip; the fixed subspace contains no nonzero
        // subcoalgebra.
        let mc2 = zoo::matrix_comatrix(2, Field::Rational).unwrap();
        let obj = Object::Coalgebra(mc2.clone());
        let id = Morphism::identity(&obj);
        let q = Field::Rational;
        // The index relabeling e_{ij} -> e_{(1-i)(1-j)} is a coalgebra
        // automorphism (conjugation by the basis swap).
        let perm = Matrix::from_triplets(
            q,
            4,
            4,
            &[
                (3, 0, q.one()),
                (2, 1, q.one()),
                (1, 2, q.one()),
                (0, 3, q.one()),
            ],
        )
        .unwrap();
        let swap = Morphism::linear("swap", obj.clone(), obj.clone(), perm)
            .unwrap()
            .certified(Level::Coalgebra)
            .unwrap();
        let eq = equalize_coalg(&id, &swap).unwrap();
        // ker(id - swap) = span{e00 + e11, e01 + e10}, which contains no
        // subcoalgebra: comultiplying either generator escapes the span.
        assert_eq!(eq.dim(), 0);
    }

    #[test]
    fn factoring_a_cone_through_the_equalizer() {
        // kZ2 -> kZ4 sending t to g^2 equalizes (id, inv); its factoring
        // through eq = span{e, g^2} must reconstruct it.
        let (id, inv) = kz4_id_inv();
        let kz2 = zoo::group_algebra(zoo::GroupTable::cyclic(2), Field::Rational).unwrap();
        let kz4 = zoo::group_algebra(zoo::GroupTable::cyclic(4), Field::Rational).unwrap();
        let h = zoo::hom_morphism(&kz2, &kz4, &[0, 2]).unwrap();
        let eq = equalize_coalg(&id, &inv).unwrap();
        let u = factor_through(&eq, &h).unwrap();
        assert_eq!(eq.inclusion.matrix().mul(u.matrix()), *h.matrix());
        assert!(u.certificate().covers(Level::Coalgebra));
    }

    #[test]
    fn non_equalizing_maps_are_rejected_as_a_precondition() {
        let (id, inv) = kz4_id_inv();
        let eq = equalize_coalg(&id, &inv).unwrap();
        // The identity of kZ4 does not equalize (id, inv).
        let err = factor_through(&eq, &id).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn uncertified_maps_cannot_be_equalized() {
        let (id, inv) = kz4_id_inv();
        let raw = Morphism::linear(
            "raw",
            id.dom().clone(),
            id.cod().clone(),
            id.matrix().clone(),
        )
        .unwrap();
        let err = equalize_coalg(&raw, &inv).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }
}
