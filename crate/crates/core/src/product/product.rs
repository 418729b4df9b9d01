use std::sync::Arc;

use crate::coalg::{Level, Morphism, Object};
use crate::error::Error;
use crate::linalg::{kron_apply_many, sparse_sub, Accum, Field, Matrix};
use crate::product::tensor::{digits_of, projection_matrix, tensor_coalgebra, trivial_coalgebra};
use crate::structures::{op_cop, Bialgebra, HopfAlgebra};

/// A finite product: the carrier object and one certified projection per
/// factor. Only the cocommutative fragment is supported; there the tensor
/// carrier with counit-slot projections satisfies the universal property.
#[derive(Debug, Clone)]
pub struct Product {
    pub object: Object,
    pub projections: Vec<Morphism>,
    pub factors: Vec<Object>,
}

impl Product {
    pub fn dim(&self) -> usize {
        self.object.dim()
    }
}

fn require_cocommutative(factors: &[Object]) -> Result<(), Error> {
    for f in factors {
        if !f.coalgebra().is_cocommutative() {
            return Err(Error::Unsupported(format!(
                "products are implemented on the cocommutative fragment only; factor {} is not \
                 cocommutative",
                f.name()
            )));
        }
    }
    Ok(())
}

fn product_name(factors: &[Object]) -> String {
    let names: Vec<&str> = factors.iter().map(|f| f.name()).collect();
    format!("prod({})", names.join(", "))
}

/// The empty product at any level: the one-dimensional object k.
pub fn trivial_product(field: Field, level: Level) -> Result<Product, Error> {
    let c = trivial_coalgebra(field);
    let object = match level {
        Level::Coalgebra => Object::Coalgebra(c),
        Level::Bialgebra | Level::Hopf => {
            let mult = Matrix::from_triplets(field, 1, 1, &[(0, 0, field.one())])?;
            let unit = Matrix::from_triplets(field, 1, 1, &[(0, 0, field.one())])?;
            let b = Bialgebra::new(c, mult, unit)?;
            if level == Level::Bialgebra {
                Object::Bialgebra(b)
            } else {
                Object::Hopf(HopfAlgebra::new(b, Matrix::identity(field, 1))?)
            }
        }
    };
    Ok(Product { object, projections: Vec::new(), factors: Vec::new() })
}

/// Product of cocommutative coalgebras: tensor carrier, counit-slot
/// projections.
pub fn product_coalg(factors: &[Object]) -> Result<Product, Error> {
    if factors.is_empty() {
        return Err(Error::Precondition(
            "the empty product needs an explicit field; use trivial_product".into(),
        ));
    }
    require_cocommutative(factors)?;
    let coalgebras: Vec<Arc<crate::coalg::Coalgebra>> =
        factors.iter().map(|f| f.coalgebra().clone()).collect();
    let carrier = tensor_coalgebra(&coalgebras, product_name(factors))?;
    let object = Object::Coalgebra(carrier);
    let projections = certified_projections(&object, factors, &coalgebras, Level::Coalgebra)?;
    Ok(Product { object, projections, factors: factors.to_vec() })
}

fn certified_projections(
    object: &Object,
    factors: &[Object],
    coalgebras: &[Arc<crate::coalg::Coalgebra>],
    level: Level,
) -> Result<Vec<Morphism>, Error> {
    factors
        .iter()
        .enumerate()
        .map(|(t, factor)| {
            let p = Morphism::linear(
                format!("p{t}"),
                object.clone(),
                factor.clone(),
                projection_matrix(coalgebras, t),
            )?;
            p.certified(level).map_err(|e| {
                Error::Inconsistency(format!(
                    "projection p{t} onto {} failed {level}-level certification: {e}",
                    factor.name()
                ))
            })
        })
        .collect()
}

/// Product of cocommutative bialgebras: the coalgebra product carrying the
/// componentwise algebra structure. Construction re-runs the full bialgebra
/// axiom suite, and the projections are certified bialgebra maps.
pub fn product_bialg(factors: &[Object]) -> Result<Product, Error> {
    if factors.is_empty() {
        return Err(Error::Precondition(
            "the empty product needs an explicit field; use trivial_product".into(),
        ));
    }
    let bialgebras: Vec<Arc<Bialgebra>> = factors
        .iter()
        .map(|f| {
            f.bialgebra().cloned().ok_or_else(|| {
                Error::Precondition(format!(
                    "{} carries no multiplication; a bialgebra product needs bialgebra factors",
                    f.name()
                ))
            })
        })
        .collect::<Result<_, _>>()?;
    require_cocommutative(factors)?;
    let coalgebras: Vec<Arc<crate::coalg::Coalgebra>> =
        factors.iter().map(|f| f.coalgebra().clone()).collect();
    let carrier = tensor_coalgebra(&coalgebras, product_name(factors))?;
    let (mult, unit) = componentwise_algebra(&carrier, &bialgebras);
    let b = Bialgebra::new(carrier, mult, unit)?;
    let object = Object::Bialgebra(b);
    let projections = certified_projections(&object, factors, &coalgebras, Level::Bialgebra)?;
    Ok(Product { object, projections, factors: factors.to_vec() })
}

fn componentwise_algebra(
    carrier: &Arc<crate::coalg::Coalgebra>,
    bialgebras: &[Arc<Bialgebra>],
) -> (Matrix, Matrix) {
    let field = carrier.field();
    let total = carrier.dim();
    let dims: Vec<usize> = bialgebras.iter().map(|b| b.dim()).collect();
    let mut mult = Matrix::zeros(field, total, total * total);
    for i in 0..total {
        let di = digits_of(i, &dims);
        for j in 0..total {
            let dj = digits_of(j, &dims);
            // (x1 (x) ... (x) xk)(y1 (x) ... (x) yk) = x1 y1 (x) ... (x) xk yk.
            let mut parts: Vec<(usize, crate::linalg::Scalar)> = vec![(0, field.one())];
            for (t, b) in bialgebras.iter().enumerate() {
                let mut next = Vec::with_capacity(parts.len());
                for (r, c) in b.mult_col(di[t], dj[t]) {
                    for (acc, v) in &parts {
                        next.push((acc * dims[t] + r, v * &c));
                    }
                }
                parts = next;
            }
            let mut col = Accum::new();
            for (r, v) in parts {
                col.add(r, v);
            }
            mult.set_sparse_col(i * total + j, &col.into_sparse());
        }
    }
    let mut unit_parts: Vec<(usize, crate::linalg::Scalar)> = vec![(0, field.one())];
    for (t, b) in bialgebras.iter().enumerate() {
        let mut next = Vec::new();
        for (r, c) in b.unit_sparse() {
            for (acc, v) in &unit_parts {
                next.push((acc * dims[t] + r, v * &c));
            }
        }
        unit_parts = next;
    }
    let mut unit = Matrix::zeros(field, total, 1);
    let mut col = Accum::new();
    for (r, v) in unit_parts {
        col.add(r, v);
    }
    unit.set_sparse_col(0, &col.into_sparse());
    (mult, unit)
}

/// Product of cocommutative Hopf algebras: the bialgebra product with the
/// componentwise antipode. Verifies that each projection intertwines the
/// antipodes, that the product antipode is a bialgebra map from the
/// opposite-coopposite object, and that the antipode identities hold.
pub fn product_hopf(factors: &[Object]) -> Result<Product, Error> {
    if factors.is_empty() {
        return Err(Error::Precondition(
            "the empty product needs an explicit field; use trivial_product".into(),
        ));
    }
    let hopfs: Vec<Arc<HopfAlgebra>> = factors
        .iter()
        .map(|f| {
            f.hopf().cloned().ok_or_else(|| {
                Error::Precondition(format!(
                    "{} carries no antipode; a Hopf product needs Hopf factors",
                    f.name()
                ))
            })
        })
        .collect::<Result<_, _>>()?;
    let bialg_product = product_bialg(factors)?;
    let b = bialg_product.object.bialgebra().expect("bialgebra product");
    let total = b.dim();
    let field = b.coalgebra().field();

    let mut antipode = Matrix::zeros(field, total, total);
    let antipode_mats: Vec<&Matrix> = hopfs.iter().map(|h| h.antipode()).collect();
    for i in 0..total {
        let e = vec![(i, field.one())];
        antipode.set_sparse_col(i, &kron_apply_many(&antipode_mats, &e));
    }

    // Each projection must intertwine the product antipode with its
    // factor's antipode; failure would contradict the componentwise
    // construction.
    for (t, h) in hopfs.iter().enumerate() {
        let p = &bialg_product.projections[t];
        let lhs = p.matrix().mul(&antipode);
        let rhs = h.antipode().mul(p.matrix());
        if lhs != rhs {
            return Err(Error::Inconsistency(format!(
                "projection p{t} does not intertwine the product antipode with the antipode of {}",
                factors[t].name()
            )));
        }
    }

    // The antipode is a bialgebra map from the opposite-coopposite product.
    let flipped = op_cop(b).map_err(|e| {
        Error::Inconsistency(format!("opposite-coopposite of a valid product failed: {e}"))
    })?;
    let s_as_map = Morphism::linear(
        "S",
        Object::Bialgebra(flipped),
        bialg_product.object.clone(),
        antipode.clone(),
    )?;
    s_as_map.certified(Level::Bialgebra).map_err(|e| {
        Error::Inconsistency(format!(
            "product antipode failed bialgebra certification from the opposite-coopposite: {e}"
        ))
    })?;

    let hopf = HopfAlgebra::new(b.clone(), antipode).map_err(|e| match e {
        Error::Axiom { object, violation } => Error::Inconsistency(format!(
            "componentwise antipode of {object} violates {} at basis index {}",
            violation.identity.name(),
            violation.basis_index
        )),
        other => other,
    })?;
    let object = Object::Hopf(hopf);
    let coalgebras: Vec<Arc<crate::coalg::Coalgebra>> =
        factors.iter().map(|f| f.coalgebra().clone()).collect();
    let projections = certified_projections(&object, factors, &coalgebras, Level::Hopf)?;
    Ok(Product { object, projections, factors: factors.to_vec() })
}

/// Dispatch on level.
pub fn product(factors: &[Object], level: Level) -> Result<Product, Error> {
    match level {
        Level::Coalgebra => product_coalg(factors),
        Level::Bialgebra => product_bialg(factors),
        Level::Hopf => product_hopf(factors),
    }
}

/// The mediating morphism of the product's universal property: given a cone
/// g_t : D -> C_t of certified maps from a cocommutative domain, returns the
/// unique theta with p_t . theta = g_t, namely (g_1 (x) ... (x) g_k) .
/// Delta^(k-1). At bialgebra level and above the mediator is additionally
/// certified as a bialgebra map and the multiplicativity laws
/// p_t . theta . m_D = p_t . m_P . (theta (x) theta) are verified.
pub fn mediate_product(
    prod: &Product,
    dom: &Object,
    cone: &[Morphism],
    level: Level,
) -> Result<Morphism, Error> {
    if cone.len() != prod.factors.len() {
        return Err(Error::Precondition(format!(
            "cone has {} legs but the product has {} factors",
            cone.len(),
            prod.factors.len()
        )));
    }
    for (t, g) in cone.iter().enumerate() {
        if !g.dom().same_structure(dom) {
            return Err(Error::Precondition(format!(
                "cone leg {} does not start at {}",
                g.name(),
                dom.name()
            )));
        }
        if !g.cod().same_structure(&prod.factors[t]) {
            return Err(Error::Precondition(format!(
                "cone leg {} does not land in factor {}",
                g.name(),
                prod.factors[t].name()
            )));
        }
        if !g.certificate().covers(level) {
            return Err(Error::Precondition(format!(
                "cone leg {} is certified as {} but mediation at {level} level needs more",
                g.name(),
                g.certificate()
            )));
        }
    }
    if !dom.coalgebra().is_cocommutative() && !prod.factors.is_empty() {
        return Err(Error::Unsupported(format!(
            "mediating through a tensor-carrier product needs a cocommutative domain; {} is not",
            dom.name()
        )));
    }
    if dom.level() < level {
        return Err(Error::Precondition(format!(
            "mediation at {level} level needs a {level} domain; {} is only a {} object",
            dom.name(),
            dom.level()
        )));
    }

    let n = dom.dim();
    let field = dom.field();
    let matrix = if prod.factors.is_empty() {
        dom.coalgebra().epsilon().clone()
    } else if prod.factors.len() == 1 {
        cone[0].matrix().clone()
    } else {
        let mats: Vec<&Matrix> = cone.iter().map(|g| g.matrix()).collect();
        let k = prod.factors.len();
        let mut out = Matrix::zeros(field, prod.object.dim(), n);
        for i in 0..n {
            let split = dom.coalgebra().iterated_delta_col(i, k);
            out.set_sparse_col(i, &kron_apply_many(&mats, &split));
        }
        out
    };
    let theta = Morphism::linear("mediator", dom.clone(), prod.object.clone(), matrix)?;
    let theta = theta.certified(level).map_err(|e| {
        Error::Inconsistency(format!(
            "product mediator from cocommutative {} failed {level}-level certification: {e}",
            dom.name()
        ))
    })?;
    for (t, g) in cone.iter().enumerate() {
        if prod.projections[t].matrix().mul(theta.matrix()) != *g.matrix() {
            return Err(Error::Inconsistency(format!(
                "product mediator does not reproduce cone leg {} through p{t}",
                g.name()
            )));
        }
    }
    if level >= Level::Bialgebra {
        verify_mediator_multiplicativity(prod, dom, &theta)?;
    }
    Ok(theta)
}

/// p_t . theta . m_D = p_t . m_P . (theta (x) theta) and the unit law,
/// verified column by column without materializing theta (x) theta.
fn verify_mediator_multiplicativity(
    prod: &Product,
    dom: &Object,
    theta: &Morphism,
) -> Result<(), Error> {
    let dom_b = dom
        .bialgebra()
        .expect("bialgebra-level mediation validated the domain level");
    let prod_b = prod
        .object
        .bialgebra()
        .expect("bialgebra-level mediation validated the product level");
    let n = dom.dim();
    for t in 0..prod.factors.len() {
        let p = prod.projections[t].matrix();
        for i in 0..n {
            for j in 0..n {
                let through_dom = theta.matrix().apply_sparse(&dom_b.mult_col(i, j));
                let lhs = p.apply_sparse(&through_dom);
                let the_i = theta.matrix().sparse_col(i);
                let the_j = theta.matrix().sparse_col(j);
                let rhs = p.apply_sparse(&prod_b.product_sparse(&the_i, &the_j));
                if !sparse_sub(&lhs, &rhs).is_empty() {
                    return Err(Error::Inconsistency(format!(
                        "mediator multiplicativity fails through p{t} at basis pair ({i}, {j})"
                    )));
                }
            }
        }
    }
    let through_dom = theta.matrix().apply_sparse(&dom_b.unit_sparse());
    if !sparse_sub(&through_dom, &prod_b.unit_sparse()).is_empty() {
        return Err(Error::Inconsistency(
            "mediator does not carry the unit to the product unit".into(),
        ));
    }
    Ok(())
}
