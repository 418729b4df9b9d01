use crate::coalg::{Morphism, Object};
use crate::equalizer::{equalize, factor_through, Equalizer, Method};
use crate::error::Error;
use crate::product::diagram::Diagram;
use crate::product::product::{mediate_product, product, trivial_product, Product};

/// A finite limit presented as the equalizer of the induced parallel pair
/// between the product over all objects and the product over arrow
/// codomains. The cone legs are the projections composed with the equalizer
/// inclusion.
#[derive(Debug, Clone)]
pub struct Limit {
    pub diagram: Diagram,
    pub product: Product,
    pub arrow_product: Product,
    pub pair: (Morphism, Morphism),
    pub equalizer: Equalizer,
    pub cone: Vec<Morphism>,
}

impl Limit {
    pub fn object(&self) -> &Object {
        &self.equalizer.object
    }

    pub fn dim(&self) -> usize {
        self.equalizer.dim()
    }
}

/// The two maps whose equalizer carves the limit out of the product: one
/// projects straight to each arrow's codomain slot, the other routes through
/// the arrow.
pub fn induced_pair(
    diagram: &Diagram,
    prod: &Product,
) -> Result<(Product, Morphism, Morphism), Error> {
    let level = diagram.level();
    if diagram.arrows().is_empty() {
        let field = diagram.objects()[0].1.field();
        let arrow_product = trivial_product(field, level)?;
        let eps = Morphism::linear(
            "to-k",
            prod.object.clone(),
            arrow_product.object.clone(),
            prod.object.coalgebra().epsilon().clone(),
        )?;
        let eps = eps.certified(level).map_err(|e| {
            Error::Inconsistency(format!(
                "the counit into k failed {level}-level certification: {e}"
            ))
        })?;
        return Ok((arrow_product, eps.clone(), eps));
    }
    let cod_objects: Vec<Object> = diagram
        .arrows()
        .iter()
        .map(|a| diagram.objects()[a.cod].1.clone())
        .collect();
    let arrow_product = product(&cod_objects, level)?;
    let f_legs: Vec<Morphism> = diagram
        .arrows()
        .iter()
        .map(|a| prod.projections[a.cod].clone())
        .collect();
    let g_legs: Vec<Morphism> = diagram
        .arrows()
        .iter()
        .map(|a| a.morphism.compose(&prod.projections[a.dom]))
        .collect::<Result<_, _>>()?;
    let f = mediate_product(&arrow_product, &prod.object, &f_legs, level)?
        .rename("straight-to-codomains");
    let g = mediate_product(&arrow_product, &prod.object, &g_legs, level)?
        .rename("through-the-arrows");
    Ok((arrow_product, f, g))
}

/// Limit of a finite diagram in the cocommutative fragment. The equalizer
/// always runs both methods and cross-checks them, and every cone leg is
/// verified to commute with every arrow.
pub fn limit(diagram: &Diagram) -> Result<Limit, Error> {
    let level = diagram.level();
    let objects: Vec<Object> = diagram.objects().iter().map(|(_, o)| o.clone()).collect();
    let prod = product(&objects, level)?;
    let (arrow_product, f, g) = induced_pair(diagram, &prod)?;
    let eq = equalize(&f, &g, level, Method::Both)?;
    let cone: Vec<Morphism> = prod
        .projections
        .iter()
        .enumerate()
        .map(|(j, p)| {
            p.compose(&eq.inclusion)
                .map(|m| m.rename(format!("cone{j}")))
        })
        .collect::<Result<_, _>>()?;
    for a in diagram.arrows() {
        let routed = a.morphism.matrix().mul(cone[a.dom].matrix());
        if routed != *cone[a.cod].matrix() {
            return Err(Error::Inconsistency(format!(
                "cone leg through arrow {} does not commute with the codomain leg",
                a.name
            )));
        }
    }
    Ok(Limit {
        diagram: diagram.clone(),
        product: prod,
        arrow_product,
        pair: (f, g),
        equalizer: eq,
        cone,
    })
}

/// The limit's universal property: a commuting cone from a cocommutative
/// domain factors uniquely through the limit object.
pub fn mediate_limit(lim: &Limit, dom: &Object, legs: &[Morphism]) -> Result<Morphism, Error> {
    let level = lim.diagram.level();
    if legs.len() != lim.diagram.objects().len() {
        return Err(Error::Precondition(format!(
            "cone has {} legs but the diagram has {} objects",
            legs.len(),
            lim.diagram.objects().len()
        )));
    }
    for a in lim.diagram.arrows() {
        let routed = a.morphism.matrix().mul(legs[a.dom].matrix());
        if routed != *legs[a.cod].matrix() {
            return Err(Error::Precondition(format!(
                "cone does not commute with arrow {}",
                a.name
            )));
        }
    }
    let theta = mediate_product(&lim.product, dom, legs, level)?;
    let u = factor_through(&lim.equalizer, &theta)?;
    for (j, leg) in legs.iter().enumerate() {
        if lim.cone[j].matrix().mul(u.matrix()) != *leg.matrix() {
            return Err(Error::Inconsistency(format!(
                "limit mediator does not reproduce cone leg {j} ({})",
                leg.name()
            )));
        }
    }
    Ok(u)
}
