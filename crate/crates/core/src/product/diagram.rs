use std::collections::HashSet;

use crate::coalg::{Level, Morphism, Object};
use crate::error::Error;

/// One arrow of a finite diagram, between objects addressed by index.
#[derive(Debug, Clone)]
pub struct Arrow {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
    pub morphism: Morphism,
}

/// A finite diagram in the chosen category: named objects and arrows whose
/// endpoints and certificates are validated once, at construction.
#[derive(Debug, Clone)]
pub struct Diagram {
    level: Level,
    objects: Vec<(String, Object)>,
    arrows: Vec<Arrow>,
}

impl Diagram {
    pub fn new(
        level: Level,
        objects: Vec<(String, Object)>,
        arrows: Vec<Arrow>,
    ) -> Result<Diagram, Error> {
        if objects.is_empty() {
            return Err(Error::Precondition(
                "a diagram needs at least one object (the field is read off the objects)".into(),
            ));
        }
        let mut names = HashSet::new();
        for (name, obj) in &objects {
            if name.is_empty() {
                return Err(Error::Malformed("empty object name in diagram".into()));
            }
            if !names.insert(name.clone()) {
                return Err(Error::Malformed(format!("duplicate object name {name}")));
            }
            if obj.level() < level {
                return Err(Error::Precondition(format!(
                    "diagram is at {level} level but object {name} is only a {} object",
                    obj.level()
                )));
            }
            if obj.field() != objects[0].1.field() {
                return Err(Error::FieldMismatch {
                    left: objects[0].1.field(),
                    right: obj.field(),
                });
            }
        }
        let mut arrow_names = HashSet::new();
        for a in &arrows {
            if !arrow_names.insert(a.name.clone()) {
                return Err(Error::Malformed(format!("duplicate arrow name {}", a.name)));
            }
            let Some((_, dom_obj)) = objects.get(a.dom) else {
                return Err(Error::Malformed(format!(
                    "arrow {} starts at object index {} but the diagram has {} objects",
                    a.name,
                    a.dom,
                    objects.len()
                )));
            };
            let Some((_, cod_obj)) = objects.get(a.cod) else {
                return Err(Error::Malformed(format!(
                    "arrow {} ends at object index {} but the diagram has {} objects",
                    a.name,
                    a.cod,
                    objects.len()
                )));
            };
            if !a.morphism.dom().same_structure(dom_obj) || !a.morphism.cod().same_structure(cod_obj)
            {
                return Err(Error::Precondition(format!(
                    "arrow {} does not match its declared endpoints",
                    a.name
                )));
            }
            if !a.morphism.certificate().covers(level) {
                return Err(Error::Precondition(format!(
                    "arrow {} is certified as {} but the diagram is at {level} level",
                    a.name,
                    a.morphism.certificate()
                )));
            }
        }
        Ok(Diagram { level, objects, arrows })
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn objects(&self) -> &[(String, Object)] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// A parallel pair f, g : A -> B as a two-object diagram.
    pub fn parallel_pair(level: Level, f: &Morphism, g: &Morphism) -> Result<Diagram, Error> {
        if !f.dom().same_structure(g.dom()) || !f.cod().same_structure(g.cod()) {
            return Err(Error::Precondition(
                "a parallel-pair diagram needs maps sharing both endpoints".into(),
            ));
        }
        Diagram::new(
            level,
            vec![
                ("A".into(), f.dom().clone()),
                ("B".into(), f.cod().clone()),
            ],
            vec![
                Arrow { name: format!("f:{}", f.name()), dom: 0, cod: 1, morphism: f.clone() },
                Arrow { name: format!("g:{}", g.name()), dom: 0, cod: 1, morphism: g.clone() },
            ],
        )
    }

    /// A cospan A -f-> C <-g- B as a three-object diagram (its limit is the
    /// pullback).
    pub fn cospan(level: Level, f: &Morphism, g: &Morphism) -> Result<Diagram, Error> {
        if !f.cod().same_structure(g.cod()) {
            return Err(Error::Precondition(
                "a cospan needs maps sharing their codomain".into(),
            ));
        }
        Diagram::new(
            level,
            vec![
                ("A".into(), f.dom().clone()),
                ("B".into(), g.dom().clone()),
                ("C".into(), f.cod().clone()),
            ],
            vec![
                Arrow { name: format!("f:{}", f.name()), dom: 0, cod: 2, morphism: f.clone() },
                Arrow { name: format!("g:{}", g.name()), dom: 1, cod: 2, morphism: g.clone() },
            ],
        )
    }
}
