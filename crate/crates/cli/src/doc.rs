//! The on-disk JSON document format, version "hopflim/1": one field, named
//! objects given by sparse structure constants with exact string scalars,
//! named morphisms with declared certificate levels, and named diagrams.
//! Parsing builds and fully validates everything eagerly, so an axiom
//! violation surfaces here no matter which subcommand asked.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use hopflim_core::{
    Bialgebra, Certificate, Coalgebra, Coaugmented, Error, Field, HopfAlgebra, Level, Matrix,
    Morphism, Object, Scalar,
};

pub const FORMAT: &str = "hopflim/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentDto {
    pub format: String,
    pub field: FieldDto,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub objects: BTreeMap<String, ObjectDto>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismDto>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub diagrams: BTreeMap<String, DiagramDto>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldDto {
    Q,
    Fp { p: u16 },
}

/// Structure constants for one object. `delta` rows [i, j, k, s] say that
/// Delta(e_i) contains s * e_j (x) e_k; `mult` rows [i, j, k, s] say that
/// e_i e_j contains s * e_k. `epsilon`, `unit`, and `coaugmentation` are
/// dense coordinate lists; `antipode` and morphism matrices are sparse
/// [row, col, s] triplets.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectDto {
    pub dim: usize,
    pub delta: Vec<(usize, usize, usize, String)>,
    pub epsilon: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<Vec<(usize, usize, usize, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<(usize, usize, String)>>,
    /// Distinguished group-like element for conilpotency work on bare
    /// coalgebras; bialgebras use their unit instead.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coaugmentation: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDto {
    pub dom: String,
    pub cod: String,
    pub matrix: Vec<(usize, usize, String)>,
    /// Declared certificate: "linear", "coalg", "bialg", or "hopf".
    /// Certification is verified at parse time.
    pub level: String,
}

/// A diagram names its nodes independently of the objects bound to them,
/// so the same object can sit at several nodes (a parallel pair f, g: A -> A
/// uses two nodes both bound to A). Arrows place a declared morphism
/// between two nodes.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDto {
    /// [node label, object name] pairs; node order fixes the cone order.
    pub nodes: Vec<(String, String)>,
    /// [morphism name, from node, to node] triples.
    pub arrows: Vec<(String, String, String)>,
    /// Optional category level; defaults to the deepest level every object
    /// and arrow supports.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<String>,
}

/// A fully built and validated document: every object passed its level's
/// axiom suite, every morphism certified at its declared level, every
/// declared coaugmentation verified group-like. The raw record is kept for
/// lookups that need names (diagram arrows, coaugmentations).
pub struct BuiltDocument {
    pub field: Field,
    pub objects: BTreeMap<String, Object>,
    pub morphisms: BTreeMap<String, Morphism>,
    pub dto: DocumentDto,
}

pub fn field_of(dto: FieldDto) -> Result<Field, Error> {
    match dto {
        FieldDto::Q => Ok(Field::Rational),
        FieldDto::Fp { p } => Field::prime(p),
    }
}

pub fn field_dto(field: Field) -> FieldDto {
    match field {
        Field::Rational => FieldDto::Q,
        Field::Prime(p) => FieldDto::Fp { p },
    }
}

/// Exact scalar syntax: an integer or a fraction "a/b", both meaningful
/// over every field (the fraction inverts b in the field).
pub fn parse_scalar(field: Field, text: &str) -> Result<Scalar, Error> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let n: i64 = num
        .parse()
        .map_err(|_| Error::Malformed(format!("cannot parse scalar {text:?}")))?;
    let d: i64 = den
        .parse()
        .map_err(|_| Error::Malformed(format!("cannot parse scalar {text:?}")))?;
    let inv = field
        .integer(d)
        .inverse()
        .ok_or_else(|| Error::Malformed(format!("scalar {text:?} divides by zero in {field}")))?;
    Ok(&field.integer(n) * &inv)
}

fn parse_dense(field: Field, values: &[String], what: &str, n: usize) -> Result<Vec<Scalar>, Error> {
    if values.len() != n {
        return Err(Error::Malformed(format!(
            "{what} must list {n} scalars, found {}",
            values.len()
        )));
    }
    values.iter().map(|s| parse_scalar(field, s)).collect()
}

fn column_matrix(field: Field, values: Vec<Scalar>) -> Matrix {
    Matrix::from_fn(field, values.len(), 1, |i, _| values[i].clone())
}

fn row_matrix(field: Field, values: Vec<Scalar>) -> Matrix {
    Matrix::from_fn(field, 1, values.len(), |_, j| values[j].clone())
}

/// Structure-constant matrices of one object record, parsed and
/// shape-checked but not yet validated against any axiom.
pub struct ObjectMatrices {
    pub dim: usize,
    pub delta: Matrix,
    pub epsilon: Matrix,
    pub mult_unit: Option<(Matrix, Matrix)>,
    pub antipode: Option<Matrix>,
}

pub fn object_matrices(name: &str, field: Field, dto: &ObjectDto) -> Result<ObjectMatrices, Error> {
    let n = dto.dim;
    let mut delta_triplets = Vec::with_capacity(dto.delta.len());
    for (i, j, k, s) in &dto.delta {
        if *i >= n || *j >= n || *k >= n {
            return Err(Error::Malformed(format!(
                "delta triplet [{i}, {j}, {k}] of {name} is out of range for dimension {n}"
            )));
        }
        delta_triplets.push((j * n + k, *i, parse_scalar(field, s)?));
    }
    let delta = Matrix::from_triplets(field, n * n, n, &delta_triplets)?;
    let epsilon = row_matrix(field, parse_dense(field, &dto.epsilon, "epsilon", n)?);
    let mult_unit = match (&dto.mult, &dto.unit) {
        (None, None) => None,
        (Some(mult), Some(unit)) => {
            let mut mult_triplets = Vec::with_capacity(mult.len());
            for (i, j, k, s) in mult {
                if *i >= n || *j >= n || *k >= n {
                    return Err(Error::Malformed(format!(
                        "mult triplet [{i}, {j}, {k}] of {name} is out of range for dimension {n}"
                    )));
                }
                mult_triplets.push((*k, i * n + j, parse_scalar(field, s)?));
            }
            let mult = Matrix::from_triplets(field, n, n * n, &mult_triplets)?;
            let unit = column_matrix(field, parse_dense(field, unit, "unit", n)?);
            Some((mult, unit))
        }
        _ => {
            return Err(Error::Malformed(format!(
                "object {name} must declare mult and unit together"
            )));
        }
    };
    if dto.antipode.is_some() && mult_unit.is_none() {
        return Err(Error::Malformed(format!(
            "object {name} declares an antipode but no multiplication"
        )));
    }
    let antipode = dto
        .antipode
        .as_ref()
        .map(|t| parse_matrix(field, t, n, n, name))
        .transpose()?;
    Ok(ObjectMatrices { dim: n, delta, epsilon, mult_unit, antipode })
}

fn build_object(name: &str, field: Field, dto: &ObjectDto) -> Result<Object, Error> {
    let m = object_matrices(name, field, dto)?;
    let coalgebra = Coalgebra::new(name, m.dim, m.delta, m.epsilon)?;
    let bialgebra = match m.mult_unit {
        None => None,
        Some((mult, unit)) => Some(Bialgebra::new(coalgebra.clone(), mult, unit)?),
    };
    match (m.antipode, bialgebra) {
        (None, None) => Ok(Object::Coalgebra(coalgebra)),
        (None, Some(b)) => Ok(Object::Bialgebra(b)),
        (Some(antipode), Some(b)) => Ok(Object::Hopf(HopfAlgebra::new(b, antipode)?)),
        (Some(_), None) => unreachable!("object_matrices rejects antipode without mult"),
    }
}

pub fn parse_matrix(
    field: Field,
    triplets: &[(usize, usize, String)],
    rows: usize,
    cols: usize,
    what: &str,
) -> Result<Matrix, Error> {
    let mut out = Vec::with_capacity(triplets.len());
    for (r, c, s) in triplets {
        if *r >= rows || *c >= cols {
            return Err(Error::Malformed(format!(
                "matrix entry [{r}, {c}] of {what} is out of range for shape {rows}x{cols}"
            )));
        }
        out.push((*r, *c, parse_scalar(field, s)?));
    }
    Matrix::from_triplets(field, rows, cols, &out)
}

pub fn parse_level(text: &str) -> Result<Level, Error> {
    match text {
        "coalg" => Ok(Level::Coalgebra),
        "bialg" => Ok(Level::Bialgebra),
        "hopf" => Ok(Level::Hopf),
        other => Err(Error::Malformed(format!(
            "unknown level {other:?}; expected coalg, bialg, or hopf"
        ))),
    }
}

pub fn level_token(level: Level) -> &'static str {
    match level {
        Level::Coalgebra => "coalg",
        Level::Bialgebra => "bialg",
        Level::Hopf => "hopf",
    }
}

fn build_morphism(
    name: &str,
    field: Field,
    dto: &MorphismDto,
    objects: &BTreeMap<String, Object>,
) -> Result<Morphism, Error> {
    let dom = objects.get(&dto.dom).ok_or_else(|| {
        Error::Malformed(format!("morphism {name} references unknown object {}", dto.dom))
    })?;
    let cod = objects.get(&dto.cod).ok_or_else(|| {
        Error::Malformed(format!("morphism {name} references unknown object {}", dto.cod))
    })?;
    let matrix = parse_matrix(field, &dto.matrix, cod.dim(), dom.dim(), name)?;
    let m = Morphism::linear(name, dom.clone(), cod.clone(), matrix)?;
    if dto.level == "linear" {
        return Ok(m);
    }
    m.certified(parse_level(&dto.level)?)
}

/// Parses document text and builds every declared structure, running the
/// full axiom suite per declared level.
pub fn parse_document(text: &str) -> Result<BuiltDocument, Error> {
    let dto = parse_dto(text)?;
    build_document(&dto)
}

pub fn parse_dto(text: &str) -> Result<DocumentDto, Error> {
    let dto: DocumentDto = serde_json::from_str(text)
        .map_err(|e| Error::Malformed(format!("document does not parse: {e}")))?;
    if dto.format != FORMAT {
        return Err(Error::Malformed(format!(
            "unsupported format {:?}; this tool reads {FORMAT:?}",
            dto.format
        )));
    }
    Ok(dto)
}

pub fn build_document(dto: &DocumentDto) -> Result<BuiltDocument, Error> {
    let field = field_of(dto.field)?;
    let mut objects = BTreeMap::new();
    for (name, odto) in &dto.objects {
        let obj = build_object(name, field, odto)?;
        if odto.coaugmentation.is_some() {
            coaugmentation_of(name, &obj, odto, field)?;
        }
        objects.insert(name.clone(), obj);
    }
    let mut morphisms = BTreeMap::new();
    for (name, mdto) in &dto.morphisms {
        morphisms.insert(name.clone(), build_morphism(name, field, mdto, &objects)?);
    }
    // Diagrams are checked for well-formed references here; the categorical
    // side (endpoint structures, certificate coverage) is checked when a
    // diagram is actually used.
    for (name, d) in &dto.diagrams {
        let mut labels: Vec<&String> = Vec::new();
        for (label, o) in &d.nodes {
            if labels.contains(&label) {
                return Err(Error::Malformed(format!(
                    "diagram {name} declares node {label} twice"
                )));
            }
            labels.push(label);
            if !objects.contains_key(o) {
                return Err(Error::Malformed(format!(
                    "diagram {name} references unknown object {o}"
                )));
            }
        }
        for (a, from, to) in &d.arrows {
            if !morphisms.contains_key(a) {
                return Err(Error::Malformed(format!(
                    "diagram {name} references unknown morphism {a}"
                )));
            }
            for node in [from, to] {
                if !labels.contains(&node) {
                    return Err(Error::Malformed(format!(
                        "diagram {name} places an arrow at undeclared node {node}"
                    )));
                }
            }
        }
        if let Some(level) = &d.level {
            parse_level(level)?;
        }
    }
    Ok(BuiltDocument { field, objects, morphisms, dto: dto.clone() })
}

// ---- Serialization back out of built structures ----

fn delta_triplets(c: &Coalgebra) -> Vec<(usize, usize, usize, String)> {
    let n = c.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for (jk, s) in c.delta_col(i) {
            out.push((i, jk / n, jk % n, s.to_string()));
        }
    }
    out
}

fn dense_list(m: &Matrix) -> Vec<String> {
    // Works for both row and column vectors.
    (0..m.rows() * m.cols())
        .map(|i| {
            if m.rows() == 1 {
                m.at(0, i).to_string()
            } else {
                m.at(i, 0).to_string()
            }
        })
        .collect()
}

pub fn matrix_triplets(m: &Matrix) -> Vec<(usize, usize, String)> {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for (c, v) in m.sparse_row(r) {
            out.push((r, c, v.to_string()));
        }
    }
    out
}

fn mult_triplets(b: &Bialgebra) -> Vec<(usize, usize, usize, String)> {
    let n = b.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, s) in b.mult().sparse_col(i * n + j) {
                out.push((i, j, k, s.to_string()));
            }
        }
    }
    out
}

/// Serializes an object back to its structure-constant record; the inverse
/// of `build_object` up to triplet order.
pub fn object_dto(obj: &Object) -> ObjectDto {
    let c = obj.coalgebra();
    let mut dto = ObjectDto {
        dim: c.dim(),
        delta: delta_triplets(c),
        epsilon: dense_list(c.epsilon()),
        mult: None,
        unit: None,
        antipode: None,
        coaugmentation: None,
    };
    if let Some(b) = obj.bialgebra() {
        dto.mult = Some(mult_triplets(b));
        dto.unit = Some(dense_list(b.unit()));
    }
    if let Some(h) = obj.hopf() {
        dto.antipode = Some(matrix_triplets(h.antipode()));
    }
    dto
}

pub fn coaugmented_dto(ca: &Coaugmented) -> ObjectDto {
    let mut dto = object_dto(&Object::Coalgebra(ca.coalgebra().clone()));
    dto.coaugmentation = Some(ca.unit().iter().map(|s| s.to_string()).collect());
    dto
}

pub fn morphism_dto(m: &Morphism, dom: &str, cod: &str) -> MorphismDto {
    let level = match m.certificate() {
        Certificate::LinearOnly => "linear",
        Certificate::CoalgebraMap => "coalg",
        Certificate::BialgebraMap => "bialg",
        Certificate::HopfMap => "hopf",
    };
    MorphismDto {
        dom: dom.to_string(),
        cod: cod.to_string(),
        matrix: matrix_triplets(m.matrix()),
        level: level.to_string(),
    }
}

/// Reads the distinguished group-like needed by conilpotent constructions:
/// an explicit coaugmentation on a bare coalgebra, or the unit of a
/// bialgebra.
pub fn coaugmentation_of(
    name: &str,
    obj: &Object,
    dto: &ObjectDto,
    field: Field,
) -> Result<Coaugmented, Error> {
    let unit: Vec<Scalar> = if let Some(co) = &dto.coaugmentation {
        parse_dense(field, co, "coaugmentation", obj.dim())?
    } else if let Some(b) = obj.bialgebra() {
        (0..obj.dim()).map(|i| b.unit().at(i, 0).clone()).collect()
    } else {
        return Err(Error::Precondition(format!(
            "object {name} has no coaugmentation and no unit; conilpotent \
             constructions need a distinguished group-like element"
        )));
    };
    Coaugmented::new(obj.coalgebra().clone(), unit)
}

/// Pretty, stable JSON for documents written by `make`.
pub fn render_document(dto: &DocumentDto) -> String {
    let mut out = serde_json::to_string_pretty(dto).expect("document serializes");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use hopflim_core::zoo::{self, GroupTable};

    fn round_trip(obj: &Object) {
        let dto = DocumentDto {
            format: FORMAT.to_string(),
            field: field_dto(obj.field()),
            objects: BTreeMap::from([("x".to_string(), object_dto(obj))]),
            morphisms: BTreeMap::new(),
            diagrams: BTreeMap::new(),
        };
        let text = render_document(&dto);
        let built = parse_document(&text).unwrap();
        let back = &built.objects["x"];
        assert_eq!(back.level(), obj.level());
        assert!(back.coalgebra().same_structure(obj.coalgebra()));
        match (back.bialgebra(), obj.bialgebra()) {
            (Some(a), Some(b)) => assert!(a.same_structure(b)),
            (None, None) => {}
            _ => panic!("bialgebra structure lost in round trip"),
        }
        match (back.hopf(), obj.hopf()) {
            (Some(a), Some(b)) => assert!(a.same_structure(b)),
            (None, None) => {}
            _ => panic!("antipode lost in round trip"),
        }
    }

    #[test]
    fn zoo_objects_round_trip_through_the_document_format() {
        let q = Field::Rational;
        let f5 = Field::prime(5).unwrap();
        round_trip(&zoo::group_algebra(GroupTable::cyclic(4), q).unwrap().object());
        round_trip(&zoo::group_algebra(GroupTable::symmetric3(), f5).unwrap().object());
        round_trip(&Object::Hopf(zoo::sweedler_h4(q).unwrap()));
        round_trip(&Object::Hopf(zoo::taft(3, Field::prime(7).unwrap()).unwrap()));
        round_trip(&Object::Coalgebra(zoo::matrix_comatrix(2, q).unwrap()));
        round_trip(&Object::Bialgebra(zoo::idempotent_monoid_bialgebra(f5).unwrap()));
    }

    #[test]
    fn rational_scalars_parse_exactly() {
        let q = Field::Rational;
        let s = parse_scalar(q, "3/4").unwrap();
        assert_eq!(s.to_string(), "3/4");
        let neg = parse_scalar(q, "-7/2").unwrap();
        assert_eq!(neg.to_string(), "-7/2");
        assert_eq!(parse_scalar(q, " 5 ").unwrap().to_string(), "5");
        assert!(parse_scalar(q, "1/0").is_err());
        assert!(parse_scalar(q, "x").is_err());
    }

    #[test]
    fn prime_field_scalars_reduce_modulo_p() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(parse_scalar(f5, "7").unwrap(), f5.integer(2));
        assert_eq!(parse_scalar(f5, "-1").unwrap(), f5.integer(4));
        // 1/2 = 3 mod 5.
        assert_eq!(parse_scalar(f5, "1/2").unwrap(), f5.integer(3));
        assert!(parse_scalar(f5, "1/5").is_err());
    }

    #[test]
    fn the_empty_document_is_valid() {
        let text = r#"{"format": "hopflim/1", "field": {"kind": "Q"}}"#;
        let built = parse_document(text).unwrap();
        assert!(built.objects.is_empty());
        assert!(built.morphisms.is_empty());
    }

    #[test]
    fn wrong_format_tags_are_rejected() {
        let text = r#"{"format": "hopflim/2", "field": {"kind": "Q"}}"#;
        assert!(matches!(parse_document(text), Err(Error::Malformed(_))));
    }

    #[test]
    fn broken_counit_is_an_axiom_error_naming_the_object() {
        // kZ2 with epsilon zero on the second basis vector.
        let text = r#"{
            "format": "hopflim/1",
            "field": {"kind": "Q"},
            "objects": {
                "bad": {
                    "dim": 2,
                    "delta": [[0,0,0,"1"], [1,1,1,"1"]],
                    "epsilon": ["1", "0"]
                }
            }
        }"#;
        match parse_document(text) {
            Err(Error::Axiom { object, .. }) => assert_eq!(object, "bad"),
            Err(other) => panic!("expected an axiom error, got {other:?}"),
            Ok(_) => panic!("expected an axiom error, got a validated document"),
        }
    }

    #[test]
    fn morphisms_certify_at_their_declared_level() {
        // The basis swap on kZ2 (e <-> g) permutes group-likes, so it is a
        // coalgebra map — but it moves the unit, so it is no algebra map.
        let text = r#"{
            "format": "hopflim/1",
            "field": {"kind": "Q"},
            "objects": {
                "kZ2": {
                    "dim": 2,
                    "delta": [[0,0,0,"1"], [1,1,1,"1"]],
                    "epsilon": ["1", "1"],
                    "mult": [[0,0,0,"1"], [0,1,1,"1"], [1,0,1,"1"], [1,1,0,"1"]],
                    "unit": ["1", "0"],
                    "antipode": [[0,0,"1"], [1,1,"1"]]
                }
            },
            "morphisms": {
                "swap": {"dom": "kZ2", "cod": "kZ2", "matrix": [[0,1,"1"],[1,0,"1"]], "level": "coalg"}
            }
        }"#;
        let built = parse_document(text).unwrap();
        assert!(built.morphisms["swap"].certificate().covers(Level::Coalgebra));

        // Declaring the same matrix as a Hopf map fails certification with
        // an axiom error: the swap does not preserve the unit.
        let bad = text.replace(r#""level": "coalg""#, r#""level": "hopf""#);
        assert!(matches!(parse_document(&bad), Err(Error::Axiom { .. })));
    }
}
