//! Degree-truncated cofree coalgebra on a finite-dimensional space: words
//! with deconcatenation comultiplication, the couniversal lift of a linear
//! map from a conilpotent coaugmented coalgebra, and the conilpotent product
//! built from that lift.

use std::sync::Arc;

use crate::coalg::{largest_subcoalgebra, Coalgebra, Level, Morphism, Object, Subcoalgebra};
use crate::error::Error;
use crate::linalg::{kron_apply2, sparse_sub, Accum, Matrix, Scalar, Subspace};
use crate::product::MAX_TENSOR_DIM;

/// Words over `v_dim` letters of length at most `degree`, ordered by length
/// and then lexicographically; comultiplication is deconcatenation. The
/// projection picks out the length-one component.
#[derive(Debug, Clone)]
pub struct TruncatedCofree {
    v_dim: usize,
    degree: usize,
    coalgebra: Arc<Coalgebra>,
    projection: Matrix,
    /// offsets[l] = index of the first word of length l.
    offsets: Vec<usize>,
}

impl TruncatedCofree {
    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coalgebra(&self) -> &Arc<Coalgebra> {
        &self.coalgebra
    }

    pub fn dim(&self) -> usize {
        self.coalgebra.dim()
    }

    /// The linear map picking the length-one (letter) component.
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    pub fn word_index(&self, word: &[usize]) -> usize {
        assert!(word.len() <= self.degree);
        let mut idx = 0;
        for &letter in word {
            assert!(letter < self.v_dim);
            idx = idx * self.v_dim + letter;
        }
        self.offsets[word.len()] + idx
    }

    pub fn word_of(&self, index: usize) -> Vec<usize> {
        let len = (0..=self.degree)
            .rev()
            .find(|&l| index >= self.offsets[l])
            .expect("index within carrier");
        let mut rem = index - self.offsets[len];
        let mut word = vec![0; len];
        for t in (0..len).rev() {
            word[t] = rem % self.v_dim;
            rem /= self.v_dim;
        }
        word
    }

    /// The empty word, the canonical coaugmentation.
    pub fn coaugmented(&self) -> Coaugmented {
        let mut unit = vec![self.coalgebra.field().zero(); self.dim()];
        unit[0] = self.coalgebra.field().one();
        Coaugmented::new(self.coalgebra.clone(), unit).expect("empty word is group-like")
    }
}

/// Builds the truncated cofree coalgebra on a `v_dim`-dimensional space.
pub fn truncated_cofree(field: crate::linalg::Field, v_dim: usize, degree: usize) -> Result<TruncatedCofree, Error> {
    let mut offsets = Vec::with_capacity(degree + 2);
    let mut dim = 0usize;
    let mut power = 1usize;
    for _ in 0..=degree {
        offsets.push(dim);
        dim = dim
            .checked_add(power)
            .filter(|&d| d <= MAX_TENSOR_DIM)
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "truncated cofree carrier on {v_dim} letters at degree {degree} exceeds \
                     the {MAX_TENSOR_DIM} budget"
                ))
            })?;
        power = power.saturating_mul(v_dim);
    }
    offsets.push(dim);

    let word_index = |word: &[usize]| -> usize {
        let mut idx = 0;
        for &letter in word {
            idx = idx * v_dim + letter;
        }
        offsets[word.len()] + idx
    };

    let mut delta = Matrix::zeros(field, dim * dim, dim);
    let mut eps = Matrix::zeros(field, 1, dim);
    eps.set(0, 0, field.one());
    let mut word = Vec::new();
    for idx in 0..dim {
        // Reconstruct the word for this index.
        let len = (0..=degree).rev().find(|&l| idx >= offsets[l]).unwrap();
        let mut rem = idx - offsets[len];
        word.resize(len, 0);
        for t in (0..len).rev() {
            word[t] = rem % v_dim.max(1);
            rem /= v_dim.max(1);
        }
        let mut col = Accum::new();
        for split in 0..=len {
            let left = word_index(&word[..split]);
            let right = word_index(&word[split..]);
            col.add(left * dim + right, field.one());
        }
        delta.set_sparse_col(idx, &col.into_sparse());
    }
    let coalgebra = Coalgebra::new(
        format!("cofree({v_dim}, {degree})"),
        dim,
        delta,
        eps,
    )?;
    let mut projection = Matrix::zeros(field, v_dim, dim);
    for letter in 0..v_dim {
        if degree >= 1 {
            projection.set(letter, offsets[1] + letter, field.one());
        }
    }
    Ok(TruncatedCofree { v_dim, degree, coalgebra, projection, offsets })
}

/// A coalgebra with a designated group-like unit of counit one. The reduced
/// comultiplication and the conilpotency ladder hang off this choice.
#[derive(Debug, Clone)]
pub struct Coaugmented {
    coalgebra: Arc<Coalgebra>,
    unit: Vec<Scalar>,
}

impl Coaugmented {
    pub fn new(coalgebra: Arc<Coalgebra>, unit: Vec<Scalar>) -> Result<Coaugmented, Error> {
        let n = coalgebra.dim();
        let field = coalgebra.field();
        if unit.len() != n {
            return Err(Error::Malformed(format!(
                "coaugmentation vector has length {}, coalgebra has dimension {n}",
                unit.len()
            )));
        }
        for v in &unit {
            if v.field() != field {
                return Err(Error::FieldMismatch { left: field, right: v.field() });
            }
        }
        let sparse: crate::linalg::SparseVec = unit
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        let mut square = Accum::new();
        for (i, a) in &sparse {
            for (j, b) in &sparse {
                square.add(i * n + j, a * b);
            }
        }
        if !sparse_sub(&coalgebra.delta_of(&sparse), &square.into_sparse()).is_empty() {
            return Err(Error::Precondition(
                "coaugmentation vector is not group-like".into(),
            ));
        }
        if !coalgebra.counit_of(&sparse).is_one() {
            return Err(Error::Precondition(
                "coaugmentation vector does not have counit one".into(),
            ));
        }
        Ok(Coaugmented { coalgebra, unit })
    }

    pub fn coalgebra(&self) -> &Arc<Coalgebra> {
        &self.coalgebra
    }

    pub fn dim(&self) -> usize {
        self.coalgebra.dim()
    }

    pub fn field(&self) -> crate::linalg::Field {
        self.coalgebra.field()
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn unit_sparse(&self) -> crate::linalg::SparseVec {
        self.unit
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect()
    }

    /// Column i of the reduced comultiplication
    /// Delta(x) - u (x) x - x (x) u + eps(x) u (x) u.
    pub fn reduced_delta_col(&self, i: usize) -> crate::linalg::SparseVec {
        let n = self.dim();
        let mut acc = Accum::new();
        for (jk, v) in self.coalgebra.delta_col(i) {
            acc.add(jk, v);
        }
        let u = self.unit_sparse();
        for (j, a) in &u {
            acc.add(j * n + i, -a);
            acc.add(i * n + j, -a);
        }
        let eps_i = self.coalgebra.epsilon().at(0, i).clone();
        if !eps_i.is_zero() {
            for (j, a) in &u {
                for (k, b) in &u {
                    acc.add(j * n + k, &(&eps_i * a) * b);
                }
            }
        }
        acc.into_sparse()
    }

    /// The filtration D_0 = span{u}, D_{t+1} = preimage of C (x) D_t under
    /// the reduced comultiplication. Returns the first t with D_t = C, or an
    /// unsupported-fragment error when the ladder stalls strictly below the
    /// whole space (the coalgebra is not conilpotent at this coaugmentation).
    pub fn conilpotency_index(&self) -> Result<usize, Error> {
        let n = self.dim();
        let field = self.field();
        let mut current = Subspace::span(field, n, vec![self.unit.clone()])?;
        let mut t = 0usize;
        loop {
            if current.dim() == n {
                return Ok(t);
            }
            let ann = current.annihilator();
            let rows_a = ann.rows();
            let mut cond = Matrix::zeros(field, n * rows_a, n);
            for i in 0..n {
                let mut col = Accum::new();
                for (jk, v) in self.reduced_delta_col(i) {
                    let (j, k) = (jk / n, jk % n);
                    for (r, a) in ann.sparse_col(k) {
                        col.add(j * rows_a + r, &v * &a);
                    }
                }
                cond.set_sparse_col(i, &col.into_sparse());
            }
            let next = cond.kernel();
            debug_assert!(next.contains_subspace(&current), "ladder must be increasing");
            if next.dim() == current.dim() {
                return Err(Error::Unsupported(format!(
                    "not conilpotent: the filtration stalls at dimension {} of {n}",
                    current.dim()
                )));
            }
            current = next;
            t += 1;
        }
    }
}

/// The couniversal property of the truncated cofree coalgebra: a linear map
/// phi : C -> V vanishing on the coaugmentation lifts to the unique
/// coaugmentation-preserving coalgebra map f : C -> T(V) with p . f = phi,
/// provided C's conilpotency index fits under the truncation degree. The
/// blocks of f are eps, phi, (phi (x) phi) . Delta-bar, and so on.
pub fn lift_to_cofree(
    dom: &Coaugmented,
    phi: &Matrix,
    degree: usize,
) -> Result<(TruncatedCofree, Morphism), Error> {
    let n = dom.dim();
    let field = dom.field();
    if phi.field() != field {
        return Err(Error::FieldMismatch { left: field, right: phi.field() });
    }
    if phi.cols() != n {
        return Err(Error::Malformed(format!(
            "phi must have {n} columns, found {}",
            phi.cols()
        )));
    }
    let phi_of_unit = phi.apply_sparse(&dom.unit_sparse());
    if !phi_of_unit.is_empty() {
        return Err(Error::Precondition(
            "phi must vanish on the coaugmentation vector".into(),
        ));
    }
    let index = dom.conilpotency_index()?;
    if index > degree {
        return Err(Error::Unsupported(format!(
            "conilpotency index {index} exceeds the truncation degree {degree}; the lift \
             does not fit in the truncated carrier"
        )));
    }
    let cofree = truncated_cofree(field, phi.rows(), degree)?;

    // Stack the blocks: row block for length l is phi^{(x) l} composed with
    // the (l-1)-fold reduced comultiplication.
    let mut f = Matrix::zeros(field, cofree.dim(), n);
    for i in 0..n {
        let e = dom.coalgebra().epsilon().at(0, i).clone();
        if !e.is_zero() {
            f.set(0, i, e);
        }
    }
    if degree >= 1 {
        let mut block = phi.clone();
        let mut len = 1usize;
        loop {
            for i in 0..n {
                for (r, v) in block.sparse_col(i) {
                    f.set(cofree.offsets[len] + r, i, v);
                }
            }
            if len == degree || block.is_zero() {
                break;
            }
            // next block = (phi (x) block) . Delta-bar
            let mut next = Matrix::zeros(field, phi.rows() * block.rows(), n);
            for i in 0..n {
                let db = dom.reduced_delta_col(i);
                next.set_sparse_col(i, &kron_apply2(phi, &block, &db));
            }
            block = next;
            len += 1;
        }
    }

    let dom_obj = Object::Coalgebra(dom.coalgebra().clone());
    let cod_obj = Object::Coalgebra(cofree.coalgebra().clone());
    let f = Morphism::linear("lift", dom_obj, cod_obj, f)?;
    let f = f.certified(Level::Coalgebra).map_err(|e| {
        Error::Inconsistency(format!(
            "cofree lift of a conilpotent domain failed coalgebra certification: {e}"
        ))
    })?;
    if cofree.projection().mul(f.matrix()) != *phi {
        return Err(Error::Inconsistency(
            "cofree lift does not project back onto phi".into(),
        ));
    }
    Ok((cofree, f))
}

/// Product of two conilpotent coaugmented coalgebras inside the truncated
/// cofree coalgebra on ker(eps_C) (+) ker(eps_D): the largest subcoalgebra
/// on which both composite projections q_i are coalgebra maps. Mediation is
/// by couniversal lift followed by factoring through the carrier. The
/// construction is degree-truncated: cones from domains whose conilpotency
/// index exceeds `degree` are out of budget and reported as unsupported.
#[derive(Debug, Clone)]
pub struct ConilpotentProduct {
    pub cofree: TruncatedCofree,
    pub sub: Subcoalgebra,
    pub object: Object,
    pub coaugmented: Coaugmented,
    pub projections: [Morphism; 2],
    factors: [Coaugmented; 2],
    right_block: usize,
}

impl ConilpotentProduct {
    pub fn dim(&self) -> usize {
        self.sub.dim()
    }

    pub fn degree(&self) -> usize {
        self.cofree.degree()
    }

    /// Factors a commuting pair of coalgebra maps g_i : D -> C_i through the
    /// product. D must be coaugmented, conilpotent within the degree budget,
    /// and the g_i must preserve the coaugmentations.
    pub fn mediate(
        &self,
        dom: &Coaugmented,
        g1: &Morphism,
        g2: &Morphism,
    ) -> Result<Morphism, Error> {
        for (g, factor) in [(g1, &self.factors[0]), (g2, &self.factors[1])] {
            if !g.dom().coalgebra().same_structure(dom.coalgebra()) {
                return Err(Error::Precondition(format!(
                    "cone leg {} does not start at the mediation domain",
                    g.name()
                )));
            }
            if !g.cod().coalgebra().same_structure(factor.coalgebra()) {
                return Err(Error::Precondition(format!(
                    "cone leg {} does not land in its product factor",
                    g.name()
                )));
            }
            if !g.certificate().covers(Level::Coalgebra) {
                return Err(Error::Precondition(format!(
                    "cone leg {} is not a certified coalgebra map",
                    g.name()
                )));
            }
            let image_of_unit = g.matrix().apply_sparse(&dom.unit_sparse());
            if !sparse_sub(&image_of_unit, &factor.unit_sparse()).is_empty() {
                return Err(Error::Precondition(format!(
                    "cone leg {} does not preserve the coaugmentation",
                    g.name()
                )));
            }
        }
        let field = dom.field();
        let v_dim = self.cofree.v_dim();
        let mut phi = Matrix::zeros(field, v_dim, dom.dim());
        let pi1 = reduced_projection(&self.factors[0]);
        let pi2 = reduced_projection(&self.factors[1]);
        let top = pi1.mul(g1.matrix());
        let bottom = pi2.mul(g2.matrix());
        for c in 0..dom.dim() {
            for (r, v) in top.sparse_col(c) {
                phi.set(r, c, v);
            }
            for (r, v) in bottom.sparse_col(c) {
                phi.set(self.right_block + r, c, v);
            }
        }
        let (cofree, f) = lift_to_cofree(dom, &phi, self.degree())?;
        debug_assert!(cofree.coalgebra().same_structure(self.cofree.coalgebra()));

        let carrier = self.sub.carrier();
        let mut u = Matrix::zeros(field, carrier.dim(), dom.dim());
        for j in 0..dom.dim() {
            let Some(coords) = carrier.coords(&f.matrix().col(j)) else {
                return Err(Error::Inconsistency(format!(
                    "couniversal lift leaves the product carrier at domain basis vector {j}"
                )));
            };
            for (r, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    u.set(r, j, c.clone());
                }
            }
        }
        let u = Morphism::linear(
            "mediator",
            Object::Coalgebra(dom.coalgebra().clone()),
            self.object.clone(),
            u,
        )?;
        let u = u.certified(Level::Coalgebra).map_err(|e| {
            Error::Inconsistency(format!(
                "conilpotent product mediator failed coalgebra certification: {e}"
            ))
        })?;
        for (t, g) in [(0, g1), (1, g2)] {
            if self.projections[t].matrix().mul(u.matrix()) != *g.matrix() {
                return Err(Error::Inconsistency(format!(
                    "conilpotent product mediator does not reproduce cone leg {}",
                    g.name()
                )));
            }
        }
        Ok(u)
    }
}

/// Coordinates of x - eps(x) u in a fixed basis of ker(eps): the projection
/// onto the reduced part.
fn reduced_projection(c: &Coaugmented) -> Matrix {
    let n = c.dim();
    let field = c.field();
    let reduced = c.coalgebra().epsilon().kernel();
    let mut out = Matrix::zeros(field, reduced.dim(), n);
    for i in 0..n {
        let mut x: Vec<Scalar> = vec![field.zero(); n];
        x[i] = field.one();
        let eps_i = c.coalgebra().epsilon().at(0, i);
        for (j, v) in x.iter_mut().enumerate() {
            *v = &*v - &(eps_i * &c.unit[j]);
        }
        let coords = reduced
            .coords(&x)
            .expect("x - eps(x) u lies in ker(eps) by construction");
        for (r, v) in coords.iter().enumerate() {
            if !v.is_zero() {
                out.set(r, i, v.clone());
            }
        }
    }
    out
}

/// The inclusion ker(eps) -> C as a matrix (columns are the basis of the
/// reduced part).
fn reduced_inclusion(c: &Coaugmented) -> Matrix {
    c.coalgebra().epsilon().kernel().basis().transpose()
}

pub fn product_conilpotent(
    c: &Coaugmented,
    d: &Coaugmented,
    degree: usize,
) -> Result<ConilpotentProduct, Error> {
    let field = c.field();
    if d.field() != field {
        return Err(Error::FieldMismatch { left: field, right: d.field() });
    }
    for factor in [c, d] {
        factor.conilpotency_index()?;
    }
    let kc = c.dim() - 1;
    let kd = d.dim() - 1;
    let cofree = truncated_cofree(field, kc + kd, degree)?;
    let dim_t = cofree.dim();

    // q_C = incl . block . p + u eps, and symmetrically for D.
    let q = |factor: &Coaugmented, block_offset: usize, block_dim: usize| -> Matrix {
        let incl = reduced_inclusion(factor);
        let n_f = factor.dim();
        let mut out = Matrix::zeros(field, n_f, dim_t);
        for col in 0..dim_t {
            let mut acc = Accum::new();
            for (r, v) in cofree.projection().sparse_col(col) {
                if r >= block_offset && r < block_offset + block_dim {
                    for (s, w) in incl.sparse_col(r - block_offset) {
                        acc.add(s, &v * &w);
                    }
                }
            }
            let eps_t = cofree.coalgebra().epsilon().at(0, col);
            if !eps_t.is_zero() {
                for (s, w) in factor.unit_sparse() {
                    acc.add(s, eps_t * &w);
                }
            }
            out.set_sparse_col(col, &acc.into_sparse());
        }
        out
    };
    let q1 = q(c, 0, kc);
    let q2 = q(d, kc, kd);

    // W = the locus where both q_i behave like coalgebra maps; the counit
    // half holds identically because q_i lands in u + ker(eps), so only the
    // comultiplication half contributes conditions.
    let rows = c.dim() * c.dim() + d.dim() * d.dim();
    let mut cond = Matrix::zeros(field, rows, dim_t);
    for col in 0..dim_t {
        let split = cofree.coalgebra().delta_col(col);
        let mut acc = Accum::new();
        for (factor, qm, offset) in [(c, &q1, 0usize), (d, &q2, c.dim() * c.dim())] {
            let through = factor.coalgebra().delta_of(&qm.sparse_col(col));
            let pairwise = kron_apply2(qm, qm, &split);
            for (idx, v) in sparse_sub(&through, &pairwise) {
                acc.add(offset + idx, v);
            }
        }
        cond.set_sparse_col(col, &acc.into_sparse());
    }
    let w = cond.kernel();
    let sub = largest_subcoalgebra(cofree.coalgebra(), &w)?;
    let object = Object::Coalgebra(sub.restricted().clone());

    let carrier = sub.carrier();
    let incl_matrix = carrier.basis().transpose();
    let projections: Vec<Morphism> = [(0usize, c, &q1), (1usize, d, &q2)]
        .into_iter()
        .map(|(t, factor, qm)| {
            let m = qm.mul(&incl_matrix);
            let p = Morphism::linear(
                format!("q{}", t + 1),
                object.clone(),
                Object::Coalgebra(factor.coalgebra().clone()),
                m,
            )?;
            p.certified(Level::Coalgebra).map_err(|e| {
                Error::Inconsistency(format!(
                    "conilpotent product projection q{} failed certification on the carrier: {e}",
                    t + 1
                ))
            })
        })
        .collect::<Result<_, _>>()?;

    let mut empty = vec![field.zero(); dim_t];
    empty[0] = field.one();
    let Some(unit_coords) = carrier.coords(&empty) else {
        return Err(Error::Inconsistency(
            "the group-like empty word is missing from the conilpotent product carrier".into(),
        ));
    };
    let coaugmented = Coaugmented::new(sub.restricted().clone(), unit_coords).map_err(|e| {
        Error::Inconsistency(format!(
            "restricted empty word stopped being a valid coaugmentation: {e}"
        ))
    })?;

    let projections: [Morphism; 2] = projections.try_into().expect("two projections");
    Ok(ConilpotentProduct {
        cofree,
        sub,
        object,
        coaugmented,
        projections,
        factors: [c.clone(), d.clone()],
        right_block: kc,
    })
}
