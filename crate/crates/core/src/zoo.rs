//! A zoo of worked objects: finite group algebras, the four-dimensional
//! Sweedler algebra, the Taft family, comatrix coalgebras, duals of small
//! algebras, divided powers, and the morphisms that connect them. Everything
//! here goes through the validating constructors, so a slip in a structure
//! table surfaces as an axiom error at build time.

use std::sync::Arc;

use crate::coalg::{Coalgebra, Level, Morphism, Object};
use crate::cofree::Coaugmented;
use crate::error::Error;
use crate::linalg::{Accum, Field, Matrix, Scalar};
use crate::report::{Identity, Violation};
use crate::structures::{Bialgebra, HopfAlgebra};

/// Largest group order accepted by `GroupTable`; keeps the induced
/// bialgebra structure matrices (order x order^2) small.
pub const MAX_GROUP_ORDER: usize = 64;

/// Multiplication table of a finite group. Element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

impl GroupTable {
    pub fn new(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<GroupTable, Error> {
        let name = name.into();
        let n = table.len();
        if n == 0 {
            return Err(Error::Malformed(format!("group {name} has no elements")));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::Unsupported(format!(
                "group {name} has order {n}, beyond the supported {MAX_GROUP_ORDER}"
            )));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!(
                    "row {i} of group {name} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&e| e >= n) {
                return Err(Error::Malformed(format!(
                    "row {i} of group {name} mentions element {bad}, order is {n}"
                )));
            }
        }
        for i in 0..n {
            if table[0][i] != i || table[i][0] != i {
                return Err(Error::Precondition(format!(
                    "element 0 of group {name} is not a two-sided identity at element {i}"
                )));
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for i in 0..n {
            match (0..n).find(|&j| table[i][j] == 0 && table[j][i] == 0) {
                Some(j) => inverses[i] = j,
                None => {
                    return Err(Error::Precondition(format!(
                        "element {i} of group {name} has no two-sided inverse"
                    )))
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(Error::Precondition(format!(
                            "group {name} is not associative at ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(GroupTable { name, table, inverses })
    }

    pub fn cyclic(n: usize) -> GroupTable {
        assert!(n >= 1 && n <= MAX_GROUP_ORDER, "cyclic order out of range");
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        GroupTable::new(format!("Z{n}"), table).expect("cyclic tables are groups")
    }

    /// The symmetric group on three letters, elements ordered identity
    /// first, then the two 3-cycles, then the three transpositions.
    pub fn symmetric3() -> GroupTable {
        let perms: [[usize; 3]; 6] =
            [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];
        let index = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        // (p then q read right to left): (p . q)(x) = p[q[x]].
                        let comp = [p[q[0]], p[q[1]], p[q[2]]];
                        index(&comp)
                    })
                    .collect()
            })
            .collect();
        GroupTable::new("S3", table).expect("permutation composition is a group")
    }

    pub fn klein() -> GroupTable {
        GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2))
    }

    /// Componentwise product on pairs (a, b), indexed row-major as
    /// a * |H| + b.
    pub fn direct_product(g: &GroupTable, h: &GroupTable) -> GroupTable {
        let (n, m) = (g.order(), h.order());
        assert!(n * m <= MAX_GROUP_ORDER, "product group order out of range");
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        GroupTable::new(format!("{}x{}", g.name, h.name), table)
            .expect("direct products of groups are groups")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn pow(&self, i: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, i);
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (i..n).all(|j| self.table[i][j] == self.table[j][i]))
    }
}

/// Every group homomorphism dom -> cod, as full-length image vectors in
/// lexicographic order. Exhaustive over all |cod|^|dom| candidate maps, so
/// both orders are capped.
pub fn homs_between(dom: &GroupTable, cod: &GroupTable) -> Result<Vec<Vec<usize>>, Error> {
    let (n, m) = (dom.order(), cod.order());
    let total = (m as u64).checked_pow(n as u32).filter(|&t| t <= 6u64.pow(6));
    let Some(total) = total else {
        return Err(Error::Unsupported(format!(
            "enumerating {m}^{n} candidate maps is out of budget"
        )));
    };
    let mut homs = Vec::new();
    let mut images = vec![0usize; n];
    'outer: for code in 0..total {
        let mut rem = code;
        for img in images.iter_mut().rev() {
            *img = (rem % m as u64) as usize;
            rem /= m as u64;
        }
        for i in 0..n {
            for j in 0..n {
                if images[dom.mul(i, j)] != cod.mul(images[i], images[j]) {
                    continue 'outer;
                }
            }
        }
        homs.push(images.clone());
    }
    Ok(homs)
}

/// Group algebra kG: the basis is the group, every basis vector is
/// group-like, multiplication comes from the table, and the antipode is
/// linearized inversion.
#[derive(Debug, Clone)]
pub struct GroupAlgebra {
    pub hopf: Arc<HopfAlgebra>,
    table: GroupTable,
}

impl GroupAlgebra {
    pub fn coalgebra(&self) -> &Arc<Coalgebra> {
        self.hopf.coalgebra()
    }

    pub fn bialgebra(&self) -> &Arc<Bialgebra> {
        self.hopf.bialgebra()
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn object(&self) -> Object {
        Object::Hopf(self.hopf.clone())
    }

    pub fn dim(&self) -> usize {
        self.table.order()
    }

    pub fn field(&self) -> Field {
        self.coalgebra().field()
    }
}

pub fn group_algebra(table: GroupTable, field: Field) -> Result<GroupAlgebra, Error> {
    let n = table.order();
    let mut delta = Matrix::zeros(field, n * n, n);
    let mut eps = Matrix::zeros(field, 1, n);
    for i in 0..n {
        delta.set(i * n + i, i, field.one());
        eps.set(0, i, field.one());
    }
    let coalgebra = Coalgebra::new(format!("k{}", table.name()), n, delta, eps)?;

    let mut mult = Matrix::zeros(field, n, n * n);
    for i in 0..n {
        for j in 0..n {
            mult.set(table.mul(i, j), i * n + j, field.one());
        }
    }
    let mut unit = Matrix::zeros(field, n, 1);
    unit.set(table.identity(), 0, field.one());
    let bialgebra = Bialgebra::new(coalgebra, mult, unit)?;

    let mut antipode = Matrix::zeros(field, n, n);
    for i in 0..n {
        antipode.set(table.inv(i), i, field.one());
    }
    let hopf = HopfAlgebra::new(bialgebra, antipode)?;
    Ok(GroupAlgebra { hopf, table })
}

/// Linearized group inversion. Permuting group-likes is always a coalgebra
/// map; on abelian groups inversion is moreover a group homomorphism, so the
/// morphism is certified at Hopf level there.
pub fn inverse_morphism(ga: &GroupAlgebra) -> Morphism {
    let n = ga.dim();
    let field = ga.field();
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..n {
        m.set(ga.table.inv(i), i, field.one());
    }
    let obj = ga.object();
    let raw = Morphism::linear("inv", obj.clone(), obj, m).expect("square matrix over the field");
    let level = if ga.table.is_abelian() { Level::Hopf } else { Level::Coalgebra };
    raw.certified(level).expect("linearized inversion is a coalgebra map")
}

/// The Hopf algebra map induced by a group homomorphism, given element-wise:
/// images[i] is where group element i goes.
pub fn hom_morphism(
    dom: &GroupAlgebra,
    cod: &GroupAlgebra,
    images: &[usize],
) -> Result<Morphism, Error> {
    let (n, m) = (dom.dim(), cod.dim());
    if images.len() != n {
        return Err(Error::Malformed(format!(
            "expected {n} images, found {}",
            images.len()
        )));
    }
    if let Some(&bad) = images.iter().find(|&&e| e >= m) {
        return Err(Error::Malformed(format!(
            "image {bad} is out of range for a group of order {m}"
        )));
    }
    if dom.field() != cod.field() {
        return Err(Error::FieldMismatch { left: dom.field(), right: cod.field() });
    }
    for i in 0..n {
        for j in 0..n {
            if images[dom.table.mul(i, j)] != cod.table.mul(images[i], images[j]) {
                return Err(Error::Precondition(format!(
                    "images do not define a group homomorphism: fails at ({i}, {j})"
                )));
            }
        }
    }
    let field = dom.field();
    let mut mat = Matrix::zeros(field, m, n);
    for (i, &img) in images.iter().enumerate() {
        mat.set(img, i, field.one());
    }
    let name = format!(
        "hom({})",
        images.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    );
    let raw = Morphism::linear(name, dom.object(), cod.object(), mat)?;
    Ok(raw
        .certified(Level::Hopf)
        .expect("group homomorphisms induce Hopf algebra maps"))
}

/// The k-th power map g -> g^k, linearized. Valid exactly when it is a group
/// homomorphism (always on abelian groups).
pub fn power_map(ga: &GroupAlgebra, k: usize) -> Result<Morphism, Error> {
    let images: Vec<usize> = (0..ga.dim()).map(|i| ga.table.pow(i, k)).collect();
    Ok(hom_morphism(ga, ga, &images)?.rename(format!("pow{k}")))
}

fn validate_algebra(name: &str, n: usize, mult: &Matrix, unit: &Matrix) -> Result<(), Error> {
    let fail = |identity: Identity, basis_index: usize| Error::Axiom {
        object: name.to_string(),
        violation: Violation { identity, basis_index },
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut lhs = Accum::new();
                for (r, v) in mult.sparse_col(i * n + j) {
                    for (t, w) in mult.sparse_col(r * n + k) {
                        lhs.add(t, &v * &w);
                    }
                }
                let mut rhs = Accum::new();
                for (r, v) in mult.sparse_col(j * n + k) {
                    for (t, w) in mult.sparse_col(i * n + r) {
                        rhs.add(t, &v * &w);
                    }
                }
                if !crate::linalg::sparse_sub(&lhs.into_sparse(), &rhs.into_sparse()).is_empty() {
                    return Err(fail(Identity::MultAssociativity, (i * n + j) * n + k));
                }
            }
        }
    }
    for i in 0..n {
        let mut left = Accum::new();
        let mut right = Accum::new();
        for (u, s) in unit.sparse_col(0) {
            for (t, w) in mult.sparse_col(u * n + i) {
                left.add(t, &s * &w);
            }
            for (t, w) in mult.sparse_col(i * n + u) {
                right.add(t, &s * &w);
            }
        }
        let e = vec![(i, mult.field().one())];
        if !crate::linalg::sparse_sub(&left.into_sparse(), &e).is_empty() {
            return Err(fail(Identity::UnitLeft, i));
        }
        if !crate::linalg::sparse_sub(&right.into_sparse(), &e).is_empty() {
            return Err(fail(Identity::UnitRight, i));
        }
    }
    Ok(())
}

/// The coalgebra dual to a finite-dimensional associative unital algebra:
/// comultiplication transposes multiplication, the counit reads off the
/// unit. The algebra axioms are validated first, so a bad input is reported
/// in algebra terms.
pub fn dual_coalgebra(
    name: impl Into<String>,
    n: usize,
    mult: &Matrix,
    unit: &Matrix,
) -> Result<Arc<Coalgebra>, Error> {
    let name = name.into();
    if mult.rows() != n || mult.cols() != n * n || unit.rows() != n || unit.cols() != 1 {
        return Err(Error::Malformed(format!(
            "algebra structure for {name} must be {n}x{} and {n}x1, found {}x{} and {}x{}",
            n * n,
            mult.rows(),
            mult.cols(),
            unit.rows(),
            unit.cols()
        )));
    }
    validate_algebra(&name, n, mult, unit)?;
    let field = mult.field();
    let mut delta = Matrix::zeros(field, n * n, n);
    for k in 0..n {
        for ij in 0..n * n {
            let c = mult.at(k, ij);
            if !c.is_zero() {
                delta.set(ij, k, c.clone());
            }
        }
    }
    let mut eps = Matrix::zeros(field, 1, n);
    for (k, v) in unit.sparse_col(0) {
        eps.set(0, k, v);
    }
    Coalgebra::new(name, n, delta, eps)
}

/// The comatrix coalgebra: dual of the full matrix algebra. Basis e_{ij}
/// indexed i * n + j, Delta(e_{ij}) = sum_k e_{ik} (x) e_{kj}, counit is the
/// Kronecker delta.
pub fn matrix_comatrix(n: usize, field: Field) -> Result<Arc<Coalgebra>, Error> {
    if n == 0 {
        return Err(Error::Precondition("matrix size must be at least 1".into()));
    }
    if n > 8 {
        return Err(Error::Unsupported(format!(
            "comatrix coalgebra on {n}x{n} matrices has dimension {}, beyond the supported 64",
            n * n
        )));
    }
    let d = n * n;
    let mut mult = Matrix::zeros(field, d, d * d);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if j == k {
                        // e_{ij} e_{kl} = e_{il}
                        mult.set(i * n + l, (i * n + j) * d + (k * n + l), field.one());
                    }
                }
            }
        }
    }
    let mut unit = Matrix::zeros(field, d, 1);
    for i in 0..n {
        unit.set(i * n + i, 0, field.one());
    }
    dual_coalgebra(format!("Mc({n})"), d, &mult, &unit)
}

/// The four-dimensional Sweedler algebra on {1, g, x, gx} with g^2 = 1,
/// x^2 = 0, xg = -gx; x is (g, 1)-primitive and the antipode has order 4.
/// Needs -1 distinct from 1, so characteristic 2 is out.
pub fn sweedler_h4(field: Field) -> Result<Arc<HopfAlgebra>, Error> {
    if field == Field::Prime(2) {
        return Err(Error::Unsupported(
            "the Sweedler algebra degenerates in characteristic 2: xg = -gx needs -1 != 1"
                .into(),
        ));
    }
    let one = field.one();
    let minus = field.integer(-1);

    let mut delta = Matrix::zeros(field, 16, 4);
    delta.set(0, 0, one.clone()); // Delta(1) = 1 (x) 1
    delta.set(5, 1, one.clone()); // Delta(g) = g (x) g
    delta.set(8, 2, one.clone()); // Delta(x) = x (x) 1 + g (x) x
    delta.set(6, 2, one.clone());
    delta.set(13, 3, one.clone()); // Delta(gx) = gx (x) g + 1 (x) gx
    delta.set(3, 3, one.clone());
    let mut eps = Matrix::zeros(field, 1, 4);
    eps.set(0, 0, one.clone());
    eps.set(0, 1, one.clone());
    let coalgebra = Coalgebra::new("H4", 4, delta, eps)?;

    // Products in basis order 1, g, x, gx; zero entries are the nilpotent
    // corner x{x, gx} = gx{x, gx} = 0.
    let products: [[(usize, i64); 4]; 4] = [
        [(0, 1), (1, 1), (2, 1), (3, 1)],
        [(1, 1), (0, 1), (3, 1), (2, 1)],
        [(2, 1), (3, -1), (0, 0), (0, 0)],
        [(3, 1), (2, -1), (0, 0), (0, 0)],
    ];
    let mut mult = Matrix::zeros(field, 4, 16);
    for (i, row) in products.iter().enumerate() {
        for (j, &(target, coeff)) in row.iter().enumerate() {
            if coeff != 0 {
                mult.set(target, i * 4 + j, field.integer(coeff));
            }
        }
    }
    let mut unit = Matrix::zeros(field, 4, 1);
    unit.set(0, 0, one.clone());
    let bialgebra = Bialgebra::new(coalgebra, mult, unit)?;

    let mut antipode = Matrix::zeros(field, 4, 4);
    antipode.set(0, 0, one.clone()); // S(1) = 1
    antipode.set(1, 1, one); // S(g) = g
    antipode.set(3, 2, minus); // S(x) = -gx
    antipode.set(2, 3, field.one()); // S(gx) = x
    HopfAlgebra::new(bialgebra, antipode)
}

/// Smallest scalar of multiplicative order exactly n, if the field has one.
fn primitive_root_of_unity(field: Field, n: usize) -> Option<Scalar> {
    match field {
        Field::Rational => match n {
            1 => Some(field.one()),
            2 => Some(field.integer(-1)),
            _ => None,
        },
        Field::Prime(p) => {
            for c in 1..p as u64 {
                let mut acc = 1u64;
                let mut order = 0usize;
                for k in 1..=n {
                    acc = acc * c % p as u64;
                    if acc == 1 {
                        order = k;
                        break;
                    }
                }
                if order == n {
                    return Some(field.integer(c as i64));
                }
            }
            None
        }
    }
}

/// The Taft algebra of order n^2: g group-like of order n, x nilpotent of
/// order n with xg = q gx for a primitive n-th root of unity q, and
/// Delta(x) = x (x) 1 + g (x) x. Basis g^a x^b indexed a * n + b.
pub fn taft(n: usize, field: Field) -> Result<Arc<HopfAlgebra>, Error> {
    if n == 0 {
        return Err(Error::Precondition("taft order must be at least 1".into()));
    }
    if n > 8 {
        return Err(Error::Unsupported(format!(
            "taft algebra of order {n} has dimension {}, beyond the supported 64",
            n * n
        )));
    }
    let Some(q) = primitive_root_of_unity(field, n) else {
        return Err(Error::Unsupported(format!(
            "no primitive root of unity of order {n} in {field}"
        )));
    };
    let dim = n * n;
    let qpow = |k: usize| -> Scalar {
        let mut acc = field.one();
        for _ in 0..k {
            acc = &acc * &q;
        }
        acc
    };
    // Gaussian binomials at q via the q-Pascal recurrence
    // [b, j] = [b-1, j-1] + q^j [b-1, j].
    let mut gauss = vec![vec![field.zero(); n]; n];
    for b in 0..n {
        gauss[b][0] = field.one();
        for j in 1..=b {
            let upper = gauss[b - 1][j - 1].clone();
            let carry = if j <= b - 1 { &qpow(j) * &gauss[b - 1][j] } else { field.zero() };
            gauss[b][j] = &upper + &carry;
        }
    }

    let idx = |a: usize, b: usize| a * n + b;
    let mut delta = Matrix::zeros(field, dim * dim, dim);
    let mut eps = Matrix::zeros(field, 1, dim);
    for a in 0..n {
        for b in 0..n {
            // Delta(g^a x^b) = sum_j [b, j] g^{a+j} x^{b-j} (x) g^a x^j.
            let mut col = Accum::new();
            for j in 0..=b {
                let left = idx((a + j) % n, b - j);
                let right = idx(a, j);
                col.add(left * dim + right, gauss[b][j].clone());
            }
            delta.set_sparse_col(idx(a, b), &col.into_sparse());
            if b == 0 {
                eps.set(0, idx(a, 0), field.one());
            }
        }
    }
    let coalgebra = Coalgebra::new(format!("T{n}"), dim, delta, eps)?;

    let mut mult = Matrix::zeros(field, dim, dim * dim);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    // (g^a x^b)(g^c x^d) = q^{bc} g^{a+c} x^{b+d}.
                    if b + d < n {
                        mult.set(
                            idx((a + c) % n, b + d),
                            idx(a, b) * dim + idx(c, d),
                            qpow(b * c % n),
                        );
                    }
                }
            }
        }
    }
    let mut unit = Matrix::zeros(field, dim, 1);
    unit.set(0, 0, field.one());
    let bialgebra = Bialgebra::new(coalgebra, mult, unit)?;

    // S(g^a x^b) = (-1)^b q^{-b(b-1)/2 - ab} g^{-a-b} x^b: the antipode is
    // an anti-homomorphism, and commuting the x's past the inverted g's
    // costs one q per swap.
    let mut antipode = Matrix::zeros(field, dim, dim);
    for a in 0..n {
        for b in 0..n {
            let target = idx((2 * n - a - b) % n, b);
            let exp = ((b * b - b) / 2 + a * b) % n;
            let mut coeff = qpow((n - exp) % n);
            if b % 2 == 1 {
                coeff = &coeff * &field.integer(-1);
            }
            antipode.set(target, idx(a, b), coeff);
        }
    }
    HopfAlgebra::new(bialgebra, antipode)
}

/// Divided powers t_0 .. t_N with deconcatenation-style comultiplication
/// Delta(t_k) = sum t_i (x) t_{k-i}; coaugmented at the group-like t_0.
pub fn divided_powers(n: usize, field: Field) -> Result<Coaugmented, Error> {
    let dim = n + 1;
    if dim > crate::product::MAX_TENSOR_DIM {
        return Err(Error::Unsupported(format!(
            "divided powers of length {dim} exceed the {} budget",
            crate::product::MAX_TENSOR_DIM
        )));
    }
    let mut delta = Matrix::zeros(field, dim * dim, dim);
    let mut eps = Matrix::zeros(field, 1, dim);
    eps.set(0, 0, field.one());
    for k in 0..dim {
        for i in 0..=k {
            delta.set(i * dim + (k - i), k, field.one());
        }
    }
    let coalgebra = Coalgebra::new(format!("dp({n})"), dim, delta, eps)?;
    let mut unit = vec![field.zero(); dim];
    unit[0] = field.one();
    Coaugmented::new(coalgebra, unit)
}

/// The bialgebra of the two-element idempotent monoid {1, z} with z^2 = z.
/// Both basis vectors are group-like; z has no convolution inverse, so this
/// is a bialgebra that is not Hopf.
pub fn idempotent_monoid_bialgebra(field: Field) -> Result<Arc<Bialgebra>, Error> {
    let mut delta = Matrix::zeros(field, 4, 2);
    delta.set(0, 0, field.one());
    delta.set(3, 1, field.one());
    let mut eps = Matrix::zeros(field, 1, 2);
    eps.set(0, 0, field.one());
    eps.set(0, 1, field.one());
    let coalgebra = Coalgebra::new("kM2", 2, delta, eps)?;
    let mut mult = Matrix::zeros(field, 2, 4);
    mult.set(0, 0, field.one()); // 1 . 1 = 1
    mult.set(1, 1, field.one()); // 1 . z = z
    mult.set(1, 2, field.one()); // z . 1 = z
    mult.set(1, 3, field.one()); // z . z = z
    let mut unit = Matrix::zeros(field, 2, 1);
    unit.set(0, 0, field.one());
    Bialgebra::new(coalgebra, mult, unit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_group_tables_satisfy_the_group_laws() {
        // GroupTable::new validates; these must all construct.
        for table in [
            GroupTable::cyclic(1),
            GroupTable::cyclic(7),
            GroupTable::symmetric3(),
            GroupTable::klein(),
            GroupTable::direct_product(&GroupTable::cyclic(4), &GroupTable::cyclic(4)),
        ] {
            assert_eq!(table.mul(0, 0), 0);
            for i in 0..table.order() {
                assert_eq!(table.mul(i, table.inv(i)), 0);
            }
        }
        assert!(!GroupTable::symmetric3().is_abelian());
        assert!(GroupTable::klein().is_abelian());
    }

    #[test]
    fn broken_tables_are_rejected() {
        // A non-associative magma with two-sided identity and inverses:
        // impossible at order 2, so corrupt a Z3 entry instead.
        let mut rows: Vec<Vec<usize>> = (0..3).map(|i| (0..3).map(|j| (i + j) % 3).collect()).collect();
        rows[1][2] = 1; // 1 * 2 = 1 forces non-associativity or kills inverses
        assert!(GroupTable::new("bad", rows).is_err());
        let short = vec![vec![0, 1], vec![1]];
        assert!(matches!(GroupTable::new("short", short), Err(Error::Malformed(_))));
    }

    #[test]
    fn hom_enumeration_between_cyclic_groups_counts_gcd_many() {
        // |Hom(Zn, Zm)| = gcd(n, m).
        for (n, m, expect) in [(2, 4, 2), (4, 2, 2), (6, 4, 2), (3, 5, 1), (6, 6, 6)] {
            let homs = homs_between(&GroupTable::cyclic(n), &GroupTable::cyclic(m)).unwrap();
            assert_eq!(homs.len(), expect, "Hom(Z{n}, Z{m})");
        }
    }

    #[test]
    fn group_algebra_basis_is_group_like_and_cocommutative_iff_abelian() {
        let f = Field::Rational;
        let kz5 = group_algebra(GroupTable::cyclic(5), f).unwrap();
        assert!(kz5.coalgebra().is_cocommutative());
        // Group algebras of any group are cocommutative as coalgebras (the
        // basis is group-like); non-abelian-ness lives in the algebra side.
        let ks3 = group_algebra(GroupTable::symmetric3(), f).unwrap();
        assert!(ks3.coalgebra().is_cocommutative());
    }

    #[test]
    fn power_map_on_a_cyclic_group_needs_no_gcd_condition() {
        let kz6 = group_algebra(GroupTable::cyclic(6), Field::Rational).unwrap();
        for k in 0..7 {
            assert!(power_map(&kz6, k).is_ok(), "t -> t^{k} is a hom on an abelian group");
        }
    }

    #[test]
    fn non_homomorphic_images_are_rejected() {
        let kz4 = group_algebra(GroupTable::cyclic(4), Field::Rational).unwrap();
        let kz2 = group_algebra(GroupTable::cyclic(2), Field::Rational).unwrap();
        // g -> t on Z4 -> Z2 must send g^2 -> e; sending it to t fails.
        let err = hom_morphism(&kz4, &kz2, &[0, 1, 1, 0]).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn sweedler_antipode_has_order_four() {
        let h4 = sweedler_h4(Field::Rational).unwrap();
        let s = h4.antipode();
        let s2 = s.mul(s);
        let s4 = s2.mul(&s2);
        assert_ne!(s2, Matrix::identity(Field::Rational, 4));
        assert_eq!(s4, Matrix::identity(Field::Rational, 4));
    }

    #[test]
    fn sweedler_is_rejected_in_characteristic_two() {
        let err = sweedler_h4(Field::prime(2).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }

    #[test]
    fn sweedler_is_neither_commutative_nor_cocommutative() {
        let h4 = sweedler_h4(Field::Rational).unwrap();
        assert!(!h4.coalgebra().is_cocommutative());
        // xg = -gx: columns 2*4+1 and 1*4+2 of mult differ.
        let b = h4.bialgebra();
        assert_ne!(b.mult_col(2, 1), b.mult_col(1, 2));
    }

    #[test]
    fn taft_order_two_is_the_sweedler_algebra_up_to_basis_order() {
        // Taft order: 1, x, g, gx; Sweedler order: 1, g, x, gx. The basis
        // swap is an isomorphism of Hopf algebras, verified by certifying
        // the permutation at Hopf level.
        let t2 = taft(2, Field::Rational).unwrap();
        let h4 = sweedler_h4(Field::Rational).unwrap();
        let f = Field::Rational;
        let perm = Matrix::from_triplets(
            f,
            4,
            4,
            &[(0, 0, f.one()), (2, 1, f.one()), (1, 2, f.one()), (3, 3, f.one())],
        )
        .unwrap();
        let iso = Morphism::linear("swap-x-g", Object::Hopf(t2), Object::Hopf(h4), perm).unwrap();
        assert!(iso.certified(Level::Hopf).is_ok());
    }

    #[test]
    fn taft_orders_over_prime_fields_follow_the_roots_of_unity() {
        // F_7 has primitive roots of unity of orders dividing 6.
        for n in [1, 2, 3, 6] {
            assert!(taft(n, Field::prime(7).unwrap()).is_ok(), "T{n} over F_7");
        }
        for n in [4, 5] {
            assert!(matches!(
                taft(n, Field::prime(7).unwrap()),
                Err(Error::Unsupported(_))
            ));
        }
        assert!(matches!(taft(3, Field::Rational), Err(Error::Unsupported(_))));
    }

    #[test]
    fn divided_powers_comultiplication_is_a_convolution_of_indices() {
        let dp = divided_powers(3, Field::Rational).unwrap();
        let c = dp.coalgebra();
        assert_eq!(c.dim(), 4);
        assert!(c.is_cocommutative());
        let col = c.delta_col(2);
        assert_eq!(col.len(), 3); // t0 (x) t2 + t1 (x) t1 + t2 (x) t0
    }

    #[test]
    fn comatrix_counit_is_the_kronecker_delta() {
        let mc3 = matrix_comatrix(3, Field::Rational).unwrap();
        assert_eq!(mc3.dim(), 9);
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { Field::Rational.one() } else { Field::Rational.zero() };
                assert_eq!(*mc3.epsilon().at(0, i * 3 + j), expected);
            }
        }
        assert!(!mc3.is_cocommutative());
    }

    #[test]
    fn dual_with_a_wrong_unit_reports_the_unit_law() {
        // A valid commutative algebra k[x]/(x^2 - x - 1) but with the unit
        // vector pointing at x instead of e.
        let f = Field::Rational;
        let mut mult = Matrix::zeros(f, 2, 4);
        mult.set(0, 0, f.one()); // e e = e
        mult.set(1, 1, f.one()); // e x = x
        mult.set(1, 2, f.one()); // x e = x
        mult.set(1, 3, f.one()); // x x = e + x
        mult.set(0, 3, f.one());
        let mut bad_unit = Matrix::zeros(f, 2, 1);
        bad_unit.set(1, 0, f.one());
        let err = dual_coalgebra("dual", 2, &mult, &bad_unit).unwrap_err();
        match err {
            Error::Axiom { violation, .. } => {
                assert!(matches!(violation.identity, Identity::UnitLeft | Identity::UnitRight));
            }
            other => panic!("expected an axiom error, got {other:?}"),
        }
    }

    #[test]
    fn dual_of_a_non_associative_table_reports_associativity() {
        // Basis e, x, y with e the unit, x x = y, x y = e, y x = x: then
        // (x x) x = y x = x while x (x x) = x y = e.
        let f = Field::Rational;
        let mut mult = Matrix::zeros(f, 3, 9);
        for i in 0..3 {
            mult.set(i, i, f.one()); // e a = a
            mult.set(i, i * 3, f.one()); // a e = a
        }
        mult.set(2, 4, f.one()); // x x = y
        mult.set(0, 5, f.one()); // x y = e
        mult.set(1, 7, f.one()); // y x = x
        let mut unit = Matrix::zeros(f, 3, 1);
        unit.set(0, 0, f.one());
        let err = dual_coalgebra("dual", 3, &mult, &unit).unwrap_err();
        match err {
            Error::Axiom { violation, .. } => {
                assert_eq!(violation.identity, Identity::MultAssociativity);
                assert_eq!(violation.basis_index, (1 * 3 + 1) * 3 + 1);
            }
            other => panic!("expected an axiom error, got {other:?}"),
        }
    }

    #[test]
    fn idempotent_monoid_bialgebra_has_no_antipode_candidate() {
        // Any linear S with m(S (x) id)Delta = unit . eps sends z to an
        // element s with s z = 1, impossible since z is a left zero for the
        // span{z - 1} ideal; the antipode core construction elsewhere
        // quantifies this. Here: just check the bialgebra builds.
        let b = idempotent_monoid_bialgebra(Field::Rational).unwrap();
        assert_eq!(b.dim(), 2);
        assert!(b.coalgebra().is_cocommutative());
    }
}
