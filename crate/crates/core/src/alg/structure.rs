//! Finite-dimensional algebras given by structure constants.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{internal, usage, Result};
use crate::exact::{Echelon, Field, Matrix, Poly, Scalar};
use crate::grp::PermGroup;

/// A coordinate vector with respect to an algebra basis.
pub type Vector = Vec<Scalar>;

/// A finite group acting on an algebra by matrices.
///
/// Column `j` of a matrix is the image of basis vector `j`; generator `k`
/// of the group acts by `generators[k]`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    pub group: PermGroup,
    pub generators: Vec<Matrix>,
}

impl GroupAction {
    /// The matrix of every group element, indexed like the group's elements.
    pub fn element_matrices(&self, field: &Field, dim: usize) -> Vec<Matrix> {
        let g = &self.group;
        let mut mats: Vec<Matrix> = Vec::with_capacity(g.order());
        mats.push(Matrix::identity(field, dim));
        for i in 1..g.order() {
            let (k, j) = g.word_step(i).expect("non-identity has a word");
            mats.push(self.generators[k].mul(&mats[j]));
        }
        mats
    }
}

/// A finite-dimensional unital algebra over a field.
///
/// Products of basis vectors are stored sparsely; `products[i * dim + j]`
/// lists the nonzero coordinates of `b_i b_j`.
#[derive(Clone, Debug)]
pub struct StructureAlgebra {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    unit: Vector,
    products: Vec<Vec<(usize, Scalar)>>,
    grading: Option<Vec<u8>>,
    action: Option<GroupAction>,
}

/// One failed axiom, with the basis indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Violations are capped so a badly broken table still yields a short report.
const MAX_VIOLATIONS: usize = 32;

fn default_labels(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("b{i}")).collect()
}

impl StructureAlgebra {
    /// Build from sparse `(i, j, k, c)` entries meaning `b_i b_j` has `c` at `b_k`.
    /// Repeated entries are summed.
    pub fn from_entries(
        field: &Field,
        labels: Vec<String>,
        unit: Vector,
        entries: &[(usize, usize, usize, Scalar)],
    ) -> Result<StructureAlgebra> {
        let dim = labels.len();
        if unit.len() != dim {
            return Err(usage!(
                "unit has {} coordinates, expected {dim}",
                unit.len()
            ));
        }
        let mut dense = vec![vec![field.zero(); dim]; dim * dim];
        for (i, j, k, c) in entries {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(usage!(
                    "structure entry ({i},{j},{k}) outside dimension {dim}"
                ));
            }
            let slot = &mut dense[i * dim + j][*k];
            *slot = field.add(slot, c);
        }
        Ok(Self::from_dense(field, labels, unit, dense))
    }

    fn from_dense(
        field: &Field,
        labels: Vec<String>,
        unit: Vector,
        dense: Vec<Vector>,
    ) -> StructureAlgebra {
        let products = dense
            .into_iter()
            .map(|v| {
                v.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !field.is_zero(c))
                    .collect()
            })
            .collect();
        StructureAlgebra {
            field: field.clone(),
            dim: labels.len(),
            labels,
            unit,
            products,
            grading: None,
            action: None,
        }
    }

    /// Build from a function giving `b_i b_j` as a dense vector.
    pub fn from_fn(
        field: &Field,
        dim: usize,
        unit: Vector,
        f: impl Fn(usize, usize) -> Vector,
    ) -> StructureAlgebra {
        let dense = (0..dim * dim).map(|ij| f(ij / dim, ij % dim)).collect();
        Self::from_dense(field, default_labels(dim), unit, dense)
    }

    /// The zero algebra.
    pub fn zero(field: &Field) -> StructureAlgebra {
        Self::from_dense(field, Vec::new(), Vec::new(), Vec::new())
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: &Field) -> StructureAlgebra {
        Self::split(field, 1)
    }

    /// `k^n` with its basis of orthogonal idempotents.
    pub fn split(field: &Field, n: usize) -> StructureAlgebra {
        let unit = vec![field.one(); n];
        let mut a = Self::from_fn(field, n, unit, |i, j| {
            let mut v = vec![field.zero(); n];
            if i == j {
                v[i] = field.one();
            }
            v
        });
        a.labels = (0..n).map(|i| format!("e{i}")).collect();
        a
    }

    /// `k[x]/(f)` with basis `1, x, ..., x^(d-1)`.
    pub fn from_polynomial(f: &Poly) -> Result<StructureAlgebra> {
        let field = f.field().clone();
        let d = f
            .degree()
            .ok_or_else(|| usage!("quotient by the zero polynomial is infinite-dimensional"))?;
        let f = f.monic();
        let mut unit = vec![field.zero(); d];
        if d > 0 {
            unit[0] = field.one();
        }
        let mut a = Self::from_fn(&field, d, unit, |i, j| {
            let mut mono = vec![field.zero(); i + j + 1];
            mono[i + j] = field.one();
            let r = Poly::new(&field, mono).rem(&f);
            (0..d).map(|k| r.coeff(k)).collect()
        });
        a.labels = (0..d)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        Ok(a)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<StructureAlgebra> {
        if labels.len() != self.dim {
            return Err(usage!("{} labels for dimension {}", labels.len(), self.dim));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn with_grading(mut self, grading: Vec<u8>) -> Result<StructureAlgebra> {
        if grading.len() != self.dim || grading.iter().any(|&g| g > 1) {
            return Err(usage!(
                "grading must list 0 or 1 for each of the {} basis vectors",
                self.dim
            ));
        }
        self.grading = Some(grading);
        Ok(self)
    }

    pub fn with_action(mut self, action: GroupAction) -> Result<StructureAlgebra> {
        if action.generators.len() != action.group.generators().len() {
            return Err(usage!(
                "{} action matrices for {} group generators",
                action.generators.len(),
                action.group.generators().len()
            ));
        }
        for m in &action.generators {
            if m.rows() != self.dim || m.cols() != self.dim || m.field() != &self.field {
                return Err(usage!("action matrix has the wrong shape or field"));
            }
        }
        self.action = Some(action);
        Ok(self)
    }

    pub fn without_action(mut self) -> StructureAlgebra {
        self.action = None;
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn unit(&self) -> &Vector {
        &self.unit
    }
    pub fn grading(&self) -> Option<&[u8]> {
        self.grading.as_deref()
    }
    pub fn action(&self) -> Option<&GroupAction> {
        self.action.as_ref()
    }
    pub fn is_zero_algebra(&self) -> bool {
        self.dim == 0
    }

    /// Parity of basis vector `i` (0 when ungraded).
    pub fn parity(&self, i: usize) -> u8 {
        self.grading.as_ref().map_or(0, |g| g[i])
    }

    pub fn is_graded(&self) -> bool {
        self.grading.is_some()
    }

    /// Sparse coordinates of `b_i b_j`.
    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim + j]
    }

    /// All nonzero structure constants as `(i, j, k, c)`.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.product_terms(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn zero_vec(&self) -> Vector {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis(&self, i: usize) -> Vector {
        let mut v = self.zero_vec();
        v[i] = self.field.one();
        v
    }

    pub fn is_zero(&self, x: &[Scalar]) -> bool {
        x.iter().all(|c| self.field.is_zero(c))
    }

    pub fn add(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        x.iter().zip(y).map(|(a, b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        x.iter().zip(y).map(|(a, b)| self.field.sub(a, b)).collect()
    }

    pub fn scale(&self, c: &Scalar, x: &[Scalar]) -> Vector {
        x.iter().map(|a| self.field.mul(c, a)).collect()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let f = &self.field;
        let mut out = self.zero_vec();
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let ab = f.mul(a, b);
                for (k, c) in self.product_terms(i, j) {
                    f.mul_add_assign(&mut out[*k], &ab, c);
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[Scalar], e: &BigUint) -> Vector {
        let mut result = self.unit.clone();
        let mut base = x.to_vec();
        for bit in 0..e.bits() {
            if e.bit(bit) {
                result = self.mul(&result, &base);
            }
            if bit + 1 < e.bits() {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Evaluate a polynomial at `x`, reading the constant term as a multiple of `one`.
    pub fn eval_poly(&self, p: &Poly, x: &[Scalar], one: &[Scalar]) -> Vector {
        let mut acc = self.zero_vec();
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            acc = self.add(&acc, &self.scale(c, one));
        }
        acc
    }

    /// Matrix of `y -> x y`.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(x, &self.basis(j))).collect();
        Matrix::from_columns(&self.field, self.dim, &cols)
    }

    /// Trace of multiplication by `x`.
    pub fn trace(&self, x: &[Scalar]) -> Scalar {
        let f = &self.field;
        let mut t = f.zero();
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.product_terms(i, j) {
                    if *k == j {
                        f.mul_add_assign(&mut t, a, c);
                    }
                }
            }
        }
        t
    }

    /// Gram matrix of `(x, y) -> Tr(L_{xy})` on the basis.
    pub fn trace_form(&self) -> Matrix {
        let f = &self.field;
        let basis_traces: Vec<Scalar> = (0..self.dim).map(|k| self.trace(&self.basis(k))).collect();
        let mut m = Matrix::zeros(f, self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut t = f.zero();
                for (k, c) in self.product_terms(i, j) {
                    f.mul_add_assign(&mut t, c, &basis_traces[*k]);
                }
                m.set(i, j, t);
            }
        }
        m
    }

    /// Koszul sign `(-1)^{|i||j|}` as a scalar.
    fn koszul(&self, i: usize, j: usize) -> Scalar {
        if self.parity(i) * self.parity(j) == 1 {
            self.field.from_i64(-1)
        } else {
            self.field.one()
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i..self.dim).all(|j| self.commutes(i, j)))
    }

    /// `b_i b_j = ± b_j b_i`, with the Koszul sign when graded.
    fn commutes(&self, i: usize, j: usize) -> bool {
        let sign = self.koszul(i, j);
        let lhs = self.mul(&self.basis(i), &self.basis(j));
        let rhs = self.scale(&sign, &self.mul(&self.basis(j), &self.basis(i)));
        lhs == rhs
    }

    /// Check every structural axiom and list the failures.
    pub fn validate(&self) -> ValidationReport {
        let mut v: Vec<Violation> = Vec::new();
        let mut push = |axiom: &str, indices: Vec<usize>| {
            if v.len() < MAX_VIOLATIONS {
                v.push(Violation {
                    axiom: axiom.to_string(),
                    indices,
                });
            }
        };
        let n = self.dim;
        for i in 0..n {
            let b = self.basis(i);
            if self.mul(&self.unit, &b) != b {
                push("left_unit", vec![i]);
            }
            if self.mul(&b, &self.unit) != b {
                push("right_unit", vec![i]);
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&self.basis(i), &self.basis(j));
                for k in 0..n {
                    let lhs = self.mul(&ij, &self.basis(k));
                    let jk = self.mul(&self.basis(j), &self.basis(k));
                    if lhs != self.mul(&self.basis(i), &jk) {
                        push("associativity", vec![i, j, k]);
                    }
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                if !self.commutes(i, j) {
                    push(
                        if self.is_graded() {
                            "graded_commutativity"
                        } else {
                            "commutativity"
                        },
                        vec![i, j],
                    );
                }
            }
        }
        if let Some(g) = &self.grading {
            for i in 0..n {
                for j in 0..n {
                    let want = (g[i] + g[j]) % 2;
                    if self.product_terms(i, j).iter().any(|(k, _)| g[*k] != want) {
                        push("grading", vec![i, j]);
                    }
                }
            }
            if self
                .unit
                .iter()
                .enumerate()
                .any(|(k, c)| !self.field.is_zero(c) && g[k] != 0)
            {
                push("grading_unit", vec![]);
            }
        }
        if let Some(action) = &self.action {
            for (gi, m) in action.generators.iter().enumerate() {
                if m.apply(&self.unit) != self.unit {
                    push("action_unit", vec![gi]);
                }
                let images: Vec<Vector> = (0..n).map(|i| m.column(i)).collect();
                for i in 0..n {
                    for j in 0..n {
                        let lhs = m.apply(&self.mul(&self.basis(i), &self.basis(j)));
                        if lhs != self.mul(&images[i], &images[j]) {
                            push("action_multiplicative", vec![gi, i, j]);
                        }
                    }
                }
                if let Some(g) = &self.grading {
                    for (j, col) in images.iter().enumerate() {
                        if col
                            .iter()
                            .enumerate()
                            .any(|(k, c)| !self.field.is_zero(c) && g[k] != g[j])
                        {
                            push("action_grading", vec![gi, j]);
                        }
                    }
                }
            }
            // the BFS words define a matrix per element; multiplying by each
            // generator must land on the matrix of the product element
            let group = &action.group;
            let mats = action.element_matrices(&self.field, n);
            'relations: for k in 0..group.generators().len() {
                let gk = group.generator_index(k);
                for j in 0..group.order() {
                    if action.generators[k].mul(&mats[j]) != mats[group.mul(gk, j)] {
                        push("action_relations", vec![k, j]);
                        break 'relations;
                    }
                }
            }
        }
        ValidationReport {
            valid: v.is_empty(),
            violations: v,
        }
    }

    /// Usage error unless the algebra validates.
    pub fn ensure_valid(&self) -> Result<()> {
        let r = self.validate();
        match r.violations.first() {
            None => Ok(()),
            Some(first) => Err(usage!(
                "invalid algebra: {} at {:?} ({} violations)",
                first.axiom,
                first.indices,
                r.violations.len()
            )),
        }
    }

    pub fn ensure_commutative(&self) -> Result<()> {
        if self.is_commutative() {
            Ok(())
        } else {
            Err(usage!("algebra is not (graded-)commutative"))
        }
    }

    fn ensure_same_field(&self, other: &StructureAlgebra) -> Result<()> {
        if self.field != other.field {
            return Err(usage!(
                "field mismatch: {} vs {}",
                self.field.name(),
                other.field.name()
            ));
        }
        Ok(())
    }

    /// `self ⊗ other` on the basis `b_i ⊗ c_j` (index `i * dim(other) + j`),
    /// with Koszul signs when graded and the diagonal action when both
    /// carry an action of the same group.
    pub fn tensor_product(&self, other: &StructureAlgebra) -> Result<StructureAlgebra> {
        self.ensure_same_field(other)?;
        let f = &self.field;
        let (m, n) = (self.dim, other.dim);
        let mut unit = Vec::with_capacity(m * n);
        for a in &self.unit {
            for b in &other.unit {
                unit.push(f.mul(a, b));
            }
        }
        let graded = self.is_graded() || other.is_graded();
        let mut entries = Vec::new();
        for i in 0..m {
            for j in 0..n {
                for k in 0..m {
                    for l in 0..n {
                        // (b_i ⊗ c_j)(b_k ⊗ c_l) = ± b_i b_k ⊗ c_j c_l
                        let sign = if other.parity(j) * self.parity(k) == 1 {
                            f.from_i64(-1)
                        } else {
                            f.one()
                        };
                        for (p, x) in self.product_terms(i, k) {
                            for (q, y) in other.product_terms(j, l) {
                                let c = f.mul(&sign, &f.mul(x, y));
                                entries.push((i * n + j, k * n + l, p * n + q, c));
                            }
                        }
                    }
                }
            }
        }
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("{a}⊗{b}")))
            .collect();
        let mut t = StructureAlgebra::from_entries(f, labels, unit, &entries)?;
        if graded {
            let g = (0..m * n)
                .map(|ij| (self.parity(ij / n.max(1)) + other.parity(ij % n.max(1))) % 2)
                .collect();
            t = t.with_grading(g)?;
        }
        if let (Some(a), Some(b)) = (&self.action, &other.action) {
            if a.group == b.group {
                let gens = a
                    .generators
                    .iter()
                    .zip(&b.generators)
                    .map(|(x, y)| x.kronecker(y))
                    .collect();
                t = t.with_action(GroupAction {
                    group: a.group.clone(),
                    generators: gens,
                })?;
            }
        }
        Ok(t)
    }

    /// `self × other` with block-diagonal structure constants.
    pub fn direct_product(&self, other: &StructureAlgebra) -> Result<StructureAlgebra> {
        self.ensure_same_field(other)?;
        let m = self.dim;
        let mut entries = Vec::new();
        for (i, j, k, c) in self.entries() {
            entries.push((i, j, k, c));
        }
        for (i, j, k, c) in other.entries() {
            entries.push((m + i, m + j, m + k, c));
        }
        let mut unit = self.unit.clone();
        unit.extend(other.unit.iter().cloned());
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("({l},0)")).collect();
        labels.extend(other.labels.iter().map(|l| format!("(0,{l})")));
        let mut p = StructureAlgebra::from_entries(&self.field, labels, unit, &entries)?;
        if self.is_graded() || other.is_graded() {
            let mut g: Vec<u8> = (0..m).map(|i| self.parity(i)).collect();
            g.extend((0..other.dim).map(|i| other.parity(i)));
            p = p.with_grading(g)?;
        }
        Ok(p)
    }

    /// Re-express the algebra in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<StructureAlgebra> {
        let inv = p
            .inverse()
            .ok_or_else(|| usage!("change of basis matrix is singular"))?;
        let cols: Vec<Vector> = (0..self.dim).map(|j| p.column(j)).collect();
        let unit = inv.apply(&self.unit);
        let mut a = StructureAlgebra::from_fn(&self.field, self.dim, unit, |i, j| {
            inv.apply(&self.mul(&cols[i], &cols[j]))
        });
        a.grading = self.grading.clone();
        if let Some(act) = &self.action {
            a.action = Some(GroupAction {
                group: act.group.clone(),
                generators: act.generators.iter().map(|m| inv.mul(m).mul(p)).collect(),
            });
        }
        Ok(a)
    }

    /// The subalgebra (or ideal viewed as a unital algebra) spanned by
    /// `vectors`, with the given unit. Basis: reduced echelon rows of the span.
    ///
    /// Returns the algebra and the inclusion matrix (columns are the new basis
    /// in old coordinates).
    pub fn span_algebra(
        &self,
        vectors: &[Vector],
        unit: &[Scalar],
    ) -> Result<(StructureAlgebra, Matrix, Echelon)> {
        let ech = Echelon::from_vectors(&self.field, self.dim, vectors);
        let rows = ech.rows().to_vec();
        let d = rows.len();
        let coords_of = |v: &[Scalar]| -> Result<Vector> {
            ech.coordinates(v)
                .ok_or_else(|| internal!("span is not closed under multiplication"))
        };
        let unit_c = coords_of(unit)?;
        let mut dense = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                dense.push(coords_of(&self.mul(&rows[i], &rows[j]))?);
            }
        }
        let mut sub = StructureAlgebra::from_dense(&self.field, default_labels(d), unit_c, dense);
        if let Some(g) = &self.grading {
            let parities: Option<Vec<u8>> = rows
                .iter()
                .map(|r| {
                    let mut ps = r
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !self.field.is_zero(c))
                        .map(|(k, _)| g[k]);
                    let first = ps.next().unwrap_or(0);
                    ps.all(|q| q == first).then_some(first)
                })
                .collect();
            if let Some(p) = parities {
                sub.grading = Some(p);
            }
        }
        let incl = Matrix::from_columns(&self.field, self.dim, &rows);
        Ok((sub, incl, ech))
    }

    /// `g A` for an idempotent `g`, as a unital algebra with unit `g`.
    pub fn corner(&self, g: &[Scalar]) -> Result<(StructureAlgebra, Matrix, Echelon)> {
        let vs: Vec<Vector> = (0..self.dim).map(|i| self.mul(g, &self.basis(i))).collect();
        self.span_algebra(&vs, g)
    }

    /// `A / I` for an ideal given by its echelon basis; the quotient basis is
    /// the images of the non-pivot basis vectors. Returns the projection matrix.
    pub fn quotient(&self, ideal: &Echelon) -> (StructureAlgebra, Matrix) {
        let free = ideal.free_columns();
        let project = |v: &[Scalar]| -> Vector {
            let r = ideal.reduce(v);
            free.iter().map(|&c| r[c].clone()).collect()
        };
        let d = free.len();
        let unit = project(&self.unit);
        let dense = (0..d * d)
            .map(|ij| project(&self.mul(&self.basis(free[ij / d]), &self.basis(free[ij % d]))))
            .collect();
        let q = StructureAlgebra::from_dense(&self.field, default_labels(d), unit, dense);
        let cols: Vec<Vector> = (0..self.dim).map(|i| project(&self.basis(i))).collect();
        (q, Matrix::from_columns(&self.field, d, &cols))
    }
}

/// Whether the matrix `m` (columns = images of source basis) is a unital
/// algebra homomorphism `src -> dst`.
pub fn is_algebra_map(src: &StructureAlgebra, dst: &StructureAlgebra, m: &Matrix) -> bool {
    if m.rows() != dst.dim() || m.cols() != src.dim() {
        return false;
    }
    if m.apply(src.unit()) != *dst.unit() {
        return false;
    }
    let images: Vec<Vector> = (0..src.dim()).map(|i| m.column(i)).collect();
    (0..src.dim()).all(|i| {
        (0..src.dim()).all(|j| {
            m.apply(&src.mul(&src.basis(i), &src.basis(j))) == dst.mul(&images[i], &images[j])
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn group_algebra_of_z2_is_valid() {
        // F2[Z/2] = F2[x]/(x^2 - 1)
        let a = StructureAlgebra::from_polynomial(&Poly::from_i64(&f2(), &[-1, 0, 1])).unwrap();
        assert!(a.validate().valid);
    }

    #[test]
    fn planted_associativity_defect_is_named() {
        let f = Field::prime(3).unwrap();
        let one = f.one();
        // basis 1, x, y with x*x = y and y*x = x but x*y = 0
        let entries = vec![
            (0, 0, 0, one.clone()),
            (0, 1, 1, one.clone()),
            (1, 0, 1, one.clone()),
            (0, 2, 2, one.clone()),
            (2, 0, 2, one.clone()),
            (1, 1, 2, one.clone()),
            (2, 1, 1, one.clone()),
        ];
        let bad = StructureAlgebra::from_entries(
            &f,
            default_labels(3),
            vec![one, f.zero(), f.zero()],
            &entries,
        )
        .unwrap();
        let r = bad.validate();
        assert!(!r.valid);
        assert!(r
            .violations
            .iter()
            .any(|v| v.axiom == "associativity" && v.indices == vec![1, 1, 1]));
    }

    #[test]
    fn products_and_tensors_have_expected_dimensions() {
        let f = Field::prime(5).unwrap();
        let t = StructureAlgebra::split(&f, 2)
            .tensor_product(&StructureAlgebra::split(&f, 3))
            .unwrap();
        assert_eq!(t.dim(), 6);
        assert!(t.validate().valid);
        let k = StructureAlgebra::ground(&f);
        let a = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[2, 0, 1])).unwrap();
        assert_eq!(k.tensor_product(&a).unwrap().entries(), a.entries());
        let p = a.direct_product(&StructureAlgebra::zero(&f)).unwrap();
        assert_eq!(p.entries(), a.entries());
        assert!(a
            .tensor_product(&StructureAlgebra::split(&f2(), 1))
            .is_err());
    }

    #[test]
    fn quotient_and_corner() {
        let f = Field::prime(3).unwrap();
        // F3[x]/(x^2) modulo (x) is F3
        let a = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[0, 0, 1])).unwrap();
        let ideal = Echelon::from_vectors(&f, 2, &[a.basis(1)]);
        let (q, proj) = a.quotient(&ideal);
        assert_eq!(q.dim(), 1);
        assert!(is_algebra_map(&a, &q, &proj));
        let s = StructureAlgebra::split(&f, 3);
        let (c, incl, _) = s.corner(&s.basis(1)).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(incl.column(0), s.basis(1));
    }
}
