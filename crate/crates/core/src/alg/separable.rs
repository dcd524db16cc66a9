//! Separability idempotents and the trace-form test.

use crate::alg::structure::{StructureAlgebra, Vector};
use crate::error::{internal, usage, Result};
use crate::exact::{solve_linear, Matrix, Scalar};

/// The element `e ∈ A ⊗ A` (basis `b_i ⊗ b_j` at index `i * dim + j`) with
/// `μ(e) = 1` and `(b ⊗ 1) e = (1 ⊗ b) e` for all `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparabilityWitness {
    pub element: Vector,
}

impl SeparabilityWitness {
    /// The bimodule section `σ(x) = x · e = (x ⊗ 1) e`.
    pub fn section(&self, a: &StructureAlgebra, x: &[Scalar]) -> Result<Vector> {
        Ok(square_mul(a, &left_embed(a, x), &self.element))
    }
}

/// `x ⊗ 1` in `A ⊗ A`.
pub fn left_embed(a: &StructureAlgebra, x: &[Scalar]) -> Vector {
    pure_tensor(a, x, a.unit())
}

/// `1 ⊗ x` in `A ⊗ A`.
pub fn right_embed(a: &StructureAlgebra, x: &[Scalar]) -> Vector {
    pure_tensor(a, a.unit(), x)
}

pub fn pure_tensor(a: &StructureAlgebra, x: &[Scalar], y: &[Scalar]) -> Vector {
    let f = a.field();
    x.iter()
        .flat_map(|p| y.iter().map(move |q| f.mul(p, q)))
        .collect()
}

/// Product in `A ⊗ A` (Koszul signs when graded) without building its table.
pub fn square_mul(a: &StructureAlgebra, x: &[Scalar], y: &[Scalar]) -> Vector {
    if !a.is_graded() {
        return square_mul_ungraded(a, x, y);
    }
    let f = a.field();
    let n = a.dim();
    let mut out = vec![f.zero(); n * n];
    let nonzero = |v: &[Scalar]| -> Vec<(usize, Scalar)> {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(i, c)| (i, c.clone()))
            .collect()
    };
    let ys = nonzero(y);
    for (kl, xc) in nonzero(x) {
        let (k, l) = (kl / n, kl % n);
        for (kl2, yc) in &ys {
            let (k2, l2) = (kl2 / n, kl2 % n);
            let mut c = f.mul(&xc, yc);
            if a.parity(l) * a.parity(k2) == 1 {
                c = f.neg(&c);
            }
            for (p, u) in a.product_terms(k, k2) {
                let cu = f.mul(&c, u);
                for (q, v) in a.product_terms(l, l2) {
                    f.mul_add_assign(&mut out[p * n + q], &cu, v);
                }
            }
        }
    }
    out
}

/// The multiplication map `A ⊗ A -> A` as a matrix.
pub fn multiplication_matrix(a: &StructureAlgebra) -> Matrix {
    let n = a.dim();
    let cols: Vec<Vector> = (0..n * n)
        .map(|ij| a.mul(&a.basis(ij / n), &a.basis(ij % n)))
        .collect();
    Matrix::from_columns(a.field(), n, &cols)
}

/// Outcome of the separability linear system.
pub(crate) struct SystemSolution {
    pub element: Vector,
    /// Dimension of the affine solution space.
    pub freedom: usize,
}

/// Solve `μ(e) = unit_b`, `(left(b) - right(b)) e = 0` for `e` in `q`,
/// optionally restricted to the listed coordinates of `q`.
pub(crate) fn solve_separability_system(
    q: &StructureAlgebra,
    left: &[Vector],
    right: &[Vector],
    mu: &Matrix,
    unit_b: &[Scalar],
    columns: Option<&[usize]>,
) -> Result<Option<SystemSolution>> {
    let f = q.field();
    let all: Vec<usize> = (0..q.dim()).collect();
    let cols = columns.unwrap_or(&all);
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for (i, target) in unit_b.iter().enumerate() {
        rows.push(cols.iter().map(|&c| mu.get(i, c).clone()).collect());
        rhs.push(target.clone());
    }
    for (l, r) in left.iter().zip(right) {
        let d = q.sub(l, r);
        if q.is_zero(&d) {
            continue;
        }
        let m = q.left_mult_matrix(&d);
        for i in 0..q.dim() {
            let row: Vector = cols.iter().map(|&c| m.get(i, c).clone()).collect();
            if row.iter().any(|x| !f.is_zero(x)) {
                rows.push(row);
                rhs.push(f.zero());
            }
        }
    }
    let system = Matrix::from_rows(f, rows);
    let system = if system.rows() == 0 {
        Matrix::zeros(f, 0, cols.len())
    } else {
        system
    };
    let Some(sol) = solve_linear(&system, &rhs)? else {
        return Ok(None);
    };
    let mut element = q.zero_vec();
    for (v, &c) in sol.particular.iter().zip(cols) {
        element[c] = v.clone();
    }
    Ok(Some(SystemSolution {
        element,
        freedom: sol.kernel.len(),
    }))
}

/// With `Y` the `n × n` coefficient matrix of `y`, `(b_k ⊗ b_l) y` is
/// `L_k Y L_lᵀ`, so `x y = Σ_k L_k Y (Σ_l x_kl L_l)ᵀ`.
fn square_mul_ungraded(a: &StructureAlgebra, x: &[Scalar], y: &[Scalar]) -> Vector {
    let f = a.field();
    let n = a.dim();
    let mults: Vec<Matrix> = (0..n).map(|k| a.left_mult_matrix(&a.basis(k))).collect();
    let ym = Matrix::from_rows(f, y.chunks(n.max(1)).map(|r| r.to_vec()).collect());
    let mut acc = Matrix::zeros(f, n, n);
    for k in 0..n {
        let row = &x[k * n..(k + 1) * n];
        if row.iter().all(|c| f.is_zero(c)) {
            continue;
        }
        let mut mk = Matrix::zeros(f, n, n);
        for (l, c) in row.iter().enumerate() {
            if !f.is_zero(c) {
                mk = mk.add(&mults[l].scale(c));
            }
        }
        acc = acc.add(&mults[k].mul(&ym).mul(&mk.transpose()));
    }
    acc.to_rows().into_iter().flatten().collect()
}

/// The absolute system on `A ⊗ A`, where `b ⊗ 1` acts as `L_b ⊗ I` and
/// `1 ⊗ b` as `± I ⊗ L_b`, so the tensor table is never formed.
fn witness_system(
    a: &StructureAlgebra,
    columns: Option<&[usize]>,
) -> Result<Option<SystemSolution>> {
    let f = a.field();
    let n = a.dim();
    let all: Vec<usize> = (0..n * n).collect();
    let cols = columns.unwrap_or(&all);
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let mut mu = vec![vec![f.zero(); cols.len()]; n];
    for (ci, &kl) in cols.iter().enumerate() {
        for (p, c) in a.product_terms(kl / n, kl % n) {
            mu[*p][ci] = c.clone();
        }
    }
    for (row, target) in mu.into_iter().zip(a.unit()) {
        rows.push(row);
        rhs.push(target.clone());
    }
    for i in 0..n {
        let mut block = vec![vec![f.zero(); cols.len()]; n * n];
        for (ci, &kl) in cols.iter().enumerate() {
            let (k, l) = (kl / n, kl % n);
            for (p, c) in a.product_terms(i, k) {
                let slot = &mut block[p * n + l][ci];
                *slot = f.add(slot, c);
            }
            let odd = a.parity(i) * a.parity(k) == 1;
            for (q, c) in a.product_terms(i, l) {
                let slot = &mut block[k * n + q][ci];
                *slot = if odd { f.add(slot, c) } else { f.sub(slot, c) };
            }
        }
        for row in block {
            if row.iter().any(|x| !f.is_zero(x)) {
                rows.push(row);
                rhs.push(f.zero());
            }
        }
    }
    let system = Matrix::from_rows(f, rows);
    let Some(sol) = solve_linear(&system, &rhs)? else {
        return Ok(None);
    };
    let mut element = vec![f.zero(); n * n];
    for (v, &c) in sol.particular.iter().zip(cols) {
        element[c] = v.clone();
    }
    Ok(Some(SystemSolution {
        element,
        freedom: sol.kernel.len(),
    }))
}

fn check_unique_idempotent(a: &StructureAlgebra, sol: &SystemSolution) -> Result<()> {
    if sol.freedom != 0 {
        return Err(internal!(
            "separability idempotent of a commutative algebra is not unique ({}-dimensional solution space)",
            sol.freedom
        ));
    }
    if square_mul(a, &sol.element, &sol.element) != sol.element {
        return Err(internal!("separability idempotent is not idempotent"));
    }
    Ok(())
}

/// Solve for the separability idempotent of a commutative algebra.
///
/// `Ok(None)` means the algebra is not separable. When a solution exists it
/// is checked to be unique and idempotent.
pub fn separability_idempotent(a: &StructureAlgebra) -> Result<Option<SeparabilityWitness>> {
    if a.is_graded() {
        return Err(usage!("graded algebra: use the graded separability solver"));
    }
    a.ensure_commutative()?;
    let Some(sol) = witness_system(a, None)? else {
        return Ok(None);
    };
    check_unique_idempotent(a, &sol)?;
    Ok(Some(SeparabilityWitness {
        element: sol.element,
    }))
}

/// Dimension of the affine space of solutions, or `None` when unsolvable.
pub fn separability_solution_dimension(a: &StructureAlgebra) -> Result<Option<usize>> {
    Ok(witness_system(a, None)?.map(|s| s.freedom))
}

/// Nondegeneracy of `(x, y) -> Tr(L_{xy})`.
pub fn etale_via_trace_form(a: &StructureAlgebra) -> bool {
    let m = a.trace_form();
    !a.field().is_zero(&m.determinant())
}

/// Check `μ(e) = 1`, centrality and `e² = e` directly.
pub fn verify_witness(a: &StructureAlgebra, e: &[Scalar]) -> Result<bool> {
    if e.len() != a.dim() * a.dim() {
        return Ok(false);
    }
    let mu = multiplication_matrix(a);
    if mu.apply(e) != *a.unit() {
        return Ok(false);
    }
    for i in 0..a.dim() {
        let b = a.basis(i);
        if square_mul(a, &left_embed(a, &b), e) != square_mul(a, &right_embed(a, &b), e) {
            return Ok(false);
        }
    }
    Ok(square_mul(a, e, e) == e)
}

/// Combine witnesses of `a` and `b` into one for `a ⊗ b`.
///
/// The basis of `(a ⊗ b) ⊗ (a ⊗ b)` is indexed by `((i b_dim + k) (a_dim b_dim) + (j b_dim + l))`.
pub fn tensor_witness(
    a: &StructureAlgebra,
    ea: &[Scalar],
    b: &StructureAlgebra,
    eb: &[Scalar],
) -> Vector {
    let f = a.field();
    let (m, n) = (a.dim(), b.dim());
    let d = m * n;
    let mut out = vec![f.zero(); d * d];
    for i in 0..m {
        for j in 0..m {
            let x = &ea[i * m + j];
            if f.is_zero(x) {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    let y = &eb[k * n + l];
                    if !f.is_zero(y) {
                        out[(i * n + k) * d + (j * n + l)] = f.mul(x, y);
                    }
                }
            }
        }
    }
    out
}

/// Graded variant: the unknown ranges over the even part of `A ⊗ A`
/// (Koszul-signed multiplication), since the section is a degree-zero map.
///
/// Whenever a witness exists the odd part must vanish and the even part must
/// be étale; a violation is reported as an internal error.
pub fn graded_separability_idempotent(a: &StructureAlgebra) -> Result<Option<SeparabilityWitness>> {
    if !a.is_graded() {
        return Err(usage!("algebra carries no grading"));
    }
    let report = a.validate();
    if let Some(v) = report
        .violations
        .iter()
        .find(|v| v.axiom.starts_with("grading") || v.axiom == "graded_commutativity")
    {
        return Err(usage!(
            "grading inconsistent with products: {} at {:?}",
            v.axiom,
            v.indices
        ));
    }
    let n = a.dim();
    let even: Vec<usize> = (0..n * n)
        .filter(|&c| a.parity(c / n) == a.parity(c % n))
        .collect();
    let Some(sol) = witness_system(a, Some(&even))? else {
        return Ok(None);
    };
    check_unique_idempotent(a, &sol)?;
    if (0..a.dim()).any(|i| a.parity(i) == 1) {
        return Err(internal!(
            "graded witness found although the odd part is nonzero"
        ));
    }
    if !etale_via_trace_form(a) {
        return Err(internal!(
            "graded witness found although the even part is not étale"
        ));
    }
    Ok(Some(SeparabilityWitness {
        element: sol.element,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Field, Poly};

    #[test]
    fn ground_field_witness_is_one_tensor_one() {
        let f = Field::prime(7).unwrap();
        let k = StructureAlgebra::ground(&f);
        let w = separability_idempotent(&k).unwrap().unwrap();
        assert_eq!(w.element, vec![f.one()]);
    }

    #[test]
    fn dual_numbers_are_not_separable() {
        let f = Field::prime(2).unwrap();
        let a = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[0, 0, 1])).unwrap();
        assert!(separability_idempotent(&a).unwrap().is_none());
        assert!(!etale_via_trace_form(&a));
    }

    #[test]
    fn f4_witness_matches_closed_form() {
        // F4 = F2[t]/(t^2 + t + 1); e = 1⊗t² + t⊗1 = 1⊗1 + 1⊗t + t⊗1
        let f = Field::prime(2).unwrap();
        let a = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[1, 1, 1])).unwrap();
        let w = separability_idempotent(&a).unwrap().unwrap();
        let t = a.basis(1);
        let t2 = a.mul(&t, &t);
        let expected = a.add(
            &pure_tensor(&a, a.unit(), &t2),
            &pure_tensor(&a, &t, a.unit()),
        );
        assert_eq!(w.element, expected);
        assert!(verify_witness(&a, &w.element).unwrap());
        assert!(etale_via_trace_form(&a));
    }

    #[test]
    fn tensor_of_witnesses_is_a_witness() {
        let f = Field::prime(3).unwrap();
        let a = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[1, 0, 1])).unwrap();
        let b = StructureAlgebra::split(&f, 2);
        let ea = separability_idempotent(&a).unwrap().unwrap();
        let eb = separability_idempotent(&b).unwrap().unwrap();
        let ab = a.tensor_product(&b).unwrap();
        let e = tensor_witness(&a, &ea.element, &b, &eb.element);
        assert!(verify_witness(&ab, &e).unwrap());
        assert_eq!(separability_idempotent(&ab).unwrap().unwrap().element, e);
    }

    #[test]
    fn exterior_algebra_has_no_graded_witness() {
        let f = Field::prime(3).unwrap();
        let a = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[0, 0, 1]))
            .unwrap()
            .with_grading(vec![0, 1])
            .unwrap();
        assert!(graded_separability_idempotent(&a).unwrap().is_none());
        let even = StructureAlgebra::split(&f, 2)
            .with_grading(vec![0, 0])
            .unwrap();
        assert!(graded_separability_idempotent(&even).unwrap().is_some());
    }

    #[test]
    fn noncommutative_input_is_rejected() {
        let f = Field::prime(2).unwrap();
        let one = f.one();
        // basis 1, x, y with xy = x, yx = 0 (not commutative)
        let entries = vec![
            (0, 0, 0, one.clone()),
            (0, 1, 1, one.clone()),
            (1, 0, 1, one.clone()),
            (0, 2, 2, one.clone()),
            (2, 0, 2, one.clone()),
            (1, 2, 1, one.clone()),
        ];
        let labels = vec!["1".into(), "x".into(), "y".into()];
        let a = StructureAlgebra::from_entries(&f, labels, vec![one, f.zero(), f.zero()], &entries)
            .unwrap();
        assert_eq!(separability_idempotent(&a).unwrap_err().exit_code(), 1);
    }
}
