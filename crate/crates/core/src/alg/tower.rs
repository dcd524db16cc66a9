//! Relative tensor squares, splitting steps and the literal splitting tower.

use crate::alg::separable::solve_separability_system;
use crate::alg::structure::{is_algebra_map, StructureAlgebra, Vector};
use crate::error::{capacity, internal, usage, Error, Result};
use crate::exact::{Echelon, Matrix};

/// An algebra `total` over a commutative `base` through `map: base -> total`.
#[derive(Clone, Debug)]
pub struct RelativeAlgebra {
    pub base: StructureAlgebra,
    pub total: StructureAlgebra,
    /// Columns are the images of the base basis vectors.
    pub map: Matrix,
}

impl RelativeAlgebra {
    pub fn new(
        base: StructureAlgebra,
        total: StructureAlgebra,
        map: Matrix,
    ) -> Result<RelativeAlgebra> {
        if base.field() != total.field() {
            return Err(usage!("base and total algebra live over different fields"));
        }
        base.ensure_commutative()?;
        if !is_algebra_map(&base, &total, &map) {
            return Err(usage!("structure map is not a unital algebra homomorphism"));
        }
        let rel = RelativeAlgebra { base, total, map };
        // base acts centrally, otherwise the relative tensor product is not an algebra
        for r in 0..rel.base.dim() {
            let img = rel.map.column(r);
            for x in 0..rel.total.dim() {
                let b = rel.total.basis(x);
                if rel.total.mul(&img, &b) != rel.total.mul(&b, &img) {
                    return Err(usage!("base does not map into the center"));
                }
            }
        }
        Ok(rel)
    }

    /// `a` as an algebra over its ground field.
    pub fn over_ground(a: &StructureAlgebra) -> RelativeAlgebra {
        let base = StructureAlgebra::ground(a.field());
        let map = Matrix::from_columns(a.field(), a.dim(), std::slice::from_ref(a.unit()));
        RelativeAlgebra {
            base,
            total: a.clone().without_action(),
            map,
        }
    }
}

/// `B ⊗_R B` with its two structure maps and the multiplication back to `B`.
#[derive(Clone, Debug)]
pub struct RelativeTensorSquare {
    pub algebra: StructureAlgebra,
    /// `x -> x ⊗ 1`.
    pub left: Matrix,
    /// `x -> 1 ⊗ x`.
    pub right: Matrix,
    /// `x ⊗ y -> x y`.
    pub multiplication: Matrix,
}

/// Quotient of `B ⊗_k B` by the span of `(r x) ⊗ y - x ⊗ (r y)`.
pub fn relative_tensor_square(b: &RelativeAlgebra) -> Result<RelativeTensorSquare> {
    let total = b.total.clone().without_action();
    let f = total.field().clone();
    let n = total.dim();
    let t = total.tensor_product(&total)?;
    let pure = |x: &[crate::exact::Scalar], y: &[crate::exact::Scalar]| -> Vector {
        x.iter()
            .flat_map(|p| y.iter().map(|q| f.mul(p, q)))
            .collect()
    };
    let mut rel = Echelon::new(&f, n * n);
    for r in 0..b.base.dim() {
        let img = b.map.column(r);
        for x in 0..n {
            let rx = total.mul(&img, &total.basis(x));
            for y in 0..n {
                let ry = total.mul(&img, &total.basis(y));
                let v = t.sub(&pure(&rx, &total.basis(y)), &pure(&total.basis(x), &ry));
                if !t.is_zero(&v) {
                    rel.insert(&v);
                }
            }
        }
    }
    let gens: Vec<Vector> = (0..n)
        .flat_map(|x| {
            [
                pure(&total.basis(x), total.unit()),
                pure(total.unit(), &total.basis(x)),
            ]
        })
        .collect();
    for row in rel.rows() {
        for g in &gens {
            if !rel.contains(&t.mul(g, row)) {
                return Err(internal!("relation span is not an ideal of B ⊗ B"));
            }
        }
    }
    let mu_full: Vec<Vector> = (0..n * n)
        .map(|ij| total.mul(&total.basis(ij / n), &total.basis(ij % n)))
        .collect();
    let mu_full = Matrix::from_columns(&f, n, &mu_full);
    for row in rel.rows() {
        if !total.is_zero(&mu_full.apply(row)) {
            return Err(internal!(
                "multiplication does not descend to the relative tensor square"
            ));
        }
    }
    let (algebra, proj) = t.quotient(&rel);
    let left_cols: Vec<Vector> = (0..n)
        .map(|x| proj.apply(&pure(&total.basis(x), total.unit())))
        .collect();
    let right_cols: Vec<Vector> = (0..n)
        .map(|x| proj.apply(&pure(total.unit(), &total.basis(x))))
        .collect();
    let free = rel.free_columns();
    let mu_cols: Vec<Vector> = free.iter().map(|&c| mu_full.column(c)).collect();
    Ok(RelativeTensorSquare {
        left: Matrix::from_columns(&f, algebra.dim(), &left_cols),
        right: Matrix::from_columns(&f, algebra.dim(), &right_cols),
        multiplication: Matrix::from_columns(&f, n, &mu_cols),
        algebra,
    })
}

/// Result of one splitting step: `B ⊗_R B ≅ B × A'`.
#[derive(Clone, Debug)]
pub struct SplittingStep {
    pub square: RelativeTensorSquare,
    /// The separability idempotent in the relative tensor square.
    pub idempotent: Vector,
    /// `A' = (1 - e)(B ⊗_R B)`.
    pub complement: StructureAlgebra,
    /// Columns of `complement`'s basis inside the tensor square.
    pub inclusion: Matrix,
    /// `B -> A'`, `x -> (1 - e)(x ⊗ 1)`.
    pub structure_map: Matrix,
}

impl SplittingStep {
    /// `A'` as an algebra over `B`, ready for the next step.
    pub fn next(&self, b: &RelativeAlgebra) -> RelativeAlgebra {
        RelativeAlgebra {
            base: b.total.clone().without_action(),
            total: self.complement.clone(),
            map: self.structure_map.clone(),
        }
    }
}

/// Split off the diagonal factor of `B ⊗_R B`.
pub fn splitting_step(b: &RelativeAlgebra) -> Result<SplittingStep> {
    let square = relative_tensor_square(b)?;
    let q = &square.algebra;
    let n = b.total.dim();
    let left: Vec<Vector> = (0..n).map(|x| square.left.column(x)).collect();
    let right: Vec<Vector> = (0..n).map(|x| square.right.column(x)).collect();
    let sol = solve_separability_system(
        q,
        &left,
        &right,
        &square.multiplication,
        b.total.unit(),
        None,
    )?
    .ok_or_else(|| Error::not_separable("algebra is not separable over its base"))?;
    if sol.freedom != 0 {
        return Err(internal!("relative separability idempotent is not unique"));
    }
    let e = sol.element;
    if q.mul(&e, &e) != e {
        return Err(internal!(
            "relative separability idempotent is not idempotent"
        ));
    }
    // e (B ⊗ 1) ≅ B with inverse μ
    let diag: Vec<Vector> = left.iter().map(|l| q.mul(&e, l)).collect();
    for (x, d) in diag.iter().enumerate() {
        if square.multiplication.apply(d) != b.total.basis(x) {
            return Err(internal!("μ does not invert x -> e(x ⊗ 1)"));
        }
    }
    let e_span: Vec<Vector> = (0..q.dim()).map(|i| q.mul(&e, &q.basis(i))).collect();
    let e_part = Echelon::from_vectors(q.field(), q.dim(), &e_span);
    if e_part.rank() != n {
        return Err(internal!(
            "e(B ⊗_R B) has dimension {} instead of {n}",
            e_part.rank()
        ));
    }
    let one_minus_e = q.sub(q.unit(), &e);
    let (complement, inclusion, ech) = q.corner(&one_minus_e)?;
    if complement.dim() + n != q.dim() {
        return Err(internal!("dimension count of the splitting step fails"));
    }
    let psi_cols = left
        .iter()
        .map(|l| {
            ech.coordinates(&q.mul(&one_minus_e, l))
                .ok_or_else(|| internal!("(1-e)(x ⊗ 1) outside the complement"))
        })
        .collect::<Result<Vec<_>>>()?;
    let structure_map = Matrix::from_columns(q.field(), complement.dim(), &psi_cols);
    Ok(SplittingStep {
        square,
        idempotent: e,
        complement,
        inclusion,
        structure_map,
    })
}

/// Every stage algebra of the literal tower, `A^[0] = R`, `A^[1] = B`, ...
#[derive(Clone, Debug)]
pub struct DirectTower {
    pub stages: Vec<StructureAlgebra>,
    pub degree: usize,
}

impl DirectTower {
    pub fn dims(&self) -> Vec<usize> {
        self.stages.iter().map(StructureAlgebra::dim).collect()
    }
}

/// Iterate [`splitting_step`] on the full stage algebras. Exponential in
/// general; stages larger than `max_stage_dim` raise a capacity error.
pub fn splitting_tower_direct(
    b: &RelativeAlgebra,
    max_steps: usize,
    max_stage_dim: usize,
) -> Result<DirectTower> {
    let mut stages = vec![b.base.clone(), b.total.clone()];
    let mut current = b.clone();
    let mut steps = 0;
    while !current.total.is_zero_algebra() {
        if steps == max_steps {
            return Err(capacity!(
                "splitting tower did not terminate within {max_steps} steps"
            ));
        }
        let d = current.total.dim();
        if d > max_stage_dim {
            return Err(capacity!(
                "stage of dimension {d} exceeds the direct tower limit"
            ));
        }
        let step = splitting_step(&current)?;
        current = step.next(&current);
        stages.push(current.total.clone());
        steps += 1;
    }
    let degree = stages.len() - 2;
    Ok(DirectTower { stages, degree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Field, Poly};

    #[test]
    fn tensor_square_over_ground_is_plain_tensor() {
        let f = Field::prime(3).unwrap();
        let a = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[1, 0, 1])).unwrap();
        let sq = relative_tensor_square(&RelativeAlgebra::over_ground(&a)).unwrap();
        assert_eq!(sq.algebra.dim(), 4);
    }

    #[test]
    fn tensor_square_over_itself_is_itself() {
        let f = Field::prime(2).unwrap();
        let a = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[1, 1, 1])).unwrap();
        let id = Matrix::identity(&f, 2);
        let rel = RelativeAlgebra::new(a.clone(), a.clone(), id).unwrap();
        let sq = relative_tensor_square(&rel).unwrap();
        assert_eq!(sq.algebra.dim(), 2);
        let step = splitting_step(&rel).unwrap();
        assert!(step.complement.is_zero_algebra());
    }

    #[test]
    fn f4_over_f2_as_relative() {
        // F4 over F2 via the unit: 4-dimensional square, complement ≅ F4
        let f = Field::prime(2).unwrap();
        let a = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[1, 1, 1])).unwrap();
        let rel = RelativeAlgebra::over_ground(&a);
        let step = splitting_step(&rel).unwrap();
        assert_eq!(step.square.algebra.dim(), 4);
        assert_eq!(step.complement.dim(), 2);
        assert!(crate::alg::etale_via_trace_form(&step.complement));
    }

    #[test]
    fn direct_towers_of_small_algebras() {
        let f = Field::prime(2).unwrap();
        let kk = StructureAlgebra::split(&f, 2);
        let t = splitting_tower_direct(&RelativeAlgebra::over_ground(&kk), 3, 64).unwrap();
        assert_eq!(t.dims(), vec![1, 2, 2, 0]);
        assert_eq!(t.degree, 2);
        let f8 = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[1, 1, 0, 1])).unwrap();
        let t = splitting_tower_direct(&RelativeAlgebra::over_ground(&f8), 4, 64).unwrap();
        assert_eq!(t.degree, 3);
        let zero = StructureAlgebra::zero(&f);
        assert_eq!(
            splitting_tower_direct(&RelativeAlgebra::over_ground(&zero), 1, 64)
                .unwrap()
                .degree,
            0
        );
        let dual = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[0, 0, 1])).unwrap();
        let e = splitting_tower_direct(&RelativeAlgebra::over_ground(&dual), 3, 64).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }
}
