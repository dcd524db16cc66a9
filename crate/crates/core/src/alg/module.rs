//! Modules over algebras and the section of the action map.

use serde::Serialize;

use crate::alg::separable::separability_idempotent;
use crate::alg::structure::StructureAlgebra;
use crate::error::{usage, Result};
use crate::exact::Matrix;

/// A finite-dimensional module: `action[i]` is the matrix of basis vector `b_i`.
#[derive(Clone, Debug)]
pub struct AlgebraModule {
    pub dim: usize,
    pub action: Vec<Matrix>,
}

impl AlgebraModule {
    /// `A` acting on itself by left multiplication.
    pub fn regular(a: &StructureAlgebra) -> AlgebraModule {
        AlgebraModule {
            dim: a.dim(),
            action: (0..a.dim())
                .map(|i| a.left_mult_matrix(&a.basis(i)))
                .collect(),
        }
    }

    /// Matrix of an arbitrary element.
    pub fn act(&self, a: &StructureAlgebra, x: &[crate::exact::Scalar]) -> Matrix {
        let f = a.field();
        let mut m = Matrix::zeros(f, self.dim, self.dim);
        for (c, r) in x.iter().zip(&self.action) {
            if !f.is_zero(c) {
                m = m.add(&r.scale(c));
            }
        }
        m
    }

    /// Usage error unless the unit acts as identity and the action is multiplicative.
    pub fn validate(&self, a: &StructureAlgebra) -> Result<()> {
        if self.action.len() != a.dim() {
            return Err(usage!(
                "{} action matrices for a {}-dimensional algebra",
                self.action.len(),
                a.dim()
            ));
        }
        if self
            .action
            .iter()
            .any(|m| m.rows() != self.dim || m.cols() != self.dim)
        {
            return Err(usage!("module action matrix has the wrong shape"));
        }
        if !self.act(a, a.unit()).is_identity() && self.dim > 0 {
            return Err(usage!("unit does not act as the identity"));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.action[i].mul(&self.action[j]);
                let rhs = self.act(a, &a.mul(&a.basis(i), &a.basis(j)));
                if lhs != rhs {
                    return Err(usage!("module action is not multiplicative at ({i}, {j})"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounitSectionReport {
    /// `ε ∘ ξ = id`.
    pub retracts: bool,
    /// `ξ` commutes with the action.
    pub linear: bool,
}

impl CounitSectionReport {
    pub fn holds(&self) -> bool {
        self.retracts && self.linear
    }
}

/// With `e = Σ e_ab b_a ⊗ b_b`, the map `ξ(m) = Σ e_ab b_a ⊗ b_b m` is a
/// module section of the action map `ε: A ⊗ M -> M`.
pub fn counit_section_check(
    a: &StructureAlgebra,
    m: &AlgebraModule,
) -> Result<CounitSectionReport> {
    m.validate(a)?;
    let w =
        separability_idempotent(a)?.ok_or_else(|| usage!("algebra has no separability witness"))?;
    let f = a.field();
    let n = a.dim();
    let d = m.dim;
    // ξ as an (n d) x d matrix, block `a` = Σ_b e_ab ρ(b_b)
    let mut xi = Matrix::zeros(f, n * d, d);
    let mut eps_xi = Matrix::zeros(f, d, d);
    for ia in 0..n {
        let row: Vec<_> = (0..n).map(|ib| w.element[ia * n + ib].clone()).collect();
        let block = m.act(a, &row);
        for r in 0..d {
            for c in 0..d {
                xi.set(ia * d + r, c, block.get(r, c).clone());
            }
        }
        eps_xi = eps_xi.add(&m.action[ia].mul(&block));
    }
    let retracts = eps_xi.is_identity() || d == 0;
    let mut linear = true;
    for i in 0..n {
        let left = a
            .left_mult_matrix(&a.basis(i))
            .kronecker(&Matrix::identity(f, d));
        if left.mul(&xi) != xi.mul(&m.action[i]) {
            linear = false;
            break;
        }
    }
    Ok(CounitSectionReport { retracts, linear })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Field, Poly};

    #[test]
    fn regular_module_has_section() {
        let f = Field::prime(2).unwrap();
        let a = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[1, 1, 0, 1])).unwrap();
        assert!(counit_section_check(&a, &AlgebraModule::regular(&a))
            .unwrap()
            .holds());
    }

    #[test]
    fn simple_module_of_k_times_k() {
        let f = Field::prime(5).unwrap();
        let a = StructureAlgebra::split(&f, 2);
        let m = AlgebraModule {
            dim: 1,
            action: vec![
                Matrix::from_i64(&f, &[vec![0]]),
                Matrix::from_i64(&f, &[vec![1]]),
            ],
        };
        assert!(counit_section_check(&a, &m).unwrap().holds());
    }

    #[test]
    fn missing_witness_is_a_usage_error() {
        let f = Field::prime(2).unwrap();
        let a = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[0, 0, 1])).unwrap();
        let e = counit_section_check(&a, &AlgebraModule::regular(&a)).unwrap_err();
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn invalid_module_is_a_usage_error() {
        let f = Field::prime(5).unwrap();
        let a = StructureAlgebra::split(&f, 2);
        let m = AlgebraModule {
            dim: 1,
            action: vec![
                Matrix::from_i64(&f, &[vec![1]]),
                Matrix::from_i64(&f, &[vec![1]]),
            ],
        };
        assert_eq!(counit_section_check(&a, &m).unwrap_err().exit_code(), 1);
    }
}
