//! Galois extensions for finite group actions and fixed subalgebras.

use serde::Serialize;

use crate::alg::structure::{StructureAlgebra, Vector};
use crate::error::{usage, Result};
use crate::exact::{Echelon, Matrix};
use crate::grp::Subgroup;

/// Outcome of [`galois_check`]; `failed` names the conditions that do not hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisReport {
    pub galois: bool,
    pub group_order: usize,
    pub nonzero: bool,
    pub invariants_dim: usize,
    pub invariants_are_base: bool,
    pub shear_rank: usize,
    pub shear_is_iso: bool,
    pub failed: Vec<String>,
}

/// Vectors fixed by the given matrices.
fn fixed_space(a: &StructureAlgebra, mats: &[&Matrix]) -> Vec<Vector> {
    let f = a.field();
    let n = a.dim();
    if n == 0 {
        return Vec::new();
    }
    let id = Matrix::identity(f, n);
    let mut rows = Vec::new();
    for m in mats {
        rows.extend(m.sub(&id).to_rows());
    }
    if rows.is_empty() {
        return id.to_rows();
    }
    Matrix::from_rows(f, rows).kernel()
}

/// Invariants are the scalars, `a₁ ⊗ a₂ ↦ (a₁ g(a₂))_g` is bijective and the
/// algebra is nonzero.
pub fn galois_check(a: &StructureAlgebra) -> Result<GaloisReport> {
    let action = a
        .action()
        .ok_or_else(|| usage!("Galois check needs a group action"))?;
    a.ensure_valid()?;
    let f = a.field();
    let n = a.dim();
    let group_order = action.group.order();
    let nonzero = n > 0;
    let gens: Vec<&Matrix> = action.generators.iter().collect();
    let inv = fixed_space(a, &gens);
    let invariants_are_base =
        inv.len() == 1 && Echelon::from_vectors(f, n, &inv).contains(a.unit());
    let mats = action.element_matrices(f, n);
    let mut cols = Vec::with_capacity(n * n);
    for i in 0..n {
        let bi = a.basis(i);
        for j in 0..n {
            let mut col = Vec::with_capacity(group_order * n);
            for m in &mats {
                col.extend(a.mul(&bi, &m.column(j)));
            }
            cols.push(col);
        }
    }
    let shear_rank = if n == 0 {
        0
    } else {
        Matrix::from_columns(f, group_order * n, &cols).rank()
    };
    let shear_is_iso = n * n == group_order * n && shear_rank == n * n;
    let mut failed = Vec::new();
    if !invariants_are_base {
        failed.push("invariants".to_string());
    }
    if !shear_is_iso {
        failed.push("shear_map".to_string());
    }
    if !nonzero {
        failed.push("nonzero".to_string());
    }
    Ok(GaloisReport {
        galois: failed.is_empty(),
        group_order,
        nonzero,
        invariants_dim: inv.len(),
        invariants_are_base,
        shear_rank,
        shear_is_iso,
        failed,
    })
}

/// The subalgebra fixed by a subgroup, with its inclusion matrix.
pub fn fixed_subalgebra(a: &StructureAlgebra, k: &Subgroup) -> Result<(StructureAlgebra, Matrix)> {
    let action = a
        .action()
        .ok_or_else(|| usage!("fixed subalgebra needs a group action"))?;
    if k.group() != &action.group {
        return Err(usage!("subgroup belongs to a different group"));
    }
    let mats = action.element_matrices(a.field(), a.dim());
    let gens: Vec<&Matrix> = k.generators().into_iter().map(|g| &mats[g]).collect();
    let fixed = fixed_space(a, &gens);
    let (sub, incl, _) = a.span_algebra(&fixed, a.unit())?;
    Ok((sub.without_action(), incl))
}
