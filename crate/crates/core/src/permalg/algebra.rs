use serde::Serialize;

use crate::alg::separable::verify_witness;
use crate::alg::{GroupAction, SeparabilityWitness, StructureAlgebra, Vector};
use crate::error::{internal, usage, Result};
use crate::exact::{Echelon, Field, Matrix};
use crate::grp::PermGroup;
use crate::gset::GSet;

/// `k[X]` with pointwise product, the permutation action and its witness.
#[derive(Clone, Debug)]
pub struct PermutationAlgebra {
    pub algebra: StructureAlgebra,
    /// `Σ_x x ⊗ x`.
    pub witness: SeparabilityWitness,
}

/// Permutation matrices of the generators on `k[X]`.
pub fn permutation_matrices(x: &GSet, field: &Field) -> Vec<Matrix> {
    let n = x.len();
    x.generator_action()
        .iter()
        .map(|p| {
            let mut m = Matrix::zeros(field, n, n);
            for j in 0..n {
                m.set(p.apply(j), j, field.one());
            }
            m
        })
        .collect()
}

pub fn permutation_algebra(x: &GSet, field: &Field) -> Result<PermutationAlgebra> {
    let n = x.len();
    let base = StructureAlgebra::split(field, n).with_labels(x.points().to_vec())?;
    let algebra = base.with_action(GroupAction {
        group: x.group().clone(),
        generators: permutation_matrices(x, field),
    })?;
    let mut e = vec![field.zero(); n * n];
    for i in 0..n {
        e[i * n + i] = field.one();
    }
    if !verify_witness(&algebra.clone().without_action(), &e)? {
        return Err(internal!("Σ x ⊗ x is not a separability idempotent"));
    }
    Ok(PermutationAlgebra {
        algebra,
        witness: SeparabilityWitness { element: e },
    })
}

/// Dimensions of strict invariants, norm image and their quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TateH0 {
    pub invariants_dim: usize,
    pub norms_dim: usize,
    pub dim: usize,
}

struct TateSpaces {
    invariants: Vec<Vector>,
    norms: Vec<Vector>,
}

fn tate_spaces(
    g: &PermGroup,
    field: &Field,
    dim: usize,
    generators: &[Matrix],
) -> Result<TateSpaces> {
    if field.characteristic() == 0 {
        return Err(usage!(
            "Tate cohomology needs a field of positive characteristic"
        ));
    }
    if generators.len() != g.generators().len() {
        return Err(usage!(
            "{} matrices for {} group generators",
            generators.len(),
            g.generators().len()
        ));
    }
    let action = GroupAction {
        group: g.clone(),
        generators: generators.to_vec(),
    };
    let mats = action.element_matrices(field, dim);
    for (k, m) in generators.iter().enumerate() {
        let gk = g.generator_index(k);
        if (0..g.order()).any(|j| m.mul(&mats[j]) != mats[g.mul(gk, j)]) {
            return Err(usage!("module matrices violate a group relation"));
        }
    }
    let id = Matrix::identity(field, dim);
    let invariants = if dim == 0 {
        Vec::new()
    } else {
        let rows = generators
            .iter()
            .flat_map(|m| m.sub(&id).to_rows())
            .collect::<Vec<_>>();
        if rows.is_empty() {
            id.to_rows()
        } else {
            Matrix::from_rows(field, rows).kernel()
        }
    };
    let mut norm = Matrix::zeros(field, dim, dim);
    for m in &mats {
        norm = norm.add(m);
    }
    let norms = Echelon::from_vectors(field, dim, &norm.transpose().to_rows())
        .rows()
        .to_vec();
    Ok(TateSpaces { invariants, norms })
}

/// `Ĥ⁰(G; M) = M^G / N·M` for a module given by generator matrices.
pub fn tate_h0(g: &PermGroup, field: &Field, dim: usize, generators: &[Matrix]) -> Result<TateH0> {
    let s = tate_spaces(g, field, dim, generators)?;
    Ok(TateH0 {
        invariants_dim: s.invariants.len(),
        norms_dim: s.norms.len(),
        dim: s.invariants.len() - s.norms.len(),
    })
}

/// The ring `A^G / N·A` for an algebra with a group action.
pub fn tate_h0_ring(a: &StructureAlgebra) -> Result<StructureAlgebra> {
    let action = a
        .action()
        .ok_or_else(|| usage!("Tate cohomology of an algebra needs a group action"))?;
    let f = a.field();
    let s = tate_spaces(&action.group, f, a.dim(), &action.generators)?;
    let (inv, _, inv_ech) = a.span_algebra(&s.invariants, a.unit())?;
    let norms_in_inv = s
        .norms
        .iter()
        .map(|v| {
            inv_ech
                .coordinates(v)
                .ok_or_else(|| internal!("norm image is not invariant"))
        })
        .collect::<Result<Vec<_>>>()?;
    let ideal = Echelon::from_vectors(f, inv.dim(), &norms_in_inv);
    for r in ideal.rows() {
        for i in 0..inv.dim() {
            if !ideal.contains(&inv.mul(r, &inv.basis(i))) {
                return Err(internal!("norm image is not an ideal of the invariants"));
            }
        }
    }
    Ok(inv.quotient(&ideal).0)
}
