//! Normalizers, Weyl groups and double cosets.

use crate::error::{internal, Result};
use crate::grp::group::{PermGroup, Subgroup};

/// `N = N_G(P)` together with `W = N/P` acting on the cosets of `P` in `N`.
#[derive(Debug, Clone)]
pub struct Weyl {
    pub normalizer: Subgroup,
    pub weyl: PermGroup,
}

pub fn normalizer_and_weyl(g: &PermGroup, p: &Subgroup) -> Result<Weyl> {
    let normalizer = g.normalizer(p);
    let weyl = g.quotient(&normalizer, p)?;
    Ok(Weyl { normalizer, weyl })
}

/// One double coset `H y K`.
#[derive(Debug, Clone)]
pub struct DoubleCoset {
    pub representative: usize,
    /// `H ∩ y K y^-1`, the stabilizer of `(H, yK)` in `G/H × G/K`.
    pub intersection: Subgroup,
    /// Size of the double coset as a subset of `G`.
    pub size: usize,
    /// Size of the `G`-orbit of `([1]_H, [y]_K)` in `G/H × G/K`.
    pub orbit_size: usize,
}

#[derive(Debug, Clone)]
pub struct DoubleCosetDecomposition {
    pub cosets: Vec<DoubleCoset>,
}

impl DoubleCosetDecomposition {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }
    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }
}

/// Decompose `G` into double cosets `H\G/K`, representatives chosen as the
/// smallest element index of each.
pub fn double_coset_decomposition(
    g: &PermGroup,
    h: &Subgroup,
    k: &Subgroup,
) -> Result<DoubleCosetDecomposition> {
    let mut assigned = vec![false; g.order()];
    let mut cosets = Vec::new();
    for y in 0..g.order() {
        if assigned[y] {
            continue;
        }
        let mut size = 0;
        for &a in h.members() {
            let ay = g.mul(a, y);
            for &b in k.members() {
                let x = g.mul(ay, b);
                if !assigned[x] {
                    assigned[x] = true;
                    size += 1;
                }
            }
        }
        let intersection = h.intersect(&g.conjugate_subgroup(k, y));
        let orbit_size = g.order() / intersection.order();
        cosets.push(DoubleCoset {
            representative: y,
            intersection,
            size,
            orbit_size,
        });
    }
    let total: usize = cosets.iter().map(|c| c.orbit_size).sum();
    let expected = (g.order() / h.order()) * (g.order() / k.order());
    if total != expected {
        return Err(internal!(
            "double coset orbit sizes sum to {total}, expected {expected}"
        ));
    }
    for c in &cosets {
        if c.size * c.intersection.order() != h.order() * k.order() {
            return Err(internal!(
                "double coset size mismatch at {}",
                c.representative
            ));
        }
    }
    Ok(DoubleCosetDecomposition { cosets })
}
