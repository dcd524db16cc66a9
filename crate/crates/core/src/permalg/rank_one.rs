use serde::Serialize;

use crate::alg::degree;
use crate::config::Config;
use crate::error::{internal, Result};
use crate::exact::{Field, Matrix};
use crate::grp::{
    double_coset_decomposition, normalizer_and_weyl, np_closure, rank_one_classification,
    PermGroup, Subgroup,
};
use crate::gset::GSet;
use crate::permalg::algebra::{permutation_algebra, tate_h0_ring};
use crate::permalg::stmod::stmod_degree;

fn cycle_strings(s: &Subgroup) -> Vec<String> {
    s.generator_perms()
        .iter()
        .map(|p| p.to_cycle_string())
        .collect()
}

fn group_name(g: &PermGroup) -> String {
    g.name().unwrap_or("G").to_string()
}

/// Machine check that `A = k[G/P]` is a `W`-Galois extension in the stable
/// category when the p-rank is one.
#[derive(Clone, Debug, Serialize)]
pub struct GaloisVerificationReport {
    pub group: String,
    pub p: u64,
    #[serde(rename = "P")]
    pub p_subgroup: Vec<String>,
    #[serde(rename = "N")]
    pub normalizer: Vec<String>,
    pub normalizer_order: usize,
    #[serde(rename = "W_order")]
    pub w_order: usize,
    pub sylow: String,
    pub degree: usize,
    #[serde(rename = "maximizing_Q")]
    pub maximizing_q: Vec<String>,
    pub h_equals_tau: bool,
    /// Orbits of `G/P × G/P` with stabilizer conjugate to `P`.
    pub weyl_orbits: usize,
    pub free_orbits: usize,
    /// Every orbit is of one of the two kinds and there are `|W|` Weyl orbits.
    pub ledger_ok: bool,
    pub tate_pi0_dim: usize,
    pub passed: bool,
    #[serde(skip)]
    pub h: Matrix,
    #[serde(skip)]
    pub tau: Matrix,
}

/// Builds `h` and `τ` on the basis `[x] ⊗ [y]` of `k[G/P] ⊗ k[G/P]` with
/// values in `∏_{w ∈ W} k[G/P]`, checks the double coset ledger, the stable
/// degree and `Ĥ⁰`.
pub fn verify_rank_one_galois(
    g: &PermGroup,
    p: u64,
    cfg: &Config,
) -> Result<GaloisVerificationReport> {
    let class = rank_one_classification(g, p)?;
    let pp = class.order_p_subgroups[0].clone();
    let weyl = normalizer_and_weyl(g, &pp)?;
    let n = &weyl.normalizer;
    let w_reps: Vec<usize> = g
        .left_cosets(&pp)
        .into_iter()
        .filter(|c| n.contains(c[0]))
        .map(|c| c[0])
        .collect();
    if w_reps.len() != weyl.weyl.order() {
        return Err(internal!(
            "Weyl coset count differs from the Weyl group order"
        ));
    }
    let (cosets, idx) = g.left_coset_index(&pp);
    let m = cosets.len();
    let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
    let f = Field::prime(p)?;
    let rows = w_reps.len() * m;
    let mut h = Matrix::zeros(&f, rows, m * m);
    let mut tau = Matrix::zeros(&f, rows, m * m);
    for (wi, &nw) in w_reps.iter().enumerate() {
        let nw_inv = g.inv(nw);
        for x in 0..m {
            for y in 0..m {
                // [x] · [y n_w]
                if idx[g.mul(reps[y], nw)] == x {
                    h.set(wi * m + x, x * m + y, f.one());
                }
                // y^-1 x n_w^-1 ∈ P
                if pp.contains(g.mul(g.mul(g.inv(reps[y]), reps[x]), nw_inv)) {
                    tau.set(wi * m + x, x * m + y, f.one());
                }
            }
        }
    }
    let h_equals_tau = h == tau;
    let dc = double_coset_decomposition(g, &pp, &pp)?;
    let weyl_orbits = dc
        .cosets
        .iter()
        .filter(|c| c.intersection.order() == pp.order())
        .count();
    let free_orbits = dc
        .cosets
        .iter()
        .filter(|c| c.intersection.is_trivial())
        .count();
    let ledger_ok = weyl_orbits + free_orbits == dc.len() && weyl_orbits == w_reps.len();
    let x = GSet::cosets(g, &pp)?;
    let st = stmod_degree(&x, p, cfg.oracle_cutoff)?;
    let a = permutation_algebra(&x, &f)?;
    let tate = tate_h0_ring(&a.algebra)?;
    let passed = h_equals_tau && ledger_ok && st.degree == w_reps.len() && tate.dim() == 1;
    Ok(GaloisVerificationReport {
        group: group_name(g),
        p,
        p_subgroup: cycle_strings(&pp),
        normalizer: cycle_strings(n),
        normalizer_order: n.order(),
        w_order: w_reps.len(),
        sylow: class.kind.as_str().to_string(),
        degree: st.degree,
        maximizing_q: st.maximizing_q.unwrap_or_default(),
        h_equals_tau,
        weyl_orbits,
        free_orbits,
        ledger_ok,
        tate_pi0_dim: tate.dim(),
        passed,
        h,
        tau,
    })
}

/// One indecomposable cover `k[G/V]` for `P ≤ V ≤ N`.
#[derive(Clone, Debug, Serialize)]
pub struct Cover {
    #[serde(rename = "V_order")]
    pub v_order: usize,
    /// `[G : V]`, the dimension of `k[G/V]`.
    pub index: usize,
    /// Size of the transitive `W`-set `W/(V/P)`.
    #[serde(rename = "W_set")]
    pub w_set: usize,
    #[serde(rename = "V")]
    pub generators: Vec<String>,
    #[serde(skip)]
    pub subgroup: Subgroup,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankOneCovers {
    pub group: String,
    pub p: u64,
    #[serde(rename = "P")]
    pub p_subgroup: Vec<String>,
    #[serde(rename = "N")]
    pub normalizer: Vec<String>,
    #[serde(rename = "W_order")]
    pub w_order: usize,
    /// Number of subgroups `V` with `P ≤ V ≤ N`.
    pub subgroups_between: usize,
    /// One entry per `N`-conjugacy class of such `V`.
    pub covers: Vec<Cover>,
}

/// The dictionary from transitive `W`-sets to covers `k[G/V]`.
pub fn classify_rank_one(g: &PermGroup, p: u64) -> Result<RankOneCovers> {
    let class = rank_one_classification(g, p)?;
    let pp = class.order_p_subgroups[0].clone();
    let weyl = normalizer_and_weyl(g, &pp)?;
    let n = &weyl.normalizer;
    let n_group = n.as_group()?;
    let mut between = Vec::new();
    for s in n_group.all_subgroups() {
        let v = g.generate_perms(&s.generator_perms())?;
        if pp.is_subgroup_of(&v) {
            between.push(v);
        }
    }
    let mut classes: Vec<Subgroup> = Vec::new();
    for v in &between {
        let known = classes.iter().any(|c| {
            c.order() == v.order()
                && n.members()
                    .iter()
                    .any(|&y| g.conjugate_subgroup(c, y) == *v)
        });
        if !known {
            classes.push(v.clone());
        }
    }
    let covers = classes
        .into_iter()
        .map(|v| Cover {
            v_order: v.order(),
            index: g.order() / v.order(),
            w_set: n.order() / v.order(),
            generators: cycle_strings(&v),
            subgroup: v,
        })
        .collect();
    Ok(RankOneCovers {
        group: group_name(g),
        p,
        p_subgroup: cycle_strings(&pp),
        normalizer: cycle_strings(n),
        w_order: weyl.weyl.order(),
        subgroups_between: between.len(),
        covers,
    })
}

/// `N_p(G)` and the Galois group `G / N_p(G)`.
#[derive(Clone, Debug)]
pub struct ModGData {
    pub np: Subgroup,
    pub quotient: PermGroup,
}

impl ModGData {
    /// Whether `N_p(G)` acts trivially on `x`.
    pub fn accepts(&self, x: &GSet) -> bool {
        self.np
            .generators()
            .iter()
            .all(|&g| (0..x.len()).all(|pt| x.act(g, pt) == pt))
    }
}

pub fn modg_galois_data(g: &PermGroup, p: u64) -> Result<ModGData> {
    let np = np_closure(g, p)?;
    let quotient = g.quotient(&g.whole(), &np)?;
    Ok(ModGData { np, quotient })
}

/// Degree of the cover `k[X]` after restriction to the base, computed with
/// the splitting tower over `F_p`.
pub fn modg_degree(x: &GSet, p: u64, cfg: &Config) -> Result<usize> {
    let f = Field::prime(p)?;
    let a = permutation_algebra(x, &f)?;
    degree(&a.algebra.without_action(), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn cyclic_four() {
        let g = PermGroup::from_cycles(4, &["(0,1,2,3)"]).unwrap();
        let r = verify_rank_one_galois(&g, 2, &cfg()).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.w_order, 2);
        assert_eq!(classify_rank_one(&g, 2).unwrap().covers.len(), 2);
    }

    #[test]
    fn s3_at_three() {
        let g = PermGroup::from_cycles(3, &["(0,1)", "(0,1,2)"]).unwrap();
        let r = verify_rank_one_galois(&g, 3, &cfg()).unwrap();
        assert!(r.passed);
        assert_eq!(r.degree, 2);
        let c = classify_rank_one(&g, 3).unwrap();
        assert_eq!(c.covers.len(), 2);
        let d = modg_galois_data(&g, 3).unwrap();
        assert_eq!(d.quotient.order(), 2);
        let a3 = g.generate(&[g.generator_index(1)]);
        assert!(d.accepts(&GSet::cosets(&g, &a3).unwrap()));
        let t = g.generate(&[g.generator_index(0)]);
        assert!(!d.accepts(&GSet::cosets(&g, &t).unwrap()));
    }

    #[test]
    fn klein_four_is_not_rank_one() {
        let g = PermGroup::from_cycles(4, &["(0,1)", "(2,3)"]).unwrap();
        assert_eq!(
            verify_rank_one_galois(&g, 2, &cfg())
                .unwrap_err()
                .exit_code(),
            1
        );
        assert_eq!(modg_galois_data(&g, 2).unwrap().quotient.order(), 1);
    }

    #[test]
    fn modg_degree_is_cardinality() {
        let g = PermGroup::from_cycles(3, &["(0,1,2)"]).unwrap();
        let x = GSet::regular(&g).unwrap();
        assert_eq!(modg_degree(&x, 3, &cfg()).unwrap(), 3);
    }
}
