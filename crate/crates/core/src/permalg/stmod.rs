use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{internal, usage, Result};
use crate::exact::field::is_prime_u64;
use crate::grp::{PermGroup, Subgroup};
use crate::gset::{fixed_points, orbit_decomposition, GSet, Orbit};

/// Subgroups of order `p`, in order of their smallest generating element.
pub fn order_p_subgroups(g: &PermGroup, p: u64) -> Vec<Subgroup> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in g.elements_of_order(p as usize) {
        let q = g.generate(&[x]);
        if seen.insert(q.members().to_vec()) {
            out.push(q);
        }
    }
    out
}

/// An orbit summand `k[G/L]` of a permutation module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSummary {
    pub size: usize,
    pub stabilizer_order: usize,
    pub points: Vec<usize>,
}

impl OrbitSummary {
    fn of(o: &Orbit) -> OrbitSummary {
        OrbitSummary {
            size: o.points.len(),
            stabilizer_order: o.stabilizer.order(),
            points: o.points.clone(),
        }
    }
}

/// Orbits split into non-projective (`p` divides the stabilizer order) and
/// projective ones.
pub fn strip_projective_summands(
    x: &GSet,
    p: u64,
) -> Result<(Vec<OrbitSummary>, Vec<OrbitSummary>)> {
    let (mut non, mut proj) = (Vec::new(), Vec::new());
    for o in orbit_decomposition(x)? {
        if o.stabilizer.order() % p as usize == 0 {
            non.push(OrbitSummary::of(&o));
        } else {
            proj.push(OrbitSummary::of(&o));
        }
    }
    Ok((non, proj))
}

/// Largest set of points whose stabilizers have a common subgroup of order
/// divisible by `p`, by exhaustive search over subsets.
pub fn coset_subset_oracle(x: &GSet, p: u64) -> usize {
    let g = x.group();
    let n = x.len();
    let stabs: Vec<Vec<bool>> = (0..n)
        .map(|pt| (0..g.order()).map(|e| x.act(e, pt) == pt).collect())
        .collect();
    let p = p as usize;
    let mut best = 0;
    let mut stack: Vec<(usize, usize, Vec<bool>)> = vec![(0, 0, vec![true; g.order()])];
    while let Some((next, size, common)) = stack.pop() {
        best = best.max(size);
        for (pt, stab) in stabs.iter().enumerate().skip(next) {
            if size + (n - pt) <= best {
                break;
            }
            let meet: Vec<bool> = common.iter().zip(stab).map(|(a, b)| *a && *b).collect();
            if meet.iter().filter(|&&m| m).count() % p == 0 {
                stack.push((pt + 1, size + 1, meet));
            }
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StmodReport {
    pub p: u64,
    pub group_order: usize,
    pub degree: usize,
    /// Generators (cycle notation) of an order-`p` subgroup with the most fixed points.
    pub maximizing_q: Option<Vec<String>>,
    /// The points fixed by that subgroup.
    pub witness_points: Vec<usize>,
    /// Value of the subset oracle when the set is small enough to search.
    pub oracle: Option<usize>,
    pub non_projective: Vec<OrbitSummary>,
    pub projective: Vec<OrbitSummary>,
    pub warning: Option<String>,
}

/// Stable degree of `k[X]`: the largest number of points fixed by a single
/// subgroup of order `p`. The subset oracle runs when `|X| ≤ oracle_cutoff`
/// and must agree.
pub fn stmod_degree(x: &GSet, p: u64, oracle_cutoff: usize) -> Result<StmodReport> {
    if !is_prime_u64(p) {
        return Err(usage!("{p} is not prime"));
    }
    let g = x.group();
    let (non_projective, projective) = strip_projective_summands(x, p)?;
    if !g.order().is_multiple_of(p as usize) {
        return Ok(StmodReport {
            p,
            group_order: g.order(),
            degree: 0,
            maximizing_q: None,
            witness_points: Vec::new(),
            oracle: None,
            non_projective,
            projective,
            warning: Some(format!(
                "p = {p} does not divide |G| = {}; the stable category is trivial",
                g.order()
            )),
        });
    }
    let mut degree = 0;
    let mut best: Option<(Subgroup, Vec<usize>)> = None;
    for q in order_p_subgroups(g, p) {
        let fixed = fixed_points(x, &q);
        if best.is_none() || fixed.len() > degree {
            degree = fixed.len();
            best = Some((q, fixed));
        }
    }
    let (q, witness_points) =
        best.ok_or_else(|| internal!("p divides |G| but there is no element of order p"))?;
    let oracle = (x.len() <= oracle_cutoff).then(|| coset_subset_oracle(x, p));
    if let Some(o) = oracle {
        if o != degree {
            return Err(internal!(
                "fixed-point degree {degree} disagrees with the subset oracle {o}"
            ));
        }
    }
    Ok(StmodReport {
        p,
        group_order: g.order(),
        degree,
        maximizing_q: Some(
            q.generator_perms()
                .iter()
                .map(|p| p.to_cycle_string())
                .collect(),
        ),
        witness_points,
        oracle,
        non_projective,
        projective,
        warning: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_four_over_its_involution() {
        let g = PermGroup::from_cycles(4, &["(0,1,2,3)"]).unwrap();
        let h = g.generate(&[g.power(g.generator_index(0), 2)]);
        let r = stmod_degree(&GSet::cosets(&g, &h).unwrap(), 2, 16).unwrap();
        assert_eq!(r.degree, 2);
        assert_eq!(r.oracle, Some(2));
    }

    #[test]
    fn klein_four_over_a_line() {
        let g = PermGroup::from_cycles(4, &["(0,1)", "(2,3)"]).unwrap();
        let h = g.generate(&[g.generator_index(0)]);
        let r = stmod_degree(&GSet::cosets(&g, &h).unwrap(), 2, 16).unwrap();
        assert_eq!(r.degree, 2);
    }

    #[test]
    fn coprime_prime_gives_zero_with_warning() {
        let g = PermGroup::from_cycles(3, &["(0,1,2)"]).unwrap();
        let r = stmod_degree(&GSet::regular(&g).unwrap(), 2, 16).unwrap();
        assert_eq!(r.degree, 0);
        assert!(r.warning.is_some());
    }

    #[test]
    fn projective_stripping() {
        let s3 = PermGroup::from_cycles(3, &["(0,1)", "(0,1,2)"]).unwrap();
        let reg = GSet::regular(&s3).unwrap();
        let (non, proj) = strip_projective_summands(&reg, 3).unwrap();
        assert!(non.is_empty() && proj.len() == 1);
        let a3 = s3.generate(&[s3.generator_index(1)]);
        let x = GSet::cosets(&s3, &a3).unwrap();
        let (non, proj) = strip_projective_summands(&x, 3).unwrap();
        assert!(proj.is_empty() && non.len() == 1);
        let xx = x.product(&x).unwrap();
        let (non, proj) = strip_projective_summands(&xx, 3).unwrap();
        assert_eq!(non.iter().map(|o| o.size).collect::<Vec<_>>(), vec![2, 2]);
        assert!(proj.is_empty());
    }
}
