//! Sylow subgroups, p-rank, N_p(G) and the structure of rank-one Sylow subgroups.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{internal, usage, Result};
use crate::exact::field::is_prime_u64;
use crate::grp::group::{PermGroup, Subgroup};

fn check_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(usage!("{p} is not prime"))
    }
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: usize, p: u64) -> usize {
    let p = p as usize;
    let mut n = n;
    let mut r = 1;
    while n.is_multiple_of(p) {
        n /= p;
        r *= p;
    }
    r
}

/// A Sylow p-subgroup, grown one step at a time inside successive normalizers.
///
/// Returns the trivial subgroup when `p` does not divide the order.
pub fn sylow_subgroup(g: &PermGroup, p: u64) -> Result<Subgroup> {
    check_prime(p)?;
    let target = p_part(g.order(), p);
    let mut sub = g.trivial();
    while sub.order() < target {
        // p divides [N(P):P] while P is not Sylow, so N(P)/P has an element of order p
        let n = g.normalizer(&sub);
        let step = n
            .members()
            .iter()
            .copied()
            .find(|&x| !sub.contains(x) && sub.contains(g.power(x, p as usize)))
            .ok_or_else(|| internal!("normalizer climbing stalled at order {}", sub.order()))?;
        let mut gens = sub.generators();
        gens.push(step);
        sub = g.generate(&gens);
    }
    debug_assert_eq!(sub.order(), target);
    Ok(sub)
}

/// All elementary abelian p-subgroups reachable by extending bases in
/// increasing element order; each subgroup is produced once.
fn elementary_abelian_subgroups(g: &PermGroup, p: u64) -> Vec<(Vec<usize>, Subgroup)> {
    let order_p = g.elements_of_order(p as usize);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, Subgroup)> = vec![(Vec::new(), g.trivial())];
    while let Some((basis, e)) = stack.pop() {
        let last = basis.last().copied();
        for &x in &order_p {
            if last.is_some_and(|l| x <= l) || e.contains(x) {
                continue;
            }
            if !basis.iter().all(|&b| g.commute(b, x)) {
                continue;
            }
            let mut nb = basis.clone();
            nb.push(x);
            let sub = g.generate(&nb);
            if seen.insert(sub.members().to_vec()) {
                stack.push((nb, sub));
            }
        }
        out.push((basis, e));
    }
    out
}

/// Largest `n` with an elementary abelian subgroup of order `p^n`.
pub fn p_rank(g: &PermGroup, p: u64) -> Result<usize> {
    check_prime(p)?;
    Ok(elementary_abelian_subgroups(g, p)
        .iter()
        .map(|(basis, _)| basis.len())
        .max()
        .unwrap_or(0))
}

/// `N_p(G)`: the normal closure of all elements of order `p`.
pub fn np_closure(g: &PermGroup, p: u64) -> Result<Subgroup> {
    check_prime(p)?;
    let n = g.normal_closure(&g.elements_of_order(p as usize));
    if !g.is_normal(&n) {
        return Err(internal!("normal closure is not normal"));
    }
    Ok(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SylowType {
    Cyclic,
    GeneralizedQuaternion,
}

impl SylowType {
    pub fn as_str(self) -> &'static str {
        match self {
            SylowType::Cyclic => "cyclic",
            SylowType::GeneralizedQuaternion => "generalized_quaternion",
        }
    }
}

/// Structure of a Sylow subgroup when the p-rank is one.
#[derive(Debug, Clone)]
pub struct RankOneClassification {
    pub sylow: Subgroup,
    pub kind: SylowType,
    /// The subgroups of order `p`; in rank one these are the maximal
    /// elementary abelian p-subgroups.
    pub order_p_subgroups: Vec<Subgroup>,
    /// `conjugators[i]` carries `order_p_subgroups[0]` onto `order_p_subgroups[i]`.
    pub conjugators: Vec<usize>,
}

fn is_generalized_quaternion(g: &PermGroup, s: &Subgroup) -> bool {
    let n = s.order();
    if n < 8 || !n.is_power_of_two() {
        return false;
    }
    let involutions = s
        .members()
        .iter()
        .filter(|&&x| g.element_order(x) == 2)
        .count();
    if involutions != 1 {
        return false;
    }
    // <x, y | x^(n/2) = 1, y^2 = x^(n/4), y x y^-1 = x^-1>
    let half = n / 2;
    for &x in s.members().iter().filter(|&&x| g.element_order(x) == half) {
        let cyc = g.generate(&[x]);
        let z = g.power(x, n / 4);
        let found = s
            .members()
            .iter()
            .any(|&y| !cyc.contains(y) && g.mul(y, y) == z && g.conjugate(y, x) == g.inv(x));
        if found {
            return true;
        }
    }
    false
}

/// Classify the Sylow p-subgroup of a p-rank-one group and certify that all
/// order-p subgroups are conjugate.
pub fn rank_one_classification(g: &PermGroup, p: u64) -> Result<RankOneClassification> {
    let rank = p_rank(g, p)?;
    if rank != 1 {
        return Err(usage!("p-rank of the group at p = {p} is {rank}, not 1"));
    }
    let sylow = sylow_subgroup(g, p)?;
    let kind = if sylow
        .members()
        .iter()
        .any(|&x| g.element_order(x) == sylow.order())
    {
        SylowType::Cyclic
    } else if p == 2 && is_generalized_quaternion(g, &sylow) {
        SylowType::GeneralizedQuaternion
    } else {
        return Err(internal!(
            "rank-one Sylow subgroup of order {} is neither cyclic nor generalized quaternion",
            sylow.order()
        ));
    };
    let mut order_p_subgroups: Vec<Subgroup> = Vec::new();
    let mut seen = HashSet::new();
    for x in g.elements_of_order(p as usize) {
        let q = g.generate(&[x]);
        if seen.insert(q.members().to_vec()) {
            order_p_subgroups.push(q);
        }
    }
    let base = order_p_subgroups[0].clone();
    let conjugators = order_p_subgroups
        .iter()
        .map(|q| {
            (0..g.order())
                .find(|&c| g.conjugate_subgroup(&base, c) == *q)
                .ok_or_else(|| internal!("order-{p} subgroups are not all conjugate"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RankOneClassification {
        sylow,
        kind,
        order_p_subgroups,
        conjugators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sylow_examples() {
        let s3 = PermGroup::from_cycles(3, &["(0 1 2)", "(0 1)"]).unwrap();
        let p3 = sylow_subgroup(&s3, 3).unwrap();
        assert_eq!(p3.order(), 3);
        assert!(s3.is_normal(&p3));
        assert_eq!(sylow_subgroup(&s3, 2).unwrap().order(), 2);
        assert!(sylow_subgroup(&s3, 5).unwrap().is_trivial());
        assert!(sylow_subgroup(&s3, 4).is_err());
        let z4 = PermGroup::from_cycles(4, &["(0 1 2 3)"]).unwrap();
        assert_eq!(sylow_subgroup(&z4, 2).unwrap().order(), 4);
    }

    #[test]
    fn rank_examples() {
        let z4 = PermGroup::from_cycles(4, &["(0 1 2 3)"]).unwrap();
        assert_eq!(p_rank(&z4, 2).unwrap(), 1);
        let v4 = PermGroup::from_cycles(4, &["(0 1)", "(2 3)"]).unwrap();
        assert_eq!(p_rank(&v4, 2).unwrap(), 2);
        let q8 = PermGroup::from_cycles(8, &["(0 1 2 3)(4 5 6 7)", "(0 4 2 6)(1 7 3 5)"]).unwrap();
        assert_eq!(p_rank(&q8, 2).unwrap(), 1);
        let c = rank_one_classification(&q8, 2).unwrap();
        assert_eq!(c.kind, SylowType::GeneralizedQuaternion);
        assert!(rank_one_classification(&v4, 2).is_err());
    }

    #[test]
    fn np_examples() {
        let z6 = PermGroup::from_cycles(6, &["(0 1 2 3 4 5)"]).unwrap();
        assert_eq!(np_closure(&z6, 2).unwrap().order(), 2);
        assert_eq!(np_closure(&z6, 3).unwrap().order(), 3);
    }
}
