//! Finite G-sets: orbits, rank, fixed points, products and torsors.

use crate::error::{internal, usage, Result};
use crate::grp::{Perm, PermGroup, Subgroup};

/// A finite set with a left action of a permutation group, given by one
/// permutation of the points per group generator.
#[derive(Clone, Debug)]
pub struct GSet {
    group: PermGroup,
    points: Vec<String>,
    action: Vec<Perm>,
    /// Permutation of the points for every group element.
    elements: Vec<Perm>,
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.points == other.points && self.action == other.action
    }
}

impl GSet {
    /// Validates that the generator permutations define an action of the group.
    pub fn new(group: &PermGroup, points: Vec<String>, action: Vec<Perm>) -> Result<GSet> {
        let n = points.len();
        if action.len() != group.generators().len() {
            return Err(usage!(
                "{} point permutations for {} group generators",
                action.len(),
                group.generators().len()
            ));
        }
        if action.iter().any(|p| p.degree() != n) {
            return Err(usage!(
                "point permutation degree differs from the {n} points"
            ));
        }
        let mut elements = Vec::with_capacity(group.order());
        elements.push(Perm::identity(n));
        for i in 1..group.order() {
            let (k, j) = group.word_step(i).expect("non-identity has a word");
            let p = action[k].compose(&elements[j]);
            elements.push(p);
        }
        for (k, gen) in action.iter().enumerate() {
            let gk = group.generator_index(k);
            for j in 0..group.order() {
                if gen.compose(&elements[j]) != elements[group.mul(gk, j)] {
                    return Err(usage!(
                        "point permutations violate a group relation (generator {k})"
                    ));
                }
            }
        }
        Ok(GSet {
            group: group.clone(),
            points,
            action,
            elements,
        })
    }

    fn from_images(
        group: &PermGroup,
        points: Vec<String>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<GSet> {
        let n = points.len();
        let action = (0..group.generators().len())
            .map(|k| Perm::from_images((0..n).map(|x| f(k, x)).collect()))
            .collect::<Result<Vec<_>>>()?;
        GSet::new(group, points, action)
    }

    /// `G/H` with `G` acting by left multiplication; points are left cosets
    /// in the order of [`PermGroup::left_cosets`].
    pub fn cosets(group: &PermGroup, h: &Subgroup) -> Result<GSet> {
        let (cosets, idx) = group.left_coset_index(h);
        let points = cosets.iter().map(|c| format!("g{}H", c[0])).collect();
        GSet::from_images(group, points, |k, c| {
            idx[group.mul(group.generator_index(k), cosets[c][0])]
        })
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(group: &PermGroup) -> Result<GSet> {
        GSet::cosets(group, &group.trivial())
    }

    /// `n` points with trivial action.
    pub fn trivial(group: &PermGroup, n: usize) -> Result<GSet> {
        let points = (0..n).map(|i| i.to_string()).collect();
        GSet::from_images(group, points, |_, x| x)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }
    pub fn points(&self) -> &[String] {
        &self.points
    }
    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
    pub fn generator_action(&self) -> &[Perm] {
        &self.action
    }

    /// Image of `x` under group element `g`.
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.elements[g].apply(x)
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let fixing: Vec<usize> = (0..self.group.order())
            .filter(|&g| self.act(g, x) == x)
            .collect();
        self.group.generate(&fixing)
    }

    /// `X × Y` with the diagonal action; point `(x, y)` has index `x |Y| + y`.
    pub fn product(&self, other: &GSet) -> Result<GSet> {
        self.same_group(other)?;
        let m = other.len();
        let points = self
            .points
            .iter()
            .flat_map(|a| other.points.iter().map(move |b| format!("({a},{b})")))
            .collect();
        GSet::from_images(&self.group, points, |k, xy| {
            self.action[k].apply(xy / m) * m + other.action[k].apply(xy % m)
        })
    }

    /// `X ⊔ Y`; the points of `Y` follow those of `X`.
    pub fn coproduct(&self, other: &GSet) -> Result<GSet> {
        self.same_group(other)?;
        let n = self.len();
        let mut points: Vec<String> = self.points.iter().map(|p| format!("0:{p}")).collect();
        points.extend(other.points.iter().map(|p| format!("1:{p}")));
        GSet::from_images(&self.group, points, |k, x| {
            if x < n {
                self.action[k].apply(x)
            } else {
                n + other.action[k].apply(x - n)
            }
        })
    }

    fn same_group(&self, other: &GSet) -> Result<()> {
        if self.group != other.group {
            return Err(usage!("G-sets over different groups"));
        }
        Ok(())
    }
}

/// One orbit with the stabilizer of its first point.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub points: Vec<usize>,
    pub stabilizer: Subgroup,
}

/// Orbits ordered by smallest point, each sorted.
pub fn orbit_decomposition(x: &GSet) -> Result<Vec<Orbit>> {
    let mut seen = vec![false; x.len()];
    let mut out = Vec::new();
    for start in 0..x.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            for gen in &x.action {
                let q = gen.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        let stabilizer = x.stabilizer(start);
        if orbit.len() * stabilizer.order() != x.group.order() {
            return Err(internal!(
                "orbit of size {} with stabilizer of order {} in a group of order {}",
                orbit.len(),
                stabilizer.order(),
                x.group.order()
            ));
        }
        out.push(Orbit {
            points: orbit,
            stabilizer,
        });
    }
    Ok(out)
}

/// The rank of a finite G-set is its cardinality.
pub fn gset_rank(x: &GSet) -> usize {
    x.len()
}

/// Rank over a finite groupoid given as a list of (group, G-set) components.
pub fn groupoid_rank(components: &[GSet]) -> usize {
    components.iter().map(gset_rank).max().unwrap_or(0)
}

/// Points fixed by every element of `q`.
pub fn fixed_points(x: &GSet, q: &Subgroup) -> Vec<usize> {
    let gens = q.generators();
    (0..x.len())
        .filter(|&p| gens.iter().all(|&g| x.act(g, p) == p))
        .collect()
}

/// `Σ_g |X^g|`, which equals `|G|` times the number of orbits.
pub fn burnside_sum(x: &GSet) -> usize {
    (0..x.group.order())
        .map(|g| (0..x.len()).filter(|&p| x.act(g, p) == p).count())
        .sum()
}

/// Whether `gamma` acts freely and transitively on `x`. The `gamma` action
/// must commute with the action of `x`'s group; otherwise a usage error.
pub fn torsor_check(x: &GSet, gamma: &GSet) -> Result<bool> {
    if gamma.len() != x.len() {
        return Err(usage!("the two actions live on different point sets"));
    }
    for a in &x.action {
        for b in &gamma.action {
            if a.compose(b) != b.compose(a) {
                return Err(usage!("the Γ-action does not commute with the G-action"));
            }
        }
    }
    let orbits = orbit_decomposition(gamma)?;
    let transitive = orbits.len() == 1 || x.is_empty() && orbits.is_empty();
    let free = orbits.iter().all(|o| o.stabilizer.is_trivial());
    Ok(transitive && free && !x.is_empty())
}

/// `G` acting on itself by `γ · x = x γ⁻¹`.
pub fn right_translation(group: &PermGroup) -> Result<GSet> {
    let points = (0..group.order()).map(|i| format!("g{i}")).collect();
    GSet::from_images(group, points, |k, x| {
        group.mul(x, group.inv(group.generator_index(k)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermGroup {
        PermGroup::from_cycles(3, &["(0,1)", "(0,1,2)"]).unwrap()
    }

    #[test]
    fn regular_action_is_one_free_orbit() {
        let g = s3();
        let x = GSet::regular(&g).unwrap();
        let o = orbit_decomposition(&x).unwrap();
        assert_eq!(o.len(), 1);
        assert!(o[0].stabilizer.is_trivial());
        assert_eq!(burnside_sum(&x), 6);
        let t = GSet::trivial(&g, 4).unwrap();
        assert_eq!(orbit_decomposition(&t).unwrap().len(), 4);
    }

    #[test]
    fn s3_on_pairs() {
        let g = s3();
        // the pairs {0,1}, {0,2}, {1,2} through the action on unordered pairs
        let pairs = [(0, 1), (0, 2), (1, 2)];
        let points = pairs.iter().map(|p| format!("{p:?}")).collect();
        let action = g
            .generators()
            .iter()
            .map(|perm| {
                let images = pairs
                    .iter()
                    .map(|&(a, b)| {
                        let (x, y) = (perm.apply(a), perm.apply(b));
                        let key = (x.min(y), x.max(y));
                        pairs.iter().position(|&q| q == key).unwrap()
                    })
                    .collect();
                Perm::from_images(images).unwrap()
            })
            .collect();
        let x = GSet::new(&g, points, action).unwrap();
        let o = orbit_decomposition(&x).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].stabilizer.order(), 2);
    }

    #[test]
    fn ranks() {
        let g = s3();
        let five = GSet::trivial(&g, 5).unwrap();
        assert_eq!(gset_rank(&five), 5);
        assert_eq!(gset_rank(&GSet::trivial(&g, 0).unwrap()), 0);
        let z2 = PermGroup::from_cycles(2, &["(0,1)"]).unwrap();
        let comps = [
            GSet::trivial(&z2, 2).unwrap(),
            GSet::trivial(&g, 7).unwrap(),
        ];
        assert_eq!(groupoid_rank(&comps), 7);
        let x = GSet::regular(&g).unwrap();
        assert_eq!(gset_rank(&x.product(&five).unwrap()), 30);
        assert_eq!(gset_rank(&x.coproduct(&five).unwrap()), 11);
    }

    #[test]
    fn torsors() {
        let g = s3();
        let x = GSet::regular(&g).unwrap();
        let r = right_translation(&g).unwrap();
        assert!(torsor_check(&x, &r).unwrap());
        let t = PermGroup::from_cycles(1, &[]).unwrap();
        let pt = GSet::trivial(&t, 1).unwrap();
        assert!(torsor_check(&pt, &pt).unwrap());
        let a3 = g.generate(&[g.generator_index(1)]);
        let cosets = GSet::cosets(&g, &a3).unwrap();
        let left = GSet::cosets(&g, &a3).unwrap();
        // left translation on G/H does not commute with itself for nonabelian quotients,
        // but G/A3 is abelian; the action is transitive and not free
        assert!(!torsor_check(&cosets, &left).unwrap());
    }

    #[test]
    fn fixed_points_of_subgroups() {
        let g = s3();
        let h = g.generate(&[g.generator_index(0)]);
        let x = GSet::cosets(&g, &h).unwrap();
        assert_eq!(fixed_points(&x, &g.trivial()).len(), 3);
        // q fixes gH iff q ⊆ g H g^-1
        let fixed = fixed_points(&x, &h);
        let (cosets, _) = g.left_coset_index(&h);
        for (c, coset) in cosets.iter().enumerate() {
            let conj = g.conjugate_subgroup(&h, coset[0]);
            assert_eq!(fixed.contains(&c), h.is_subgroup_of(&conj));
        }
        let free = GSet::regular(&g).unwrap();
        assert!(fixed_points(&free, &h).is_empty());
    }
}
