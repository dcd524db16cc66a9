//! Finite permutation groups by explicit element enumeration.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{capacity, usage, Result};
use crate::grp::perm::Perm;

/// Element enumeration refuses groups larger than this unless told otherwise.
pub const DEFAULT_MAX_ORDER: usize = 200_000;

/// Groups up to this order get a full multiplication table.
const TABLE_LIMIT: usize = 1024;

struct GroupData {
    degree: usize,
    name: Option<String>,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    /// `elements[i] = generators[g] * elements[j]` for `word_step[i] = (g, j)`; identity has none.
    word_step: Vec<Option<(u32, u32)>>,
    table: Option<Vec<u32>>,
}

/// A finite permutation group with its full element list cached.
///
/// Element 0 is always the identity. Cloning is cheap.
#[derive(Clone)]
pub struct PermGroup(Arc<GroupData>);

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.degree == other.0.degree
                && self.0.elements.len() == other.0.elements.len()
                && self
                    .0
                    .generators
                    .iter()
                    .all(|g| other.0.index.contains_key(g))
                && other
                    .0
                    .generators
                    .iter()
                    .all(|g| self.0.index.contains_key(g)))
    }
}
impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup({}, order {})",
            self.name().unwrap_or("?"),
            self.order()
        )
    }
}

impl PermGroup {
    /// Enumerate the closure of `generators` on `0..degree`.
    pub fn new(degree: usize, generators: Vec<Perm>, max_order: usize) -> Result<PermGroup> {
        Self::with_name(degree, generators, max_order, None)
    }

    pub fn with_name(
        degree: usize,
        generators: Vec<Perm>,
        max_order: usize,
        name: Option<String>,
    ) -> Result<PermGroup> {
        for g in &generators {
            if g.degree() != degree {
                return Err(usage!(
                    "generator {g:?} has degree {} but the group has degree {degree}",
                    g.degree()
                ));
            }
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut word_step = vec![None];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (gi, g) in generators.iter().enumerate() {
                let prod = g.compose(&elements[i]);
                if index.contains_key(&prod) {
                    continue;
                }
                if elements.len() >= max_order {
                    return Err(capacity!("group order exceeds the cap of {max_order}"));
                }
                index.insert(prod.clone(), elements.len() as u32);
                elements.push(prod);
                word_step.push(Some((gi as u32, i as u32)));
                queue.push_back(elements.len() - 1);
            }
        }
        let n = elements.len();
        let inverse: Vec<u32> = elements.iter().map(|e| index[&e.inverse()]).collect();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.compose(b)]);
                }
            }
            t
        });
        let mut data = GroupData {
            degree,
            name,
            generators,
            elements,
            index,
            inverse,
            orders: Vec::new(),
            word_step,
            table,
        };
        data.orders = (0..n)
            .map(|i| {
                let mut k = 1u32;
                let mut x = data.elements[i].clone();
                while !x.is_identity() {
                    x = data.elements[i].compose(&x);
                    k += 1;
                }
                k
            })
            .collect();
        Ok(PermGroup(Arc::new(data)))
    }

    /// Convenience constructor from cycle-notation strings.
    pub fn from_cycles(degree: usize, generators: &[&str]) -> Result<PermGroup> {
        let gens = generators
            .iter()
            .map(|s| Perm::parse_cycles(s, degree))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(degree, gens, DEFAULT_MAX_ORDER)
    }

    pub fn named(self, name: &str) -> PermGroup {
        let d = &self.0;
        PermGroup(Arc::new(GroupData {
            degree: d.degree,
            name: Some(name.to_string()),
            generators: d.generators.clone(),
            elements: d.elements.clone(),
            index: d.index.clone(),
            inverse: d.inverse.clone(),
            orders: d.orders.clone(),
            word_step: d.word_step.clone(),
            table: d.table.clone(),
        }))
    }

    pub fn name(&self) -> Option<&str> {
        self.0.name.as_deref()
    }
    pub fn degree(&self) -> usize {
        self.0.degree
    }
    pub fn order(&self) -> usize {
        self.0.elements.len()
    }
    pub fn generators(&self) -> &[Perm] {
        &self.0.generators
    }
    pub fn elements(&self) -> &[Perm] {
        &self.0.elements
    }
    pub fn element(&self, i: usize) -> &Perm {
        &self.0.elements[i]
    }
    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.0.index.get(p).map(|&i| i as usize)
    }

    /// Index of the `k`-th generator as an element.
    pub fn generator_index(&self, k: usize) -> usize {
        self.index_of(&self.0.generators[k])
            .expect("generator is an element")
    }

    /// `(generator, previous element)` such that element `i` equals
    /// `generator * previous`; `None` for the identity.
    pub fn word_step(&self, i: usize) -> Option<(usize, usize)> {
        self.0.word_step[i].map(|(g, j)| (g as usize, j as usize))
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.0.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.0.index[&self.0.elements[a].compose(&self.0.elements[b])] as usize,
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inverse[a] as usize
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.0.orders[a] as usize
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        let mut r = 0;
        for _ in 0..k % self.element_order(a) {
            r = self.mul(r, a);
        }
        r
    }

    /// `g x g^-1`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        let gens: Vec<usize> = (0..self.generators().len())
            .map(|k| self.generator_index(k))
            .collect();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.commute(a, b)))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_members(self, (0..self.order()).collect())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_members(self, vec![0])
    }

    /// Subgroup generated by the given elements.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut members = vec![0usize];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup {
            group: self.clone(),
            members,
            mask,
        }
    }

    /// Subgroup generated by explicit permutations, which must lie in the group.
    pub fn generate_perms(&self, perms: &[Perm]) -> Result<Subgroup> {
        let idx = perms
            .iter()
            .map(|p| {
                self.index_of(p)
                    .ok_or_else(|| usage!("{p:?} is not an element of the group"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.generate(&idx))
    }

    /// Smallest normal subgroup containing the given elements.
    pub fn normal_closure(&self, elems: &[usize]) -> Subgroup {
        let mut conj: Vec<usize> = Vec::new();
        let mut seen = HashSet::new();
        for &x in elems {
            for g in 0..self.order() {
                let c = self.conjugate(g, x);
                if seen.insert(c) {
                    conj.push(c);
                }
            }
        }
        self.generate(&conj)
    }

    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        let members = h.members.iter().map(|&x| self.conjugate(g, x)).collect();
        Subgroup::from_members(self, members)
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let gens = h.generators();
        let members = (0..self.order())
            .filter(|&g| gens.iter().all(|&x| h.contains(self.conjugate(g, x))))
            .collect();
        Subgroup::from_members(self, members)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let hg = h.generators();
        let gg: Vec<usize> = (0..self.generators().len())
            .map(|k| self.generator_index(k))
            .collect();
        gg.iter()
            .all(|&g| hg.iter().all(|&x| h.contains(self.conjugate(g, x))))
    }

    /// Elements of order exactly `k`.
    pub fn elements_of_order(&self, k: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.element_order(i) == k)
            .collect()
    }

    /// Left cosets `gH`, ordered by smallest member; each coset sorted.
    pub fn left_cosets(&self, h: &Subgroup) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() {
            if assigned[g] {
                continue;
            }
            let mut coset: Vec<usize> = h.members.iter().map(|&x| self.mul(g, x)).collect();
            coset.sort_unstable();
            for &c in &coset {
                assigned[c] = true;
            }
            out.push(coset);
        }
        out
    }

    /// For each element, the index of its left coset in [`PermGroup::left_cosets`].
    pub fn left_coset_index(&self, h: &Subgroup) -> (Vec<Vec<usize>>, Vec<usize>) {
        let cosets = self.left_cosets(h);
        let mut idx = vec![0; self.order()];
        for (ci, c) in cosets.iter().enumerate() {
            for &g in c {
                idx[g] = ci;
            }
        }
        (cosets, idx)
    }

    /// The quotient `N/K` (K normal in N) realized as a permutation group on
    /// the cosets of K in N, acting by left multiplication.
    pub fn quotient(&self, n: &Subgroup, k: &Subgroup) -> Result<PermGroup> {
        if !k.is_subgroup_of(n) {
            return Err(usage!("quotient requires K <= N"));
        }
        let cosets = {
            let mut assigned = vec![false; self.order()];
            let mut out = Vec::new();
            for &g in &n.members {
                if assigned[g] {
                    continue;
                }
                let mut c: Vec<usize> = k.members.iter().map(|&x| self.mul(g, x)).collect();
                c.sort_unstable();
                for &x in &c {
                    assigned[x] = true;
                }
                out.push(c);
            }
            out
        };
        let mut which = HashMap::new();
        for (ci, c) in cosets.iter().enumerate() {
            for &x in c {
                which.insert(x, ci);
            }
        }
        for &g in &n.generators() {
            for &x in &k.generators() {
                if !k.contains(self.conjugate(g, x)) {
                    return Err(usage!("K is not normal in N"));
                }
            }
        }
        let gens = n
            .generators()
            .iter()
            .map(|&g| {
                let images = cosets.iter().map(|c| which[&self.mul(g, c[0])]).collect();
                Perm::from_images(images)
            })
            .collect::<Result<Vec<_>>>()?;
        let q = PermGroup::new(cosets.len(), gens, DEFAULT_MAX_ORDER)?;
        debug_assert_eq!(q.order(), cosets.len());
        Ok(q)
    }

    /// Every subgroup, sorted by order and then by member list.
    ///
    /// Closes the set of cyclic subgroups under joins with cyclic subgroups,
    /// which reaches every subgroup since each is the join of its cyclic ones.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut cyclic: Vec<Subgroup> = Vec::new();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for g in 0..self.order() {
            let s = self.generate(&[g]);
            if seen.insert(s.members.clone()) {
                cyclic.push(s);
            }
        }
        let mut all: Vec<Subgroup> = cyclic.clone();
        let mut frontier = cyclic.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for c in &cyclic {
                    if c.is_subgroup_of(s) {
                        continue;
                    }
                    let mut gens = s.generators();
                    gens.extend(c.generators());
                    let j = self.generate(&gens);
                    if seen.insert(j.members.clone()) {
                        next.push(j.clone());
                        all.push(j);
                    }
                }
            }
            frontier = next;
        }
        all.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
        all
    }
}

/// A subgroup of a [`PermGroup`], stored as a sorted list of element indices.
#[derive(Clone)]
pub struct Subgroup {
    group: PermGroup,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}
impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators()
            .iter()
            .map(|&g| self.group.element(g).to_cycle_string())
            .collect();
        write!(f, "<{}> (order {})", gens.join(", "), self.order())
    }
}

impl Subgroup {
    /// Trusted constructor: `members` must already form a subgroup.
    pub(crate) fn from_members(group: &PermGroup, mut members: Vec<usize>) -> Subgroup {
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![false; group.order()];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup {
            group: group.clone(),
            members,
            mask,
        }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }
    pub fn order(&self) -> usize {
        self.members.len()
    }
    pub fn members(&self) -> &[usize] {
        &self.members
    }
    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }
    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Subgroup::from_members(&self.group, members)
    }

    /// A small generating set, chosen greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let g = &self.group;
        let mut gens = Vec::new();
        let mut span = g.generate(&[]);
        // prefer elements of large order to keep the set short
        let mut cand = self.members.clone();
        cand.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
        for x in cand {
            if span.order() == self.order() {
                break;
            }
            if !span.contains(x) {
                gens.push(x);
                span = g.generate(&gens);
            }
        }
        gens
    }

    pub fn generator_perms(&self) -> Vec<Perm> {
        self.generators()
            .iter()
            .map(|&i| self.group.element(i).clone())
            .collect()
    }

    /// Structural checks: identity, closure, inverses, Lagrange.
    pub fn check(&self) -> bool {
        let g = &self.group;
        self.contains(0)
            && self.members.iter().all(|&a| {
                self.contains(g.inv(a)) && self.members.iter().all(|&b| self.contains(g.mul(a, b)))
            })
            && g.order().is_multiple_of(self.order())
    }

    /// The subgroup as a permutation group in its own right.
    pub fn as_group(&self) -> Result<PermGroup> {
        let gens = self.generator_perms();
        PermGroup::new(self.group.degree(), gens, DEFAULT_MAX_ORDER)
    }
}
