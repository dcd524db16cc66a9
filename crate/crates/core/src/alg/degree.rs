//! The splitting tower computed componentwise, degrees and degree functions.
//!
//! Over a field every stage `A^[n]` is étale over `A^[n-1]`, and both split
//! into fields. The tower is therefore tracked as a multiset of nodes
//! `(L, C)` with `L` a field and `C` an étale `L`-algebra: expanding a node
//! computes `C ⊗_L C = C × A'` and hands `g A'` to each field factor `g C`.
//! Over a finite field an étale algebra is determined up to isomorphism by
//! the degrees of its factors, so nodes after the first are rebuilt from
//! that data and identical nodes are expanded once.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::alg::idempotents::primitive_idempotents;
use crate::alg::separable::{etale_via_trace_form, separability_idempotent};
use crate::alg::structure::{StructureAlgebra, Vector};
use crate::alg::tower::{splitting_step, splitting_tower_direct, RelativeAlgebra};
use crate::config::Config;
use crate::error::{capacity, internal, usage, Error, Result};
use crate::exact::factor::is_irreducible_finite;
use crate::exact::field::MAX_EXTENSION_DEGREE;
use crate::exact::{Field, Matrix, Poly};
use crate::par;

/// Largest stage the literal tower may build when the componentwise route
/// does not apply (number-field components in characteristic 0).
const DIRECT_STAGE_LIMIT: usize = 128;

/// One isomorphism class of node at a stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerComponent {
    /// Name of the node's base field.
    pub field: String,
    /// Degree of that field over the ground field.
    pub field_degree: usize,
    /// Degrees of the node algebra's field factors over the node's field.
    pub factor_degrees: Vec<usize>,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerStage {
    /// Dimension over the ground field.
    pub dim: u64,
    pub components: Vec<TowerComponent>,
}

/// Stages `A^[1], A^[2], ...` down to the first zero stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingTowerRecord {
    pub stages: Vec<TowerStage>,
    pub degree: usize,
    /// `"componentwise"` or `"direct"`.
    pub method: String,
}

impl SplittingTowerRecord {
    pub fn dims(&self) -> Vec<u64> {
        self.stages.iter().map(|s| s.dim).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct NodeKey {
    p: u64,
    /// Degree of the node field over the prime field (1 for Q).
    field_degree: usize,
    degrees: Vec<usize>,
}

#[derive(Clone, Debug)]
struct Expansion {
    factor_degrees: Vec<usize>,
    children: Vec<(NodeKey, u64)>,
}

/// Smallest monic irreducible polynomial of degree `d` over `field`, in the
/// order of [`Field::element_at`] digits with the constant term varying fastest.
fn canonical_irreducible(field: &Field, d: usize) -> Poly {
    let base = field.order_u64().unwrap_or(u64::MAX).min(1 << 20);
    if d == 1 {
        return Poly::x(field);
    }
    let mut index: u64 = 0;
    loop {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut rest = index;
        for _ in 0..d {
            coeffs.push(field.element_at(rest % base));
            rest /= base;
        }
        coeffs.push(field.one());
        let p = Poly::new(field, coeffs);
        if is_irreducible_finite(&p) {
            return p;
        }
        index += 1;
    }
}

/// The field with `p^degree` elements, with a canonical modulus.
fn canonical_field(p: u64, degree: usize) -> Result<Field> {
    if p == 0 {
        return Ok(Field::rationals());
    }
    if degree == 1 {
        return Field::prime(p);
    }
    if degree > MAX_EXTENSION_DEGREE {
        return Err(capacity!(
            "a tower component needs F_{p}^{degree}, beyond the supported extension degree {MAX_EXTENSION_DEGREE}"
        ));
    }
    let fp = Field::prime(p)?;
    let m = canonical_irreducible(&fp, degree);
    let modulus = m
        .coeffs()
        .iter()
        .map(|c| match c {
            crate::exact::Scalar::Mod(v) => *v,
            _ => unreachable!("prime field coefficient"),
        })
        .collect();
    Field::extension(p, modulus)
}

/// `∏ L[x]/(f_d)` over the factor degrees, with canonical `f_d`.
fn canonical_algebra(field: &Field, degrees: &[usize]) -> Result<StructureAlgebra> {
    let mut acc = StructureAlgebra::zero(field);
    for &d in degrees {
        let factor = StructureAlgebra::from_polynomial(&canonical_irreducible(field, d))?;
        acc = acc.direct_product(&factor)?;
    }
    Ok(acc)
}

fn field_key(field: &Field) -> (u64, usize) {
    (field.characteristic(), field.prime_degree())
}

/// One splitting step at a node, returning the isomorphism classes of the
/// children. `Ok(None)` when a child field is a proper number field.
fn expand(field: &Field, c: &StructureAlgebra, cfg: &Config) -> Result<Option<Expansion>> {
    let rel = RelativeAlgebra::over_ground(c);
    let step = splitting_step(&rel)?;
    let comps = primitive_idempotents(c, cfg)?;
    let (p, base_degree) = field_key(field);
    let mut factor_degrees = Vec::new();
    let mut children: BTreeMap<NodeKey, u64> = BTreeMap::new();
    let a_prime = &step.complement;
    for g in &comps.idempotents {
        let (_, _, g_span) = c.corner(g)?;
        let d = g_span.rank();
        factor_degrees.push(d);
        let psi_g = step.structure_map.apply(g);
        if a_prime.is_zero(&psi_g) {
            continue;
        }
        let (child, _, _) = a_prime.corner(&psi_g)?;
        let child_comps = primitive_idempotents(&child, cfg)?;
        let mut degrees = Vec::new();
        for h in &child_comps.idempotents {
            let (_, _, h_span) = child.corner(h)?;
            let dim = h_span.rank();
            if dim % d != 0 {
                return Err(internal!(
                    "tower factor of dimension {dim} over a degree-{d} field"
                ));
            }
            degrees.push(dim / d);
        }
        if p == 0 && d > 1 {
            return Ok(None);
        }
        degrees.sort_unstable();
        let key = NodeKey {
            p,
            field_degree: if p == 0 { 1 } else { base_degree * d },
            degrees,
        };
        *children.entry(key).or_insert(0) += 1;
    }
    factor_degrees.sort_unstable();
    Ok(Some(Expansion {
        factor_degrees,
        children: children.into_iter().collect(),
    }))
}

fn expand_key(key: &NodeKey, cfg: &Config) -> Result<Option<Expansion>> {
    let field = canonical_field(key.p, key.field_degree)?;
    let c = canonical_algebra(&field, &key.degrees)?;
    expand(&field, &c, cfg)
}

fn checked(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b)
        .ok_or_else(|| capacity!("tower multiplicities overflow 64 bits"))
}

/// The splitting tower of an algebra over its ground field.
///
/// `max_steps` defaults to `dim + 1`; needing more steps is a capacity error.
pub fn splitting_tower(
    a: &StructureAlgebra,
    max_steps: Option<usize>,
    cfg: &Config,
) -> Result<SplittingTowerRecord> {
    let a = a.clone().without_action();
    if a.is_graded() {
        return Err(usage!(
            "the splitting tower is defined for ungraded algebras"
        ));
    }
    let max_steps = max_steps.unwrap_or(a.dim() + 1);
    if a.is_zero_algebra() {
        return Ok(SplittingTowerRecord {
            stages: vec![TowerStage {
                dim: 0,
                components: Vec::new(),
            }],
            degree: 0,
            method: "componentwise".into(),
        });
    }
    if separability_idempotent(&a)?.is_none() {
        return Err(Error::not_separable(
            "algebra is not separable over its ground field",
        ));
    }
    let k = a.field().clone();
    let (_, k_degree) = field_key(&k);
    if max_steps == 0 {
        return Err(capacity!(
            "splitting tower did not terminate within 0 steps"
        ));
    }
    let Some(root) = expand(&k, &a, cfg)? else {
        return direct_record(&a, max_steps);
    };
    let mut stages = vec![TowerStage {
        dim: a.dim() as u64,
        components: vec![TowerComponent {
            field: k.name(),
            field_degree: 1,
            factor_degrees: root.factor_degrees.clone(),
            multiplicity: 1,
        }],
    }];
    let mut memo: HashMap<NodeKey, Expansion> = HashMap::new();
    let mut level: BTreeMap<NodeKey, u64> = root.children.iter().cloned().collect();
    let mut steps = 1;
    loop {
        let mut dim = 0u64;
        let mut components = Vec::new();
        for (key, mult) in &level {
            let rel_degree = if key.p == 0 {
                1
            } else {
                key.field_degree / k_degree
            };
            let node_dim = (rel_degree * key.degrees.iter().sum::<usize>()) as u64;
            dim = dim
                .checked_add(checked(node_dim, *mult)?)
                .ok_or_else(|| capacity!("tower dimension overflows 64 bits"))?;
            components.push(TowerComponent {
                field: canonical_field(key.p, key.field_degree)?.name(),
                field_degree: rel_degree,
                factor_degrees: key.degrees.clone(),
                multiplicity: *mult,
            });
        }
        stages.push(TowerStage { dim, components });
        if level.is_empty() {
            break;
        }
        if steps >= max_steps {
            return Err(capacity!(
                "splitting tower did not terminate within {max_steps} steps"
            ));
        }
        let fresh: Vec<NodeKey> = level
            .keys()
            .filter(|k| !memo.contains_key(*k))
            .cloned()
            .collect();
        let results = par::map(cfg.exec, &fresh, |key| expand_key(key, cfg));
        for (key, r) in fresh.into_iter().zip(results) {
            match r? {
                Some(e) => {
                    memo.insert(key, e);
                }
                None => return direct_record(&a, max_steps),
            }
        }
        let mut next: BTreeMap<NodeKey, u64> = BTreeMap::new();
        for (key, mult) in &level {
            for (child, cm) in &memo[key].children {
                let slot = next.entry(child.clone()).or_insert(0);
                *slot = slot
                    .checked_add(checked(*mult, *cm)?)
                    .ok_or_else(|| capacity!("tower multiplicities overflow 64 bits"))?;
            }
        }
        level = next;
        steps += 1;
    }
    let degree = stages.iter().filter(|s| s.dim > 0).count();
    Ok(SplittingTowerRecord {
        stages,
        degree,
        method: "componentwise".into(),
    })
}

fn direct_record(a: &StructureAlgebra, max_steps: usize) -> Result<SplittingTowerRecord> {
    let t = splitting_tower_direct(
        &RelativeAlgebra::over_ground(a),
        max_steps,
        DIRECT_STAGE_LIMIT,
    )?;
    Ok(SplittingTowerRecord {
        stages: t.stages[1..]
            .iter()
            .map(|s| TowerStage {
                dim: s.dim() as u64,
                components: Vec::new(),
            })
            .collect(),
        degree: t.degree,
        method: "direct".into(),
    })
}

/// Degree of a separable algebra over its ground field.
pub fn degree(a: &StructureAlgebra, cfg: &Config) -> Result<usize> {
    Ok(splitting_tower(a, None, cfg)?.degree)
}

/// Degree of one base component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentDegree {
    /// The primitive idempotent of the base cutting out this component.
    #[serde(skip)]
    pub idempotent: Vector,
    /// Dimension of the component field over the ground field.
    pub field_dim: usize,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeFunction {
    pub components: Vec<ComponentDegree>,
    pub global: usize,
}

impl DegreeFunction {
    pub fn degrees(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.degree).collect()
    }
}

/// Local degrees of `b.total` over each field factor of an étale base.
pub fn degree_function(b: &RelativeAlgebra, cfg: &Config) -> Result<DegreeFunction> {
    if !etale_via_trace_form(&b.base) {
        return Err(usage!("degree functions need an étale base"));
    }
    let base_comps = primitive_idempotents(&b.base, cfg)?;
    let mut components = Vec::new();
    for g in &base_comps.idempotents {
        let (r_i, r_incl, _) = b.base.corner(g)?;
        let image = b.map.apply(g);
        let degree = if b.total.is_zero(&image) {
            0
        } else {
            let (b_i, _, b_ech) = b.total.corner(&image)?;
            if r_i.dim() == 1 {
                degree(&b_i, cfg)?
            } else {
                let cols = (0..r_i.dim())
                    .map(|j| {
                        b_ech
                            .coordinates(&b.map.apply(&r_incl.column(j)))
                            .ok_or_else(|| internal!("structure map leaves the component"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let map = Matrix::from_columns(b.total.field(), b_i.dim(), &cols);
                let rel = RelativeAlgebra::new(r_i.clone(), b_i.clone(), map)?;
                splitting_tower_direct(&rel, b_i.dim() + 1, DIRECT_STAGE_LIMIT)?.degree
            }
        };
        components.push(ComponentDegree {
            idempotent: g.clone(),
            field_dim: r_i.dim(),
            degree,
        });
    }
    let global = components.iter().map(|c| c.degree).max().unwrap_or(0);
    Ok(DegreeFunction { components, global })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::par::ExecMode;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn split_algebras_have_degree_n() {
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            for n in 1..=5 {
                let t = splitting_tower(&StructureAlgebra::split(&f, n), None, &cfg()).unwrap();
                assert_eq!(t.degree, n);
            }
        }
        let f = Field::prime(2).unwrap();
        let t = splitting_tower(&StructureAlgebra::split(&f, 2), None, &cfg()).unwrap();
        assert_eq!(t.dims(), vec![2, 2, 0]);
        let t = splitting_tower(&StructureAlgebra::split(&f, 3), None, &cfg()).unwrap();
        assert_eq!(t.dims(), vec![3, 6, 6, 0]);
    }

    #[test]
    fn field_extensions_have_degree_equal_to_dimension() {
        let f = Field::prime(2).unwrap();
        let f8 = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[1, 1, 0, 1])).unwrap();
        assert_eq!(degree(&f8, &cfg()).unwrap(), 3);
        let f16 = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[1, 1, 0, 0, 1])).unwrap();
        let t = splitting_tower(&f16, None, &cfg()).unwrap();
        assert_eq!(t.degree, 4);
        assert_eq!(t.dims(), vec![4, 12, 24, 24, 0]);
    }

    #[test]
    fn componentwise_matches_direct() {
        let f = Field::prime(2).unwrap();
        let f4 = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[1, 1, 1])).unwrap();
        let mixed = f4.direct_product(&StructureAlgebra::ground(&f)).unwrap();
        for a in [f4, mixed, StructureAlgebra::split(&f, 3)] {
            let tree = splitting_tower(&a, None, &cfg()).unwrap();
            let direct = splitting_tower_direct(&RelativeAlgebra::over_ground(&a), 8, 128).unwrap();
            let dd: Vec<u64> = direct.dims()[1..].iter().map(|&d| d as u64).collect();
            assert_eq!(tree.dims(), dd);
        }
    }

    #[test]
    fn split_rational_algebras() {
        let q = Field::rationals();
        for n in [1, 4, 8] {
            let t = splitting_tower(&StructureAlgebra::split(&q, n), None, &cfg()).unwrap();
            assert_eq!(t.degree, n);
        }
    }

    #[test]
    fn rational_number_field_falls_back_to_direct() {
        let q = Field::rationals();
        let a = StructureAlgebra::from_polynomial(&Poly::from_i64(&q, &[-2, 0, 1])).unwrap();
        let t = splitting_tower(&a, None, &cfg()).unwrap();
        assert_eq!(t.degree, 2);
        assert_eq!(t.method, "direct");
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let f = Field::prime(3).unwrap();
        let a = StructureAlgebra::split(&f, 5);
        let s = splitting_tower(&a, None, &cfg().with_exec(ExecMode::Sequential)).unwrap();
        let p = splitting_tower(&a, None, &cfg().with_exec(ExecMode::Parallel)).unwrap();
        assert_eq!(s, p);
    }

    #[test]
    fn degree_function_on_split_base() {
        let f = Field::prime(5).unwrap();
        let base = StructureAlgebra::split(&f, 2);
        let total = StructureAlgebra::split(&f, 5);
        // (1,0) -> first two coordinates, (0,1) -> last three
        let map = Matrix::from_i64(
            &f,
            &[vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 1]],
        );
        let rel = RelativeAlgebra::new(base.clone(), total, map).unwrap();
        let d = degree_function(&rel, &cfg()).unwrap();
        assert_eq!(d.degrees(), vec![3, 2]);
        assert_eq!(d.global, 3);
        let total = StructureAlgebra::ground(&f);
        let map = Matrix::from_i64(&f, &[vec![1, 0]]);
        let rel = RelativeAlgebra::new(base, total, map).unwrap();
        let mut ds = degree_function(&rel, &cfg()).unwrap().degrees();
        ds.sort();
        assert_eq!(ds, vec![0, 1]);
    }

    #[test]
    fn too_few_steps_is_a_capacity_error() {
        let f = Field::prime(2).unwrap();
        let e = splitting_tower(&StructureAlgebra::split(&f, 3), Some(2), &cfg()).unwrap_err();
        assert_eq!(e.exit_code(), 3);
    }
}
