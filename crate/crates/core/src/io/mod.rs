//! JSON forms of fields, groups, G-sets and algebras, plus the example corpus.

pub mod corpus;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::alg::{GroupAction, StructureAlgebra};
use crate::error::{usage, Result};
use crate::exact::{Field, FieldSpec, Matrix};
use crate::grp::{Perm, PermGroup, Subgroup};
use crate::gset::GSet;

/// A permutation on `0..degree`: one-line images such as `[1, 2, 0]`, or a
/// cycle string such as `"(0,1,2)"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermJson {
    Images(Vec<usize>),
    Cycles(String),
}

impl PermJson {
    pub fn to_perm(&self, degree: usize) -> Result<Perm> {
        match self {
            PermJson::Images(v) if v.len() != degree => Err(usage!(
                "permutation has {} images, expected {degree}",
                v.len()
            )),
            PermJson::Images(v) => Perm::from_images(v.clone()),
            PermJson::Cycles(c) => Perm::parse_cycles(c, degree),
        }
    }
}

impl From<&Perm> for PermJson {
    fn from(p: &Perm) -> Self {
        PermJson::Images(p.images())
    }
}

/// A permutation group on points `0..degree`, with optional named subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<PermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroups: Option<BTreeMap<String, Vec<PermJson>>>,
}

/// Either a corpus name such as `"S3"` or an inline group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Named(String),
    Inline(GroupJson),
}

/// A group together with its named subgroups.
#[derive(Clone, Debug)]
pub struct LoadedGroup {
    pub group: PermGroup,
    pub subgroups: BTreeMap<String, Subgroup>,
}

impl LoadedGroup {
    /// A subgroup by name, or from generators in cycle notation separated by `;`.
    pub fn subgroup(&self, text: &str) -> Result<Subgroup> {
        if let Some(s) = self.subgroups.get(text) {
            return Ok(s.clone());
        }
        let gens = parse_generators(text, self.group.degree())?;
        self.group.generate_perms(&gens)
    }
}

fn parse_generators(text: &str, degree: usize) -> Result<Vec<Perm>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Perm::parse_cycles(s, degree))
        .collect()
}

impl GroupJson {
    pub fn load(&self, max_order: usize) -> Result<LoadedGroup> {
        let gens = self
            .generators
            .iter()
            .map(|c| c.to_perm(self.degree))
            .collect::<Result<Vec<_>>>()?;
        let mut group = PermGroup::new(self.degree, gens, max_order)?;
        if let Some(n) = &self.name {
            group = group.named(n);
        }
        let mut subgroups = BTreeMap::new();
        for (name, cycles) in self.subgroups.iter().flatten() {
            let gens = cycles
                .iter()
                .map(|c| c.to_perm(self.degree))
                .collect::<Result<Vec<_>>>()?;
            subgroups.insert(name.clone(), group.generate_perms(&gens)?);
        }
        Ok(LoadedGroup { group, subgroups })
    }

    pub fn from_group(g: &PermGroup) -> GroupJson {
        GroupJson {
            degree: g.degree(),
            generators: g.generators().iter().map(PermJson::from).collect(),
            name: g.name().map(str::to_string),
            subgroups: None,
        }
    }
}

impl GroupRef {
    pub fn load(&self, max_order: usize) -> Result<LoadedGroup> {
        match self {
            GroupRef::Named(n) => corpus::group_json(n)
                .ok_or_else(|| usage!("unknown group {n:?}"))?
                .load(max_order),
            GroupRef::Inline(g) => g.load(max_order),
        }
    }
}

/// Images of every point under each group generator, keyed by generator
/// index; a plain list in generator order is accepted too.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionTable {
    ByGenerator(BTreeMap<String, Vec<usize>>),
    List(Vec<Vec<usize>>),
}

impl ActionTable {
    fn rows(&self) -> Result<Vec<Vec<usize>>> {
        match self {
            ActionTable::List(v) => Ok(v.clone()),
            ActionTable::ByGenerator(m) => {
                let mut by_index = BTreeMap::new();
                for (k, v) in m {
                    let i: usize = k
                        .parse()
                        .map_err(|_| usage!("action key {k:?} is not a generator index"))?;
                    by_index.insert(i, v.clone());
                }
                if by_index.keys().copied().ne(0..by_index.len()) {
                    return Err(usage!(
                        "action keys must be the generator indices 0..{}",
                        by_index.len()
                    ));
                }
                Ok(by_index.into_values().collect())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSetJson {
    pub group: GroupRef,
    pub points: Vec<String>,
    pub action: ActionTable,
}

impl GSetJson {
    pub fn load(&self, max_order: usize) -> Result<GSet> {
        let g = self.group.load(max_order)?.group;
        let perms = self
            .action
            .rows()?
            .into_iter()
            .map(Perm::from_images)
            .collect::<Result<Vec<_>>>()?;
        GSet::new(&g, self.points.clone(), perms)
    }

    pub fn from_gset(x: &GSet) -> GSetJson {
        GSetJson {
            group: GroupRef::Inline(GroupJson::from_group(x.group())),
            points: x.points().to_vec(),
            action: ActionTable::ByGenerator(
                x.generator_action()
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (i.to_string(), p.images()))
                    .collect(),
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionJson {
    pub group: GroupRef,
    /// One matrix per group generator, as rows of coefficients.
    pub generators: Vec<Vec<Vec<String>>>,
}

/// An algebra by structure constants: `[i, j, k, c]` means `b_i b_j` has
/// coefficient `c` at `b_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub field: FieldSpec,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<String>,
    pub structure: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionJson>,
}

fn matrix_json(field: &Field, m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|c| field.format(c)).collect())
        .collect()
}

fn matrix_from_json(field: &Field, rows: &[Vec<String>]) -> Result<Matrix> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|c| field.parse(c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let width = parsed.first().map_or(0, Vec::len);
    if parsed.iter().any(|r| r.len() != width) {
        return Err(usage!("ragged matrix"));
    }
    Ok(Matrix::from_rows(field, parsed))
}

impl AlgebraJson {
    pub fn load(&self, max_order: usize) -> Result<StructureAlgebra> {
        let field = Field::from_spec(&self.field)?;
        if self.basis.len() != self.dim {
            return Err(usage!(
                "{} basis labels for dimension {}",
                self.basis.len(),
                self.dim
            ));
        }
        let unit = self
            .unit
            .iter()
            .map(|c| field.parse(c))
            .collect::<Result<Vec<_>>>()?;
        let entries = self
            .structure
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, field.parse(c)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut a = StructureAlgebra::from_entries(&field, self.basis.clone(), unit, &entries)?;
        if let Some(g) = &self.grading {
            if g.iter().any(|&x| x > 1) {
                return Err(usage!("grading entries must be 0 or 1"));
            }
            a = a.with_grading(g.clone())?;
        }
        if let Some(act) = &self.action {
            let group = act.group.load(max_order)?.group;
            let generators = act
                .generators
                .iter()
                .map(|m| matrix_from_json(&field, m))
                .collect::<Result<Vec<_>>>()?;
            a = a.with_action(GroupAction { group, generators })?;
        }
        Ok(a)
    }

    pub fn from_algebra(a: &StructureAlgebra) -> AlgebraJson {
        let f = a.field();
        AlgebraJson {
            field: f.spec().clone(),
            dim: a.dim(),
            basis: a.labels().to_vec(),
            unit: a.unit().iter().map(|c| f.format(c)).collect(),
            structure: a
                .entries()
                .into_iter()
                .map(|(i, j, k, c)| (i, j, k, f.format(&c)))
                .collect(),
            grading: a.grading().map(<[u8]>::to_vec),
            action: a.action().map(|act| ActionJson {
                group: match act.group.name().and_then(corpus::group_json) {
                    Some(known) if known.load(usize::MAX).is_ok_and(|l| l.group == act.group) => {
                        GroupRef::Named(act.group.name().unwrap_or_default().to_string())
                    }
                    _ => GroupRef::Inline(GroupJson::from_group(&act.group)),
                },
                generators: act.generators.iter().map(|m| matrix_json(f, m)).collect(),
            }),
        }
    }
}

/// Any input document; the variant is chosen by shape.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Document {
    Algebra(AlgebraJson),
    GSet(GSetJson),
    Group(GroupJson),
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| usage!("invalid JSON input: {e}"))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_round_trip() {
        for name in corpus::algebra_names() {
            let a = corpus::algebra(name).unwrap();
            let j = AlgebraJson::from_algebra(&a);
            let text = to_json(&j);
            let back: AlgebraJson = parse_json(&text).unwrap();
            assert_eq!(back, j, "{name}");
            let again =
                AlgebraJson::from_algebra(&back.load(crate::grp::DEFAULT_MAX_ORDER).unwrap());
            assert_eq!(again, j, "{name}");
        }
    }

    #[test]
    fn group_round_trip_and_subgroups() {
        let g = corpus::group_json("S3").unwrap();
        let text = to_json(&g);
        let back: GroupJson = parse_json(&text).unwrap();
        assert_eq!(back, g);
        let loaded = back.load(1000).unwrap();
        assert_eq!(loaded.subgroup("A3").unwrap().order(), 3);
        assert_eq!(loaded.subgroup("(0,1)").unwrap().order(), 2);
        assert!(loaded.subgroup("B7").is_err());
    }

    #[test]
    fn gset_round_trip() {
        let g = corpus::group("S3").unwrap();
        let x = GSet::cosets(&g, &g.generate(&[g.generator_index(0)])).unwrap();
        let j = GSetJson::from_gset(&x);
        let back: GSetJson = parse_json(&to_json(&j)).unwrap();
        assert_eq!(back.load(1000).unwrap(), x);
    }

    #[test]
    fn malformed_input_is_a_usage_error() {
        assert_eq!(parse_json::<AlgebraJson>("{").unwrap_err().exit_code(), 1);
    }
}
