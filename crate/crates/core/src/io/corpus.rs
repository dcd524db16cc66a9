//! The shipped example groups, fields and algebras.

use std::collections::BTreeMap;

use crate::alg::random::{exterior_algebra, odd_square_zero_extension};
use crate::alg::{GroupAction, StructureAlgebra};
use crate::error::{usage, Result};
use crate::exact::{Field, Matrix, Poly};
use crate::grp::{Perm, PermGroup, DEFAULT_MAX_ORDER};
use crate::gset::GSet;
use crate::io::{GroupJson, PermJson};
use crate::permalg::permutation_algebra;

fn cycles(perm: &Perm) -> PermJson {
    PermJson::Cycles(perm.to_cycle_string())
}

fn cyclic(n: usize) -> GroupJson {
    let gens = if n > 1 {
        vec![PermJson::Images((1..n).chain([0]).collect())]
    } else {
        Vec::new()
    };
    GroupJson {
        degree: n,
        generators: gens,
        name: Some(format!("Z{n}")),
        subgroups: None,
    }
}

/// Regular representation of the generalized quaternion group of order `2m`:
/// `x^m = 1`, `y^2 = x^(m/2)`, `y x y^-1 = x^-1`, element `x^a y^b` at `a + m b`.
fn quaternion(m: usize) -> (Perm, Perm) {
    let n = 2 * m;
    let mut xs = vec![0; n];
    let mut ys = vec![0; n];
    for b in 0..2 {
        for a in 0..m {
            xs[a + m * b] = (a + 1) % m + m * b;
            ys[a + m * b] = if b == 0 {
                (m - a) % m + m
            } else {
                (m / 2 + m - a) % m
            };
        }
    }
    (
        Perm::from_images(xs).expect("bijection"),
        Perm::from_images(ys).expect("bijection"),
    )
}

/// `SL(2,3)` acting on the eight nonzero vectors of `F_3^2`.
fn sl23() -> (Perm, Perm) {
    let vecs: Vec<(usize, usize)> = (0..9)
        .map(|i| (i % 3, i / 3))
        .filter(|&v| v != (0, 0))
        .collect();
    let act = |m: [[usize; 2]; 2]| {
        let images = vecs
            .iter()
            .map(|&(a, b)| {
                let w = (
                    (m[0][0] * a + m[0][1] * b) % 3,
                    (m[1][0] * a + m[1][1] * b) % 3,
                );
                vecs.iter().position(|&v| v == w).expect("nonzero image")
            })
            .collect();
        Perm::from_images(images).expect("bijection")
    };
    (act([[1, 1], [0, 1]]), act([[0, 2], [1, 0]]))
}

fn named(degree: usize, name: &str, gens: &[&str], subgroups: &[(&str, &[&str])]) -> GroupJson {
    GroupJson {
        degree,
        generators: gens
            .iter()
            .map(|s| PermJson::from(&Perm::parse_cycles(s, degree).expect("valid generator")))
            .collect(),
        name: Some(name.to_string()),
        subgroups: (!subgroups.is_empty()).then(|| {
            subgroups
                .iter()
                .map(|(n, g)| {
                    (
                        n.to_string(),
                        g.iter().map(|s| PermJson::Cycles(s.to_string())).collect(),
                    )
                })
                .collect::<BTreeMap<_, _>>()
        }),
    }
}

pub fn group_names() -> Vec<String> {
    let mut v: Vec<String> = (1..=16).map(|n| format!("Z{n}")).collect();
    v.extend(
        [
            "Z2xZ2", "Z3xZ3", "S3", "S4", "A4", "D8", "Q8", "Q16", "SL23",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    v
}

pub fn group_json(name: &str) -> Option<GroupJson> {
    if let Some(n) = name.strip_prefix('Z').and_then(|s| s.parse::<usize>().ok()) {
        return (1..=16).contains(&n).then(|| cyclic(n));
    }
    let g = match name {
        "Z2xZ2" => named(
            4,
            name,
            &["(0,1)", "(2,3)"],
            &[("L", &["(0,1)"]), ("D", &["(0,1)(2,3)"])],
        ),
        "Z3xZ3" => named(6, name, &["(0,1,2)", "(3,4,5)"], &[("L", &["(0,1,2)"])]),
        "S3" => named(
            3,
            name,
            &["(0,1)", "(0,1,2)"],
            &[("A3", &["(0,1,2)"]), ("C2", &["(0,1)"])],
        ),
        "S4" => named(
            4,
            name,
            &["(0,1)", "(0,1,2,3)"],
            &[
                ("A4", &["(0,1,2)", "(1,2,3)"]),
                ("V4", &["(0,1)(2,3)", "(0,2)(1,3)"]),
                ("S3", &["(0,1)", "(0,1,2)"]),
            ],
        ),
        "A4" => named(
            4,
            name,
            &["(0,1,2)", "(1,2,3)"],
            &[("V4", &["(0,1)(2,3)", "(0,2)(1,3)"])],
        ),
        "D8" => named(
            4,
            name,
            &["(0,1,2,3)", "(0,2)"],
            &[("C4", &["(0,1,2,3)"]), ("Z", &["(0,2)(1,3)"])],
        ),
        "Q8" | "Q16" => {
            let m = if name == "Q8" { 4 } else { 8 };
            let (x, y) = quaternion(m);
            let z = {
                let mut p = Perm::identity(2 * m);
                for _ in 0..m / 2 {
                    p = x.compose(&p);
                }
                p
            };
            let mut g = GroupJson {
                degree: 2 * m,
                generators: vec![PermJson::from(&x), PermJson::from(&y)],
                name: Some(name.to_string()),
                subgroups: None,
            };
            let mut subs = BTreeMap::new();
            subs.insert("Z".to_string(), vec![cycles(&z)]);
            subs.insert("X".to_string(), vec![cycles(&x)]);
            g.subgroups = Some(subs);
            g
        }
        "SL23" => {
            let (a, b) = sl23();
            GroupJson {
                degree: 8,
                generators: vec![PermJson::from(&a), PermJson::from(&b)],
                name: Some(name.to_string()),
                subgroups: None,
            }
        }
        _ => return None,
    };
    Some(g)
}

pub fn group(name: &str) -> Result<PermGroup> {
    let g = group_json(name).ok_or_else(|| usage!("unknown group {name:?}"))?;
    Ok(g.load(DEFAULT_MAX_ORDER)?.group)
}

/// Groups and primes for the batch run; the rank-one cases come first.
pub fn batch_entries() -> Vec<(String, u64)> {
    let mut v: Vec<(String, u64)> = [
        ("Z4", 2),
        ("Z8", 2),
        ("Q8", 2),
        ("Q16", 2),
        ("S3", 3),
        ("Z6", 3),
        ("SL23", 3),
    ]
    .iter()
    .map(|(n, p)| (n.to_string(), *p))
    .collect();
    v.extend(
        [
            ("S3", 2),
            ("Z6", 2),
            ("Z2xZ2", 2),
            ("A4", 2),
            ("A4", 3),
            ("D8", 2),
            ("S4", 3),
        ]
        .iter()
        .map(|(n, p)| (n.to_string(), *p)),
    );
    v
}

pub fn field_names() -> Vec<&'static str> {
    vec!["F2", "F3", "F4", "F5", "F8", "F9", "Q"]
}

/// Extension moduli are the smallest irreducible polynomials.
pub fn field(name: &str) -> Result<Field> {
    match name {
        "F2" => Field::prime(2),
        "F3" => Field::prime(3),
        "F5" => Field::prime(5),
        "F4" => Field::extension(2, vec![1, 1, 1]),
        "F8" => Field::extension(2, vec![1, 1, 0, 1]),
        "F9" => Field::extension(3, vec![1, 0, 1]),
        "Q" => Ok(Field::rationals()),
        _ => Err(usage!("unknown field {name:?}")),
    }
}

/// `F_p[x]/(f)` with the Frobenius `x -> x^p` generating a cyclic group.
fn with_frobenius(p: u64, coeffs: &[i64]) -> Result<StructureAlgebra> {
    let f = Field::prime(p)?;
    let a = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, coeffs))?;
    let n = a.dim();
    let cols: Vec<_> = (0..n)
        .map(|j| a.pow(&a.basis(j), &num_bigint::BigUint::from(p)))
        .collect();
    let frob = Matrix::from_columns(&f, n, &cols);
    a.with_action(GroupAction {
        group: group(&format!("Z{n}"))?,
        generators: vec![frob],
    })
}

pub fn algebra_names() -> Vec<&'static str> {
    vec![
        "k_times_k",
        "k3_f3",
        "f4_over_f2",
        "f8_over_f2",
        "f16_over_f2",
        "f9_over_f3",
        "dual_numbers_f2",
        "local_f5",
        "q_sqrt2",
        "q_split3",
        "exterior_f3",
        "odd_extension_f2",
        "swap_k_times_k",
        "perm_s3_a3_f3",
    ]
}

pub fn algebra(name: &str) -> Result<StructureAlgebra> {
    let f2 = Field::prime(2)?;
    let f3 = Field::prime(3)?;
    match name {
        "k_times_k" => Ok(StructureAlgebra::split(&f2, 2)),
        "k3_f3" => Ok(StructureAlgebra::split(&f3, 3)),
        "f4_over_f2" => with_frobenius(2, &[1, 1, 1]),
        "f8_over_f2" => with_frobenius(2, &[1, 1, 0, 1]),
        "f16_over_f2" => with_frobenius(2, &[1, 1, 0, 0, 1]),
        "f9_over_f3" => with_frobenius(3, &[1, 0, 1]),
        "dual_numbers_f2" => StructureAlgebra::from_polynomial(&Poly::from_i64(&f2, &[0, 0, 1])),
        "local_f5" => {
            let f5 = Field::prime(5)?;
            StructureAlgebra::from_polynomial(
                &Poly::from_i64(&f5, &[0, 0, 1]).mul(&Poly::from_i64(&f5, &[1, -2, 1])),
            )
        }
        "q_sqrt2" => {
            StructureAlgebra::from_polynomial(&Poly::from_i64(&Field::rationals(), &[-2, 0, 1]))
        }
        "q_split3" => Ok(StructureAlgebra::split(&Field::rationals(), 3)),
        "exterior_f3" => Ok(exterior_algebra(&f3, 1)),
        "odd_extension_f2" => Ok(odd_square_zero_extension(&StructureAlgebra::split(&f2, 2))),
        "swap_k_times_k" => {
            let swap = Matrix::from_i64(&f3, &[vec![0, 1], vec![1, 0]]);
            StructureAlgebra::split(&f3, 2).with_action(GroupAction {
                group: group("Z2")?,
                generators: vec![swap],
            })
        }
        "perm_s3_a3_f3" => {
            let g = group("S3")?;
            let a3 = g.generate(&[g.generator_index(1)]);
            Ok(permutation_algebra(&GSet::cosets(&g, &a3)?, &f3)?.algebra)
        }
        _ => Err(usage!("unknown algebra {name:?}")),
    }
}
