use std::fs;
use std::path::Path;

use sepkit::alg::{
    etale_via_trace_form, graded_separability_idempotent, primitive_idempotents,
    separability_idempotent, splitting_tower, StructureAlgebra,
};
use sepkit::error::{Error, Result};
use sepkit::grp::{
    double_coset_decomposition, normalizer_and_weyl, np_closure, p_rank, rank_one_classification,
    sylow_subgroup, PermGroup, Subgroup,
};
use sepkit::gset::{gset_rank, GSet};
use sepkit::io::{
    corpus, parse_json, to_json, AlgebraJson, Document, GSetJson, GroupJson, GroupRef, LoadedGroup,
};
use sepkit::permalg::{
    classify_rank_one, modg_degree, modg_galois_data, run_batch, stmod_degree,
    verify_rank_one_galois,
};
use sepkit::Config;
use serde_json::{json, Value};

use crate::{AlgAction, Cli, Command, GrpAction, StmodAction};

pub struct Output {
    pub report: Value,
    pub exit_code: u8,
}

fn ok(report: Value) -> Result<Output> {
    Ok(Output {
        report,
        exit_code: 0,
    })
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable report")
}

fn cycles(s: &Subgroup) -> Vec<String> {
    s.generator_perms()
        .iter()
        .map(|p| p.to_cycle_string())
        .collect()
}

fn group_name(g: &PermGroup) -> String {
    g.name().unwrap_or("G").to_string()
}

fn need_p(p: Option<u64>) -> Result<u64> {
    p.ok_or_else(|| usage("this subcommand needs -p"))
}

fn vector_strings(a: &StructureAlgebra, v: &[sepkit::exact::Scalar]) -> Vec<String> {
    v.iter().map(|c| a.field().format(c)).collect()
}

pub fn run(cli: &Cli) -> Result<Output> {
    let cfg = cli.global.config();
    match &cli.command {
        Command::Alg {
            action,
            file,
            max_steps,
        } => {
            let doc: AlgebraJson = parse_json(&read(file)?)?;
            let a = doc.load(cfg.max_group_order)?;
            alg(*action, &a, *max_steps, &cfg)
        }
        Command::Grp {
            action,
            file,
            p,
            h,
            k,
        } => {
            let doc: GroupJson = parse_json(&read(file)?)?;
            let g = doc.load(cfg.max_group_order)?;
            grp(*action, &g, *p, h.as_deref(), k.as_deref())
        }
        Command::Stmod { action, file, p, h } => {
            let doc: Document = parse_json(&read(file)?)?;
            stmod(*action, &doc, *p, h.as_deref(), &cfg)
        }
        Command::Batch { file } => batch(file.as_deref(), &cfg),
        Command::Corpus { dir } => export_corpus(dir),
    }
}

fn alg(
    action: AlgAction,
    a: &StructureAlgebra,
    max_steps: Option<usize>,
    cfg: &Config,
) -> Result<Output> {
    match action {
        AlgAction::Validate => {
            let r = a.validate();
            ok(json!({"dim": a.dim(), "valid": r.valid, "violations": value(&r.violations)}))
        }
        AlgAction::Separable => {
            let plain = a.clone().without_action();
            if a.is_graded() {
                let w = graded_separability_idempotent(&plain)?;
                ok(json!({
                    "graded": true,
                    "separable": w.is_some(),
                    "witness": w.map(|w| vector_strings(&plain.tensor_product(&plain).expect("same field"), &w.element)),
                }))
            } else {
                let w = separability_idempotent(&plain)?;
                ok(json!({
                    "graded": false,
                    "separable": w.is_some(),
                    "trace_form_etale": etale_via_trace_form(&plain),
                    "witness": w.map(|w| vector_strings(&plain, &w.element)),
                }))
            }
        }
        AlgAction::Idempotents => {
            let d = primitive_idempotents(&a.clone().without_action(), cfg)?;
            let dims: Vec<usize> = d
                .idempotents
                .iter()
                .map(|e| a.corner(e).map(|(c, _, _)| c.dim()))
                .collect::<Result<_>>()?;
            ok(json!({
                "count": d.len(),
                "idempotents": d.idempotents.iter().map(|e| vector_strings(a, e)).collect::<Vec<_>>(),
                "component_dims": dims,
            }))
        }
        AlgAction::Tower => {
            let t = splitting_tower(&a.clone().without_action(), max_steps, cfg)?;
            let mut v = value(&t);
            v["dims"] = json!(t.dims());
            ok(v)
        }
        AlgAction::Degree => {
            let t = splitting_tower(&a.clone().without_action(), max_steps, cfg)?;
            ok(json!({"degree": t.degree}))
        }
    }
}

fn grp(
    action: GrpAction,
    lg: &LoadedGroup,
    p: Option<u64>,
    h: Option<&str>,
    k: Option<&str>,
) -> Result<Output> {
    let g = &lg.group;
    match action {
        GrpAction::Info => {
            let mut v = json!({
                "name": group_name(g),
                "order": g.order(),
                "degree": g.degree(),
                "abelian": g.is_abelian(),
                "generators": g.generators().iter().map(|x| x.to_cycle_string()).collect::<Vec<_>>(),
            });
            if let Some(p) = p {
                let rank = p_rank(g, p)?;
                v["p"] = json!(p);
                v["p_rank"] = json!(rank);
                v["sylow_order"] = json!(sylow_subgroup(g, p)?.order());
                v["np_order"] = json!(np_closure(g, p)?.order());
                if rank == 1 {
                    let c = rank_one_classification(g, p)?;
                    let w = normalizer_and_weyl(g, &c.order_p_subgroups[0])?;
                    v["sylow"] = json!(c.kind.as_str());
                    v["weyl_order"] = json!(w.weyl.order());
                } else {
                    v["sylow"] = Value::Null;
                    v["weyl_order"] = Value::Null;
                }
            }
            ok(v)
        }
        GrpAction::Sylow => {
            let p = need_p(p)?;
            let s = sylow_subgroup(g, p)?;
            ok(json!({"p": p, "order": s.order(), "generators": cycles(&s)}))
        }
        GrpAction::Prank => {
            let p = need_p(p)?;
            ok(json!({"p": p, "p_rank": p_rank(g, p)?}))
        }
        GrpAction::Np => {
            let p = need_p(p)?;
            let d = modg_galois_data(g, p)?;
            ok(json!({
                "p": p,
                "order": d.np.order(),
                "generators": cycles(&d.np),
                "quotient_order": d.quotient.order(),
            }))
        }
        GrpAction::Weyl => {
            let pp = match h {
                Some(text) => lg.subgroup(text)?,
                None => rank_one_classification(g, need_p(p)?)?.order_p_subgroups[0].clone(),
            };
            let w = normalizer_and_weyl(g, &pp)?;
            ok(json!({
                "P": cycles(&pp),
                "P_order": pp.order(),
                "N": cycles(&w.normalizer),
                "N_order": w.normalizer.order(),
                "W_order": w.weyl.order(),
            }))
        }
        GrpAction::Doublecosets => {
            let hs = lg.subgroup(h.ok_or_else(|| usage("doublecosets needs --h"))?)?;
            let ks = lg.subgroup(k.ok_or_else(|| usage("doublecosets needs --k"))?)?;
            let d = double_coset_decomposition(g, &hs, &ks)?;
            let cosets: Vec<Value> = d
                .cosets
                .iter()
                .map(|c| {
                    json!({
                        "representative": g.element(c.representative).to_cycle_string(),
                        "size": c.size,
                        "intersection_order": c.intersection.order(),
                        "orbit_size": c.orbit_size,
                    })
                })
                .collect();
            ok(json!({"count": d.len(), "cosets": cosets}))
        }
    }
}

fn stmod(
    action: StmodAction,
    doc: &Document,
    p: u64,
    h: Option<&str>,
    cfg: &Config,
) -> Result<Output> {
    let max = cfg.max_group_order;
    match (action, doc) {
        (StmodAction::Degree, Document::GSet(x)) => {
            let x = x.load(max)?;
            let mut v = value(&stmod_degree(&x, p, cfg.oracle_cutoff)?);
            v["group"] = json!(group_name(x.group()));
            ok(v)
        }
        (StmodAction::Degree, Document::Group(gj)) => {
            let lg = gj.load(max)?;
            let hs = lg.subgroup(h.ok_or_else(|| usage("stmod degree on a group needs --h"))?)?;
            let x = GSet::cosets(&lg.group, &hs)?;
            let mut v = value(&stmod_degree(&x, p, cfg.oracle_cutoff)?);
            v["group"] = json!(group_name(&lg.group));
            v["H_order"] = json!(hs.order());
            ok(v)
        }
        (StmodAction::Galois, Document::Group(gj)) => {
            let g = gj.load(max)?.group;
            let r = verify_rank_one_galois(&g, p, cfg)?;
            let exit_code = if r.passed { 0 } else { 4 };
            Ok(Output {
                report: value(&r),
                exit_code,
            })
        }
        (StmodAction::Classify, Document::Group(gj)) => {
            let g = gj.load(max)?.group;
            ok(value(&classify_rank_one(&g, p)?))
        }
        (StmodAction::Modg, Document::Group(gj)) => {
            let g = gj.load(max)?.group;
            let d = modg_galois_data(&g, p)?;
            ok(json!({
                "group": group_name(&g),
                "p": p,
                "np_order": d.np.order(),
                "np": cycles(&d.np),
                "galois_group_order": d.quotient.order(),
                "galois_group_abelian": d.quotient.is_abelian(),
                "galois_group_generators": d.quotient.generators().iter().map(|x| x.to_cycle_string()).collect::<Vec<_>>(),
            }))
        }
        (StmodAction::Modg, Document::GSet(xj)) => {
            let x = xj.load(max)?;
            let d = modg_galois_data(x.group(), p)?;
            let accepted = d.accepts(&x);
            ok(json!({
                "group": group_name(x.group()),
                "p": p,
                "galois_group_order": d.quotient.order(),
                "accepted": accepted,
                "rank": gset_rank(&x),
                "degree": modg_degree(&x, p, cfg)?,
            }))
        }
        (_, Document::Algebra(_)) => Err(usage("stmod expects a group or G-set file")),
        (_, Document::GSet(_)) => Err(usage("this stmod subcommand expects a group file")),
    }
}

#[derive(serde::Deserialize)]
struct BatchSpec {
    group: GroupRef,
    p: u64,
}

fn batch(file: Option<&Path>, cfg: &Config) -> Result<Output> {
    let entries: Vec<(PermGroup, u64)> = match file {
        Some(path) => {
            let specs: Vec<BatchSpec> = parse_json(&read(path)?)?;
            specs
                .iter()
                .map(|s| Ok((s.group.load(cfg.max_group_order)?.group, s.p)))
                .collect::<Result<_>>()?
        }
        None => corpus::batch_entries()
            .into_iter()
            .map(|(n, p)| Ok((corpus::group(&n)?, p)))
            .collect::<Result<_>>()?,
    };
    let out = run_batch(&entries, cfg)?;
    let failed = out.iter().any(|e| e.verified == Some(false));
    Ok(Output {
        report: value(&out),
        exit_code: if failed { 4 } else { 0 },
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn export_corpus(dir: &Path) -> Result<Output> {
    let mut written = 0;
    for sub in ["groups", "algebras", "fields"] {
        fs::create_dir_all(dir.join(sub))
            .map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
    }
    for name in corpus::group_names() {
        let g = corpus::group_json(&name).expect("listed group");
        write(
            &dir.join("groups")
                .join(format!("{}.json", name.to_lowercase())),
            &to_json(&g),
        )?;
        written += 1;
    }
    for name in corpus::algebra_names() {
        let a = corpus::algebra(name)?;
        write(
            &dir.join("algebras").join(format!("{name}.json")),
            &to_json(&AlgebraJson::from_algebra(&a)),
        )?;
        written += 1;
    }
    for name in corpus::field_names() {
        let f = corpus::field(name)?;
        write(
            &dir.join("fields")
                .join(format!("{}.json", name.to_lowercase())),
            &to_json(f.spec()),
        )?;
        written += 1;
    }
    fs::create_dir_all(dir.join("gsets"))
        .map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
    for (group, sub) in [
        ("S3", "A3"),
        ("S3", "C2"),
        ("D8", "Z"),
        ("Q8", "Z"),
        ("S4", "S3"),
    ] {
        let lg = corpus::group_json(group)
            .expect("listed group")
            .load(usize::MAX)?;
        let x = GSet::cosets(&lg.group, &lg.subgroup(sub)?)?;
        let mut doc = GSetJson::from_gset(&x);
        doc.group = GroupRef::Named(group.to_string());
        let file = format!("{}_mod_{}.json", group.to_lowercase(), sub.to_lowercase());
        write(&dir.join("gsets").join(file), &to_json(&doc))?;
        written += 1;
    }
    let batch: Vec<Value> = corpus::batch_entries()
        .into_iter()
        .map(|(n, p)| json!({"group": n, "p": p}))
        .collect();
    write(&dir.join("batch.json"), &to_json(&batch))?;
    written += 1;
    ok(json!({"dir": dir.display().to_string(), "written": written}))
}
