//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails or overruns its time limit.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepkit::alg::random::{random_commutative, random_etale, random_graded};
use sepkit::alg::separable::{separability_solution_dimension, verify_witness};
use sepkit::alg::{
    degree, etale_via_trace_form, galois_check, graded_separability_idempotent,
    separability_idempotent, splitting_tower, StructureAlgebra,
};
use sepkit::exact::{Field, Matrix};
use sepkit::grp::{p_rank, PermGroup, Subgroup};
use sepkit::gset::{gset_rank, GSet};
use sepkit::io::corpus;
use sepkit::par::ExecMode;
use sepkit::permalg::{
    classify_rank_one, modg_degree, modg_galois_data, run_batch, stmod_degree,
    verify_rank_one_galois,
};
use sepkit::Config;
use serde_json::{json, Value};

const SEED: u64 = 20240611;

fn cfg() -> Config {
    Config::default().with_seed(SEED)
}

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ stream)
}

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn main() {
    let criteria: [(u32, &str, u64, Check); 13] = [
        (
            1,
            "separability solver agrees with trace form",
            60,
            c1_oracle_agreement,
        ),
        (2, "degree of split algebras", 30, c2_split_degree),
        (3, "degree of field extensions", 60, c3_field_degree),
        (4, "additivity of degree", 60, c4_additivity),
        (5, "uniqueness of separability witness", 60, c5_uniqueness),
        (
            6,
            "graded algebras with odd part are not separable",
            60,
            c6_graded,
        ),
        (7, "Galois extensions have degree |G|", 60, c7_galois),
        (
            8,
            "stable degree formula vs brute force",
            300,
            c8_stable_degree,
        ),
        (9, "rank-one Galois suite", 120, c9_rank_one),
        (10, "rank-one classification counts", 60, c10_classification),
        (11, "Mod_G Galois groups", 60, c11_modg),
        (12, "degree equals rank on G-sets", 60, c12_rank),
        (13, "deterministic JSON report", 120, c13_determinism),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(limit) => {
                Err(format!("{detail}; over time limit"))
            }
            other => other,
        };
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{tag} [{id:>2}] {name}: {detail} ({:.2}s, limit {limit}s, exact)",
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

fn frobenius_injective(a: &StructureAlgebra) -> bool {
    let p = a.field().characteristic();
    let cols: Vec<Vec<_>> = (0..a.dim())
        .map(|i| a.pow(&a.basis(i), &p.into()))
        .collect();
    Matrix::from_columns(a.field(), a.dim(), &cols).rank() == a.dim()
}

fn split_tower_dims(n: u64) -> Vec<u64> {
    if n == 0 {
        return vec![0];
    }
    // stage k has dimension n!/(n-k)!; stage n repeats stage n-1, then 0
    let mut dims = vec![n];
    let mut d = n;
    for k in 1..n {
        d *= n - k;
        dims.push(d);
    }
    dims.push(0);
    dims
}

struct Sample {
    algebra: StructureAlgebra,
    separable: bool,
}

fn criterion1_samples() -> Vec<Sample> {
    let mut out = Vec::new();
    let mut r = rng(1);
    for (f, count) in [
        (Field::prime(2).unwrap(), 60),
        (Field::prime(3).unwrap(), 50),
        (Field::prime(5).unwrap(), 50),
        (Field::rationals(), 50),
    ] {
        for _ in 0..count {
            let a = random_commutative(&f, 6, &mut r);
            let separable = separability_idempotent(&a).unwrap().is_some();
            out.push(Sample {
                algebra: a,
                separable,
            });
        }
    }
    out
}

fn c1_oracle_agreement() -> Result<String, String> {
    let samples = criterion1_samples();
    let mut separable = 0;
    for (i, s) in samples.iter().enumerate() {
        let a = &s.algebra;
        ensure(a.dim() <= 6, || {
            format!("sample {i} has dimension {}", a.dim())
        })?;
        let trace = etale_via_trace_form(a);
        ensure(s.separable == trace, || {
            format!("sample {i}: solver {} trace form {trace}", s.separable)
        })?;
        if a.field().is_finite() {
            let frob = frobenius_injective(a);
            ensure(frob == s.separable, || {
                format!("sample {i}: Frobenius oracle {frob}")
            })?;
        }
        if s.separable {
            let w = separability_idempotent(a).unwrap().unwrap();
            ensure(verify_witness(a, &w.element).unwrap(), || {
                format!("sample {i}: bad witness")
            })?;
            separable += 1;
        }
    }
    Ok(format!("{} algebras, {separable} separable", samples.len()))
}

fn c2_split_degree() -> Result<String, String> {
    let mut checked = 0;
    for f in [
        Field::prime(2).unwrap(),
        Field::prime(3).unwrap(),
        Field::rationals(),
    ] {
        for n in 1..=8u64 {
            let t = splitting_tower(&StructureAlgebra::split(&f, n as usize), None, &cfg())
                .map_err(|e| e.to_string())?;
            ensure(t.degree == n as usize, || {
                format!("{} n={n}: degree {}", f.name(), t.degree)
            })?;
            let expect = split_tower_dims(n);
            ensure(t.dims() == expect, || {
                format!(
                    "{} n={n}: dims {:?} expected {expect:?}",
                    f.name(),
                    t.dims()
                )
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} split algebras, tower dimensions n!/(n-k)!"
    ))
}

fn c3_field_degree() -> Result<String, String> {
    let mut got = Vec::new();
    for (name, n) in [
        ("f4_over_f2", 2u64),
        ("f8_over_f2", 3),
        ("f16_over_f2", 4),
        ("f9_over_f3", 2),
    ] {
        let a = corpus::algebra(name).unwrap().without_action();
        let t = splitting_tower(&a, None, &cfg()).map_err(|e| e.to_string())?;
        ensure(t.degree as u64 == n, || {
            format!("{name}: degree {}", t.degree)
        })?;
        let expect = split_tower_dims(n);
        ensure(t.dims() == expect, || {
            format!("{name}: dims {:?}", t.dims())
        })?;
        got.push(t.degree);
    }
    Ok(format!("degrees {got:?}"))
}

fn criterion4_pairs() -> Vec<(StructureAlgebra, StructureAlgebra)> {
    let mut r = rng(4);
    (0..50)
        .map(|i| {
            let f = Field::prime(if i % 2 == 0 { 2 } else { 3 }).unwrap();
            (random_etale(&f, 4, &mut r), random_etale(&f, 4, &mut r))
        })
        .collect()
}

fn c4_additivity() -> Result<String, String> {
    let pairs = criterion4_pairs();
    for (i, (a, b)) in pairs.iter().enumerate() {
        let c = cfg();
        let da = degree(a, &c).map_err(|e| e.to_string())?;
        let db = degree(b, &c).map_err(|e| e.to_string())?;
        let ab = a.direct_product(b).unwrap();
        let dab = degree(&ab, &c).map_err(|e| e.to_string())?;
        ensure(dab == da + db, || format!("pair {i}: {dab} != {da} + {db}"))?;
        // over a finite field an étale algebra has degree equal to its dimension
        ensure(da == a.dim() && db == b.dim(), || {
            format!("pair {i}: degree differs from dimension")
        })?;
    }
    Ok(format!("{} pairs over F_2 and F_3", pairs.len()))
}

fn c5_uniqueness() -> Result<String, String> {
    let mut instances: Vec<StructureAlgebra> = criterion1_samples()
        .into_iter()
        .filter(|s| s.separable)
        .map(|s| s.algebra)
        .collect();
    for f in [
        Field::prime(2).unwrap(),
        Field::prime(3).unwrap(),
        Field::rationals(),
    ] {
        instances.extend((1..=8).map(|n| StructureAlgebra::split(&f, n)));
    }
    for name in ["f4_over_f2", "f8_over_f2", "f16_over_f2", "f9_over_f3"] {
        instances.push(corpus::algebra(name).unwrap().without_action());
    }
    for (a, b) in criterion4_pairs() {
        instances.push(a.direct_product(&b).unwrap());
        instances.push(a);
        instances.push(b);
    }
    for (i, a) in instances.iter().enumerate() {
        let d = separability_solution_dimension(a).map_err(|e| e.to_string())?;
        ensure(d == Some(0), || {
            format!("instance {i} (dim {}): solution dimension {d:?}", a.dim())
        })?;
    }
    Ok(format!(
        "{} separable instances, affine dimension 0",
        instances.len()
    ))
}

fn c6_graded() -> Result<String, String> {
    let mut r = rng(6);
    let mut count = 0;
    for i in 0..500 {
        let f = Field::prime(if i % 2 == 0 { 2 } else { 3 }).unwrap();
        let a = random_graded(&f, 6, &mut r);
        let odd = a.grading().unwrap().iter().filter(|&&d| d == 1).count();
        ensure(odd > 0 && a.dim() <= 6, || {
            format!("sample {i}: odd part {odd}, dim {}", a.dim())
        })?;
        ensure(a.validate().valid, || {
            format!("sample {i}: invalid algebra")
        })?;
        let w = graded_separability_idempotent(&a).map_err(|e| e.to_string())?;
        ensure(w.is_none(), || format!("sample {i}: witness found"))?;
        count += 1;
    }
    Ok(format!("{count} graded algebras, no witness"))
}

fn c7_galois() -> Result<String, String> {
    let mut out = Vec::new();
    for name in ["f4_over_f2", "f8_over_f2", "f9_over_f3"] {
        let a = corpus::algebra(name).unwrap();
        let r = galois_check(&a).map_err(|e| e.to_string())?;
        ensure(r.galois, || format!("{name}: failed {:?}", r.failed))?;
        let d = degree(&a.clone().without_action(), &cfg()).map_err(|e| e.to_string())?;
        ensure(d == r.group_order, || {
            format!("{name}: degree {d}, |G| = {}", r.group_order)
        })?;
        out.push(format!("{name}:{d}"));
    }
    Ok(out.join(" "))
}

fn images(g: &PermGroup, members: &[usize]) -> Vec<Vec<usize>> {
    members.iter().map(|&i| g.element(i).images()).collect()
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

fn perm_order(a: &[usize]) -> usize {
    let id: Vec<usize> = (0..a.len()).collect();
    let mut x = a.to_vec();
    let mut k = 1;
    while x != id {
        x = compose(a, &x);
        k += 1;
    }
    k
}

/// Largest number of cosets `xH` fixed by a single element of order `p`,
/// by direct enumeration of the cosets as sets of permutations.
fn brute_force_stable_degree(g: &PermGroup, h: &Subgroup, p: usize) -> usize {
    let all = images(g, &(0..g.order()).collect::<Vec<_>>());
    let hs = images(g, h.members());
    let cosets: BTreeSet<BTreeSet<Vec<usize>>> = all
        .iter()
        .map(|x| hs.iter().map(|y| compose(x, y)).collect())
        .collect();
    all.iter()
        .filter(|x| perm_order(x) == p)
        .map(|x| {
            cosets
                .iter()
                .filter(|c| c.iter().map(|y| compose(x, y)).collect::<BTreeSet<_>>() == **c)
                .count()
        })
        .max()
        .unwrap_or(0)
}

fn primes_dividing(n: usize) -> Vec<u64> {
    (2..=n as u64)
        .filter(|&q| (n as u64).is_multiple_of(q) && (2..q).all(|d| q % d != 0))
        .collect()
}

fn c8_stable_degree() -> Result<String, String> {
    let mut checked = 0;
    let mut groups = 0;
    for name in corpus::group_names() {
        let g = corpus::group(&name).unwrap();
        if g.order() > 24 {
            continue;
        }
        groups += 1;
        for h in g.all_subgroups() {
            let x = GSet::cosets(&g, &h).unwrap();
            for p in primes_dividing(g.order()) {
                let r = stmod_degree(&x, p, 24).map_err(|e| format!("{name}: {e}"))?;
                let oracle = brute_force_stable_degree(&g, &h, p as usize);
                ensure(r.degree == oracle, || {
                    format!(
                        "{name} |H|={} p={p}: formula {} oracle {oracle}",
                        h.order(),
                        r.degree
                    )
                })?;
                ensure(r.oracle == Some(r.degree), || {
                    format!("{name}: built-in oracle missing")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (G, H, p) triples over {groups} groups"))
}

/// Elements normalizing `P`, counted directly.
fn normalizer_order(g: &PermGroup, pp: &Subgroup) -> usize {
    let ps: BTreeSet<Vec<usize>> = images(g, pp.members()).into_iter().collect();
    let all = images(g, &(0..g.order()).collect::<Vec<_>>());
    all.iter()
        .filter(|x| {
            let xi = (0..x.len()).fold(vec![0; x.len()], |mut v, i| {
                v[x[i]] = i;
                v
            });
            ps.iter()
                .all(|y| ps.contains(&compose(&compose(x, y), &xi)))
        })
        .count()
}

fn c9_rank_one() -> Result<String, String> {
    let suite = [
        ("Z4", 2, "cyclic"),
        ("Z8", 2, "cyclic"),
        ("Q8", 2, "generalized_quaternion"),
        ("Q16", 2, "generalized_quaternion"),
        ("S3", 3, "cyclic"),
        ("Z6", 3, "cyclic"),
        ("SL23", 3, "cyclic"),
    ];
    let mut out = Vec::new();
    for (name, p, kind) in suite {
        let g = corpus::group(name).unwrap();
        let rank = p_rank(&g, p).map_err(|e| e.to_string())?;
        ensure(rank == 1, || format!("{name}: p-rank {rank}"))?;
        let r = verify_rank_one_galois(&g, p, &cfg()).map_err(|e| e.to_string())?;
        ensure(r.sylow == kind, || format!("{name}: Sylow {}", r.sylow))?;
        let pp = sepkit::grp::rank_one_classification(&g, p)
            .unwrap()
            .order_p_subgroups[0]
            .clone();
        let w = normalizer_order(&g, &pp) / p as usize;
        ensure(r.w_order == w, || {
            format!("{name}: |W| {} expected {w}", r.w_order)
        })?;
        ensure(r.degree == w, || {
            format!("{name}: degree {} != |W| {w}", r.degree)
        })?;
        ensure(r.h_equals_tau && r.h == r.tau, || {
            format!("{name}: h != tau")
        })?;
        ensure(r.weyl_orbits == w && r.ledger_ok, || {
            format!("{name}: ledger {} Weyl orbits", r.weyl_orbits)
        })?;
        let m = g.order() / p as usize;
        ensure(
            r.weyl_orbits * m + r.free_orbits * g.order() == m * m,
            || format!("{name}: orbit sizes"),
        )?;
        ensure(r.tate_pi0_dim == 1, || {
            format!("{name}: pi0 dim {}", r.tate_pi0_dim)
        })?;
        ensure(r.passed, || format!("{name}: not passed"))?;
        out.push(format!("{name}:{w}"));
    }
    Ok(format!("|W| {}", out.join(" ")))
}

fn c10_classification() -> Result<String, String> {
    let mut out = Vec::new();
    for (name, p, expect) in [("Z4", 2, 2), ("Q8", 2, 5), ("S3", 3, 2)] {
        let g = corpus::group(name).unwrap();
        let c = classify_rank_one(&g, p).map_err(|e| e.to_string())?;
        let pp = sepkit::grp::rank_one_classification(&g, p)
            .unwrap()
            .order_p_subgroups[0]
            .clone();
        let n = g.normalizer(&pp);
        let between = g
            .all_subgroups()
            .iter()
            .filter(|v| pp.is_subgroup_of(v) && v.is_subgroup_of(&n))
            .count();
        ensure(
            c.covers.len() == expect && between == expect && c.subgroups_between == between,
            || {
                format!(
                    "{name}: {} covers, {between} subgroups between",
                    c.covers.len()
                )
            },
        )?;
        out.push(format!("{name}:{}", c.covers.len()));
    }
    Ok(out.join(" "))
}

/// Subgroup generated by all elements of order `p`, by closure.
fn order_p_closure(g: &PermGroup, p: usize) -> usize {
    let all = images(g, &(0..g.order()).collect::<Vec<_>>());
    let gens: Vec<_> = all.iter().filter(|x| perm_order(x) == p).cloned().collect();
    let id: Vec<usize> = (0..g.degree()).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for s in &gens {
            let y = compose(s, &x);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen.len()
}

fn c11_modg() -> Result<String, String> {
    let mut out = Vec::new();
    for (name, p, expect) in [("S3", 3, 2), ("Z2xZ2", 2, 1), ("Z6", 2, 3)] {
        let g = corpus::group(name).unwrap();
        let d = modg_galois_data(&g, p).map_err(|e| e.to_string())?;
        let np = order_p_closure(&g, p as usize);
        ensure(d.np.order() == np, || {
            format!("{name}: |N_p| {} expected {np}", d.np.order())
        })?;
        ensure(
            d.quotient.order() == expect && g.order() / np == expect,
            || format!("{name}: quotient order {}", d.quotient.order()),
        )?;
        ensure(expect > 3 || d.quotient.is_abelian(), || {
            format!("{name}: quotient not cyclic")
        })?;
        out.push(format!("{name}:{}", d.quotient.order()));
    }
    Ok(out.join(" "))
}

fn random_gset(r: &mut ChaCha8Rng) -> (GSet, u64) {
    let names = ["Z2", "Z3", "Z4", "Z6", "S3", "Z2xZ2", "D8", "Q8", "A4"];
    loop {
        let g = corpus::group(names[r.gen_range(0..names.len())]).unwrap();
        let primes = primes_dividing(g.order());
        let p = primes[r.gen_range(0..primes.len())];
        let data = modg_galois_data(&g, p).unwrap();
        let over: Vec<Subgroup> = g
            .all_subgroups()
            .into_iter()
            .filter(|h| data.np.is_subgroup_of(h))
            .collect();
        let mut x: Option<GSet> = None;
        for _ in 0..r.gen_range(1..=3) {
            let h = &over[r.gen_range(0..over.len())];
            let orbit = GSet::cosets(&g, h).unwrap();
            x = Some(match x {
                None => orbit,
                Some(prev) => prev.coproduct(&orbit).unwrap(),
            });
        }
        let x = x.unwrap();
        if x.len() <= 8 && data.accepts(&x) {
            return (x, p);
        }
    }
}

fn c12_rank() -> Result<String, String> {
    let mut r = rng(12);
    let mut sizes = BTreeSet::new();
    for i in 0..100 {
        let (x, p) = random_gset(&mut r);
        let d = modg_degree(&x, p, &cfg()).map_err(|e| e.to_string())?;
        let rk = gset_rank(&x);
        ensure(d == rk && rk == x.len(), || {
            format!("sample {i}: degree {d}, rank {rk}, |X| {}", x.len())
        })?;
        sizes.insert(x.len());
    }
    Ok(format!("100 G-sets, sizes {sizes:?}"))
}

fn report(exec: ExecMode) -> String {
    let c = cfg().with_exec(exec);
    let entries: Vec<(PermGroup, u64)> = corpus::batch_entries()
        .into_iter()
        .map(|(n, p)| (corpus::group(&n).unwrap(), p))
        .collect();
    let batch = run_batch(&entries, &c).unwrap();
    let towers: Vec<Value> = [
        "k_times_k",
        "f8_over_f2",
        "f9_over_f3",
        "q_split3",
        "q_sqrt2",
    ]
    .iter()
    .map(|n| {
        let t = splitting_tower(&corpus::algebra(n).unwrap().without_action(), None, &c).unwrap();
        json!({"algebra": n, "tower": t})
    })
    .collect();
    let mut r = ChaCha8Rng::seed_from_u64(c.seed);
    let random: Vec<Value> = (0..20)
        .map(|_| {
            let a = random_etale(&Field::prime(3).unwrap(), 4, &mut r);
            json!({"dim": a.dim(), "degree": degree(&a, &c).unwrap()})
        })
        .collect();
    serde_json::to_string_pretty(&json!({"batch": batch, "towers": towers, "random": random}))
        .unwrap()
}

fn c13_determinism() -> Result<String, String> {
    let a = report(ExecMode::Parallel);
    let b = report(ExecMode::Parallel);
    let s = report(ExecMode::Sequential);
    ensure(a == b, || "two parallel runs differ".into())?;
    ensure(a == s, || "parallel and sequential runs differ".into())?;
    Ok(format!("{} bytes identical across 3 runs", a.len()))
}
