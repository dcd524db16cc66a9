use serde::Serialize;

use crate::config::Config;
use crate::error::Result;
use crate::grp::{p_rank, PermGroup};
use crate::par;
use crate::permalg::rank_one::{classify_rank_one, modg_galois_data, verify_rank_one_galois};

#[derive(Clone, Debug, Serialize)]
pub struct BatchCover {
    #[serde(rename = "V_order")]
    pub v_order: usize,
    pub index: usize,
    #[serde(rename = "W_set")]
    pub w_set: usize,
}

/// One corpus entry. Fields tied to the order-`p` subgroup are `null`
/// unless the p-rank is one.
#[derive(Clone, Debug, Serialize)]
pub struct BatchEntry {
    pub group: String,
    pub p: u64,
    pub group_order: usize,
    pub p_rank: usize,
    #[serde(rename = "P")]
    pub p_subgroup: Option<Vec<String>>,
    #[serde(rename = "N")]
    pub normalizer: Option<Vec<String>>,
    #[serde(rename = "W_order")]
    pub w_order: Option<usize>,
    pub degree: Option<usize>,
    #[serde(rename = "maximizing_Q")]
    pub maximizing_q: Option<Vec<String>>,
    pub h_equals_tau: Option<bool>,
    pub verified: Option<bool>,
    pub covers: Option<Vec<BatchCover>>,
    pub np_order: usize,
    pub galois_group_order: usize,
}

fn run_entry(g: &PermGroup, p: u64, cfg: &Config) -> Result<BatchEntry> {
    let rank = p_rank(g, p)?;
    let modg = modg_galois_data(g, p)?;
    let mut e = BatchEntry {
        group: g.name().unwrap_or("G").to_string(),
        p,
        group_order: g.order(),
        p_rank: rank,
        p_subgroup: None,
        normalizer: None,
        w_order: None,
        degree: None,
        maximizing_q: None,
        h_equals_tau: None,
        verified: None,
        covers: None,
        np_order: modg.np.order(),
        galois_group_order: modg.quotient.order(),
    };
    if rank == 1 {
        let v = verify_rank_one_galois(g, p, cfg)?;
        let c = classify_rank_one(g, p)?;
        e.p_subgroup = Some(v.p_subgroup);
        e.normalizer = Some(v.normalizer);
        e.w_order = Some(v.w_order);
        e.degree = Some(v.degree);
        e.maximizing_q = Some(v.maximizing_q);
        e.h_equals_tau = Some(v.h_equals_tau);
        e.verified = Some(v.passed);
        e.covers = Some(
            c.covers
                .iter()
                .map(|c| BatchCover {
                    v_order: c.v_order,
                    index: c.index,
                    w_set: c.w_set,
                })
                .collect(),
        );
    }
    Ok(e)
}

/// Runs every entry (concurrently unless sequential mode is configured) and
/// returns them sorted by group name and prime.
pub fn run_batch(entries: &[(PermGroup, u64)], cfg: &Config) -> Result<Vec<BatchEntry>> {
    let results = par::map(cfg.exec, entries, |(g, p)| run_entry(g, *p, cfg));
    let mut out = results.into_iter().collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| (&a.group, a.p).cmp(&(&b.group, b.p)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::corpus;
    use crate::par::ExecMode;

    #[test]
    fn batch_is_deterministic_across_modes() {
        let entries: Vec<(PermGroup, u64)> = corpus::batch_entries()
            .into_iter()
            .map(|(n, p)| (corpus::group(&n).unwrap(), p))
            .collect();
        let cfg = Config::default();
        let a = serde_json::to_string(
            &run_batch(&entries, &cfg.with_exec(ExecMode::Sequential)).unwrap(),
        )
        .unwrap();
        let b = serde_json::to_string(
            &run_batch(&entries, &cfg.with_exec(ExecMode::Parallel)).unwrap(),
        )
        .unwrap();
        assert_eq!(a, b);
        let parsed: serde_json::Value = serde_json::from_str(&a).unwrap();
        for e in parsed.as_array().unwrap() {
            if e["p_rank"] == 1 {
                assert_eq!(e["verified"], true, "{e}");
            }
        }
    }
}
