//! Seeded random instances and the differential check over them.
//!
//! Instance `k` of a run with seed `s` is drawn from ChaCha8 seeded with
//! `seed_from_u64(s)` on stream `k`, so every instance is reproducible on
//! its own and the run can be split across threads freely.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::differential_check;
use crate::datum::{
    BlockDoc, CharGroup, CharSubgroup, ClassDoc, GroupFamily, InducingDatum, InstanceDoc, MAX_GAMMA_RANK,
};
use crate::elliptic::Verdict;
use crate::error::{Error, Result};
use crate::weyl::ENUMERATION_CAP;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub families: Vec<GroupFamily>,
    pub min_r: usize,
    pub max_r: usize,
    /// Largest rank of `Γ` drawn for the non-unitary families.
    pub gamma_rank: u8,
    pub count: usize,
    pub seed: u64,
    /// Worker threads; `0` lets rayon decide.
    pub jobs: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            families: GroupFamily::ALL.to_vec(),
            min_r: 0,
            max_r: 5,
            gamma_rank: 2,
            count: 1000,
            seed: 42,
            jobs: 0,
        }
    }
}

/// One line of fuzz or catalog output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzRecord {
    pub index: u64,
    pub instance: InstanceDoc,
    pub w_sigma_order: usize,
    pub w_prime_order: usize,
    pub d: usize,
    pub verdict: Verdict,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

pub(crate) fn record_for(index: u64, datum: &InducingDatum) -> Result<FuzzRecord> {
    let report = differential_check(datum)?;
    Ok(FuzzRecord {
        index,
        instance: datum.to_doc(),
        w_sigma_order: report.w_sigma_order,
        w_prime_order: report.w_prime_order,
        d: report.d,
        verdict: report.verdict,
        pass: report.pass,
        failure: report
            .first_failure()
            .map(|c| format!("{}: {}", c.name, c.detail.clone().unwrap_or_default())),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub count: usize,
    pub passed: usize,
    pub failed: usize,
    pub verdicts: BTreeMap<Verdict, usize>,
    pub families: BTreeMap<GroupFamily, usize>,
    /// Index of the first failing instance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<u64>,
}

impl FuzzSummary {
    pub fn from_records(records: &[FuzzRecord]) -> Self {
        let mut s = FuzzSummary {
            count: records.len(),
            ..Default::default()
        };
        for rec in records {
            if rec.pass {
                s.passed += 1;
            } else {
                s.failed += 1;
                s.first_failure.get_or_insert(rec.index);
            }
            *s.verdicts.entry(rec.verdict).or_default() += 1;
            *s.families.entry(rec.instance.family).or_default() += 1;
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct FuzzRun {
    pub records: Vec<FuzzRecord>,
    pub summary: FuzzSummary,
}

/// Draws instance `index` of the run described by `config`.
///
/// Family, `r` and the rank of `Γ` are uniform in their ranges (`Γ` has rank
/// 1 for the unitary families); `X(ρ)` is a uniform subgroup (the whole
/// group for the odd families). Each block reuses a uniformly chosen
/// existing class with probability 1/2, otherwise opens a class of size 1
/// or 2 which is self-dual with probability 3/4 and otherwise paired with a
/// fresh dual. Self-dual classes get a uniform `ω` and, where allowed,
/// `x_holds` with probability 1/2.
pub fn random_instance(config: &FuzzConfig, index: u64) -> InducingDatum {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index);
    let family = *config.families.choose(&mut rng).expect("at least one family");
    let r = rng.gen_range(config.min_r..=config.max_r);
    let rank = if family.is_unitary() {
        1
    } else {
        rng.gen_range(0..=config.gamma_rank)
    };
    let gamma = CharGroup::new(rank);
    let x_rho = if family.twist_matters() {
        CharSubgroup::all_subgroups(gamma)
            .choose(&mut rng)
            .expect("trivial subgroup")
            .clone()
    } else {
        CharSubgroup::full(gamma)
    };

    // (size, dual)
    let mut classes: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::with_capacity(r);
    for _ in 0..r {
        if !classes.is_empty() && rng.gen_bool(0.5) {
            blocks.push(rng.gen_range(0..classes.len()));
            continue;
        }
        let size = rng.gen_range(1..=2);
        let c = classes.len();
        if rng.gen_bool(0.75) {
            classes.push((size, c));
        } else {
            classes.push((size, c + 1));
            classes.push((size, c));
        }
        blocks.push(c);
    }

    let width = classes.len().to_string().len();
    let label = |c: usize| format!("c{:0width$}", c + 1);
    let mut class_docs = BTreeMap::new();
    for (c, &(size, dual)) in classes.iter().enumerate() {
        let self_dual = dual == c;
        let omega = (self_dual && family.twist_matters()).then(|| {
            gamma
                .elements()
                .nth(rng.gen_range(0..gamma.order()))
                .expect("in range")
        });
        let x_allowed = self_dual && omega.is_none_or(|w| x_rho.contains(w));
        let x_holds = x_allowed && rng.gen_bool(0.5);
        class_docs.insert(
            label(c),
            ClassDoc {
                size,
                eps_dual: label(dual),
                omega: omega.map(|w| w.to_string()),
                x_holds,
            },
        );
    }
    let doc = InstanceDoc {
        family,
        gamma_rank: rank,
        m: 0,
        blocks: blocks
            .iter()
            .map(|&c| BlockDoc {
                size: classes[c].0,
                class: label(c),
            })
            .collect(),
        classes: class_docs,
        x_rho_generators: x_rho.generators().iter().map(ToString::to_string).collect(),
    };
    InducingDatum::try_from(doc).expect("generated data are valid")
}

/// Runs the differential check on `config.count` seeded instances.
pub fn fuzz(config: &FuzzConfig) -> Result<FuzzRun> {
    if config.count == 0 {
        return Err(Error::InvalidArgument("fuzz count must be at least 1".into()));
    }
    if config.families.is_empty() {
        return Err(Error::InvalidArgument("no families selected".into()));
    }
    if config.min_r > config.max_r {
        return Err(Error::InvalidArgument(format!(
            "empty r range {}..={}",
            config.min_r, config.max_r
        )));
    }
    if config.max_r > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            r: config.max_r,
            cap: ENUMERATION_CAP,
        });
    }
    if config.gamma_rank > MAX_GAMMA_RANK {
        return Err(Error::InvalidArgument(format!(
            "gamma rank {} exceeds {MAX_GAMMA_RANK}",
            config.gamma_rank
        )));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let records = pool.install(|| {
        (0..config.count as u64)
            .into_par_iter()
            .map(|k| record_for(k, &random_instance(config, k)))
            .collect::<Result<Vec<_>>>()
    })?;
    let summary = FuzzSummary::from_records(&records);
    Ok(FuzzRun { records, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_instances() {
        let config = FuzzConfig {
            count: 20,
            ..Default::default()
        };
        for k in 0..20 {
            assert_eq!(
                random_instance(&config, k).serialize_compact(),
                random_instance(&config, k).serialize_compact()
            );
        }
        let other = FuzzConfig { seed: 43, ..config.clone() };
        let differ = (0..20).any(|k| {
            random_instance(&config, k).serialize_compact() != random_instance(&other, k).serialize_compact()
        });
        assert!(differ);
    }

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let config = FuzzConfig {
            count: 60,
            max_r: 4,
            jobs: 2,
            ..Default::default()
        };
        let a = fuzz(&config).unwrap();
        assert_eq!(a.summary.failed, 0, "{:?}", a.records.iter().find(|r| !r.pass));
        let b = fuzz(&FuzzConfig { jobs: 1, ..config }).unwrap();
        assert_eq!(a.records, b.records);
        assert_eq!(a.summary, b.summary);
    }

    #[test]
    fn rejects_bad_config() {
        let zero = FuzzConfig {
            count: 0,
            ..Default::default()
        };
        assert!(matches!(fuzz(&zero), Err(Error::InvalidArgument(_))));
        let big = FuzzConfig {
            max_r: 8,
            ..Default::default()
        };
        assert!(matches!(fuzz(&big), Err(Error::CapExceeded { .. })));
    }
}
