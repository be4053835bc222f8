//! Brute-force reference analysis and the differential check of every
//! closed-form result against it.

mod enumerate;
mod fuzz;

pub use enumerate::{canonical_form, catalog, enumerate_instances, CATALOG_CAP};
pub use fuzz::{fuzz, random_instance, FuzzConfig, FuzzRecord, FuzzRun, FuzzSummary};

use std::collections::HashSet;

use serde::Serialize;

use crate::components::{
    adapted_generators, character_basis, characters_of_r, labelled_rgroup, restriction_fibers, sub_rgroup,
};
use crate::datum::InducingDatum;
use crate::elliptic::{classify, theorem_predicates, EllipticClassification, Verdict};
use crate::error::{Error, Result};
use crate::rgroup::{
    closed_form_r, compute_delta_prime, generate_subgroup, index_sets, w_sigma, DeltaPrime, RGroupDescriptor,
};
use crate::weyl::{fixed_subspace, BlockSet, SignedBlockPermutation, ENUMERATION_CAP};

/// Everything computed by definition over the enumerated Weyl group.
#[derive(Clone, Debug)]
pub struct OracleResult {
    pub w_sigma: Vec<SignedBlockPermutation>,
    pub delta_prime: DeltaPrime,
    pub r_group: Vec<SignedBlockPermutation>,
    pub w_prime: Vec<SignedBlockPermutation>,
    /// `W(σ) = R ⋉ W′`.
    pub semidirect_ok: bool,
    pub verdict: EllipticClassification,
}

pub fn oracle_full_analysis(datum: &InducingDatum) -> Result<OracleResult> {
    let r = datum.r();
    if r > ENUMERATION_CAP {
        return Err(Error::CapExceeded { r, cap: ENUMERATION_CAP });
    }
    let w_sigma = w_sigma(datum)?;
    let delta_prime = compute_delta_prime(datum);
    let r_group: Vec<_> = w_sigma
        .iter()
        .filter(|w| delta_prime.roots.iter().all(|&root| !crate::weyl::sends_negative(w, root)))
        .cloned()
        .collect();
    let reflections: Vec<_> = delta_prime.roots.iter().map(|root| root.reflection(r)).collect();
    let w_prime = generate_subgroup(r, &reflections);
    let semidirect_ok = semidirect(&w_sigma, &r_group, &w_prime, &reflections);
    let verdict = classify(datum, &RGroupDescriptor::from_elements(r, &r_group)?);
    Ok(OracleResult {
        w_sigma,
        delta_prime,
        r_group,
        w_prime,
        semidirect_ok,
        verdict,
    })
}

/// `|W(σ)| = |R|·|W′|`, `R ∩ W′ = {1}`, `W′ ⊆ W(σ)` and `W′` normal in
/// `W(σ)` (checked on the reflection generators of `W′`).
fn semidirect(
    w_sigma: &[SignedBlockPermutation],
    r_group: &[SignedBlockPermutation],
    w_prime: &[SignedBlockPermutation],
    reflections: &[SignedBlockPermutation],
) -> bool {
    let ws: HashSet<_> = w_sigma.iter().collect();
    let wp: HashSet<_> = w_prime.iter().collect();
    w_sigma.len() == r_group.len() * w_prime.len()
        && r_group.iter().filter(|w| wp.contains(w)).all(|w| w.is_identity())
        && w_prime.iter().all(|w| ws.contains(w))
        && w_sigma.iter().all(|w| {
            let inv = w.inverse();
            reflections
                .iter()
                .all(|s| wp.contains(&w.compose_unchecked(&s.compose_unchecked(&inv))))
        })
}

/// One named comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialReport {
    pub pass: bool,
    pub w_sigma_order: usize,
    pub w_prime_order: usize,
    pub r_order: usize,
    pub d: usize,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
}

impl DifferentialReport {
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Names of the checks run by [`differential_check`], in order.
pub const CHECK_NAMES: [&str; 13] = [
    "closed form equals brute force",
    "d equals log2 |R|",
    "semidirect product",
    "R elements are sign changes",
    "odd families: C_B in R implies C_j in R",
    "single sign changes in R are indexed by I1",
    "verdicts agree",
    "theorem predicates agree",
    "no NOT_INDUCED for odd families",
    "ellipticity three ways",
    "sub-R-groups halve R",
    "adapted generators verify",
    "elliptic signs",
];

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &'static str, pass: bool, detail: impl FnOnce() -> String) {
        debug_assert!(CHECK_NAMES.contains(&name));
        let detail = (!pass).then(detail);
        self.0.push(Check { name, pass, detail });
    }
}

fn fmt_sets(sets: &[BlockSet]) -> String {
    let shown: Vec<String> = sets.iter().map(|b| crate::weyl::sign_change_label(*b)).collect();
    format!("[{}]", shown.join(", "))
}

/// Compares the closed-form results with the oracle and runs the structural
/// checks on the brute-forced R-group.
pub fn differential_check(datum: &InducingDatum) -> Result<DifferentialReport> {
    let oracle = oracle_full_analysis(datum)?;
    let r = datum.r();
    let family = datum.family();
    let closed = closed_form_r(datum);
    let mut checks = Checks(Vec::new());

    let sign_changes = oracle.r_group.iter().all(|w| w.has_trivial_perm());
    let brute_sets: Vec<BlockSet> = {
        let mut v: Vec<_> = oracle.r_group.iter().map(|w| w.signs()).collect();
        v.sort();
        v
    };
    checks.push("closed form equals brute force", sign_changes && brute_sets == closed.elements, || {
        format!("closed form {} vs brute force {}", fmt_sets(&closed.elements), fmt_sets(&brute_sets))
    });
    let order = oracle.r_group.len();
    checks.push(
        "d equals log2 |R|",
        order.is_power_of_two() && 1usize << closed.d == order && closed.generators.len() == closed.d,
        || format!("d = {} with {} generators, |R| = {order}", closed.d, closed.generators.len()),
    );
    checks.push("semidirect product", oracle.semidirect_ok, || {
        format!(
            "|W(σ)| = {}, |R| = {order}, |W′| = {}",
            oracle.w_sigma.len(),
            oracle.w_prime.len()
        )
    });
    checks.push("R elements are sign changes", sign_changes, || {
        let bad = oracle.r_group.iter().find(|w| !w.has_trivial_perm()).unwrap();
        format!("{bad} permutes blocks")
    });
    if !sign_changes {
        return Ok(finish(oracle, closed.d, checks));
    }
    let brute = RGroupDescriptor::from_sign_sets(r, &brute_sets)?;

    if family.is_odd() {
        let bad = brute
            .elements
            .iter()
            .find(|b| b.iter().any(|j| !brute.contains(BlockSet::singleton(j))));
        checks.push("odd families: C_B in R implies C_j in R", bad.is_none(), || {
            format!("{} ∈ R but not all its factors", crate::weyl::sign_change_label(*bad.unwrap()))
        });
    }
    let singles = BlockSet::from_indices((0..r).filter(|&j| brute.contains(BlockSet::singleton(j))));
    let i1 = index_sets(datum).i1;
    checks.push("single sign changes in R are indexed by I1", singles == i1, || {
        format!("C_j ∈ R for j ∈ {singles}, I1 = {i1}")
    });

    let verdict_closed = classify(datum, &closed);
    checks.push("verdicts agree", verdict_closed == oracle.verdict, || {
        format!("closed form {} vs brute force {}", verdict_closed.verdict, oracle.verdict.verdict)
    });
    let v = oracle.verdict.verdict;
    let theorem = theorem_predicates(datum, &closed)?;
    let agrees = theorem.elliptic.is_none_or(|e| e == (v == Verdict::Elliptic))
        && theorem.implied.is_none_or(|t| t == v);
    checks.push("theorem predicates agree", agrees, || {
        format!("criterion implies {:?} (clauses {:?}), classification {v}", theorem.implied, theorem.clauses)
    });
    if family.is_odd() {
        checks.push("no NOT_INDUCED for odd families", v != Verdict::NotInduced, || {
            format!("{family} instance classified {v}")
        });
    }
    let longest = brute.contains(BlockSet::full(r));
    let anisotropic = oracle.r_group.iter().any(|w| fixed_subspace(w).is_zero());
    checks.push(
        "ellipticity three ways",
        longest == anisotropic && longest == (v == Verdict::Elliptic),
        || format!("C_1⋯C_r ∈ R: {longest}, some 𝔞_w = 0: {anisotropic}, verdict {v}"),
    );

    if longest {
        component_checks(&brute, &mut checks);
    }
    Ok(finish(oracle, closed.d, checks))
}

fn component_checks(brute: &RGroupDescriptor, checks: &mut Checks) {
    let r = brute.r;
    let order = brute.order();
    if brute.d >= 1 {
        let bad = brute.support.iter().find(|&i| {
            sub_rgroup(brute, BlockSet::singleton(i)).map_or(true, |s| 2 * s.order() != order)
        });
        checks.push("sub-R-groups halve R", bad.is_none(), || {
            format!("|R_{{{}}}| ≠ |R|/2", bad.unwrap() + 1)
        });
        let ok = adapted_generators(brute).and_then(|a| a.verify(brute)).unwrap_or(false);
        checks.push("adapted generators verify", ok, || "certificate fails".into());
    }

    let labelled = labelled_rgroup(brute);
    let basis = character_basis(&labelled);
    let chars = characters_of_r(&labelled);
    let w0 = BlockSet::full(r);
    let eps = |k: crate::components::RCharacter| k.eval(&basis, w0).expect("C_1⋯C_r ∈ R");
    let sum: i64 = chars.iter().map(|&k| i64::from(eps(k))).sum();
    let mut problems = Vec::new();
    if (labelled.d >= 1 && sum != 0) || (labelled.d == 0 && sum != 1) {
        problems.push(format!("Σε = {sum}"));
    }
    for &a in &chars {
        for &b in &chars {
            if eps(a.mul(b)) != eps(a) * eps(b) {
                problems.push(format!("ε not multiplicative at {a}, {b}"));
            }
        }
    }
    if labelled.d >= 1 {
        for j in 0..r {
            let sub = match sub_rgroup(&labelled, BlockSet::singleton(j)) {
                Ok(s) => s,
                Err(e) => {
                    problems.push(e.to_string());
                    continue;
                }
            };
            let mut covered = Vec::new();
            for kp in characters_of_r(&sub) {
                match restriction_fibers(&labelled, j, kp) {
                    Ok(fiber) => {
                        if fiber.len() != 2 || eps(fiber[0]) != -eps(fiber[1]) {
                            problems.push(format!("fiber over {kp} at block {} is {fiber:?}", j + 1));
                        }
                        covered.extend(fiber);
                    }
                    Err(e) => problems.push(e.to_string()),
                }
            }
            covered.sort();
            let mut all = chars.clone();
            all.sort();
            if covered != all {
                problems.push(format!("fibers at block {} do not partition the characters", j + 1));
            }
        }
    }
    checks.push("elliptic signs", problems.is_empty(), || problems.join("; "));
}

fn finish(oracle: OracleResult, d: usize, checks: Checks) -> DifferentialReport {
    DifferentialReport {
        pass: checks.0.iter().all(|c| c.pass),
        w_sigma_order: oracle.w_sigma.len(),
        w_prime_order: oracle.w_prime.len(),
        r_order: oracle.r_group.len(),
        d,
        verdict: oracle.verdict.verdict,
        checks: checks.0,
    }
}
