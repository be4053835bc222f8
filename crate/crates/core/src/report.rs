//! The analysis report: everything computed for one instance, as stable JSON
//! or as text using the `C_B`, `α(i,j)`, `Λ(σ)` notation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::components::{component_table, ComponentTable};
use crate::datum::{InducingDatum, InstanceDoc};
use crate::elliptic::{classify, theorem_predicates, EllipticClassification, TheoremReport, Verdict};
use crate::error::Result;
use crate::oracle::{differential_check, DifferentialReport};
use crate::rgroup::{closed_form_r, compute_delta_prime, w_sigma, DimensionBreakdown, GeneratorOrigin, RGroupDescriptor};
use crate::weyl::{sign_change_label, weyl_order, BlockSet, ENUMERATION_CAP};

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorEntry {
    pub element: String,
    pub origin: GeneratorOrigin,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexSetsEntry {
    pub j1: Vec<usize>,
    pub i1: Vec<usize>,
    pub j_chi: BTreeMap<String, Vec<usize>>,
    pub i_chi: BTreeMap<String, Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaEntry {
    pub members: Vec<Vec<String>>,
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RGroupEntry {
    pub order: usize,
    pub d: usize,
    pub generators: Vec<GeneratorEntry>,
    pub elements: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub breakdown: Option<DimensionBreakdown>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index_sets: Option<IndexSetsEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<LambdaEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationEntry {
    pub verdict: Verdict,
    pub support: Vec<usize>,
    pub zero_coords: Vec<usize>,
    pub a_r_dim: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentRowEntry {
    pub kappa: String,
    pub signs: Vec<i8>,
    pub epsilon: Option<i8>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentsEntry {
    pub count: usize,
    pub elliptic_constituents: usize,
    pub generators: Vec<String>,
    pub w0: Option<String>,
    pub rows: Vec<ComponentRowEntry>,
    pub epsilon_sum: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub instance: InstanceDoc,
    pub r: usize,
    pub weyl_order: u128,
    pub delta_prime: Vec<String>,
    /// `None` when `r` is beyond the enumeration cap.
    pub w_sigma_order: Option<usize>,
    pub w_prime_order: Option<usize>,
    pub r_group: RGroupEntry,
    pub classification: ClassificationEntry,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem: Option<TheoremReport>,
    pub components: ComponentsEntry,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<DifferentialReport>,
}

fn one_based(b: BlockSet) -> Vec<usize> {
    b.to_one_based()
}

fn rgroup_entry(rg: &RGroupDescriptor) -> RGroupEntry {
    RGroupEntry {
        order: rg.order(),
        d: rg.d,
        generators: rg
            .generators
            .iter()
            .map(|g| GeneratorEntry {
                element: sign_change_label(g.element),
                origin: g.origin.clone(),
            })
            .collect(),
        elements: rg.elements.iter().map(|&b| sign_change_label(b)).collect(),
        breakdown: rg.breakdown.clone(),
        index_sets: rg.index_sets.as_ref().map(|s| IndexSetsEntry {
            j1: one_based(s.j1),
            i1: one_based(s.i1),
            j_chi: s.j_chi.iter().map(|(c, &b)| (c.to_string(), one_based(b))).collect(),
            i_chi: s.i_chi.iter().map(|(c, &b)| (c.to_string(), one_based(b))).collect(),
        }),
        lambda: rg.lambda.as_ref().map(|l| {
            let show = |sets: &[Vec<crate::datum::Character>]| {
                sets.iter()
                    .map(|s| s.iter().map(ToString::to_string).collect())
                    .collect()
            };
            LambdaEntry {
                members: show(&l.members),
                basis: show(&l.basis),
            }
        }),
    }
}

fn classification_entry(c: &EllipticClassification) -> ClassificationEntry {
    ClassificationEntry {
        verdict: c.verdict,
        support: one_based(c.support),
        zero_coords: one_based(c.zero_coords),
        a_r_dim: c.a_r_dim,
        witness: c.witness.map(sign_change_label),
    }
}

fn components_entry(t: &ComponentTable) -> ComponentsEntry {
    ComponentsEntry {
        count: t.rows.len(),
        elliptic_constituents: if t.is_elliptic() { t.rows.len() } else { 0 },
        generators: t.generators.iter().map(|&b| sign_change_label(b)).collect(),
        w0: t.w0.map(sign_change_label),
        rows: t
            .rows
            .iter()
            .map(|row| ComponentRowEntry {
                kappa: row.kappa.to_string(),
                signs: row.kappa.signs(),
                epsilon: row.epsilon,
                multiplicity: row.multiplicity,
            })
            .collect(),
        epsilon_sum: t.epsilon_sum,
    }
}

/// Analyzes `datum` by the closed form; with `with_oracle` also runs the
/// differential check.
pub fn analyze(datum: &InducingDatum, with_oracle: bool) -> Result<AnalysisReport> {
    let r = datum.r();
    let rg = closed_form_r(datum);
    let classification = classify(datum, &rg);
    let (w_sigma_order, w_prime_order) = if r <= ENUMERATION_CAP {
        let ws = w_sigma(datum)?.len();
        (Some(ws), Some(ws / rg.order()))
    } else {
        (None, None)
    };
    let oracle = if with_oracle {
        Some(differential_check(datum)?)
    } else {
        None
    };
    Ok(AnalysisReport {
        instance: datum.to_doc(),
        r,
        weyl_order: weyl_order(&datum.block_sizes()),
        delta_prime: compute_delta_prime(datum).roots.iter().map(ToString::to_string).collect(),
        w_sigma_order,
        w_prime_order,
        r_group: rgroup_entry(&rg),
        classification: classification_entry(&classification),
        theorem: theorem_predicates(datum, &rg).ok(),
        components: components_entry(&component_table(datum, &rg)),
        oracle,
    })
}

impl AnalysisReport {
    /// Pretty JSON with keys in declaration order.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let inst = &self.instance;
        let sizes: Vec<String> = inst.blocks.iter().map(|b| format!("{}:{}", b.class, b.size)).collect();
        let _ = writeln!(s, "family      {}   r = {}   m = {}", inst.family, self.r, inst.m);
        let _ = writeln!(s, "blocks      [{}]", sizes.join(", "));
        let x_rho = if inst.x_rho_generators.is_empty() {
            "trivial".to_string()
        } else {
            format!("<{}>", inst.x_rho_generators.join(", "))
        };
        let _ = writeln!(s, "Γ rank      {}   X(ρ) = {x_rho}", inst.gamma_rank);
        let _ = writeln!(s, "|W(G,A)|    {}", self.weyl_order);
        let dp = if self.delta_prime.is_empty() {
            "∅".to_string()
        } else {
            self.delta_prime.join(", ")
        };
        let _ = writeln!(s, "Δ′          {dp}");
        let opt = |v: Option<usize>| v.map_or("n/a".to_string(), |n| n.to_string());
        let _ = writeln!(s, "|W(σ)|      {}", opt(self.w_sigma_order));
        let _ = writeln!(s, "|W′|        {}", opt(self.w_prime_order));

        let rg = &self.r_group;
        let _ = writeln!(s, "\nR ≅ Z_2^{}   |R| = {}", rg.d, rg.order);
        for g in &rg.generators {
            let origin = match &g.origin {
                GeneratorOrigin::SingleBlock => "j ∈ I1".to_string(),
                GeneratorOrigin::SameCharacter { chi } => format!("pair in I_{chi}"),
                GeneratorOrigin::LambdaBasis { set } => format!("Λ(σ)′ member {{{}}}", set.join(", ")),
                GeneratorOrigin::Extracted => "extracted".to_string(),
                GeneratorOrigin::Adapted => "adapted".to_string(),
            };
            let _ = writeln!(s, "  {:<14}{origin}", g.element);
        }
        if let Some(b) = &rg.breakdown {
            let chi: Vec<String> = b.chi_terms.iter().map(|(c, n)| format!("{n} [{c}]")).collect();
            let chi = if chi.is_empty() { "0".to_string() } else { chi.join(" + ") };
            let _ = writeln!(s, "  d = d1 + Σ(dχ − 1) + |Λ(σ)′| = {} + {chi} + {} = {}", b.d1, b.lambda_basis, rg.d);
        }
        if let Some(l) = &rg.lambda {
            let show = |sets: &[Vec<String>]| {
                let v: Vec<String> = sets.iter().map(|m| format!("{{{}}}", m.join(","))).collect();
                if v.is_empty() { "∅".to_string() } else { v.join(" ") }
            };
            let _ = writeln!(s, "  Λ(σ) = {}   basis {}", show(&l.members), show(&l.basis));
        }

        let c = &self.classification;
        let _ = writeln!(s, "\nverdict     {}", c.verdict);
        let _ = writeln!(s, "support     {{{}}}   dim 𝔞_R = {}", join(&c.support), c.a_r_dim);
        if let Some(w) = &c.witness {
            let _ = writeln!(s, "witness     {w}");
        }
        if let Some(t) = &self.theorem {
            for (name, holds) in &t.clauses {
                let _ = writeln!(s, "  [{}] {name}", if *holds { "x" } else { " " });
            }
        }

        let comp = &self.components;
        let _ = writeln!(s);
        if comp.elliptic_constituents > 0 {
            let _ = writeln!(s, "{} elliptic constituents", comp.elliptic_constituents);
        } else {
            let _ = writeln!(s, "{} constituents, none elliptic", comp.count);
        }
        if let Some(w0) = &comp.w0 {
            let _ = writeln!(s, "w0 = {w0}   on generators ({})", comp.generators.join(", "));
        }
        for row in &comp.rows {
            let eps = match row.epsilon {
                Some(1) => "ε = +1".to_string(),
                Some(_) => "ε = −1".to_string(),
                None => "ε = n/a".to_string(),
            };
            let _ = writeln!(s, "  {:<16}{eps}", row.kappa);
        }
        if let Some(sum) = comp.epsilon_sum {
            let _ = writeln!(s, "  Σ ε = {sum}");
        }

        if let Some(o) = &self.oracle {
            let _ = writeln!(s, "\noracle      {}", if o.pass { "PASS" } else { "FAIL" });
            for check in &o.checks {
                let _ = write!(s, "  [{}] {}", if check.pass { "ok" } else { "!!" }, check.name);
                if let Some(d) = &check.detail {
                    let _ = write!(s, ": {d}");
                }
                let _ = writeln!(s);
            }
        }
        s
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::bundled;

    #[test]
    fn worked_example_counts() {
        for (name, n) in [("EX_A", 8), ("EX_B", 4), ("EX_C", 2)] {
            let rep = analyze(&bundled(name).unwrap(), false).unwrap();
            assert_eq!(rep.r_group.order, n);
            assert_eq!(rep.components.elliptic_constituents, n);
            assert!(rep.to_text().contains(&format!("{n} elliptic constituents")));
        }
    }

    #[test]
    fn json_is_stable() {
        let d = bundled("EX_B").unwrap();
        let a = analyze(&d, true).unwrap().to_json();
        let b = analyze(&d, true).unwrap().to_json();
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["classification"]["verdict"], "ELLIPTIC");
        assert_eq!(v["r_group"]["breakdown"]["d1"], 1);
        assert_eq!(v["oracle"]["pass"], true);
    }

    #[test]
    fn non_elliptic_text() {
        let rep = analyze(&bundled("EX_GU3").unwrap(), false).unwrap();
        let text = rep.to_text();
        assert!(text.contains("NOT_INDUCED"));
        assert!(text.contains("none elliptic"));
    }
}
