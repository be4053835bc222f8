//! Elliptic versus non-elliptic constituents.
//!
//! [`classify`] works directly from the R-group: `i_{G,M}(σ)` has elliptic
//! constituents iff `C_1⋯C_r ∈ R`, and otherwise the common fixed space
//! `𝔞_R` (the coordinates outside the support of `R`) tells whether the
//! constituents are irreducibly induced, and from what. The closed-form
//! predicates for the odd/unitary and the symplectic/orthogonal families are
//! evaluated separately so they can be checked against it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::datum::{Character, CharSubgroup, GroupFamily, InducingDatum};
use crate::error::{Error, Result};
use crate::rgroup::{
    closed_form_r, gu_even_special_case, index_sets, is_minimally_trivial, lambda_family,
    non_trivial_characters, IndexSets, LambdaFamily, RGroupDescriptor,
};
use crate::weyl::BlockSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Every constituent is elliptic.
    Elliptic,
    /// Each constituent is irreducibly induced from an elliptic representation
    /// of a proper Levi.
    InducedFromElliptic,
    /// Irreducibly induced, but only from non-elliptic tempered data.
    InducedFromTemperedOnly,
    /// Neither elliptic nor irreducibly induced from a proper Levi.
    NotInduced,
}

impl Verdict {
    pub const ALL: [Verdict; 4] = [
        Verdict::Elliptic,
        Verdict::InducedFromElliptic,
        Verdict::InducedFromTemperedOnly,
        Verdict::NotInduced,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Elliptic => "ELLIPTIC",
            Verdict::InducedFromElliptic => "INDUCED_FROM_ELLIPTIC",
            Verdict::InducedFromTemperedOnly => "INDUCED_FROM_TEMPERED_ONLY",
            Verdict::NotInduced => "NOT_INDUCED",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticClassification {
    pub verdict: Verdict,
    /// Blocks moved by some element of `R`.
    pub support: BlockSet,
    /// `𝔞_R` vanishes exactly on these coordinates (equal to `support`).
    pub zero_coords: BlockSet,
    pub a_r_dim: usize,
    /// `C_1⋯C_r` when elliptic, `C_support` when induced from elliptic.
    pub witness: Option<BlockSet>,
}

pub fn classify(datum: &InducingDatum, rg: &RGroupDescriptor) -> EllipticClassification {
    let r = datum.r();
    debug_assert_eq!(rg.r, r);
    let all = BlockSet::full(r);
    let support = rg.support;
    let by_elements = rg.contains(support);
    let by_span = rg.span().contains(support.bits());
    assert_eq!(by_elements, by_span, "membership of C_support disagrees between element set and span");
    let (verdict, witness) = if rg.contains(all) {
        (Verdict::Elliptic, Some(all))
    } else if support == all {
        (Verdict::NotInduced, None)
    } else if by_elements {
        (Verdict::InducedFromElliptic, Some(support))
    } else {
        (Verdict::InducedFromTemperedOnly, None)
    };
    EllipticClassification {
        verdict,
        support,
        zero_coords: support,
        a_r_dim: r - support.len(),
        witness,
    }
}

/// `O`, `O_1` and `I_0` for the symplectic and even orthogonal families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OSets {
    /// `χ ∉ X(ρ)` with `d_χ` odd.
    pub o: Vec<Character>,
    /// `χ ∈ O` with `d_χ = 1` lying in no member of `Λ(σ)`.
    pub o1: Vec<Character>,
    pub i0: BlockSet,
}

fn require_even(datum: &InducingDatum) -> Result<()> {
    match datum.family() {
        GroupFamily::GSpEven | GroupFamily::GOEven => Ok(()),
        found => Err(Error::FamilyMismatch {
            expected: "GSp_even or GO_even",
            found,
        }),
    }
}

pub fn o_sets(datum: &InducingDatum, sets: &IndexSets, lambda: &LambdaFamily) -> Result<OSets> {
    require_even(datum)?;
    let o: Vec<Character> = non_trivial_characters(datum)
        .into_iter()
        .filter(|&c| sets.d_chi(c) % 2 == 1)
        .collect();
    let o1 = o
        .iter()
        .copied()
        .filter(|&c| sets.d_chi(c) == 1 && !lambda.contains_character(c))
        .collect();
    Ok(OSets { o, o1, i0: sets.i0() })
}

/// Largest character set [`partition_minimally_trivial`] will search.
pub const PARTITION_CAP: usize = 7;

/// The first partition of `chars` (in lexicographic order of restricted
/// growth strings over the sorted characters) whose blocks are all minimally
/// ρ-trivial.
pub fn partition_minimally_trivial(chars: &[Character], x_rho: &CharSubgroup) -> Option<Vec<Vec<Character>>> {
    let mut sorted = chars.to_vec();
    sorted.sort();
    sorted.dedup();
    let n = sorted.len();
    assert!(n <= PARTITION_CAP, "partition search limited to {PARTITION_CAP} characters");
    if n == 0 {
        return Some(Vec::new());
    }
    let mut rgs = vec![0usize; n];
    loop {
        let blocks = 1 + *rgs.iter().max().unwrap();
        let parts: Vec<Vec<Character>> = (0..blocks)
            .map(|k| (0..n).filter(|&i| rgs[i] == k).map(|i| sorted[i]).collect())
            .collect();
        if parts.iter().all(|p| is_minimally_trivial(p, x_rho)) {
            return Some(parts);
        }
        if !next_rgs(&mut rgs) {
            return None;
        }
    }
}

/// Advances a restricted growth string in lexicographic order.
fn next_rgs(a: &mut [usize]) -> bool {
    for i in (1..a.len()).rev() {
        let bound = a[..i].iter().max().unwrap() + 1;
        if a[i] < bound {
            a[i] += 1;
            a[i + 1..].iter_mut().for_each(|x| *x = 0);
            return true;
        }
    }
    false
}

/// The clauses of a closed-form criterion evaluated on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    /// Clause label and whether it holds, in statement order.
    pub clauses: Vec<(String, bool)>,
    /// Whether the constituents are elliptic, when the criterion decides it.
    pub elliptic: Option<bool>,
    /// The verdict the criterion implies, when its hypotheses apply.
    pub implied: Option<Verdict>,
}

/// Criterion for `GO_odd`, `GU_odd` (`R ≅ Z_2^r` iff elliptic) and for
/// `GU_even` (in terms of `d` and `d_2 = d_{ω_{E/F}}`).
pub fn theorem_3_4_predicates(datum: &InducingDatum, rg: &RGroupDescriptor) -> Result<TheoremReport> {
    let r = datum.r();
    let d = rg.d;
    match datum.family() {
        GroupFamily::GOOdd | GroupFamily::GUOdd => {
            let full = d == r;
            Ok(TheoremReport {
                clauses: vec![("a.i: d = r".into(), full)],
                elliptic: Some(full),
                implied: Some(if full {
                    Verdict::Elliptic
                } else {
                    Verdict::InducedFromElliptic
                }),
            })
        }
        GroupFamily::GUEven => {
            let (_, d2, _) = gu_even_special_case(datum)?;
            let i = (r >= 1 && d == r - 1 && d2 > 0 && d2 % 2 == 0) || (d == r && d2 == 0);
            let ii = d + 1 < r || (r >= 1 && d == r - 1 && d2 == 1);
            let iii = r >= 1 && d == r - 1 && d2 >= 3 && d2 % 2 == 1;
            let implied = if i {
                Some(Verdict::Elliptic)
            } else if iii {
                Some(Verdict::NotInduced)
            } else if ii {
                Some(if d2 % 2 == 0 || d2 == 1 {
                    Verdict::InducedFromElliptic
                } else {
                    Verdict::InducedFromTemperedOnly
                })
            } else {
                None
            };
            Ok(TheoremReport {
                clauses: vec![
                    ("b.i: elliptic".into(), i),
                    ("b.ii: irreducibly induced".into(), ii),
                    ("b.iii: not induced".into(), iii),
                ],
                elliptic: Some(i),
                implied,
            })
        }
        found => Err(Error::FamilyMismatch {
            expected: "GO_odd, GU_odd or GU_even",
            found,
        }),
    }
}

/// Criterion for `GSp_even` and `GO_even`, in terms of `O`, `O_1` and `I_0`.
pub fn theorem_3_6_predicates(datum: &InducingDatum, o: &OSets) -> Result<TheoremReport> {
    require_even(datum)?;
    let all = BlockSet::full(datum.r());
    let x_rho = datum.x_rho();
    let o_partitions = partition_minimally_trivial(&o.o, x_rho).is_some();
    let i0_full = o.i0 == all;
    let elliptic = o_partitions && i0_full;
    let induced = !elliptic && (o.i0 != all || !o.o1.is_empty());
    let rest: Vec<Character> = o.o.iter().copied().filter(|c| !o.o1.contains(c)).collect();
    let choosable = induced && partition_minimally_trivial(&rest, x_rho).is_some();
    let implied = if elliptic {
        Verdict::Elliptic
    } else if !induced {
        Verdict::NotInduced
    } else if choosable {
        Verdict::InducedFromElliptic
    } else {
        Verdict::InducedFromTemperedOnly
    };
    Ok(TheoremReport {
        clauses: vec![
            ("a.i: O partitions into minimally trivial sets".into(), o_partitions),
            ("a.ii: I0 = all blocks".into(), i0_full),
            ("b: induced from tempered".into(), induced),
            ("b: elliptic choosable".into(), choosable),
        ],
        elliptic: Some(elliptic),
        implied: Some(implied),
    })
}

/// Whichever closed-form criterion covers the family.
pub fn theorem_predicates(datum: &InducingDatum, rg: &RGroupDescriptor) -> Result<TheoremReport> {
    if datum.family().twist_matters() && datum.family() != GroupFamily::GUEven {
        let sets = index_sets(datum);
        let o = o_sets(datum, &sets, &lambda_family(datum))?;
        theorem_3_6_predicates(datum, &o)
    } else {
        theorem_3_4_predicates(datum, rg)
    }
}

/// Classification from the closed-form R-group.
pub fn classify_datum(datum: &InducingDatum) -> EllipticClassification {
    classify(datum, &closed_form_r(datum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::{bundled, parse_instance, CharGroup};
    use crate::rgroup::brute_force_descriptor;

    fn ch(s: &str) -> Character {
        Character::parse(s.len() as u8, s).unwrap()
    }

    fn single_block(omega: &str) -> InducingDatum {
        parse_instance(&format!(
            r#"{{"family":"GSp_even","gamma_rank":2,"m":0,
            "blocks":[{{"size":1,"class":"a"}}],
            "classes":{{"a":{{"size":1,"eps_dual":"a","omega":"{omega}","x_holds":false}}}},
            "x_rho_generators":[]}}"#
        ))
        .unwrap()
    }

    #[test]
    fn classify_bundled() {
        for (name, v) in [
            ("EX_A", Verdict::Elliptic),
            ("EX_B", Verdict::Elliptic),
            ("EX_C", Verdict::Elliptic),
            ("EX_GU3", Verdict::NotInduced),
            ("EX_ODD", Verdict::InducedFromElliptic),
        ] {
            let d = bundled(name).unwrap();
            let brute = classify(&d, &brute_force_descriptor(&d).unwrap());
            assert_eq!(brute.verdict, v, "{name}");
            assert_eq!(classify_datum(&d), brute, "{name}");
        }
        let odd = classify_datum(&bundled("EX_ODD").unwrap());
        assert_eq!(odd.support, BlockSet::singleton(0));
        assert_eq!(odd.a_r_dim, 1);
    }

    #[test]
    fn classify_empty_levi() {
        let d = parse_instance(
            r#"{"family":"GO_even","gamma_rank":1,"m":2,"blocks":[],"classes":{},"x_rho_generators":[]}"#,
        )
        .unwrap();
        let c = classify_datum(&d);
        assert_eq!(c.verdict, Verdict::Elliptic);
        assert_eq!(c.a_r_dim, 0);
    }

    #[test]
    fn o_set_examples() {
        let b = bundled("EX_B").unwrap();
        let o = o_sets(&b, &index_sets(&b), &lambda_family(&b)).unwrap();
        assert!(o.o.is_empty());
        assert_eq!(o.i0, BlockSet::full(3));

        let c = bundled("EX_C").unwrap();
        let o = o_sets(&c, &index_sets(&c), &lambda_family(&c)).unwrap();
        assert_eq!(o.o, vec![ch("01"), ch("10"), ch("11")]);
        assert!(o.o1.is_empty());
        assert_eq!(o.i0, BlockSet::full(3));

        let s = single_block("10");
        let o = o_sets(&s, &index_sets(&s), &lambda_family(&s)).unwrap();
        assert_eq!(o.o, vec![ch("10")]);
        assert_eq!(o.o1, vec![ch("10")]);

        let gu = bundled("EX_GU3").unwrap();
        assert!(matches!(
            o_sets(&gu, &index_sets(&gu), &lambda_family(&gu)),
            Err(Error::FamilyMismatch { .. })
        ));
    }

    #[test]
    fn partitions() {
        let trivial = CharSubgroup::trivial(CharGroup::new(2));
        let all = [ch("10"), ch("01"), ch("11")];
        assert_eq!(
            partition_minimally_trivial(&all, &trivial),
            Some(vec![vec![ch("01"), ch("10"), ch("11")]])
        );
        assert_eq!(partition_minimally_trivial(&[], &trivial), Some(vec![]));
        assert_eq!(partition_minimally_trivial(&[ch("10")], &trivial), None);
        // X(ρ) = {00, 11}: the pair is minimally trivial, neither singleton is
        let x = CharSubgroup::span(CharGroup::new(2), vec![ch("11")]);
        assert_eq!(
            partition_minimally_trivial(&[ch("01"), ch("10")], &x),
            Some(vec![vec![ch("01"), ch("10")]])
        );
    }

    #[test]
    fn restricted_growth_strings_count_bell_numbers() {
        for (n, bell) in [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)] {
            let mut a = vec![0; n];
            let mut count = 1;
            while next_rgs(&mut a) {
                count += 1;
            }
            assert_eq!(count, bell);
        }
    }

    #[test]
    fn theorem_3_6_examples() {
        for name in ["EX_B", "EX_C"] {
            let d = bundled(name).unwrap();
            let rep = theorem_predicates(&d, &closed_form_r(&d)).unwrap();
            assert_eq!(rep.elliptic, Some(true));
            assert_eq!(rep.implied, Some(Verdict::Elliptic));
        }
        let s = single_block("10");
        let rep = theorem_predicates(&s, &closed_form_r(&s)).unwrap();
        assert_eq!(rep.elliptic, Some(false));
        assert_eq!(rep.clauses[2], ("b: induced from tempered".into(), true));
        assert_eq!(rep.implied, Some(Verdict::InducedFromElliptic));
        assert_eq!(classify_datum(&s).verdict, Verdict::InducedFromElliptic);
    }

    #[test]
    fn theorem_3_4_examples() {
        let gu = bundled("EX_GU3").unwrap();
        let rep = theorem_3_4_predicates(&gu, &closed_form_r(&gu)).unwrap();
        assert!(rep.clauses[2].1);
        assert_eq!(rep.implied, Some(Verdict::NotInduced));

        let odd_full = parse_instance(
            r#"{"family":"GO_odd","gamma_rank":1,"m":1,
            "blocks":[{"size":1,"class":"a"},{"size":2,"class":"b"}],
            "classes":{"a":{"size":1,"eps_dual":"a","omega":null,"x_holds":true},
                       "b":{"size":2,"eps_dual":"b","omega":null,"x_holds":true}},
            "x_rho_generators":["1"]}"#,
        )
        .unwrap();
        let rep = theorem_3_4_predicates(&odd_full, &closed_form_r(&odd_full)).unwrap();
        assert_eq!(rep.implied, Some(Verdict::Elliptic));
        assert_eq!(classify_datum(&odd_full).verdict, Verdict::Elliptic);

        // d2 = 1 with d = r − 1
        let gu1 = parse_instance(
            r#"{"family":"GU_even","gamma_rank":1,"m":0,
            "blocks":[{"size":1,"class":"a"},{"size":1,"class":"b"}],
            "classes":{"a":{"size":1,"eps_dual":"a","omega":"0","x_holds":true},
                       "b":{"size":1,"eps_dual":"b","omega":"1","x_holds":false}},
            "x_rho_generators":[]}"#,
        )
        .unwrap();
        let rg = closed_form_r(&gu1);
        assert_eq!(rg.d, 1);
        let rep = theorem_3_4_predicates(&gu1, &rg).unwrap();
        assert!(rep.clauses[1].1);
        assert_eq!(rep.implied, Some(Verdict::InducedFromElliptic));
        assert_eq!(classify(&gu1, &rg).verdict, Verdict::InducedFromElliptic);

        assert!(theorem_3_4_predicates(&bundled("EX_A").unwrap(), &rg).is_err());
    }
}
