//! The abstract inducing datum `(M, σ)` and its character-group data.
//!
//! A datum records the similitude family, the finite character group
//! `Γ = (F^×/N_ε F^×)^∧` (an elementary abelian 2-group, written additively as
//! bit-vectors), the subgroup `X(ρ)`, and the GL blocks of the Levi together
//! with the class of each block's discrete series: its ε-dual class, its
//! central character (only for self-ε-dual classes) and the reducibility flag
//! for inducing that block against `ρ`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::BlockSet;

/// Largest supported rank of `Γ`.
pub const MAX_GAMMA_RANK: u8 = 3;
/// Block indices are stored in a `u64` bitset.
pub const MAX_BLOCKS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupFamily {
    #[serde(rename = "GSp_even")]
    GSpEven,
    #[serde(rename = "GO_even")]
    GOEven,
    #[serde(rename = "GO_odd")]
    GOOdd,
    #[serde(rename = "GU_even")]
    GUEven,
    #[serde(rename = "GU_odd")]
    GUOdd,
}

impl GroupFamily {
    pub const ALL: [GroupFamily; 5] = [
        GroupFamily::GSpEven,
        GroupFamily::GOEven,
        GroupFamily::GOOdd,
        GroupFamily::GUEven,
        GroupFamily::GUOdd,
    ];

    /// Whether the multiplier image `λ(G(m))` is all of `F^×`, so that the
    /// twist of `ρ` by a block central character has to be tracked.
    pub fn twist_matters(self) -> bool {
        matches!(
            self,
            GroupFamily::GSpEven | GroupFamily::GOEven | GroupFamily::GUEven
        )
    }

    pub fn is_odd(self) -> bool {
        !self.twist_matters()
    }

    pub fn is_unitary(self) -> bool {
        matches!(self, GroupFamily::GUEven | GroupFamily::GUOdd)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GroupFamily::GSpEven => "GSp_even",
            GroupFamily::GOEven => "GO_even",
            GroupFamily::GOOdd => "GO_odd",
            GroupFamily::GUEven => "GU_even",
            GroupFamily::GUOdd => "GU_odd",
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for GroupFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupFamily::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family {s:?}")))
    }
}

/// An element of `Γ`, a bit-vector of length `rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    rank: u8,
    bits: u8,
}

impl Character {
    pub fn new(rank: u8, bits: u8) -> Self {
        assert!(rank <= MAX_GAMMA_RANK && u16::from(bits) < 1 << rank);
        Character { rank, bits }
    }

    pub fn identity(rank: u8) -> Self {
        Character::new(rank, 0)
    }

    pub fn bits(self) -> u8 {
        self.bits
    }

    pub fn rank(self) -> u8 {
        self.rank
    }

    pub fn is_identity(self) -> bool {
        self.bits == 0
    }

    /// Group law (pointwise product of quadratic characters).
    pub fn mul(self, other: Character) -> Character {
        assert_eq!(self.rank, other.rank, "characters of different groups");
        Character::new(self.rank, self.bits ^ other.bits)
    }

    /// Parses a `0/1` string, most significant coordinate first.
    pub fn parse(rank: u8, s: &str) -> Option<Character> {
        if s.len() != usize::from(rank) || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return None;
        }
        let bits = s.bytes().fold(0u8, |acc, b| acc << 1 | (b - b'0'));
        Some(Character::new(rank, bits))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in (0..self.rank).rev() {
            write!(f, "{}", self.bits >> k & 1)?;
        }
        Ok(())
    }
}

/// `Γ` itself: all bit-vectors of a fixed length under XOR.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CharGroup {
    rank: u8,
}

impl CharGroup {
    pub fn new(rank: u8) -> Self {
        assert!(rank <= MAX_GAMMA_RANK);
        CharGroup { rank }
    }

    pub fn rank(self) -> u8 {
        self.rank
    }

    pub fn order(self) -> usize {
        1 << self.rank
    }

    pub fn identity(self) -> Character {
        Character::identity(self.rank)
    }

    pub fn elements(self) -> impl Iterator<Item = Character> {
        (0..1u8 << self.rank).map(move |b| Character::new(self.rank, b))
    }

    pub fn parse(self, s: &str) -> Option<Character> {
        Character::parse(self.rank, s)
    }
}

/// A subgroup of `Γ`, stored as the span of its generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharSubgroup {
    rank: u8,
    generators: Vec<Character>,
    // bit b set iff the character with bits b is a member
    members: u8,
}

impl CharSubgroup {
    pub fn span(group: CharGroup, generators: Vec<Character>) -> Self {
        let mut members: u8 = 1;
        for g in &generators {
            assert_eq!(g.rank, group.rank);
            let mut next = members;
            for b in 0..group.order() as u8 {
                if members >> b & 1 == 1 {
                    next |= 1 << (b ^ g.bits);
                }
            }
            members = next;
        }
        CharSubgroup {
            rank: group.rank,
            generators,
            members,
        }
    }

    pub fn trivial(group: CharGroup) -> Self {
        Self::span(group, Vec::new())
    }

    pub fn full(group: CharGroup) -> Self {
        let gens = (0..group.rank)
            .map(|k| Character::new(group.rank, 1 << (group.rank - 1 - k)))
            .collect();
        Self::span(group, gens)
    }

    /// Every subgroup of `Γ`, each with a reduced generating set, in a fixed
    /// order.
    pub fn all_subgroups(group: CharGroup) -> Vec<CharSubgroup> {
        let order = group.order() as u32;
        let mut out = Vec::new();
        for mask in 0u32..1 << order {
            if mask & 1 == 0 {
                continue;
            }
            let closed = (0..order).all(|a| {
                mask >> a & 1 == 0 || (0..order).all(|b| mask >> b & 1 == 0 || mask >> (a ^ b) & 1 == 1)
            });
            if !closed {
                continue;
            }
            let span = crate::gf2::Gf2Span::from_vectors(
                (0..order).filter(|b| mask >> b & 1 == 1).map(u64::from),
            );
            let gens = span
                .generators()
                .iter()
                .map(|&b| Character::new(group.rank, b as u8))
                .collect();
            out.push(CharSubgroup::span(group, gens));
        }
        out
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn contains(&self, c: Character) -> bool {
        c.rank == self.rank && self.members >> c.bits & 1 == 1
    }

    pub fn generators(&self) -> &[Character] {
        &self.generators
    }

    pub fn members(&self) -> impl Iterator<Item = Character> + '_ {
        (0..1u8 << self.rank)
            .filter(|b| self.members >> b & 1 == 1)
            .map(|b| Character::new(self.rank, b))
    }

    pub fn order(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn is_full(&self) -> bool {
        self.order() == 1 << self.rank
    }
}

pub type ClassId = usize;

/// The class of a GL-block discrete series `σ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorClass {
    pub label: String,
    pub size: usize,
    pub eps_dual: ClassId,
    /// Central character, recorded only for self-ε-dual classes of the
    /// families where the twist of `ρ` matters.
    pub omega: Option<Character>,
    /// Whether `i_{G(m+k), GL_k × G(m)}(σ_i ⊗ ρ)` is reducible.
    pub x_holds: bool,
}

/// A validated inducing datum. Block indices in the API are zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InducingDatum {
    family: GroupFamily,
    gamma: CharGroup,
    x_rho: CharSubgroup,
    m: usize,
    classes: Vec<FactorClass>,
    blocks: Vec<ClassId>,
}

impl InducingDatum {
    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn gamma(&self) -> CharGroup {
        self.gamma
    }

    pub fn x_rho(&self) -> &CharSubgroup {
        &self.x_rho
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of GL blocks.
    pub fn r(&self) -> usize {
        self.blocks.len()
    }

    pub fn classes(&self) -> &[FactorClass] {
        &self.classes
    }

    pub fn class(&self, id: ClassId) -> &FactorClass {
        &self.classes[id]
    }

    pub fn blocks(&self) -> &[ClassId] {
        &self.blocks
    }

    pub fn block_class(&self, i: usize) -> ClassId {
        self.blocks[i]
    }

    pub fn block_size(&self, i: usize) -> usize {
        self.classes[self.blocks[i]].size
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        (0..self.r()).map(|i| self.block_size(i)).collect()
    }

    pub fn is_self_dual(&self, c: ClassId) -> bool {
        self.classes[c].eps_dual == c
    }

    pub fn block_self_dual(&self, i: usize) -> bool {
        self.is_self_dual(self.blocks[i])
    }

    /// Central character of a class as seen by the twist of `ρ`; classes
    /// without a recorded character contribute the identity.
    pub fn omega(&self, c: ClassId) -> Character {
        self.classes[c].omega.unwrap_or(self.gamma.identity())
    }

    pub fn block_omega(&self, i: usize) -> Character {
        self.omega(self.blocks[i])
    }

    pub fn block_x_holds(&self, i: usize) -> bool {
        self.classes[self.blocks[i]].x_holds
    }

    pub fn all_blocks(&self) -> BlockSet {
        BlockSet::full(self.r())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.r() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                r: self.r(),
            })
        }
    }

    /// `σ_i ≃ σ_j`.
    pub fn equivalent(&self, i: usize, j: usize) -> Result<bool> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.blocks[i] == self.blocks[j])
    }

    /// `σ_i ≃ σ_j^ε`.
    pub fn eps_dual_equivalent(&self, i: usize, j: usize) -> Result<bool> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.blocks[i] == self.classes[self.blocks[j]].eps_dual)
    }

    pub fn to_doc(&self) -> InstanceDoc {
        let classes = self
            .classes
            .iter()
            .map(|c| {
                (
                    c.label.clone(),
                    ClassDoc {
                        size: c.size,
                        eps_dual: self.classes[c.eps_dual].label.clone(),
                        omega: c.omega.map(|w| w.to_string()),
                        x_holds: c.x_holds,
                    },
                )
            })
            .collect();
        InstanceDoc {
            family: self.family,
            gamma_rank: self.gamma.rank,
            m: self.m,
            blocks: self
                .blocks
                .iter()
                .map(|&c| BlockDoc {
                    size: self.classes[c].size,
                    class: self.classes[c].label.clone(),
                })
                .collect(),
            classes,
            x_rho_generators: self.x_rho.generators.iter().map(|g| g.to_string()).collect(),
        }
    }

    /// Pretty-printed instance document.
    pub fn serialize(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("instance documents always serialize")
    }

    /// Single-line instance document (used in JSONL records).
    pub fn serialize_compact(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("instance documents always serialize")
    }

    pub fn validate(&self) -> ValidationReport {
        validate(&self.to_doc())
    }
}

impl TryFrom<InstanceDoc> for InducingDatum {
    type Error = Error;

    fn try_from(doc: InstanceDoc) -> Result<Self> {
        let doc = normalize(doc);
        let report = validate(&doc);
        if !report.is_empty() {
            return Err(Error::Validation(report.violations));
        }
        let gamma = CharGroup::new(doc.gamma_rank);
        let index: BTreeMap<&str, ClassId> = doc
            .classes
            .keys()
            .enumerate()
            .map(|(i, k)| (k.as_str(), i))
            .collect();
        let classes = doc
            .classes
            .iter()
            .map(|(label, c)| FactorClass {
                label: label.clone(),
                size: c.size,
                eps_dual: index[c.eps_dual.as_str()],
                omega: c.omega.as_deref().map(|s| gamma.parse(s).expect("validated")),
                x_holds: c.x_holds,
            })
            .collect();
        let x_rho = CharSubgroup::span(
            gamma,
            doc.x_rho_generators
                .iter()
                .map(|s| gamma.parse(s).expect("validated"))
                .collect(),
        );
        Ok(InducingDatum {
            family: doc.family,
            gamma,
            x_rho,
            m: doc.m,
            classes,
            blocks: doc.blocks.iter().map(|b| index[b.class.as_str()]).collect(),
        })
    }
}

/// The on-disk instance document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub family: GroupFamily,
    pub gamma_rank: u8,
    pub m: usize,
    pub blocks: Vec<BlockDoc>,
    pub classes: BTreeMap<String, ClassDoc>,
    pub x_rho_generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDoc {
    pub size: usize,
    pub class: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDoc {
    pub size: usize,
    pub eps_dual: String,
    pub omega: Option<String>,
    pub x_holds: bool,
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<InducingDatum> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| {
        use serde_json::error::Category;
        match e.classify() {
            Category::Syntax | Category::Eof | Category::Io => Error::Syntax(e.to_string()),
            Category::Data => Error::Schema(e.to_string()),
        }
    })?;
    InducingDatum::try_from(doc)
}

pub fn serialize_instance(datum: &InducingDatum) -> String {
    datum.serialize()
}

/// For the odd families the twist of `ρ` is automatically trivial: `X(ρ)` is
/// forced to be all of `Γ` and central characters are dropped.
fn normalize(mut doc: InstanceDoc) -> InstanceDoc {
    if doc.family.is_odd() && doc.gamma_rank <= MAX_GAMMA_RANK {
        for c in doc.classes.values_mut() {
            c.omega = None;
        }
        let full = CharSubgroup::full(CharGroup::new(doc.gamma_rank));
        doc.x_rho_generators = full.generators.iter().map(|g| g.to_string()).collect();
    }
    doc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    GammaRankBound,
    GuRankOne,
    TooManyBlocks,
    BitstringFormat,
    PositiveSize,
    BlockClassExists,
    BlockSizeMatchesClass,
    EpsDualExists,
    EpsDualInvolution,
    EpsDualSize,
    XHoldsRequiresSelfDual,
    SelfDualNeedsOmega,
    OmegaOnlyOnSelfDual,
    XHoldsRequiresOmegaInXRho,
    OddFamilyNoOmega,
    OddFamilyFullXRho,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::GammaRankBound => "gamma rank at most 3",
            Rule::GuRankOne => "GU character group has rank 1",
            Rule::TooManyBlocks => "at most 64 blocks",
            Rule::BitstringFormat => "bitstring length",
            Rule::PositiveSize => "positive size",
            Rule::BlockClassExists => "block class exists",
            Rule::BlockSizeMatchesClass => "block size matches class",
            Rule::EpsDualExists => "eps_dual exists",
            Rule::EpsDualInvolution => "eps_dual involution",
            Rule::EpsDualSize => "eps_dual size",
            Rule::XHoldsRequiresSelfDual => "x_holds requires self-dual class",
            Rule::SelfDualNeedsOmega => "self-dual class needs omega",
            Rule::OmegaOnlyOnSelfDual => "omega only on self-dual classes",
            Rule::XHoldsRequiresOmegaInXRho => "x_holds requires omega in X(rho)",
            Rule::OddFamilyNoOmega => "odd family carries no omega",
            Rule::OddFamilyFullXRho => "odd family has X(rho) = full group",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.rule.name(), self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    fn push(&mut self, rule: Rule, detail: impl Into<String>) {
        self.violations.push(Violation {
            rule,
            detail: detail.into(),
        });
    }
}

/// Lists every violated rule of a structurally parsed document.
pub fn validate(doc: &InstanceDoc) -> ValidationReport {
    let mut report = ValidationReport::default();
    if doc.gamma_rank > MAX_GAMMA_RANK {
        report.push(Rule::GammaRankBound, format!("gamma_rank = {}", doc.gamma_rank));
        // nothing below can be interpreted without a valid Γ
        return report;
    }
    let gamma = CharGroup::new(doc.gamma_rank);
    if doc.family.is_unitary() && doc.gamma_rank != 1 {
        report.push(Rule::GuRankOne, format!("gamma_rank = {}", doc.gamma_rank));
    }
    if doc.blocks.len() > MAX_BLOCKS {
        report.push(Rule::TooManyBlocks, format!("r = {}", doc.blocks.len()));
    }

    let mut x_rho_gens = Vec::new();
    for g in &doc.x_rho_generators {
        match gamma.parse(g) {
            Some(c) => x_rho_gens.push(c),
            None => report.push(Rule::BitstringFormat, format!("x_rho generator {g:?}")),
        }
    }
    let x_rho = CharSubgroup::span(gamma, x_rho_gens);
    if doc.family.is_odd() && !x_rho.is_full() {
        report.push(Rule::OddFamilyFullXRho, format!("|X(rho)| = {}", x_rho.order()));
    }

    for (k, b) in doc.blocks.iter().enumerate() {
        if b.size == 0 {
            report.push(Rule::PositiveSize, format!("block {}", k + 1));
        }
        match doc.classes.get(&b.class) {
            None => report.push(Rule::BlockClassExists, format!("block {} class {:?}", k + 1, b.class)),
            Some(c) if c.size != b.size => report.push(
                Rule::BlockSizeMatchesClass,
                format!("block {} has size {} but class {} has size {}", k + 1, b.size, b.class, c.size),
            ),
            Some(_) => {}
        }
    }

    for (label, c) in &doc.classes {
        if c.size == 0 {
            report.push(Rule::PositiveSize, format!("class {label}"));
        }
        let self_dual = &c.eps_dual == label;
        match doc.classes.get(&c.eps_dual) {
            None => report.push(Rule::EpsDualExists, format!("{label} -> {:?}", c.eps_dual)),
            Some(dual) => {
                if &dual.eps_dual != label {
                    report.push(
                        Rule::EpsDualInvolution,
                        format!("{label} -> {} -> {}", c.eps_dual, dual.eps_dual),
                    );
                }
                if dual.size != c.size {
                    report.push(
                        Rule::EpsDualSize,
                        format!("{label} has size {} but its eps_dual {} has size {}", c.size, c.eps_dual, dual.size),
                    );
                }
            }
        }
        if c.x_holds && !self_dual {
            report.push(Rule::XHoldsRequiresSelfDual, label.clone());
        }
        let omega = match &c.omega {
            None => None,
            Some(s) => match gamma.parse(s) {
                Some(w) => Some(w),
                None => {
                    report.push(Rule::BitstringFormat, format!("omega of {label}: {s:?}"));
                    None
                }
            },
        };
        if doc.family.twist_matters() {
            if self_dual && c.omega.is_none() {
                report.push(Rule::SelfDualNeedsOmega, label.clone());
            }
            if !self_dual && c.omega.is_some() {
                report.push(Rule::OmegaOnlyOnSelfDual, label.clone());
            }
            if c.x_holds {
                if let Some(w) = omega {
                    if !x_rho.contains(w) {
                        report.push(Rule::XHoldsRequiresOmegaInXRho, format!("{label}: omega = {w}"));
                    }
                }
            }
        } else if c.omega.is_some() {
            report.push(Rule::OddFamilyNoOmega, label.clone());
        }
    }
    report
}

const EX_A: &str = include_str!("../instances/EX_A.json");
const EX_B: &str = include_str!("../instances/EX_B.json");
const EX_C: &str = include_str!("../instances/EX_C.json");
const EX_GU3: &str = include_str!("../instances/EX_GU3.json");
const EX_ODD: &str = include_str!("../instances/EX_ODD.json");

/// Names of the bundled instances.
pub const BUNDLED_NAMES: [&str; 5] = ["EX_A", "EX_B", "EX_C", "EX_GU3", "EX_ODD"];

/// Raw document text of a bundled instance.
pub fn bundled_text(name: &str) -> Result<&'static str> {
    Ok(match name {
        "EX_A" => EX_A,
        "EX_B" => EX_B,
        "EX_C" => EX_C,
        "EX_GU3" => EX_GU3,
        "EX_ODD" => EX_ODD,
        _ => return Err(Error::UnknownExample(name.to_string())),
    })
}

pub fn bundled(name: &str) -> Result<InducingDatum> {
    parse_instance(bundled_text(name)?)
}
