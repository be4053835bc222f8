//! `W(σ)`, `Δ′`, `W′` and the Knapp–Stein R-group.
//!
//! Two independent routes are provided: [`brute_force_r`] filters the
//! enumerated Weyl group by the defining conditions, and [`closed_form_r`]
//! builds generators from the index sets `I_1`, `I_χ` and a basis of the
//! family `Λ(σ)` of minimally ρ-trivial character sets.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::datum::{Character, CharSubgroup, GroupFamily, InducingDatum};
use crate::error::{Error, Result};
use crate::gf2::Gf2Span;
use crate::weyl::{
    act_on_datum, enumerate_weyl, reduced_roots, sends_negative, BlockSet, ReducedRoot,
    SignedBlockPermutation, ENUMERATION_CAP,
};

/// `w ∈ W(σ)`: `wσ ≃ σ` blockwise, and (when the twist matters) the twist of
/// `ρ` lies in `X(ρ)`.
pub fn w_sigma_membership(w: &SignedBlockPermutation, datum: &InducingDatum) -> bool {
    // cheap rejection before building the acted datum
    let blocks = datum.blocks();
    for (j, &c) in blocks.iter().enumerate() {
        let moved = if w.signs().contains(j) {
            datum.class(c).eps_dual
        } else {
            c
        };
        if blocks[w.image(j)] != moved {
            return false;
        }
    }
    let acted = act_on_datum(w, datum);
    debug_assert!(!acted.twist.is_gl_incompatible(), "matching GL parts with an unbalanced twist");
    if !datum.family().twist_matters() {
        return true;
    }
    acted
        .twist
        .value()
        .is_some_and(|t| datum.x_rho().contains(t))
}

/// `Δ′ = {β ∈ Φ(P,A) | μ_β(σ) = 0}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeltaPrime {
    pub roots: BTreeSet<ReducedRoot>,
}

impl DeltaPrime {
    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, root: ReducedRoot) -> bool {
        self.roots.contains(&root)
    }
}

pub fn compute_delta_prime(datum: &InducingDatum) -> DeltaPrime {
    let r = datum.r();
    let blocks = datum.blocks();
    let roots = reduced_roots(r)
        .into_iter()
        .filter(|&root| match root {
            ReducedRoot::Alpha(a, b) => blocks[a] == blocks[b],
            ReducedRoot::Beta(a, b) => blocks[a] == datum.class(blocks[b]).eps_dual,
            ReducedRoot::Gamma(a) => {
                !datum.block_x_holds(a)
                    && w_sigma_membership(
                        &SignedBlockPermutation::sign_change(r, BlockSet::singleton(a)),
                        datum,
                    )
            }
        })
        .collect();
    DeltaPrime { roots }
}

/// Closure of a generating set under composition, sorted.
pub fn generate_subgroup(r: usize, generators: &[SignedBlockPermutation]) -> Vec<SignedBlockPermutation> {
    let id = SignedBlockPermutation::identity(r);
    let mut seen: HashSet<SignedBlockPermutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.compose_unchecked(&x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

/// `W′`, generated by the reflections in the roots of `Δ′`.
pub fn compute_w_prime(datum: &InducingDatum) -> Result<Vec<SignedBlockPermutation>> {
    let r = datum.r();
    if r > ENUMERATION_CAP {
        return Err(Error::CapExceeded { r, cap: ENUMERATION_CAP });
    }
    let gens: Vec<_> = compute_delta_prime(datum)
        .roots
        .iter()
        .map(|root| root.reflection(r))
        .collect();
    Ok(generate_subgroup(r, &gens))
}

/// `W(σ)` by exhaustive membership testing.
pub fn w_sigma(datum: &InducingDatum) -> Result<Vec<SignedBlockPermutation>> {
    Ok(enumerate_weyl(datum)?
        .into_iter()
        .filter(|w| w_sigma_membership(w, datum))
        .collect())
}

/// `R = {w ∈ W(σ) | w·β > 0 for all β ∈ Δ′}`, evaluated literally.
pub fn brute_force_r(datum: &InducingDatum) -> Result<Vec<SignedBlockPermutation>> {
    let delta = compute_delta_prime(datum);
    Ok(w_sigma(datum)?
        .into_iter()
        .filter(|w| delta.roots.iter().all(|&root| !sends_negative(w, root)))
        .collect())
}

/// The index sets `J_1, I_1, J_χ, I_χ` (for `χ ∉ X(ρ)`).
///
/// Within an `I`-set each class is represented by its last block: a block
/// followed by an equivalent one is sent by `C_i` across an `α` or `β` of
/// `Δ′`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexSets {
    pub j1: BlockSet,
    pub i1: BlockSet,
    pub j_chi: BTreeMap<Character, BlockSet>,
    pub i_chi: BTreeMap<Character, BlockSet>,
}

impl IndexSets {
    pub fn d1(&self) -> usize {
        self.i1.len()
    }

    pub fn d_chi(&self, chi: Character) -> usize {
        self.i_chi.get(&chi).map_or(0, |s| s.len())
    }

    /// `i_χ = min I_χ`, the representative block of `χ`.
    pub fn representative(&self, chi: Character) -> Option<usize> {
        self.i_chi.get(&chi).and_then(|&s| s.min())
    }

    /// `I_0 = I_1 ∪ ⋃ I_χ`.
    pub fn i0(&self) -> BlockSet {
        self.i_chi.values().fold(self.i1, |acc, &s| acc.union(s))
    }
}

/// Characters of `Γ` outside `X(ρ)`, ascending.
pub fn non_trivial_characters(datum: &InducingDatum) -> Vec<Character> {
    datum
        .gamma()
        .elements()
        .filter(|&c| !datum.x_rho().contains(c))
        .collect()
}

pub fn index_sets(datum: &InducingDatum) -> IndexSets {
    let r = datum.r();
    let last_occurrence = |i: usize| (i + 1..r).all(|j| datum.block_class(j) != datum.block_class(i));
    let mut sets = IndexSets::default();
    for i in (0..r).filter(|&i| datum.block_x_holds(i)) {
        sets.j1.insert(i);
        if last_occurrence(i) {
            sets.i1.insert(i);
        }
    }
    for chi in non_trivial_characters(datum) {
        let mut j = BlockSet::EMPTY;
        let mut ii = BlockSet::EMPTY;
        for i in (0..r).filter(|&i| datum.block_self_dual(i) && datum.block_omega(i) == chi) {
            j.insert(i);
            if last_occurrence(i) {
                ii.insert(i);
            }
        }
        sets.j_chi.insert(chi, j);
        sets.i_chi.insert(chi, ii);
    }
    sets
}

/// A set of characters as a bitmask over `Γ` (bit `b` for the character with
/// bits `b`).
pub fn indicator<'a, I: IntoIterator<Item = &'a Character>>(set: I) -> u64 {
    set.into_iter().fold(0, |acc, c| acc | 1 << c.bits())
}

fn product<'a, I: IntoIterator<Item = &'a Character>>(rank: u8, set: I) -> Character {
    set.into_iter()
        .fold(Character::identity(rank), |acc, &c| acc.mul(c))
}

/// Nonempty, product in `X(ρ)`, and no proper nonempty subset has its
/// product in `X(ρ)`.
pub fn is_minimally_trivial(set: &[Character], x_rho: &CharSubgroup) -> bool {
    let n = set.len();
    if n == 0 || n > 16 {
        return false;
    }
    let prod_of = |mask: u32| {
        product(
            x_rho.rank(),
            set.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, c)| c),
        )
    };
    let full = (1u32 << n) - 1;
    x_rho.contains(prod_of(full)) && (1..full).all(|m| !x_rho.contains(prod_of(m)))
}

/// `Λ(σ)` and the chosen basis `Λ(σ)′`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaFamily {
    pub members: Vec<Vec<Character>>,
    pub basis: Vec<Vec<Character>>,
}

impl LambdaFamily {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains_character(&self, chi: Character) -> bool {
        self.members.iter().any(|s| s.contains(&chi))
    }
}

pub fn lambda_family(datum: &InducingDatum) -> LambdaFamily {
    let sets = index_sets(datum);
    let candidates: Vec<Character> = non_trivial_characters(datum)
        .into_iter()
        .filter(|&c| sets.d_chi(c) >= 1)
        .collect();
    let mut members: Vec<Vec<Character>> = Vec::new();
    for mask in 1u32..1 << candidates.len() {
        let set: Vec<Character> = candidates
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &c)| c)
            .collect();
        if is_minimally_trivial(&set, datum.x_rho()) {
            members.push(set);
        }
    }
    members.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut span = Gf2Span::new();
    let basis = members
        .iter()
        .filter(|s| span.insert(indicator(s.iter())))
        .cloned()
        .collect();
    LambdaFamily { members, basis }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorOrigin {
    /// `C_j`, `j ∈ I_1`.
    SingleBlock,
    /// `C_{i_χ} C_i`, `i ∈ I_χ ∖ {i_χ}`.
    SameCharacter { chi: String },
    /// `C_S = ∏_{χ ∈ S} C_{i_χ}`, `S ∈ Λ(σ)′`.
    LambdaBasis { set: Vec<String> },
    /// Read off a given element set.
    Extracted,
    /// Rebased so that each generator is the only one containing its block.
    Adapted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub element: BlockSet,
    pub origin: GeneratorOrigin,
}

/// The terms of `d = d_1 + Σ (d_χ − 1) + |Λ(σ)′|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionBreakdown {
    pub d1: usize,
    /// `d_χ − 1` for each `χ ∉ X(ρ)` with `d_χ ≥ 1`.
    pub chi_terms: BTreeMap<String, usize>,
    pub lambda_basis: usize,
}

impl DimensionBreakdown {
    pub fn total(&self) -> usize {
        self.d1 + self.chi_terms.values().sum::<usize>() + self.lambda_basis
    }
}

/// An R-group, which is always a group of block sign changes `C_B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RGroupDescriptor {
    pub r: usize,
    /// Sorted by sign mask.
    pub elements: Vec<BlockSet>,
    pub generators: Vec<Generator>,
    pub d: usize,
    pub breakdown: Option<DimensionBreakdown>,
    pub index_sets: Option<IndexSets>,
    pub lambda: Option<LambdaFamily>,
    /// Union of the sign sets of all elements.
    pub support: BlockSet,
}

impl RGroupDescriptor {
    fn from_generators(r: usize, generators: Vec<Generator>) -> Self {
        let span = Gf2Span::from_vectors(generators.iter().map(|g| g.element.bits()));
        let elements: Vec<BlockSet> = span.elements().into_iter().map(BlockSet).collect();
        let support = elements.iter().fold(BlockSet::EMPTY, |a, &b| a.union(b));
        RGroupDescriptor {
            r,
            d: span.rank(),
            elements,
            generators,
            breakdown: None,
            index_sets: None,
            lambda: None,
            support,
        }
    }

    /// Builds a descriptor from an element set such as the output of
    /// [`brute_force_r`]. Fails if an element permutes blocks or the set is
    /// not a group.
    pub fn from_elements(r: usize, elements: &[SignedBlockPermutation]) -> Result<Self> {
        let mut signs = Vec::with_capacity(elements.len());
        for w in elements {
            if !w.has_trivial_perm() || w.r() != r {
                return Err(Error::InvalidArgument(format!(
                    "R-group element {w} is not a block sign change"
                )));
            }
            signs.push(w.signs());
        }
        Self::from_sign_sets(r, &signs)
    }

    /// Builds a descriptor from the sign sets `B` of its elements `C_B`.
    pub fn from_sign_sets(r: usize, sets: &[BlockSet]) -> Result<Self> {
        let mut signs = sets.to_vec();
        signs.sort();
        let mut span = Gf2Span::new();
        for s in &signs {
            span.insert(s.bits());
        }
        let generators = span
            .generators()
            .iter()
            .map(|&g| Generator {
                element: BlockSet(g),
                origin: GeneratorOrigin::Extracted,
            })
            .collect();
        let desc = Self::from_generators(r, generators);
        if desc.elements != signs {
            return Err(Error::InvalidArgument("element set is not closed under composition".into()));
        }
        Ok(desc)
    }

    /// The same group presented by another independent generating list.
    pub fn rebased(&self, generators: &[BlockSet], origin: GeneratorOrigin) -> Result<Self> {
        if crate::gf2::rank(generators.iter().map(|g| g.bits())) != generators.len() {
            return Err(Error::InvalidArgument("generators are not independent".into()));
        }
        let gens = generators
            .iter()
            .map(|&element| Generator {
                element,
                origin: origin.clone(),
            })
            .collect();
        let rebuilt = Self::from_generators(self.r, gens);
        if rebuilt.elements != self.elements {
            return Err(Error::InvalidArgument("generators span a different group".into()));
        }
        Ok(RGroupDescriptor {
            generators: rebuilt.generators,
            ..self.clone()
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, b: BlockSet) -> bool {
        self.elements.binary_search(&b).is_ok()
    }

    pub fn generator_elements(&self) -> Vec<BlockSet> {
        self.generators.iter().map(|g| g.element).collect()
    }

    pub fn span(&self) -> Gf2Span {
        Gf2Span::from_vectors(self.generators.iter().map(|g| g.element.bits()))
    }

    /// `C_1 ⋯ C_r`.
    pub fn longest(&self) -> BlockSet {
        BlockSet::full(self.r)
    }

    pub fn as_permutations(&self) -> Vec<SignedBlockPermutation> {
        self.elements
            .iter()
            .map(|&b| SignedBlockPermutation::sign_change(self.r, b))
            .collect()
    }
}

/// Brute-force R-group as a descriptor (generators extracted from the
/// element set).
pub fn brute_force_descriptor(datum: &InducingDatum) -> Result<RGroupDescriptor> {
    RGroupDescriptor::from_elements(datum.r(), &brute_force_r(datum)?)
}

/// The R-group from its generator description.
pub fn closed_form_r(datum: &InducingDatum) -> RGroupDescriptor {
    let r = datum.r();
    let sets = index_sets(datum);
    let mut generators: Vec<Generator> = sets
        .i1
        .iter()
        .map(|j| Generator {
            element: BlockSet::singleton(j),
            origin: GeneratorOrigin::SingleBlock,
        })
        .collect();
    let mut breakdown = DimensionBreakdown {
        d1: sets.d1(),
        chi_terms: BTreeMap::new(),
        lambda_basis: 0,
    };
    let lambda = if datum.family().twist_matters() {
        for (&chi, &ii) in &sets.i_chi {
            let Some(rep) = ii.min() else { continue };
            breakdown.chi_terms.insert(chi.to_string(), ii.len() - 1);
            for i in ii.iter().filter(|&i| i != rep) {
                generators.push(Generator {
                    element: BlockSet::from_indices([rep, i]),
                    origin: GeneratorOrigin::SameCharacter { chi: chi.to_string() },
                });
            }
        }
        let lambda = lambda_family(datum);
        for s in &lambda.basis {
            let element = BlockSet::from_indices(
                s.iter().map(|&chi| sets.representative(chi).expect("Λ members have d_χ ≥ 1")),
            );
            generators.push(Generator {
                element,
                origin: GeneratorOrigin::LambdaBasis {
                    set: s.iter().map(ToString::to_string).collect(),
                },
            });
        }
        breakdown.lambda_basis = lambda.rank();
        Some(lambda)
    } else {
        None
    };
    let mut desc = RGroupDescriptor::from_generators(r, generators);
    debug_assert_eq!(desc.d, desc.generators.len(), "closed-form generators are independent");
    desc.d = breakdown.total();
    desc.breakdown = Some(breakdown);
    desc.index_sets = Some(sets);
    desc.lambda = lambda;
    desc
}

/// The unitary even case: `d = d_1` if `d_{ω_{E/F}} = 0`, else
/// `d_1 + d_{ω_{E/F}} − 1`. Returns `(d1, d2, d)`.
pub fn gu_even_special_case(datum: &InducingDatum) -> Result<(usize, usize, usize)> {
    if datum.family() != GroupFamily::GUEven {
        return Err(Error::FamilyMismatch {
            expected: "GU_even",
            found: datum.family(),
        });
    }
    let sets = index_sets(datum);
    let d1 = sets.d1();
    // ω_{E/F} is the nontrivial element of Γ = Z/2; d2 = 0 when it lies in X(ρ)
    let d2 = sets.d_chi(Character::new(1, 1));
    let d = if d2 == 0 { d1 } else { d1 + d2 - 1 };
    Ok((d1, d2, d))
}
