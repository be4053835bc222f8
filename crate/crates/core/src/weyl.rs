//! The block Weyl group `W(G,A) ⊆ S_r ⋉ Z_2^r` and its actions.
//!
//! Elements are stored in the normal form "sign changes first, then the
//! permutation": `w = (perm, B)` acts on the block functionals by
//! `f_i ↦ s_i f_{perm(i)}` with `s_i = -1` exactly for `i ∈ B`.
//!
//! Reduced roots live at block level: `α = f_a − f_b`, `β = f_a + f_b`
//! (`a < b`) and `γ_a` a positive multiple of `f_a`. A linear form in the
//! `f_i` is negative iff its first nonzero coefficient is negative.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;

use crate::datum::{Character, ClassId, InducingDatum};
use crate::error::{Error, Result};

/// Default bound on `r` for anything that enumerates `W(G,A)`.
pub const ENUMERATION_CAP: usize = 7;

/// A set of block indices (zero-based).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockSet(pub u64);

impl BlockSet {
    pub const EMPTY: BlockSet = BlockSet(0);

    pub fn full(r: usize) -> Self {
        assert!(r <= 64);
        if r == 64 {
            BlockSet(u64::MAX)
        } else {
            BlockSet((1u64 << r) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        BlockSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        BlockSet(it.into_iter().fold(0, |acc, i| acc | 1 << i))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn xor(self, other: BlockSet) -> BlockSet {
        BlockSet(self.0 ^ other.0)
    }

    pub fn union(self, other: BlockSet) -> BlockSet {
        BlockSet(self.0 | other.0)
    }

    pub fn intersection(self, other: BlockSet) -> BlockSet {
        BlockSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: BlockSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.0 >> i & 1 == 1)
    }

    /// One-based listing, e.g. `{1,3}`.
    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for BlockSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.iter().map(|i| i + 1).join(","))
    }
}

/// The block sign change `C_B` written like the `C{1,3}` of reports, with
/// `1` for the identity.
pub fn sign_change_label(b: BlockSet) -> String {
    if b.is_empty() {
        "1".to_string()
    } else {
        format!("C{b}")
    }
}

/// An element of `S_r ⋉ Z_2^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedBlockPermutation {
    perm: Vec<u8>,
    signs: BlockSet,
}

impl SignedBlockPermutation {
    pub fn new(perm: Vec<u8>, signs: BlockSet) -> Result<Self> {
        let r = perm.len();
        let mut seen = vec![false; r];
        for &p in &perm {
            let p = usize::from(p);
            if p >= r || seen[p] {
                return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if !signs.is_subset(BlockSet::full(r)) {
            return Err(Error::InvalidArgument(format!("sign set {signs} exceeds r = {r}")));
        }
        Ok(SignedBlockPermutation { perm, signs })
    }

    pub fn identity(r: usize) -> Self {
        SignedBlockPermutation {
            perm: (0..r as u8).collect(),
            signs: BlockSet::EMPTY,
        }
    }

    /// `C_B`.
    pub fn sign_change(r: usize, signs: BlockSet) -> Self {
        assert!(signs.is_subset(BlockSet::full(r)));
        SignedBlockPermutation {
            perm: (0..r as u8).collect(),
            signs,
        }
    }

    /// The block transposition `w_ab`.
    pub fn transposition(r: usize, a: usize, b: usize) -> Self {
        let mut perm: Vec<u8> = (0..r as u8).collect();
        perm.swap(a, b);
        SignedBlockPermutation {
            perm,
            signs: BlockSet::EMPTY,
        }
    }

    pub fn r(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    pub fn image(&self, i: usize) -> usize {
        usize::from(self.perm[i])
    }

    pub fn signs(&self) -> BlockSet {
        self.signs
    }

    pub fn sign(&self, i: usize) -> i8 {
        if self.signs.contains(i) {
            -1
        } else {
            1
        }
    }

    pub fn has_trivial_perm(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| usize::from(p) == i)
    }

    pub fn is_identity(&self) -> bool {
        self.has_trivial_perm() && self.signs.is_empty()
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.r() != other.r() {
            return Err(Error::RankMismatch {
                left: self.r(),
                right: other.r(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        let mut signs = other.signs;
        let perm = other
            .perm
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                if self.signs.contains(usize::from(p)) {
                    signs = signs.xor(BlockSet::singleton(i));
                }
                self.perm[usize::from(p)]
            })
            .collect();
        SignedBlockPermutation { perm, signs }
    }

    pub fn inverse(&self) -> Self {
        let mut perm = vec![0u8; self.r()];
        let mut signs = BlockSet::EMPTY;
        for (i, &p) in self.perm.iter().enumerate() {
            perm[usize::from(p)] = i as u8;
            if self.signs.contains(i) {
                signs.insert(usize::from(p));
            }
        }
        SignedBlockPermutation { perm, signs }
    }

    /// Cycles of the permutation part (zero-based, each starting at its
    /// smallest element), fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.r()];
        let mut out = Vec::new();
        for start in 0..self.r() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut k = self.image(start);
            while k != start {
                seen[k] = true;
                cycle.push(k);
                k = self.image(k);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for SignedBlockPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| format!("({})", c.iter().map(|i| i + 1).join(" ")))
            .collect();
        match (cycles.is_empty(), self.signs.is_empty()) {
            (true, true) => f.write_str("1"),
            (true, false) => write!(f, "C{}", self.signs),
            (false, true) => f.write_str(&cycles.concat()),
            (false, false) => write!(f, "{}·C{}", cycles.concat(), self.signs),
        }
    }
}

/// The allowed block permutations: those preserving block sizes.
fn size_preserving_perms(sizes: &[usize]) -> impl Iterator<Item = Vec<u8>> + '_ {
    let r = sizes.len();
    (0..r as u8)
        .permutations(r)
        .filter(move |p| p.iter().enumerate().all(|(i, &q)| sizes[i] == sizes[usize::from(q)]))
}

/// `W(G,A)` for the given block sizes, sorted by (permutation, sign mask).
pub fn enumerate_weyl_for_sizes(sizes: &[usize], cap: usize) -> Result<Vec<SignedBlockPermutation>> {
    let r = sizes.len();
    if r > cap {
        return Err(Error::CapExceeded { r, cap });
    }
    let mut out = Vec::new();
    for perm in size_preserving_perms(sizes) {
        for mask in 0..1u64 << r {
            out.push(SignedBlockPermutation {
                perm: perm.clone(),
                signs: BlockSet(mask),
            });
        }
    }
    Ok(out)
}

/// `W(G,A)` for a datum, generated by the block transpositions of equal-size
/// blocks and all block sign changes.
pub fn enumerate_weyl(datum: &InducingDatum) -> Result<Vec<SignedBlockPermutation>> {
    enumerate_weyl_for_sizes(&datum.block_sizes(), ENUMERATION_CAP)
}

/// `|W(G,A)| = 2^r · ∏ (multiplicity of each block size)!`.
pub fn weyl_order(sizes: &[usize]) -> u128 {
    let mut counts: BTreeMap<usize, u128> = BTreeMap::new();
    for &s in sizes {
        *counts.entry(s).or_default() += 1;
    }
    let perms: u128 = counts.values().map(|&k| (1..=k).product::<u128>()).product();
    perms << sizes.len()
}

/// The twist that `w` applies to `ρ`.
///
/// Self-ε-dual classes contribute their central character in `Γ`. The
/// central characters of non-self-dual classes are not recorded; they are
/// tracked as integer exponents of one representative character per pair
/// `{c, c^ε}` (with `ω_{c^ε} = ω_c^{-1}` on the multiplier image). A nonzero
/// exponent means the GL parts can never match `σ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Twist {
    character: Character,
    free: BTreeMap<ClassId, i32>,
}

impl Twist {
    pub fn trivial(rank: u8) -> Self {
        Twist {
            character: Character::identity(rank),
            free: BTreeMap::new(),
        }
    }

    /// The twist as an element of `Γ`, or `None` when it is GL-incompatible.
    pub fn value(&self) -> Option<Character> {
        self.free.is_empty().then_some(self.character)
    }

    pub fn is_gl_incompatible(&self) -> bool {
        !self.free.is_empty()
    }

    fn add_class(&mut self, datum: &InducingDatum, c: ClassId) {
        if datum.is_self_dual(c) {
            self.character = self.character.mul(datum.omega(c));
            return;
        }
        let dual = datum.class(c).eps_dual;
        let rep = c.min(dual);
        let e = self.free.entry(rep).or_default();
        *e += if c == rep { 1 } else { -1 };
        if *e == 0 {
            self.free.remove(&rep);
        }
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(c) => write!(f, "{c}"),
            None => f.write_str("GL-incompatible"),
        }
    }
}

/// The result of acting on `σ`: the class carried by each block position and
/// the accumulated twist of `ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActedDatum {
    pub classes: Vec<ClassId>,
    pub twist: Twist,
}

impl ActedDatum {
    pub fn initial(datum: &InducingDatum) -> Self {
        ActedDatum {
            classes: datum.blocks().to_vec(),
            twist: Twist::trivial(datum.gamma().rank()),
        }
    }

    /// Applies `w`: position `perm(j)` receives the class at `j`, replaced by
    /// its ε-dual when `j ∈ B`, and `ρ` is twisted by `ω_j` for each `j ∈ B`.
    pub fn act(&self, w: &SignedBlockPermutation, datum: &InducingDatum) -> ActedDatum {
        assert_eq!(w.r(), self.classes.len());
        let mut classes = vec![0; self.classes.len()];
        let mut twist = self.twist.clone();
        for (j, &c) in self.classes.iter().enumerate() {
            let moved = if w.signs.contains(j) {
                twist.add_class(datum, c);
                datum.class(c).eps_dual
            } else {
                c
            };
            classes[w.image(j)] = moved;
        }
        ActedDatum { classes, twist }
    }

    /// Whether the GL parts agree with `σ` blockwise.
    pub fn gl_matches(&self, datum: &InducingDatum) -> bool {
        self.classes == datum.blocks()
    }
}

pub fn act_on_datum(w: &SignedBlockPermutation, datum: &InducingDatum) -> ActedDatum {
    ActedDatum::initial(datum).act(w, datum)
}

/// Reduced roots of `A` in `P`, indexed by zero-based blocks `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReducedRoot {
    /// `f_a − f_b`.
    Alpha(usize, usize),
    /// `f_a + f_b`.
    Beta(usize, usize),
    /// A positive multiple of `f_a`.
    Gamma(usize),
}

impl ReducedRoot {
    pub fn expr(self, r: usize) -> RootExpr {
        let mut c = vec![0i8; r];
        match self {
            ReducedRoot::Alpha(a, b) => {
                c[a] = 1;
                c[b] = -1;
            }
            ReducedRoot::Beta(a, b) => {
                c[a] = 1;
                c[b] = 1;
            }
            ReducedRoot::Gamma(a) => c[a] = 1,
        }
        RootExpr(c)
    }

    /// The reflection in this root, as an element of `W(G,A)`.
    pub fn reflection(self, r: usize) -> SignedBlockPermutation {
        match self {
            ReducedRoot::Alpha(a, b) => SignedBlockPermutation::transposition(r, a, b),
            ReducedRoot::Beta(a, b) => {
                let mut w = SignedBlockPermutation::transposition(r, a, b);
                w.signs = BlockSet::from_indices([a, b]);
                w
            }
            ReducedRoot::Gamma(a) => SignedBlockPermutation::sign_change(r, BlockSet::singleton(a)),
        }
    }
}

impl fmt::Display for ReducedRoot {
    /// Labels follow the `α_ij = f_i − f_{j+1}` convention (one-based).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ReducedRoot::Alpha(a, b) => write!(f, "α({},{})", a + 1, b),
            ReducedRoot::Beta(a, b) => write!(f, "β({},{})", a + 1, b),
            ReducedRoot::Gamma(a) => write!(f, "γ({})", a + 1),
        }
    }
}

/// All `r(r−1) + r` reduced roots, α's and β's first.
pub fn reduced_roots(r: usize) -> Vec<ReducedRoot> {
    let mut out = Vec::with_capacity(r * r);
    for a in 0..r {
        for b in a + 1..r {
            out.push(ReducedRoot::Alpha(a, b));
            out.push(ReducedRoot::Beta(a, b));
        }
    }
    out.extend((0..r).map(ReducedRoot::Gamma));
    out
}

/// A linear form `Σ c_i f_i` with small integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootExpr(pub Vec<i8>);

impl RootExpr {
    pub fn is_negative(&self) -> bool {
        self.0.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0)
    }

    pub fn negated(&self) -> RootExpr {
        RootExpr(self.0.iter().map(|c| -c).collect())
    }

    /// The reduced root `±self` is, with the sign.
    pub fn to_reduced_root(&self) -> Option<(ReducedRoot, i8)> {
        let (sign, pos) = if self.is_negative() {
            (-1, self.negated())
        } else {
            (1, self.clone())
        };
        let nz: Vec<(usize, i8)> = pos.0.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
        let root = match nz.as_slice() {
            [(a, 1)] => ReducedRoot::Gamma(*a),
            [(a, 1), (b, -1)] => ReducedRoot::Alpha(*a, *b),
            [(a, 1), (b, 1)] => ReducedRoot::Beta(*a, *b),
            _ => return None,
        };
        Some((root, sign))
    }
}

/// `w·α` by linearity.
pub fn act_on_root(w: &SignedBlockPermutation, root: ReducedRoot) -> RootExpr {
    let r = w.r();
    let before = root.expr(r);
    let mut after = vec![0i8; r];
    for (i, &c) in before.0.iter().enumerate() {
        if c != 0 {
            after[w.image(i)] += w.sign(i) * c;
        }
    }
    RootExpr(after)
}

/// `w·α < 0`, without building the image.
pub fn sends_negative(w: &SignedBlockPermutation, root: ReducedRoot) -> bool {
    let lead = |a: usize, b: usize, b_coeff: i8| {
        let (pa, pb) = (w.image(a), w.image(b));
        if pa < pb {
            w.sign(a) < 0
        } else {
            w.sign(b) * b_coeff < 0
        }
    };
    match root {
        ReducedRoot::Alpha(a, b) => lead(a, b, -1),
        ReducedRoot::Beta(a, b) => lead(a, b, 1),
        ReducedRoot::Gamma(a) => w.signs.contains(a),
    }
}

/// `R(w) = {α ∈ Φ(P,A) | w·α < 0}`.
pub fn negativity_set(w: &SignedBlockPermutation) -> BTreeSet<ReducedRoot> {
    reduced_roots(w.r())
        .into_iter()
        .filter(|&a| sends_negative(w, a))
        .collect()
}

/// The fixed subspace `𝔞_w` of `w` acting on `𝔞 ≅ R^r`.
///
/// `w` acts on coordinates by `x_i ↦ s_i x_i` placed at `perm(i)`. Each
/// cycle of `perm` with an even number of sign changes contributes one free
/// direction (its coordinates are equal up to sign); a cycle with an odd
/// number forces its coordinates to vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSubspace {
    pub r: usize,
    pub zero_coords: BlockSet,
    pub linked: Vec<BlockSet>,
}

impl FixedSubspace {
    pub fn dim(&self) -> usize {
        self.linked.len()
    }

    pub fn is_zero(&self) -> bool {
        self.linked.is_empty()
    }
}

pub fn fixed_subspace(w: &SignedBlockPermutation) -> FixedSubspace {
    let mut zero = BlockSet::EMPTY;
    let mut linked = Vec::new();
    for cycle in w.cycles() {
        let set = BlockSet::from_indices(cycle.iter().copied());
        if set.intersection(w.signs).len() % 2 == 1 {
            zero = zero.union(set);
        } else {
            linked.push(set);
        }
    }
    FixedSubspace {
        r: w.r(),
        zero_coords: zero,
        linked,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::bundled;
    use proptest::prelude::*;

    fn c(r: usize, idx: &[usize]) -> SignedBlockPermutation {
        SignedBlockPermutation::sign_change(r, BlockSet::from_indices(idx.iter().copied()))
    }

    #[test]
    fn compose_examples() {
        let c1 = c(2, &[0]);
        assert!(c1.compose(&c1).unwrap().is_identity());
        let w12 = SignedBlockPermutation::transposition(2, 0, 1);
        assert_eq!(c1.compose(&w12).unwrap(), w12.compose(&c(2, &[1])).unwrap());
        assert_eq!(c(3, &[0, 1]).compose(&c(3, &[1, 2])).unwrap(), c(3, &[0, 2]));
        assert!(matches!(
            c(3, &[0]).compose(&c(2, &[0])),
            Err(Error::RankMismatch { left: 3, right: 2 })
        ));
    }

    #[test]
    fn weyl_sizes() {
        assert_eq!(enumerate_weyl_for_sizes(&[1, 2], 7).unwrap().len(), 4);
        assert_eq!(enumerate_weyl_for_sizes(&[1, 1], 7).unwrap().len(), 8);
        let a = bundled("EX_A").unwrap();
        let w = enumerate_weyl(&a).unwrap();
        assert_eq!(w.len(), 48);
        assert!(w.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(weyl_order(&[1, 1, 1]), 48);
        assert!(matches!(
            enumerate_weyl_for_sizes(&[1; 8], 7),
            Err(Error::CapExceeded { r: 8, cap: 7 })
        ));
    }

    #[test]
    fn acting_on_ex_b() {
        let b = bundled("EX_B").unwrap();
        let d = act_on_datum(&c(3, &[0]), &b);
        assert!(d.gl_matches(&b));
        assert_eq!(d.twist.value().unwrap().to_string(), "00");
        let d = act_on_datum(&c(3, &[1]), &b);
        assert_eq!(d.twist.value().unwrap().to_string(), "10");
        let d = act_on_datum(&SignedBlockPermutation::identity(3), &b);
        assert!(d.gl_matches(&b));
        assert_eq!(d.twist.value(), Some(b.gamma().identity()));
    }

    #[test]
    fn root_actions() {
        let r = 3;
        assert!(act_on_root(&c(r, &[0]), ReducedRoot::Gamma(0)).is_negative());
        let img = act_on_root(&c(r, &[1]), ReducedRoot::Alpha(0, 1));
        assert_eq!(img.to_reduced_root(), Some((ReducedRoot::Beta(0, 1), 1)));
        let img = act_on_root(&SignedBlockPermutation::transposition(r, 0, 1), ReducedRoot::Alpha(0, 1));
        assert!(img.is_negative());
    }

    #[test]
    fn negativity_set_of_c3() {
        // brute force: test the sign of every image expression
        let w = c(3, &[2]);
        let brute: BTreeSet<_> = reduced_roots(3)
            .into_iter()
            .filter(|&a| act_on_root(&w, a).is_negative())
            .collect();
        // C_3 sends f_a + f_3 to f_a − f_3, which leads with +f_a
        let expected: BTreeSet<_> = [ReducedRoot::Gamma(2)].into();
        assert_eq!(brute, expected);
        let first: BTreeSet<_> = reduced_roots(3)
            .into_iter()
            .filter(|&a| act_on_root(&c(3, &[0]), a).is_negative())
            .collect();
        assert_eq!(
            first,
            [
                ReducedRoot::Alpha(0, 1),
                ReducedRoot::Alpha(0, 2),
                ReducedRoot::Beta(0, 1),
                ReducedRoot::Beta(0, 2),
                ReducedRoot::Gamma(0)
            ]
            .into()
        );
        assert_eq!(negativity_set(&c(3, &[0])), first);
        assert_eq!(negativity_set(&w), expected);
        assert!(negativity_set(&SignedBlockPermutation::identity(3)).is_empty());
        let all = negativity_set(&c(3, &[0, 1, 2]));
        for i in 0..3 {
            assert!(negativity_set(&c(3, &[i])).is_subset(&all));
        }
        assert_eq!(reduced_roots(3).len(), 9);
    }

    #[test]
    fn fixed_subspaces() {
        let f = fixed_subspace(&c(3, &[0, 2]));
        assert_eq!(f.zero_coords, BlockSet::from_indices([0, 2]));
        assert_eq!(f.dim(), 1);
        assert_eq!(fixed_subspace(&SignedBlockPermutation::identity(3)).dim(), 3);
        assert!(fixed_subspace(&c(3, &[0, 1, 2])).is_zero());
        // (1 2) with one sign: x2 = -x1, x1 = x2 → zero
        let w = SignedBlockPermutation::new(vec![1, 0, 2], BlockSet::singleton(0)).unwrap();
        assert_eq!(fixed_subspace(&w).zero_coords, BlockSet::from_indices([0, 1]));
    }

    #[test]
    fn display() {
        let w = SignedBlockPermutation::new(vec![1, 0, 2], BlockSet::from_indices([0, 2])).unwrap();
        assert_eq!(w.to_string(), "(1 2)·C{1,3}");
        assert_eq!(SignedBlockPermutation::identity(2).to_string(), "1");
        assert_eq!(ReducedRoot::Alpha(0, 1).to_string(), "α(1,1)");
        assert_eq!(ReducedRoot::Beta(1, 2).to_string(), "β(2,2)");
    }

    fn arb_element(r: usize) -> impl Strategy<Value = SignedBlockPermutation> {
        (Just((0..r as u8).collect::<Vec<_>>()).prop_shuffle(), 0u64..1 << r)
            .prop_map(|(p, s)| SignedBlockPermutation::new(p, BlockSet(s)).unwrap())
    }

    fn arb_triple() -> impl Strategy<Value = (SignedBlockPermutation, SignedBlockPermutation, SignedBlockPermutation)> {
        (1usize..6).prop_flat_map(|r| (arb_element(r), arb_element(r), arb_element(r)))
    }

    proptest! {
        #[test]
        fn group_axioms((a, b, c) in arb_triple()) {
            let ab_c = a.compose(&b).unwrap().compose(&c).unwrap();
            let a_bc = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
            prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
            let id = SignedBlockPermutation::identity(a.r());
            prop_assert_eq!(a.compose(&id).unwrap(), a.clone());
            prop_assert_eq!(id.compose(&a).unwrap(), a);
        }

        #[test]
        fn root_action_is_a_group_action((a, b, _c) in arb_triple()) {
            let ab = a.compose(&b).unwrap();
            for root in reduced_roots(a.r()) {
                let step = act_on_root(&b, root);
                let (rb, sign) = step.to_reduced_root().expect("image is ± a root");
                let mut twice = act_on_root(&a, rb);
                if sign < 0 { twice = twice.negated(); }
                prop_assert_eq!(twice, act_on_root(&ab, root));
                prop_assert_eq!(sends_negative(&ab, root), act_on_root(&ab, root).is_negative());
            }
        }

        #[test]
        fn nonempty_sign_change_has_negative_roots(r in 1usize..7, mask in 1u64..64) {
            let mask = mask & ((1 << r) - 1);
            prop_assume!(mask != 0);
            prop_assert!(!negativity_set(&SignedBlockPermutation::sign_change(r, BlockSet(mask))).is_empty());
        }
    }
}
