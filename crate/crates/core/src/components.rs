//! Characters of `R`, the constituents `π_κ` they label, and the elliptic
//! signs `ε(κ) = κ(C_1⋯C_r)`.
//!
//! Characters are stored by their values on a fixed generator list: bit `k`
//! of [`RCharacter::negated`] is set when generator `k` maps to `−1`.

use std::fmt;

use crate::datum::InducingDatum;
use crate::error::{Error, Result};
use crate::gf2::Gf2Span;
use crate::rgroup::{GeneratorOrigin, RGroupDescriptor};
use crate::weyl::BlockSet;

/// A character of `R ≅ Z_2^d`, relative to a generator list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RCharacter {
    pub negated: u64,
    pub d: usize,
}

impl RCharacter {
    pub fn trivial(d: usize) -> Self {
        RCharacter { negated: 0, d }
    }

    pub fn is_trivial(self) -> bool {
        self.negated == 0
    }

    pub fn on_generator(self, k: usize) -> i8 {
        if self.negated >> k & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn signs(self) -> Vec<i8> {
        (0..self.d).map(|k| self.on_generator(k)).collect()
    }

    /// Pointwise product.
    pub fn mul(self, other: RCharacter) -> RCharacter {
        debug_assert_eq!(self.d, other.d);
        RCharacter {
            negated: self.negated ^ other.negated,
            d: self.d,
        }
    }

    /// `κ(C_B)`, or `None` when `C_B ∉ R`. `basis` must have been built from
    /// the same generator list as `self`.
    pub fn eval(self, basis: &Gf2Span, b: BlockSet) -> Option<i8> {
        let coords = basis.coordinates(b.bits())?;
        Some(if (coords & self.negated).count_ones() % 2 == 1 { -1 } else { 1 })
    }
}

impl fmt::Display for RCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self.signs().iter().map(|&v| if v > 0 { "+" } else { "−" }).collect();
        write!(f, "κ=({})", s.join(","))
    }
}

/// The generator basis of `R` in the form [`RCharacter::eval`] needs.
pub fn character_basis(rg: &RGroupDescriptor) -> Gf2Span {
    let span = rg.span();
    debug_assert_eq!(span.rank(), rg.generators.len());
    span
}

/// All `2^d` characters, in lexicographic order of their sign vectors on the
/// generator list (`+` before `−`, first generator most significant).
pub fn characters_of_r(rg: &RGroupDescriptor) -> Vec<RCharacter> {
    let d = rg.generators.len();
    (0u64..1 << d)
        .map(|n| RCharacter {
            negated: (0..d).filter(|k| n >> (d - 1 - k) & 1 == 1).fold(0, |m, k| m | 1 << k),
            d,
        })
        .collect()
}

/// `ε(κ) = κ(C_1⋯C_r)`, or `None` when `C_1⋯C_r ∉ R`.
pub fn epsilon_sign(kappa: RCharacter, rg: &RGroupDescriptor) -> Option<i8> {
    kappa.eval(&character_basis(rg), rg.longest())
}

fn require_elliptic(rg: &RGroupDescriptor) -> Result<()> {
    if rg.contains(rg.longest()) {
        Ok(())
    } else {
        Err(Error::NotElliptic)
    }
}

/// `R_J = {C_B ∈ R | B ∩ J = ∅}`, offered only when `C_1⋯C_r ∈ R`.
pub fn sub_rgroup(rg: &RGroupDescriptor, j: BlockSet) -> Result<RGroupDescriptor> {
    require_elliptic(rg)?;
    if let Some(bad) = j.iter().find(|&i| i >= rg.r) {
        return Err(Error::IndexOutOfRange { index: bad, r: rg.r });
    }
    let kept: Vec<BlockSet> = rg
        .elements
        .iter()
        .copied()
        .filter(|b| b.intersection(j).is_empty())
        .collect();
    RGroupDescriptor::from_sign_sets(rg.r, &kept)
}

/// Generators `Ω = (s_1, …, s_d)` with blocks `j_1, …, j_d` such that
/// `Ω ∖ {s_i}` generates `R_{j_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedGenerators {
    pub omega: Vec<BlockSet>,
    /// Zero-based block indices `j_i`.
    pub certificate: Vec<usize>,
}

impl AdaptedGenerators {
    /// Checks `span(Ω ∖ {s_i}) = R_{j_i}` for every `i`.
    pub fn verify(&self, rg: &RGroupDescriptor) -> Result<bool> {
        for (i, &j) in self.certificate.iter().enumerate() {
            let rest = self
                .omega
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, s)| s.bits());
            let span = Gf2Span::from_vectors(rest).elements();
            let sub = sub_rgroup(rg, BlockSet::singleton(j))?;
            if span.into_iter().map(BlockSet).collect::<Vec<_>>() != sub.elements {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Starting from the generators of `rg`, stage `k` takes `j_k = min` of the
/// support of `s_k` and multiplies every other generator containing `j_k`
/// by `s_k`.
pub fn adapted_generators(rg: &RGroupDescriptor) -> Result<AdaptedGenerators> {
    require_elliptic(rg)?;
    let mut omega = rg.generator_elements();
    let mut certificate = Vec::with_capacity(omega.len());
    for k in 0..omega.len() {
        let s = omega[k];
        let j = s.min().expect("independent generators are nonzero");
        debug_assert!(!certificate.contains(&j));
        for (l, t) in omega.iter_mut().enumerate() {
            if l != k && t.contains(j) {
                *t = t.xor(s);
            }
        }
        certificate.push(j);
    }
    Ok(AdaptedGenerators { omega, certificate })
}

/// `R̂(κ′) = {κ ∈ R̂ | κ = κ′ on R_J}` for `J = {j}`, where `κ′` is given on
/// the generators of [`sub_rgroup`]`(rg, {j})` and the result on those of
/// `rg`.
pub fn restriction_fibers(rg: &RGroupDescriptor, j: usize, kappa_prime: RCharacter) -> Result<Vec<RCharacter>> {
    let sub = sub_rgroup(rg, BlockSet::singleton(j))?;
    if kappa_prime.d != sub.generators.len() {
        return Err(Error::RankMismatch {
            left: kappa_prime.d,
            right: sub.generators.len(),
        });
    }
    let basis = character_basis(rg);
    let sub_basis = character_basis(&sub);
    Ok(characters_of_r(rg)
        .into_iter()
        .filter(|kappa| {
            sub.elements
                .iter()
                .all(|&w| kappa.eval(&basis, w) == kappa_prime.eval(&sub_basis, w))
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentRow {
    pub kappa: RCharacter,
    pub epsilon: Option<i8>,
    pub multiplicity: usize,
}

/// One row per constituent `π_κ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentTable {
    /// The generator list the characters are expressed on (adapted when
    /// elliptic).
    pub generators: Vec<BlockSet>,
    pub rows: Vec<ComponentRow>,
    /// `C_1⋯C_r` when it lies in `R`.
    pub w0: Option<BlockSet>,
    pub epsilon_sum: Option<i64>,
}

impl ComponentTable {
    pub fn is_elliptic(&self) -> bool {
        self.w0.is_some()
    }
}

/// The R-group presented on the generator list used for component labels.
pub fn labelled_rgroup(rg: &RGroupDescriptor) -> RGroupDescriptor {
    if rg.d == 0 || !rg.contains(rg.longest()) {
        return rg.clone();
    }
    let adapted = adapted_generators(rg).expect("elliptic");
    rg.rebased(&adapted.omega, GeneratorOrigin::Adapted)
        .expect("adapted generators span R")
}

pub fn component_table(datum: &InducingDatum, rg: &RGroupDescriptor) -> ComponentTable {
    debug_assert_eq!(datum.r(), rg.r);
    let labelled = labelled_rgroup(rg);
    let basis = character_basis(&labelled);
    let w0 = labelled.contains(labelled.longest()).then(|| labelled.longest());
    let rows: Vec<ComponentRow> = characters_of_r(&labelled)
        .into_iter()
        .map(|kappa| ComponentRow {
            kappa,
            epsilon: w0.and_then(|w| kappa.eval(&basis, w)),
            multiplicity: 1,
        })
        .collect();
    let epsilon_sum = w0.map(|_| rows.iter().map(|row| i64::from(row.epsilon.unwrap_or(0))).sum());
    ComponentTable {
        generators: labelled.generator_elements(),
        rows,
        w0,
        epsilon_sum,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::{bundled, parse_instance};
    use crate::rgroup::closed_form_r;

    fn b(idx: &[usize]) -> BlockSet {
        BlockSet::from_indices(idx.iter().map(|i| i - 1))
    }

    fn rg(name: &str) -> RGroupDescriptor {
        closed_form_r(&bundled(name).unwrap())
    }

    #[test]
    fn character_counts() {
        assert_eq!(characters_of_r(&rg("EX_C")).len(), 2);
        assert_eq!(characters_of_r(&rg("EX_A")).len(), 8);
        let odd = rg("EX_ODD");
        assert_eq!(odd.d, 1);
        let none = parse_instance(
            r#"{"family":"GSp_even","gamma_rank":1,"m":0,"blocks":[],"classes":{},"x_rho_generators":[]}"#,
        )
        .unwrap();
        let chars = characters_of_r(&closed_form_r(&none));
        assert_eq!(chars, vec![RCharacter::trivial(0)]);
    }

    #[test]
    fn character_order_and_display() {
        let chars = characters_of_r(&rg("EX_B"));
        let shown: Vec<String> = chars.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["κ=(+,+)", "κ=(+,−)", "κ=(−,+)", "κ=(−,−)"]);
    }

    #[test]
    fn epsilon_examples() {
        let ex_b = rg("EX_B");
        assert_eq!(ex_b.generator_elements(), vec![b(&[1]), b(&[2, 3])]);
        let kappa = RCharacter { negated: 0b01, d: 2 };
        assert_eq!(epsilon_sign(kappa, &ex_b), Some(-1));
        assert_eq!(epsilon_sign(RCharacter::trivial(2), &ex_b), Some(1));
        let ex_a = rg("EX_A");
        assert_eq!(epsilon_sign(RCharacter { negated: 0b111, d: 3 }, &ex_a), Some(-1));
        assert_eq!(epsilon_sign(RCharacter::trivial(1), &rg("EX_ODD")), None);
    }

    #[test]
    fn sub_rgroup_examples() {
        let ex_a = rg("EX_A");
        let s = sub_rgroup(&ex_a, b(&[1])).unwrap();
        assert_eq!(s.elements, vec![BlockSet::EMPTY, b(&[2]), b(&[3]), b(&[2, 3])]);
        let s = sub_rgroup(&rg("EX_B"), b(&[2])).unwrap();
        assert_eq!(s.elements, vec![BlockSet::EMPTY, b(&[1])]);
        assert_eq!(sub_rgroup(&ex_a, BlockSet::EMPTY).unwrap().elements, ex_a.elements);
        assert!(matches!(sub_rgroup(&rg("EX_ODD"), b(&[1])), Err(Error::NotElliptic)));
        assert!(matches!(sub_rgroup(&ex_a, b(&[9])), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn adapted_examples() {
        for (name, omega, cert) in [
            ("EX_B", vec![b(&[1]), b(&[2, 3])], vec![0, 1]),
            ("EX_A", vec![b(&[1]), b(&[2]), b(&[3])], vec![0, 1, 2]),
            ("EX_C", vec![b(&[1, 2, 3])], vec![0]),
        ] {
            let g = rg(name);
            let a = adapted_generators(&g).unwrap();
            assert_eq!(a.omega, omega, "{name}");
            assert_eq!(a.certificate, cert, "{name}");
            assert!(a.verify(&g).unwrap());
        }
        // a non-adapted starting list gets rebased
        let ex_a = rg("EX_A");
        let skewed = ex_a
            .rebased(&[b(&[1, 2]), b(&[2]), b(&[2, 3])], GeneratorOrigin::Extracted)
            .unwrap();
        let a = adapted_generators(&skewed).unwrap();
        assert!(a.verify(&skewed).unwrap());
        assert_eq!(a.certificate, vec![0, 1, 2]);
        assert!(matches!(adapted_generators(&rg("EX_ODD")), Err(Error::NotElliptic)));
    }

    #[test]
    fn fiber_examples() {
        let ex_b = rg("EX_B");
        let fiber = restriction_fibers(&ex_b, 0, RCharacter::trivial(1)).unwrap();
        let basis = character_basis(&ex_b);
        let on_c1: Vec<_> = fiber.iter().map(|k| k.eval(&basis, b(&[1])).unwrap()).collect();
        assert_eq!(on_c1, vec![1, -1]);

        let ex_a = rg("EX_A");
        for kp in 0..4 {
            let fiber = restriction_fibers(&ex_a, 1, RCharacter { negated: kp, d: 2 }).unwrap();
            assert_eq!(fiber.len(), 2);
        }
        let ex_c = rg("EX_C");
        assert_eq!(restriction_fibers(&ex_c, 0, RCharacter::trivial(0)).unwrap().len(), 2);
        assert!(restriction_fibers(&ex_c, 0, RCharacter::trivial(3)).is_err());
    }

    #[test]
    fn table_examples() {
        let t = component_table(&bundled("EX_A").unwrap(), &rg("EX_A"));
        assert_eq!(t.rows.len(), 8);
        assert_eq!(t.rows.iter().filter(|r| r.epsilon == Some(1)).count(), 4);
        assert_eq!(t.epsilon_sum, Some(0));
        let t = component_table(&bundled("EX_C").unwrap(), &rg("EX_C"));
        let eps: Vec<_> = t.rows.iter().map(|r| r.epsilon).collect();
        assert_eq!(eps, vec![Some(1), Some(-1)]);
        let t = component_table(&bundled("EX_ODD").unwrap(), &rg("EX_ODD"));
        assert_eq!(t.rows.len(), 2);
        assert!(t.rows.iter().all(|r| r.epsilon.is_none()));
        assert_eq!(t.epsilon_sum, None);
    }
}
