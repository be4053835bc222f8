//! Exhaustive enumeration of inducing data up to relabeling.

use std::collections::{BTreeMap, HashMap, HashSet};

use itertools::Itertools;
use rayon::prelude::*;

use super::fuzz::{record_for, FuzzRecord};
use crate::datum::{BlockDoc, CharGroup, CharSubgroup, ClassDoc, GroupFamily, InducingDatum, InstanceDoc};
use crate::error::{Error, Result};
use crate::weyl::ENUMERATION_CAP;

/// Largest `r` the exhaustive catalog enumerates.
pub const CATALOG_CAP: usize = 4;

/// Integer partitions of `n`, parts descending, in reverse lexicographic
/// order.
fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Set partitions of `0..n` as restricted growth strings, lexicographic.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, prefix: &mut Vec<usize>, blocks: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=blocks {
            prefix.push(k);
            go(n, prefix, blocks.max(k + 1), out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), 0, &mut out);
    out
}

/// Assignments of an ε-dual to each of `n` classes: itself, a fresh unused
/// class, or another class of the same size. Fresh classes are numbered
/// from `n` on in order of creation.
fn dualities(sizes: &[usize]) -> Vec<Vec<usize>> {
    fn go(sizes: &[usize], dual: &mut Vec<Option<usize>>, fresh: usize, out: &mut Vec<Vec<usize>>) {
        let n = sizes.len();
        let Some(i) = dual.iter().position(Option::is_none) else {
            let mut full: Vec<usize> = dual.iter().map(|d| d.unwrap()).collect();
            for (k, &d) in dual.iter().enumerate() {
                if d.unwrap() >= n {
                    full.push(k);
                }
            }
            out.push(full);
            return;
        };
        dual[i] = Some(i);
        go(sizes, dual, fresh, out);
        dual[i] = Some(n + fresh);
        go(sizes, dual, fresh + 1, out);
        for j in i + 1..n {
            if dual[j].is_none() && sizes[j] == sizes[i] {
                dual[i] = Some(j);
                dual[j] = Some(i);
                go(sizes, dual, fresh, out);
                dual[j] = None;
            }
        }
        dual[i] = None;
    }
    let mut out = Vec::new();
    go(sizes, &mut vec![None; sizes.len()], 0, &mut out);
    out
}

/// Flat description of a datum used for building and canonicalizing.
#[derive(Clone, Debug)]
struct Flat {
    family: GroupFamily,
    rank: u8,
    x_rho: CharSubgroup,
    m: usize,
    blocks: Vec<usize>,
    size: Vec<usize>,
    dual: Vec<usize>,
    omega: Vec<Option<u8>>,
    x: Vec<bool>,
}

impl Flat {
    fn from_datum(d: &InducingDatum) -> Self {
        let classes = d.classes();
        Flat {
            family: d.family(),
            rank: d.gamma().rank(),
            x_rho: d.x_rho().clone(),
            m: d.m(),
            blocks: d.blocks().to_vec(),
            size: classes.iter().map(|c| c.size).collect(),
            dual: classes.iter().map(|c| c.eps_dual).collect(),
            omega: classes.iter().map(|c| c.omega.map(|w| w.bits())).collect(),
            x: classes.iter().map(|c| c.x_holds).collect(),
        }
    }

    fn to_doc(&self) -> InstanceDoc {
        let width = self.size.len().to_string().len();
        let label = |c: usize| format!("c{:0width$}", c + 1);
        let bits = |b: u8| crate::datum::Character::new(self.rank, b).to_string();
        InstanceDoc {
            family: self.family,
            gamma_rank: self.rank,
            m: self.m,
            blocks: self
                .blocks
                .iter()
                .map(|&c| BlockDoc {
                    size: self.size[c],
                    class: label(c),
                })
                .collect(),
            classes: (0..self.size.len())
                .map(|c| {
                    (
                        label(c),
                        ClassDoc {
                            size: self.size[c],
                            eps_dual: label(self.dual[c]),
                            omega: self.omega[c].map(bits),
                            x_holds: self.x[c],
                        },
                    )
                })
                .collect::<BTreeMap<_, _>>(),
            x_rho_generators: self.x_rho.generators().iter().map(ToString::to_string).collect(),
        }
    }

    /// Relabels classes by first appearance along `order` (unused duals
    /// after all used classes) and returns the comparison key.
    fn relabel(&self, order: &[usize]) -> (Vec<u32>, Flat) {
        let mut new_id: HashMap<usize, usize> = HashMap::new();
        let mut old_of: Vec<usize> = Vec::new();
        for &b in order {
            let c = self.blocks[b];
            new_id.entry(c).or_insert_with(|| {
                old_of.push(c);
                old_of.len() - 1
            });
        }
        let used = old_of.len();
        for k in 0..used {
            let dual = self.dual[old_of[k]];
            new_id.entry(dual).or_insert_with(|| {
                old_of.push(dual);
                old_of.len() - 1
            });
        }
        let flat = Flat {
            blocks: order.iter().map(|&b| new_id[&self.blocks[b]]).collect(),
            size: old_of.iter().map(|&c| self.size[c]).collect(),
            dual: old_of.iter().map(|&c| new_id[&self.dual[c]]).collect(),
            omega: old_of.iter().map(|&c| self.omega[c]).collect(),
            x: old_of.iter().map(|&c| self.x[c]).collect(),
            ..self.clone()
        };
        let mut key: Vec<u32> = Vec::new();
        key.extend(flat.blocks.iter().map(|&c| flat.size[c] as u32));
        key.extend(flat.blocks.iter().map(|&c| c as u32));
        for c in 0..flat.size.len() {
            key.push(flat.size[c] as u32);
            key.push(flat.dual[c] as u32);
            key.push(flat.omega[c].map_or(0, |b| u32::from(b) + 1));
            key.push(u32::from(flat.x[c]));
        }
        (key, flat)
    }

    fn canonical(&self) -> Flat {
        let r = self.blocks.len();
        let x_rho = CharSubgroup::all_subgroups(CharGroup::new(self.rank))
            .into_iter()
            .find(|h| h.order() == self.x_rho.order() && h.members().all(|c| self.x_rho.contains(c)))
            .expect("X(rho) is a subgroup");
        let this = Flat { x_rho, ..self.clone() };
        (0..r)
            .permutations(r)
            .map(|order| this.relabel(&order))
            .min_by(|a, b| a.0.cmp(&b.0))
            .map(|(_, f)| f)
            .expect("at least the identity ordering")
    }

    fn build(&self) -> InducingDatum {
        InducingDatum::try_from(self.to_doc()).expect("enumerated data are valid")
    }
}

/// The representative of `datum` up to reordering blocks and relabeling
/// classes. Classes that occur neither as a block nor as the dual of one are
/// dropped.
pub fn canonical_form(datum: &InducingDatum) -> Result<InducingDatum> {
    let r = datum.r();
    if r > ENUMERATION_CAP {
        return Err(Error::CapExceeded { r, cap: ENUMERATION_CAP });
    }
    Ok(Flat::from_datum(datum).canonical().build())
}

/// All inducing data for `family` with `r` blocks and `Γ` of rank
/// `gamma_rank`, one per relabeling class, in order of first generation.
pub fn enumerate_instances(family: GroupFamily, r: usize, gamma_rank: u8) -> Result<Vec<InducingDatum>> {
    if r > CATALOG_CAP {
        return Err(Error::CapExceeded { r, cap: CATALOG_CAP });
    }
    if gamma_rank > crate::datum::MAX_GAMMA_RANK {
        return Err(Error::InvalidArgument(format!("gamma rank {gamma_rank} exceeds 3")));
    }
    if family.is_unitary() && gamma_rank != 1 {
        return Err(Error::InvalidArgument(format!("{family} requires gamma rank 1")));
    }
    let gamma = CharGroup::new(gamma_rank);
    // with no blocks X(ρ) has nothing to act on
    let x_rhos = if family.twist_matters() && r == 0 {
        vec![CharSubgroup::trivial(gamma)]
    } else if family.twist_matters() {
        CharSubgroup::all_subgroups(gamma)
    } else {
        vec![CharSubgroup::full(gamma)]
    };

    let mut seen: HashSet<String> = HashSet::new();
    let mut out = Vec::new();
    for parts in integer_partitions(r) {
        // group g holds parts[g] blocks of size g + 1
        let per_group: Vec<Vec<Vec<usize>>> = parts.iter().map(|&n| set_partitions(n)).collect();
        for choice in per_group.iter().multi_cartesian_product().chain(
            // multi_cartesian_product yields nothing for zero groups
            (parts.is_empty()).then(Vec::new),
        ) {
            let mut blocks = Vec::new();
            let mut sizes = Vec::new();
            for (g, rgs) in choice.iter().enumerate() {
                let base = sizes.len();
                let classes = rgs.iter().max().map_or(0, |m| m + 1);
                sizes.extend(std::iter::repeat_n(g + 1, classes));
                blocks.extend(rgs.iter().map(|&k| base + k));
            }
            let used = sizes.len();
            for dual in dualities(&sizes) {
                let mut size = sizes.clone();
                for k in used..dual.len() {
                    size.push(sizes[dual[k]]);
                }
                let self_dual: Vec<usize> = (0..used).filter(|&c| dual[c] == c).collect();
                for x_rho in &x_rhos {
                    let omegas: Vec<Vec<Option<u8>>> = if family.twist_matters() {
                        self_dual
                            .iter()
                            .map(|_| gamma.elements().map(|c| Some(c.bits())).collect::<Vec<_>>())
                            .multi_cartesian_product()
                            .collect()
                    } else {
                        vec![vec![None; self_dual.len()]]
                    };
                    let omegas = if self_dual.is_empty() { vec![Vec::new()] } else { omegas };
                    for om in omegas {
                        let mut omega = vec![None; size.len()];
                        for (k, &c) in self_dual.iter().enumerate() {
                            omega[c] = om[k];
                        }
                        let x_allowed: Vec<usize> = self_dual
                            .iter()
                            .copied()
                            .filter(|&c| {
                                omega[c].is_none_or(|b| x_rho.contains(crate::datum::Character::new(gamma_rank, b)))
                            })
                            .collect();
                        for mask in 0u32..1 << x_allowed.len() {
                            let mut x = vec![false; size.len()];
                            for (k, &c) in x_allowed.iter().enumerate() {
                                x[c] = mask >> k & 1 == 1;
                            }
                            let flat = Flat {
                                family,
                                rank: gamma_rank,
                                x_rho: x_rho.clone(),
                                m: 0,
                                blocks: blocks.clone(),
                                size: size.clone(),
                                dual: dual.clone(),
                                omega: omega.clone(),
                                x,
                            };
                            let canon = flat.canonical().build();
                            if seen.insert(canon.serialize_compact()) {
                                out.push(canon);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Runs the differential check over the exhaustive enumeration. Records are
/// in enumeration order.
pub fn catalog(family: GroupFamily, r: usize, gamma_rank: u8) -> Result<Vec<FuzzRecord>> {
    let instances = enumerate_instances(family, r, gamma_rank)?;
    instances
        .par_iter()
        .enumerate()
        .map(|(i, d)| record_for(i as u64, d))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_small() {
        assert_eq!(integer_partitions(0), vec![Vec::<usize>::new()]);
        assert_eq!(integer_partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(set_partitions(3).len(), 5);
        assert_eq!(set_partitions(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn duality_counts() {
        // one class: self or fresh
        assert_eq!(dualities(&[1]).len(), 2);
        // two same-size classes: 2*2 independent + paired
        assert_eq!(dualities(&[1, 1]).len(), 5);
        assert_eq!(dualities(&[1, 2]).len(), 4);
        assert_eq!(dualities(&[1]), vec![vec![0], vec![1, 0]]);
    }

    #[test]
    fn go_odd_single_block() {
        let all = enumerate_instances(GroupFamily::GOOdd, 1, 1).unwrap();
        assert_eq!(all.len(), 3);
    }

    #[test]
    fn empty_levi_once_per_family() {
        for family in GroupFamily::ALL {
            let rank = if family.is_unitary() { 1 } else { 2 };
            assert_eq!(enumerate_instances(family, 0, rank).unwrap().len(), 1, "{family}");
        }
    }

    #[test]
    fn enumeration_limits() {
        assert!(matches!(
            enumerate_instances(GroupFamily::GSpEven, 5, 1),
            Err(Error::CapExceeded { r: 5, cap: 4 })
        ));
        assert!(enumerate_instances(GroupFamily::GUEven, 1, 2).is_err());
    }

    #[test]
    fn enumeration_is_canonical_and_distinct() {
        let all = enumerate_instances(GroupFamily::GSpEven, 2, 2).unwrap();
        let mut texts = HashSet::new();
        for d in &all {
            let c = canonical_form(d).unwrap();
            assert_eq!(c.serialize_compact(), d.serialize_compact());
            assert!(texts.insert(d.serialize_compact()));
        }
        let again = enumerate_instances(GroupFamily::GSpEven, 2, 2).unwrap();
        assert_eq!(
            all.iter().map(|d| d.serialize_compact()).collect::<Vec<_>>(),
            again.iter().map(|d| d.serialize_compact()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn canonical_form_merges_reorderings() {
        let a = crate::datum::parse_instance(
            r#"{"family":"GSp_even","gamma_rank":1,"m":0,
            "blocks":[{"size":2,"class":"p"},{"size":1,"class":"q"}],
            "classes":{"p":{"size":2,"eps_dual":"p","omega":"1","x_holds":false},
                       "q":{"size":1,"eps_dual":"z","omega":null,"x_holds":false},
                       "z":{"size":1,"eps_dual":"q","omega":null,"x_holds":false}},
            "x_rho_generators":[]}"#,
        )
        .unwrap();
        let b = crate::datum::parse_instance(
            r#"{"family":"GSp_even","gamma_rank":1,"m":0,
            "blocks":[{"size":1,"class":"k"},{"size":2,"class":"a"}],
            "classes":{"a":{"size":2,"eps_dual":"a","omega":"1","x_holds":false},
                       "k":{"size":1,"eps_dual":"j","omega":null,"x_holds":false},
                       "j":{"size":1,"eps_dual":"k","omega":null,"x_holds":false}},
            "x_rho_generators":[]}"#,
        )
        .unwrap();
        let ca = canonical_form(&a).unwrap();
        assert_eq!(ca.serialize_compact(), canonical_form(&b).unwrap().serialize_compact());
        assert_eq!(canonical_form(&ca).unwrap().serialize_compact(), ca.serialize_compact());
        assert_eq!(ca.block_sizes(), vec![1, 2]);
    }
}
