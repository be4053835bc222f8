use proptest::prelude::*;

use knapp_stein::components::{character_basis, characters_of_r, labelled_rgroup};
use knapp_stein::oracle::{canonical_form, random_instance, FuzzConfig};
use knapp_stein::rgroup::{brute_force_r, closed_form_r, w_sigma_membership};
use knapp_stein::weyl::{act_on_datum, enumerate_weyl, ActedDatum};
use knapp_stein::{parse_instance, BlockSet, InducingDatum};

fn datum(max_r: usize) -> impl Strategy<Value = InducingDatum> {
    (any::<u64>(), 0u64..1 << 20).prop_map(move |(seed, k)| {
        random_instance(
            &FuzzConfig {
                max_r,
                seed,
                ..Default::default()
            },
            k,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn instance_documents_round_trip(d in datum(5)) {
        let text = d.serialize();
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(back.serialize(), text);
        prop_assert!(back.validate().is_empty());
    }

    #[test]
    fn action_on_data_is_a_group_action(d in datum(4), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let w = enumerate_weyl(&d).unwrap();
        let (a, b) = (&w[i.index(w.len())], &w[j.index(w.len())]);
        let ab = a.compose(b).unwrap();
        let stepwise = act_on_datum(b, &d).act(a, &d);
        prop_assert_eq!(stepwise, act_on_datum(&ab, &d));
        prop_assert_eq!(ActedDatum::initial(&d), act_on_datum(&knapp_stein::SignedBlockPermutation::identity(d.r()), &d));
    }

    #[test]
    fn stabilizer_is_a_subgroup(d in datum(4)) {
        let members: Vec<_> = enumerate_weyl(&d).unwrap().into_iter().filter(|w| w_sigma_membership(w, &d)).collect();
        for a in &members {
            prop_assert!(w_sigma_membership(&a.inverse(), &d));
            for b in &members {
                prop_assert!(w_sigma_membership(&a.compose(b).unwrap(), &d));
            }
        }
    }

    #[test]
    fn closed_form_matches_brute_force(d in datum(5)) {
        let closed = closed_form_r(&d);
        let mut brute: Vec<BlockSet> = brute_force_r(&d).unwrap().iter().map(|w| w.signs()).collect();
        brute.sort();
        prop_assert_eq!(&closed.elements, &brute);
        prop_assert_eq!(1usize << closed.d, brute.len());
    }

    #[test]
    fn canonical_form_is_idempotent_and_preserves_r(d in datum(4)) {
        let c = canonical_form(&d).unwrap();
        prop_assert_eq!(canonical_form(&c).unwrap().serialize(), c.serialize());
        prop_assert_eq!(closed_form_r(&c).d, closed_form_r(&d).d);
    }

    #[test]
    fn characters_are_multiplicative(d in datum(5)) {
        let rg = labelled_rgroup(&closed_form_r(&d));
        let basis = character_basis(&rg);
        for k in characters_of_r(&rg) {
            for &x in &rg.elements {
                for &y in &rg.elements {
                    let xy = x.xor(y);
                    prop_assert_eq!(k.eval(&basis, xy), Some(k.eval(&basis, x).unwrap() * k.eval(&basis, y).unwrap()));
                }
            }
        }
    }
}
