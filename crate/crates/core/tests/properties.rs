use std::sync::OnceLock;

use proptest::prelude::*;

use semiheap_core::actions::{is_equivariant, translation_action, verify_action, ActionTable};
use semiheap_core::budget::Unlimited;
use semiheap_core::corpus;
use semiheap_core::enumeration::{self, canonical_form, SearchOptions};
use semiheap_core::functors::{groupify, heapify};
use semiheap_core::group::is_group_hom;
use semiheap_core::perm::inverse_permutation;
use semiheap_core::semiheap::{induce_via_bijection, is_homomorphism, verify_para_associative};
use semiheap_core::translations::{left_compose_law, lr_commute, right_compose_law};
use semiheap_core::{FiniteSemiheap, TernaryTable};

fn semiheaps_up_to_three() -> &'static [FiniteSemiheap] {
    static CELL: OnceLock<Vec<FiniteSemiheap>> = OnceLock::new();
    CELL.get_or_init(|| {
        (0..=3)
            .flat_map(|n| {
                let e = enumeration::enumerate_semiheaps(n, SearchOptions::default(), &mut Unlimited);
                e.labeled_tables().into_iter().map(|t| verify_para_associative(t).unwrap())
            })
            .collect()
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn semiheap_and_perm() -> impl Strategy<Value = (FiniteSemiheap, Vec<usize>)> {
    (0..semiheaps_up_to_three().len())
        .prop_flat_map(|i| {
            let s = semiheaps_up_to_three()[i].clone();
            let n = s.order();
            (Just(s), permutation(n))
        })
}

fn bundled_group() -> impl Strategy<Value = semiheap_core::FiniteGroup> {
    (0..corpus::bundled().len()).prop_map(|i| corpus::bundled()[i].1.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_form_is_idempotent_and_invariant((s, p) in semiheap_and_perm()) {
        let c = canonical_form(s.table());
        prop_assert_eq!(&canonical_form(&c), &c);
        prop_assert_eq!(&canonical_form(&s.table().relabel(&p)), &c);
        prop_assert!(enumeration::are_isomorphic(s.table(), &s.table().relabel(&p)));
    }

    #[test]
    fn relabeling_is_an_isomorphism((s, p) in semiheap_and_perm()) {
        // φ is an isomorphism from the induced structure onto s.
        let t = induce_via_bijection(&p, &s).unwrap();
        prop_assert_eq!(t.table(), &s.table().relabel(&inverse_permutation(&p)));
        prop_assert!(is_homomorphism(&p, &t, &s).is_ok());
        prop_assert_eq!(s.is_heap(), t.is_heap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn translation_laws_on_small_semiheaps(i in 0..semiheaps_up_to_three().len()) {
        let s = &semiheaps_up_to_three()[i];
        prop_assert!(right_compose_law(s).is_ok());
        prop_assert!(left_compose_law(s).is_ok());
        prop_assert!(lr_commute(s).is_ok());
        prop_assert!(translation_action(s).is_ok());
    }

    #[test]
    fn opposite_and_products_stay_semiheaps(i in 0..semiheaps_up_to_three().len(), j in 0..semiheaps_up_to_three().len()) {
        let (a, b) = (&semiheaps_up_to_three()[i], &semiheaps_up_to_three()[j]);
        prop_assert!(verify_para_associative(a.opposite().into_table()).is_ok());
        if a.order() * b.order() <= 4 {
            prop_assert!(verify_para_associative(a.product(b).into_table()).is_ok());
        }
    }

    #[test]
    fn groupify_inverts_heapify_after_relabeling(g in bundled_group(), seed in any::<u64>()) {
        let n = g.order();
        let mut p: Vec<usize> = (0..n).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            p.swap(i, (state >> 33) as usize % (i + 1));
        }
        let h = g.relabel(&p);
        prop_assert_eq!(groupify(&heapify(&h), true).unwrap(), h.clone());
        prop_assert!(is_group_hom(&p, &g, &h).unwrap());
    }

    #[test]
    fn random_tables_are_judged_like_the_oracle(entries in proptest::collection::vec(0usize..2, 8)) {
        let t = TernaryTable::new(2, entries.clone()).unwrap();
        let accepted = verify_para_associative(t).is_ok();
        let set: Vec<Vec<usize>> = semiheaps_up_to_three().iter().filter(|s| s.order() == 2).map(|s| s.table().entries().to_vec()).collect();
        prop_assert_eq!(accepted, set.contains(&entries));
    }

    #[test]
    fn mutated_translation_actions_are_rejected(i in 0..semiheaps_up_to_three().len(), cell in any::<prop::sample::Index>(), shift in any::<usize>()) {
        let s = semiheaps_up_to_three()[i].clone();
        let n = s.order();
        prop_assume!(n >= 2);
        let a = translation_action(&s).unwrap();
        let mut entries = a.table().entries().to_vec();
        let k = cell.index(entries.len());
        entries[k] = (entries[k] + 1 + shift % (n - 1)) % n;
        let mutated = ActionTable::new(n, n, entries).unwrap();
        // A mutation may land on another valid action; when it does, the
        // identity is no longer equivariant between the two.
        match verify_action(mutated, s.clone()) {
            Err(e) => prop_assert!(e.is_violation()),
            Ok(b) => prop_assert!(is_equivariant(&(0..n).collect::<Vec<_>>(), &a, &b).is_err()),
        }
    }
}
