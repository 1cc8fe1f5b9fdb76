//! Properties checked on random subgroups of S5.

use std::sync::Arc;

use fusion_core::control::mislin_verdict;
use fusion_core::fusion::FusionSystem;
use fusion_core::gcore::{
    normalizer, p_part, sylow, FiniteGroup, GroupHom, Permutation, Subgroup,
};
use fusion_core::Limits;
use proptest::prelude::*;

fn s5() -> Arc<FiniteGroup> {
    let gens = vec![
        Permutation::new(vec![1, 2, 3, 4, 0]).unwrap(),
        Permutation::new(vec![1, 0, 2, 3, 4]).unwrap(),
    ];
    FiniteGroup::new("S5", 5, gens, 1000).unwrap()
}

fn subgroup(g: &Arc<FiniteGroup>, gens: &[u32]) -> Subgroup {
    let gens: Vec<u32> = gens.iter().map(|&i| i % g.order() as u32).collect();
    Subgroup::generated(g, &gens)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lagrange_and_sylow(gens in prop::collection::vec(0u32..120, 1..3), p in prop::sample::select(vec![2u32, 3, 5])) {
        let g = s5();
        let h = subgroup(&g, &gens);
        prop_assert_eq!(120 % h.order(), 0);
        let s = sylow(&h, p).unwrap();
        prop_assert_eq!(s.order(), p_part(h.order(), p));
        prop_assert!(s.is_subgroup_of(&h));
        prop_assert!(s.is_p_group(p));
    }

    #[test]
    fn conjugation_maps_are_injective_homomorphisms(gens in prop::collection::vec(0u32..120, 1..3), x in 0u32..120) {
        let g = s5();
        let q = subgroup(&g, &gens);
        let r = q.conjugate_by(x);
        let c = GroupHom::conjugation(x, &q, &r).unwrap();
        prop_assert!(c.is_homomorphism());
        prop_assert!(c.is_injective());
        prop_assert!(c.is_surjective());
        let back = c.inverse().unwrap();
        let round = back.compose(&c).unwrap();
        let id = GroupHom::identity(&q);
        prop_assert_eq!(round.table(), id.table());
    }

    #[test]
    fn sylow_systems_are_saturated(gens in prop::collection::vec(0u32..120, 1..3), p in prop::sample::select(vec![2u32, 3])) {
        let g = s5();
        let h = subgroup(&g, &gens);
        let s = sylow(&h, p).unwrap();
        let f = FusionSystem::realized(&h, &s, p, Limits::default()).unwrap();
        prop_assert!(f.is_saturated().unwrap().saturated);
        prop_assert!(f.is_fusion_system().unwrap().holds);
    }

    #[test]
    fn normalizer_systems_are_subsystems_with_consistent_verdicts(gens in prop::collection::vec(0u32..120, 1..3), p in prop::sample::select(vec![3u32, 5])) {
        let g = s5();
        let h = subgroup(&g, &gens);
        let s = sylow(&h, p).unwrap();
        let n = normalizer(&h, &s);
        let big = FusionSystem::realized(&h, &s, p, Limits::default()).unwrap();
        let small = FusionSystem::realized(&n, &s, p, Limits::default()).unwrap();
        prop_assert!(small.is_subsystem_of(&big).unwrap());
        let v = mislin_verdict(&small, &big, true).unwrap();
        prop_assert!(v.consistent_with_theorem);
    }
}
