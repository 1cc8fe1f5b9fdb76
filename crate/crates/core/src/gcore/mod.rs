//! Exact permutation-group engine.
//!
//! Groups are stored with their full element lists (no stabilizer chains);
//! subgroups and homomorphisms refer to elements by index into the ambient
//! group's sorted element list.

mod group;
mod hom;
mod perm;
mod subgroup;

use thiserror::Error;

pub use group::{closure, FiniteGroup};
pub use hom::{homs_by_conjugation, GroupHom};
pub use perm::Permutation;
pub use subgroup::{
    all_subgroups, centralizer, conjugate, is_prime, normalizer, p_part, require_subgroup, sylow,
    Subgroup,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("images {0:?} are not a bijection")]
    NotABijection(Vec<u32>),
    #[error("invalid cycle list {0:?}")]
    BadCycle(Vec<Vec<u32>>),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("closure exceeds the element cap of {cap}")]
    ElementCap { cap: usize },
    #[error("group of order {order} exceeds the subgroup-enumeration cap of {cap}")]
    SubgroupCap { order: usize, cap: usize },
    #[error("{0} is not an element of {1}")]
    NotInGroup(String, String),
    #[error("{0} is not a subgroup of {1}")]
    NotASubgroup(String, String),
    #[error("element set is not closed under multiplication")]
    NotClosed,
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("map is not a homomorphism")]
    NotAHomomorphism,
    #[error("map is not injective")]
    NotInjective,
    #[error("{0} is not prime")]
    NotPrime(u32),
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    fn perm(images: &[u32]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    fn group(name: &str, degree: usize, gens: &[&[u32]]) -> Arc<FiniteGroup> {
        FiniteGroup::new(name, degree, gens.iter().map(|g| perm(g)).collect(), 50_000).unwrap()
    }

    fn s4() -> Arc<FiniteGroup> {
        group("S4", 4, &[&[1, 2, 3, 0], &[1, 0, 2, 3]])
    }

    #[test]
    fn conjugate_identity_and_central() {
        let g = s4();
        let q = Subgroup::from_permutations(&g, &[perm(&[1, 2, 3, 0])]).unwrap();
        assert_eq!(conjugate(&Permutation::identity(4), &q).unwrap(), q);

        let c6 = group("C6", 6, &[&[1, 2, 3, 4, 5, 0]]);
        let q = Subgroup::from_permutations(&c6, &[perm(&[2, 3, 4, 5, 0, 1])]).unwrap();
        for x in c6.elements() {
            assert_eq!(conjugate(x, &q).unwrap(), q);
        }
    }

    #[test]
    fn conjugate_c4_by_transposition_in_s4() {
        let g = s4();
        let q = Subgroup::from_permutations(&g, &[perm(&[1, 2, 3, 0])]).unwrap();
        let t = perm(&[1, 0, 2, 3]);
        let c = conjugate(&t, &q).unwrap();
        // element-wise: t x t^-1 for every x in <(0 1 2 3)>
        let mut expected: Vec<Permutation> =
            q.permutations().map(|x| t.compose(x).compose(&t.inverse())).collect();
        expected.sort();
        assert_eq!(c.permutations().cloned().collect::<Vec<_>>(), expected);
        assert_eq!(c.order(), 4);
        assert_ne!(c, q);
        // the conjugate is generated by the 4-cycle (0 2 3 1)
        let gen = Permutation::from_cycles(4, &[&[0, 2, 3, 1]]).unwrap();
        assert_eq!(c, Subgroup::from_permutations(&g, &[gen]).unwrap());
        assert!(matches!(
            conjugate(&perm(&[1, 0, 2]), &q),
            Err(GroupError::NotInGroup(..))
        ));
    }

    #[test]
    fn normalizer_centralizer_examples() {
        let g = s4();
        let whole = g.whole();
        assert_eq!(normalizer(&whole, &whole), whole);

        let q = Subgroup::from_permutations(&g, &[perm(&[1, 2, 3, 0])]).unwrap();
        let n = normalizer(&whole, &q);
        let c = centralizer(&whole, &q);
        // brute-force scan over all 24 elements
        let brute_n = g
            .elements()
            .iter()
            .filter(|x| {
                q.permutations()
                    .all(|y| q.permutations().any(|z| *z == x.compose(y).compose(&x.inverse())))
            })
            .count();
        let brute_c = g
            .elements()
            .iter()
            .filter(|x| q.permutations().all(|y| x.compose(y) == y.compose(x)))
            .count();
        assert_eq!((n.order(), c.order()), (brute_n, brute_c));
        assert_eq!((n.order(), c.order()), (8, 4));
        assert!(c.is_subgroup_of(&n));

        let ab = group("C2xC2", 4, &[&[1, 0, 3, 2], &[2, 3, 0, 1]]);
        let whole = ab.whole();
        for q in all_subgroups(&whole, 64).unwrap() {
            assert_eq!(centralizer(&whole, &q), whole);
        }
    }

    #[test]
    fn sylow_examples() {
        let c6 = group("C6", 6, &[&[1, 2, 3, 4, 5, 0]]);
        let p3 = sylow(&c6.whole(), 3).unwrap();
        assert_eq!(p3.order(), 3);

        let s4 = s4();
        let p2 = sylow(&s4.whole(), 2).unwrap();
        assert_eq!(p2.order(), 8);
        assert!(!p2.is_abelian());

        // SL(2,3) acting on the 8 nonzero vectors of GF(3)^2
        let sl = group("SL(2,3)", 8, &[&[3, 7, 2, 6, 1, 5, 0, 4], &[5, 2, 0, 6, 3, 1, 7, 4]]);
        assert_eq!(sl.order(), 24);
        let q8 = sylow(&sl.whole(), 2).unwrap();
        assert_eq!(q8.order(), 8);
        // brute force: the only order-8 subgroup is the normal Q8
        let eights: Vec<_> = all_order_subgroups_brute(&sl, 8);
        assert_eq!(eights, vec![q8.clone()]);
        let involutions = q8.elements().iter().filter(|&&x| sl.element_order(x) == 2).count();
        assert_eq!(involutions, 1);

        assert_eq!(sylow(&c6.whole(), 5).unwrap().order(), 1);
        assert!(matches!(sylow(&c6.whole(), 4), Err(GroupError::NotPrime(4))));
    }

    /// Every subgroup of a given order, by closing pairs of elements.
    fn all_order_subgroups_brute(g: &Arc<FiniteGroup>, order: usize) -> Vec<Subgroup> {
        let mut out = std::collections::BTreeSet::new();
        for a in 0..g.order() as u32 {
            for b in 0..g.order() as u32 {
                let s = Subgroup::generated(g, &[a, b]);
                if s.order() == order {
                    out.insert(s);
                }
            }
        }
        out.into_iter().collect()
    }

    #[test]
    fn subgroup_counts() {
        let c5 = group("C5", 5, &[&[1, 2, 3, 4, 0]]);
        assert_eq!(all_subgroups(&c5.whole(), 64).unwrap().len(), 2);
        let v4 = group("C2xC2", 4, &[&[1, 0, 3, 2], &[2, 3, 0, 1]]);
        assert_eq!(all_subgroups(&v4.whole(), 64).unwrap().len(), 5);
        let q8 = group("Q8", 8, &[&[2, 3, 1, 0, 6, 7, 5, 4], &[4, 5, 7, 6, 1, 0, 2, 3]]);
        let subs = all_subgroups(&q8.whole(), 64).unwrap();
        let orders: Vec<usize> = subs.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 8]);
        assert!(matches!(
            all_subgroups(&q8.whole(), 4),
            Err(GroupError::SubgroupCap { order: 8, cap: 4 })
        ));
    }

    #[test]
    fn hom_compose_restrict_split() {
        let g = group("D8", 4, &[&[1, 2, 3, 0], &[3, 2, 1, 0]]);
        let d8 = g.whole();
        let c4 = Subgroup::from_permutations(&g, &[perm(&[1, 2, 3, 0])]).unwrap();
        let f = GroupHom::inclusion(&c4, &d8).unwrap();
        assert_eq!(f.compose(&GroupHom::identity(&c4)).unwrap(), f);
        assert_eq!(f.restrict(&c4).unwrap(), f);
        let (iso, image) = f.is_iso_onto_image();
        assert_eq!(image, c4);
        assert!(iso.is_inclusion());
        assert_eq!(iso.codomain(), &c4);

        let refl = g.index_of(&perm(&[3, 2, 1, 0])).unwrap();
        let c = GroupHom::conjugation(refl, &c4, &c4).unwrap();
        assert!(c.is_homomorphism() && c.is_injective());
        assert!(matches!(
            GroupHom::identity(&d8).compose(&GroupHom::identity(&c4)).map(|h| h.domain().order()),
            Ok(4)
        ));
        assert!(c.compose(&GroupHom::identity(&d8)).is_err());
        assert!(c.restrict(&d8).is_err());
    }

    #[test]
    fn homs_by_conjugation_examples() {
        let ab = group("C2xC2", 4, &[&[1, 0, 3, 2], &[2, 3, 0, 1]]);
        let whole = ab.whole();
        let subs = all_subgroups(&whole, 64).unwrap();
        let homs = homs_by_conjugation(&whole, &subs[1], &whole);
        assert_eq!(homs.len(), 1);
        assert!(homs[0].is_inclusion());

        let q8 = group("Q8", 8, &[&[2, 3, 1, 0, 6, 7, 5, 4], &[4, 5, 7, 6, 1, 0, 2, 3]]);
        let w = q8.whole();
        assert_eq!(homs_by_conjugation(&w, &w, &w).len(), 4);

        let sl = group("SL(2,3)", 8, &[&[3, 7, 2, 6, 1, 5, 0, 4], &[5, 2, 0, 6, 3, 1, 7, 4]]);
        let q = sylow(&sl.whole(), 2).unwrap();
        let auts = homs_by_conjugation(&sl.whole(), &q, &q);
        assert_eq!(auts.len(), 12);
        // Aut_A(Q) is closed under composition and contains the identity
        assert!(auts.contains(&GroupHom::identity(&q)));
        for a in &auts {
            for b in &auts {
                assert!(auts.contains(&a.compose(b).unwrap()));
            }
        }
    }
}
