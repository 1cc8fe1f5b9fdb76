//! Control of fusion on elementary abelian subgroups, the Mislin verdict,
//! automizers via normalizers, and the class/automizer index data of the
//! Quillen stratification.

use std::sync::Arc;

use serde::Serialize;

use crate::fusion::{automorphism_group, FusionError, FusionSystem};
use crate::gcore::{centralizer, homs_by_conjugation, normalizer, FiniteGroup, GroupHom, Subgroup};

/// Elementary abelian subgroups of `S` (trivial one included), in subgroup order.
pub fn elementary_abelians(f: &FusionSystem) -> Result<Vec<Subgroup>, FusionError> {
    Ok(f.subgroups()?
        .iter()
        .filter(|q| q.is_elementary_abelian(f.p()))
        .cloned()
        .collect())
}

/// A pair of elementary abelians whose hom sets differ, with a morphism of
/// the larger system that the smaller one lacks.
#[derive(Debug, Clone)]
pub struct HomWitness {
    pub source: Subgroup,
    pub target: Subgroup,
    pub missing: GroupHom,
}

#[derive(Debug, Clone)]
pub struct ControlVerdict {
    pub controls: bool,
    pub witness: Option<HomWitness>,
}

fn require_subsystem(g: &FusionSystem, f: &FusionSystem) -> Result<(), FusionError> {
    if let Some(extra) = f.missing_from(g)? {
        return Err(FusionError::NotSubsystem(format!(
            "{extra} lies in the smaller system only"
        )));
    }
    Ok(())
}

/// Does `Hom_G(E1, E2) = Hom_F(E1, E2)` hold for all elementary abelian `E1, E2`?
pub fn controls_elementary_fusion(
    g: &FusionSystem,
    f: &FusionSystem,
) -> Result<ControlVerdict, FusionError> {
    require_subsystem(g, f)?;
    let elems = elementary_abelians(f)?;
    for e1 in &elems {
        for e2 in &elems {
            let small = g.hom(e1, e2)?;
            if let Some(missing) = f.hom(e1, e2)?.iter().find(|h| !small.contains(h)) {
                return Ok(ControlVerdict {
                    controls: false,
                    witness: Some(HomWitness {
                        source: e1.clone(),
                        target: e2.clone(),
                        missing: missing.clone(),
                    }),
                });
            }
        }
    }
    Ok(ControlVerdict {
        controls: true,
        witness: None,
    })
}

#[derive(Debug, Clone)]
pub struct MislinVerdict {
    pub p: u32,
    pub controls_elem: bool,
    pub systems_equal: bool,
    /// `systems_equal ⇒ controls_elem`, and for odd `p` also the converse.
    pub consistent_with_theorem: bool,
    /// False for `p = 2`, where the equivalence is only recorded.
    pub hypothesis_applies: bool,
    pub witness: Option<HomWitness>,
    pub saturated: (bool, bool),
}

/// Evaluates control on elementary abelians against equality of systems.
///
/// Both systems must be saturated unless `require_saturated` is false.
pub fn mislin_verdict(
    g: &FusionSystem,
    f: &FusionSystem,
    require_saturated: bool,
) -> Result<MislinVerdict, FusionError> {
    require_subsystem(g, f)?;
    let saturated = (g.is_saturated()?.saturated, f.is_saturated()?.saturated);
    if require_saturated && !(saturated.0 && saturated.1) {
        return Err(FusionError::Precondition(
            "both systems must be saturated".into(),
        ));
    }
    let control = controls_elementary_fusion(g, f)?;
    let extra = g.missing_from(f)?;
    let systems_equal = extra.is_none();
    let hypothesis_applies = f.p() % 2 == 1;
    let consistent_with_theorem = (!systems_equal || control.controls)
        && (!hypothesis_applies || control.controls == systems_equal);
    let witness = control.witness.or_else(|| {
        extra.map(|missing| HomWitness {
            source: missing.domain().clone(),
            target: missing.codomain().clone(),
            missing,
        })
    });
    Ok(MislinVerdict {
        p: f.p(),
        controls_elem: control.controls,
        systems_equal,
        consistent_with_theorem,
        hypothesis_applies,
        witness,
        saturated,
    })
}

/// `W_F(E) = Aut_F(E)` for an elementary abelian `E`.
pub fn weyl_group(f: &FusionSystem, e: &Subgroup) -> Result<Arc<FiniteGroup>, FusionError> {
    if !e.is_elementary_abelian(f.p()) {
        return Err(FusionError::NotElementaryAbelian(e.to_string()));
    }
    f.aut(e)
}

#[derive(Debug, Clone, Serialize)]
pub struct StratumRow {
    #[serde(serialize_with = "ser_sub")]
    pub representative: Subgroup,
    #[serde(serialize_with = "ser_subs")]
    pub members: Vec<Subgroup>,
    pub automizer_order: usize,
    pub rank: u32,
}

/// One row per F-class of elementary abelian subgroups.
#[derive(Debug, Clone, Serialize)]
pub struct ElementaryClassTable {
    pub rows: Vec<StratumRow>,
}

fn ser_sub<S: serde::Serializer>(q: &Subgroup, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn ser_subs<S: serde::Serializer>(qs: &[Subgroup], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(qs.iter().map(ToString::to_string))
}

pub fn rank_of(order: usize, p: u32) -> u32 {
    let mut n = order;
    let mut r = 0;
    while n > 1 {
        n /= p as usize;
        r += 1;
    }
    r
}

/// F-classes of elementary abelians with their automizer orders.
pub fn strata_skeleton(f: &FusionSystem) -> Result<ElementaryClassTable, FusionError> {
    let elems = elementary_abelians(f)?;
    let rows = f
        .classes_of(&elems)?
        .into_iter()
        .map(|members| {
            let representative = members[0].clone();
            Ok(StratumRow {
                automizer_order: f.hom(&representative, &representative)?.len(),
                rank: rank_of(representative.order(), f.p()),
                representative,
                members,
            })
        })
        .collect::<Result<Vec<_>, FusionError>>()?;
    Ok(ElementaryClassTable { rows })
}

/// The image of `N_A(E)` acting on `E` by conjugation, as a permutation
/// group on `E`'s element positions. Its order is `|N_A(E)| / |C_A(E)|`.
pub fn aut_via_normalizer(a: &Subgroup, e: &Subgroup) -> Result<Arc<FiniteGroup>, FusionError> {
    if !e.is_subgroup_of(a) {
        return Err(crate::gcore::GroupError::NotASubgroup(e.to_string(), a.to_string()).into());
    }
    let n = normalizer(a, e);
    let autos = homs_by_conjugation(&n, e, e);
    let group = automorphism_group("N/C", e, &autos, usize::MAX)?;
    debug_assert_eq!(group.order(), n.order() / centralizer(a, e).order());
    Ok(group)
}

#[derive(Debug, Clone)]
pub struct TransportVerdict {
    pub holds: bool,
    /// F-conjugate elementary abelians that are not G-conjugate.
    pub witness: Option<(Subgroup, Subgroup)>,
}

/// Checks that F-conjugate elementary abelians are G-conjugate, given that
/// `G` controls elementary abelian fusion in `F`.
pub fn transport_classes(g: &FusionSystem, f: &FusionSystem) -> Result<TransportVerdict, FusionError> {
    let control = controls_elementary_fusion(g, f)?;
    if !control.controls {
        return Err(FusionError::Precondition(
            "the subsystem does not control elementary abelian fusion".into(),
        ));
    }
    let elems = elementary_abelians(f)?;
    for e1 in &elems {
        for e2 in &elems {
            if f.are_conjugate(e1, e2)? && !g.are_conjugate(e1, e2)? {
                return Ok(TransportVerdict {
                    holds: false,
                    witness: Some((e1.clone(), e2.clone())),
                });
            }
        }
    }
    Ok(TransportVerdict {
        holds: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testgroups::*;
    use crate::Limits;

    fn sys(g: &Arc<FiniteGroup>, p: u32) -> FusionSystem {
        FusionSystem::of_group(g, &syl(g, p), p, Limits::default()).unwrap()
    }

    fn inner_of(f: &FusionSystem) -> FusionSystem {
        FusionSystem::inner(f.s(), f.p(), Limits::default()).unwrap()
    }

    #[test]
    fn elementary_abelian_lists() {
        let c5 = cyclic(5);
        let f = FusionSystem::inner(&c5.whole(), 5, Limits::default()).unwrap();
        assert_eq!(elementary_abelians(&f).unwrap().len(), 2);

        let q = q8();
        let f = FusionSystem::inner(&q.whole(), 2, Limits::default()).unwrap();
        let e = elementary_abelians(&f).unwrap();
        assert_eq!(e.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 2]);

        let d = d8();
        let f = FusionSystem::inner(&d.whole(), 2, Limits::default()).unwrap();
        let e = elementary_abelians(&f).unwrap();
        assert_eq!(e.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 2, 2, 2, 2, 2, 4, 4]);
    }

    #[test]
    fn control_examples() {
        let g = sl23();
        let f = sys(&g, 2);
        assert!(controls_elementary_fusion(&f, &f).unwrap().controls);
        let small = inner_of(&f);
        assert!(controls_elementary_fusion(&small, &f).unwrap().controls);

        let g = s3();
        let f = sys(&g, 3);
        let small = inner_of(&f);
        let v = controls_elementary_fusion(&small, &f).unwrap();
        assert!(!v.controls);
        let w = v.witness.unwrap();
        assert_eq!(&w.source, f.s());
        assert_eq!(&w.target, f.s());
        assert!(!w.missing.is_inclusion());

        assert!(matches!(
            controls_elementary_fusion(&f, &small),
            Err(FusionError::NotSubsystem(_))
        ));
    }

    #[test]
    fn mislin_examples() {
        let g = s3();
        let f = sys(&g, 3);
        let small = inner_of(&f);
        let v = mislin_verdict(&small, &f, true).unwrap();
        assert!(!v.controls_elem && !v.systems_equal && v.consistent_with_theorem);
        assert!(v.hypothesis_applies);

        let g = sl23();
        let f = sys(&g, 2);
        let small = inner_of(&f);
        let v = mislin_verdict(&small, &f, true).unwrap();
        assert!(v.controls_elem && !v.systems_equal);
        assert!(!v.hypothesis_applies && v.consistent_with_theorem);
        assert!(v.witness.is_some());

        let v = mislin_verdict(&f, &f, true).unwrap();
        assert!(v.controls_elem && v.systems_equal && v.consistent_with_theorem);
        assert!(v.witness.is_none());
    }

    #[test]
    fn weyl_groups() {
        let g = s3();
        let f = sys(&g, 3);
        assert_eq!(weyl_group(&f, &Subgroup::trivial(&g)).unwrap().order(), 1);
        assert_eq!(weyl_group(&f, f.s()).unwrap().order(), 2);

        let g = s4();
        let f = sys(&g, 2);
        let fours: Vec<Subgroup> = elementary_abelians(&f)
            .unwrap()
            .into_iter()
            .filter(|e| e.order() == 4)
            .collect();
        let orders: Vec<usize> = fours.iter().map(|e| weyl_group(&f, e).unwrap().order()).collect();
        // N_{S4}(V4)/C_{S4}(V4) = S3 for the normal Klein four-group
        assert!(orders.contains(&6));
        assert!(matches!(weyl_group(&f, f.s()), Err(FusionError::NotElementaryAbelian(_))));
    }

    #[test]
    fn strata_examples() {
        let c3 = cyclic(3);
        let f = FusionSystem::inner(&c3.whole(), 3, Limits::default()).unwrap();
        let t = strata_skeleton(&f).unwrap();
        let rows: Vec<(u32, usize)> = t.rows.iter().map(|r| (r.rank, r.automizer_order)).collect();
        assert_eq!(rows, vec![(0, 1), (1, 1)]);

        let f = sys(&s3(), 3);
        let rows: Vec<(u32, usize)> = strata_skeleton(&f)
            .unwrap()
            .rows
            .iter()
            .map(|r| (r.rank, r.automizer_order))
            .collect();
        assert_eq!(rows, vec![(0, 1), (1, 2)]);

        let f = sys(&sl23(), 2);
        let rows: Vec<(usize, usize)> = strata_skeleton(&f)
            .unwrap()
            .rows
            .iter()
            .map(|r| (r.representative.order(), r.automizer_order))
            .collect();
        assert_eq!(rows, vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn normalizer_automizers() {
        let v = v4();
        for e in crate::gcore::all_subgroups(&v.whole(), 64).unwrap() {
            assert_eq!(aut_via_normalizer(&v.whole(), &e).unwrap().order(), 1);
        }
        let g = s3();
        let c3 = syl(&g, 3);
        assert_eq!(aut_via_normalizer(&g.whole(), &c3).unwrap().order(), 2);

        let g = s4();
        let diag = sub(&g, &[&[1, 0, 3, 2], &[2, 3, 0, 1]]);
        assert_eq!(diag.order(), 4);
        assert_eq!(aut_via_normalizer(&g.whole(), &diag).unwrap().order(), 6);
        let f = sys(&g, 2);
        assert!(diag.is_subgroup_of(f.s()));
        assert_eq!(
            aut_via_normalizer(&g.whole(), &diag).unwrap().elements(),
            f.aut(&diag).unwrap().elements()
        );
    }

    #[test]
    fn transport_examples() {
        let f = sys(&sl23(), 2);
        assert!(transport_classes(&f, &f).unwrap().holds);
        assert!(transport_classes(&inner_of(&f), &f).unwrap().holds);

        let f = sys(&s3(), 3);
        assert!(matches!(
            transport_classes(&inner_of(&f), &f),
            Err(FusionError::Precondition(_))
        ));
    }
}
