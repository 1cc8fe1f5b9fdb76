//! Fusion systems over a p-group `S`, realized by conjugation in an ambient
//! group, plus explicit morphism tables for axiom validation.

mod axioms;
mod saturation;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::gcore::{
    all_subgroups, homs_by_conjugation, is_prime, FiniteGroup, GroupError, GroupHom, Subgroup,
};
use crate::Limits;

pub use axioms::{Axiom, AxiomReport};
pub use saturation::{ClassVerdict, SaturationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FusionError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{0} is not a subgroup of the underlying p-group")]
    NotInS(String),
    #[error("{0} is not a {1}-group")]
    NotPGroup(String, u32),
    #[error("systems do not share the same prime and underlying p-group")]
    Incompatible,
    #[error("{0} is not a morphism of the fusion system")]
    NotAMorphism(String),
    #[error("{0} is not elementary abelian")]
    NotElementaryAbelian(String),
    #[error("not a subsystem: {0}")]
    NotSubsystem(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

type HomKey = (Vec<u32>, Vec<u32>);

enum Realization {
    /// Morphisms are conjugations by elements of this subgroup of the ambient group.
    Conjugation(Subgroup),
    /// Hand-written morphism sets, keyed by (domain, codomain) elements.
    Explicit(BTreeMap<HomKey, Vec<GroupHom>>),
}

/// A fusion system over the p-group `S`.
pub struct FusionSystem {
    p: u32,
    s: Subgroup,
    realization: Realization,
    limits: Limits,
    subgroups: OnceLock<Result<Vec<Subgroup>, GroupError>>,
    homs: Mutex<HashMap<HomKey, Arc<Vec<GroupHom>>>>,
}

impl FusionSystem {
    /// `F_S(A)` where `A` is a subgroup of the ambient group containing `S`.
    pub fn realized(
        conjugators: &Subgroup,
        s: &Subgroup,
        p: u32,
        limits: Limits,
    ) -> Result<Self, FusionError> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p).into());
        }
        if !s.is_p_group(p) {
            return Err(FusionError::NotPGroup(s.to_string(), p));
        }
        if !s.is_subgroup_of(conjugators) {
            return Err(GroupError::NotASubgroup(s.to_string(), conjugators.to_string()).into());
        }
        Ok(Self::build(p, s, Realization::Conjugation(conjugators.clone()), limits))
    }

    /// `F_S(G)` for the whole ambient group.
    pub fn of_group(
        group: &Arc<FiniteGroup>,
        s: &Subgroup,
        p: u32,
        limits: Limits,
    ) -> Result<Self, FusionError> {
        Self::realized(&group.whole(), s, p, limits)
    }

    /// `F_S(S)`.
    pub fn inner(s: &Subgroup, p: u32, limits: Limits) -> Result<Self, FusionError> {
        Self::realized(s, s, p, limits)
    }

    /// A system given by an explicit list of morphisms. Only meant as input
    /// to [`FusionSystem::is_fusion_system`]; pairs without listed morphisms
    /// have empty hom sets.
    pub fn explicit(
        s: &Subgroup,
        p: u32,
        morphisms: Vec<GroupHom>,
        limits: Limits,
    ) -> Result<Self, FusionError> {
        if !s.is_p_group(p) {
            return Err(FusionError::NotPGroup(s.to_string(), p));
        }
        let mut table: BTreeMap<HomKey, Vec<GroupHom>> = BTreeMap::new();
        for f in morphisms {
            if !f.domain().is_subgroup_of(s) || !f.codomain().is_subgroup_of(s) {
                return Err(FusionError::NotInS(f.to_string()));
            }
            let key = (f.domain().elements().to_vec(), f.codomain().elements().to_vec());
            table.entry(key).or_default().push(f);
        }
        for homs in table.values_mut() {
            homs.sort();
            homs.dedup();
        }
        Ok(Self::build(p, s, Realization::Explicit(table), limits))
    }

    fn build(p: u32, s: &Subgroup, realization: Realization, limits: Limits) -> Self {
        FusionSystem {
            p,
            s: s.clone(),
            realization,
            limits,
            subgroups: OnceLock::new(),
            homs: Mutex::new(HashMap::new()),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> &Subgroup {
        &self.s
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// The conjugating subgroup for realized systems.
    pub fn conjugators(&self) -> Option<&Subgroup> {
        match &self.realization {
            Realization::Conjugation(a) => Some(a),
            Realization::Explicit(_) => None,
        }
    }

    /// All subgroups of `S`, sorted by (order, elements).
    pub fn subgroups(&self) -> Result<&[Subgroup], FusionError> {
        self.subgroups
            .get_or_init(|| all_subgroups(&self.s, self.limits.max_subgroup_order))
            .as_ref()
            .map(Vec::as_slice)
            .map_err(|e| e.clone().into())
    }

    fn require_in_s(&self, q: &Subgroup) -> Result<(), FusionError> {
        if q.is_subgroup_of(&self.s) {
            Ok(())
        } else {
            Err(FusionError::NotInS(q.to_string()))
        }
    }

    /// `Hom_F(Q, R)`, memoized and sorted by table.
    pub fn hom(&self, q: &Subgroup, r: &Subgroup) -> Result<Arc<Vec<GroupHom>>, FusionError> {
        self.require_in_s(q)?;
        self.require_in_s(r)?;
        let key = (q.elements().to_vec(), r.elements().to_vec());
        if let Some(h) = self.homs.lock().expect("hom memo poisoned").get(&key) {
            return Ok(h.clone());
        }
        let homs = match &self.realization {
            Realization::Conjugation(a) => homs_by_conjugation(a, q, r),
            Realization::Explicit(table) => table.get(&key).cloned().unwrap_or_default(),
        };
        let homs = Arc::new(homs);
        self.homs
            .lock()
            .expect("hom memo poisoned")
            .insert(key, homs.clone());
        Ok(homs)
    }

    /// `Hom_S(Q, R)`: conjugations by elements of `S`.
    pub fn hom_s(&self, q: &Subgroup, r: &Subgroup) -> Vec<GroupHom> {
        homs_by_conjugation(&self.s, q, r)
    }

    pub fn contains(&self, f: &GroupHom) -> Result<bool, FusionError> {
        Ok(self.hom(f.domain(), f.codomain())?.contains(f))
    }

    /// `Aut_F(Q)` as a permutation group on the positions of `Q`'s elements.
    pub fn aut(&self, q: &Subgroup) -> Result<Arc<FiniteGroup>, FusionError> {
        let homs = self.hom(q, q)?;
        Ok(automorphism_group("Aut_F", q, &homs, self.limits.max_elements)?)
    }

    /// True iff some morphism `Q → R` is onto `R`.
    pub fn are_conjugate(&self, q: &Subgroup, r: &Subgroup) -> Result<bool, FusionError> {
        if q.order() != r.order() {
            self.require_in_s(q)?;
            self.require_in_s(r)?;
            return Ok(false);
        }
        Ok(self.hom(q, r)?.iter().any(GroupHom::is_injective))
    }

    /// The F-conjugacy classes of `subgroups`, in first-member order.
    pub fn classes_of(&self, subgroups: &[Subgroup]) -> Result<Vec<Vec<Subgroup>>, FusionError> {
        let mut assigned = vec![false; subgroups.len()];
        let mut classes = Vec::new();
        for i in 0..subgroups.len() {
            if assigned[i] {
                continue;
            }
            assigned[i] = true;
            let mut class = vec![subgroups[i].clone()];
            for j in i + 1..subgroups.len() {
                if !assigned[j] && self.are_conjugate(&subgroups[i], &subgroups[j])? {
                    assigned[j] = true;
                    class.push(subgroups[j].clone());
                }
            }
            classes.push(class);
        }
        Ok(classes)
    }

    /// Partition of all subgroups of `S` into F-conjugacy classes.
    pub fn f_classes(&self) -> Result<Vec<Vec<Subgroup>>, FusionError> {
        let subs = self.subgroups()?.to_vec();
        self.classes_of(&subs)
    }

    /// Orders of `Aut_S(Q)` and `Aut_F(Q)`.
    pub fn automizer_orders(&self, q: &Subgroup) -> Result<(usize, usize), FusionError> {
        Ok((self.hom_s(q, q).len(), self.hom(q, q)?.len()))
    }

    /// `Aut_S(Q)` is a Sylow p-subgroup of `Aut_F(Q)`.
    pub fn fully_automized(&self, q: &Subgroup) -> Result<bool, FusionError> {
        let aut_f = self.hom(q, q)?;
        let aut_s = self.hom_s(q, q);
        let contained = aut_s.iter().all(|a| aut_f.contains(a));
        Ok(contained && aut_s.len() == crate::gcore::p_part(aut_f.len(), self.p))
    }

    /// `N_φ = {g ∈ N_S(Q) : φ c_g φ^-1 ∈ Aut_S(φ(Q))}`.
    pub fn n_phi(&self, phi: &GroupHom) -> Result<Subgroup, FusionError> {
        let q = phi.domain();
        let (iso, target) = phi.is_iso_onto_image();
        if !phi.is_injective() || !self.hom(q, &target)?.contains(&iso) {
            return Err(FusionError::NotAMorphism(phi.to_string()));
        }
        let group = q.group();
        let inv = iso.inverse()?;
        let aut_s_target = self.hom_s(&target, &target);
        let n_s_q = crate::gcore::normalizer(&self.s, q);
        let members: Vec<u32> = n_s_q
            .elements()
            .iter()
            .copied()
            .filter(|&g| {
                let table: Vec<u32> = target
                    .elements()
                    .iter()
                    .map(|&x| {
                        let pre = inv.apply(x).expect("x in image");
                        iso.apply(group.conj(g, pre)).expect("g normalizes Q")
                    })
                    .collect();
                aut_s_target.iter().any(|a| a.table() == table.as_slice())
            })
            .collect();
        Ok(Subgroup::from_elements(group, members)?)
    }

    /// Every F-isomorphism onto `R` extends to its `N_φ`.
    pub fn receptive(&self, r: &Subgroup) -> Result<bool, FusionError> {
        Ok(self.receptive_failure(r)?.is_none())
    }

    /// An F-isomorphism onto `R` with no extension to `N_φ`, if any.
    pub fn receptive_failure(&self, r: &Subgroup) -> Result<Option<GroupHom>, FusionError> {
        self.require_in_s(r)?;
        for q in self.subgroups()? {
            if q.order() != r.order() {
                continue;
            }
            for phi in self.hom(q, r)?.iter() {
                if !phi.is_injective() {
                    continue;
                }
                let n = self.n_phi(phi)?;
                let extends = self
                    .hom(&n, &self.s)?
                    .iter()
                    .any(|ext| ext.restrict(q).map(|res| res.table() == phi.table()).unwrap_or(false));
                if !extends {
                    return Ok(Some(phi.clone()));
                }
            }
        }
        Ok(None)
    }

    fn require_compatible(&self, other: &FusionSystem) -> Result<(), FusionError> {
        if self.p != other.p || self.s != other.s {
            return Err(FusionError::Incompatible);
        }
        Ok(())
    }

    /// A morphism of `other` missing from `self`, over all pairs of subgroups.
    pub fn missing_from(&self, other: &FusionSystem) -> Result<Option<GroupHom>, FusionError> {
        self.require_compatible(other)?;
        let subs = self.subgroups()?;
        for q in subs {
            for r in subs {
                let mine = self.hom(q, r)?;
                if let Some(f) = other.hom(q, r)?.iter().find(|f| !mine.contains(f)) {
                    return Ok(Some(f.clone()));
                }
            }
        }
        Ok(None)
    }

    /// `self ⊆ other`: every hom set of `self` lies inside `other`'s.
    pub fn is_subsystem_of(&self, other: &FusionSystem) -> Result<bool, FusionError> {
        Ok(other.missing_from(self)?.is_none())
    }

    pub fn equals(&self, other: &FusionSystem) -> Result<bool, FusionError> {
        Ok(self.is_subsystem_of(other)? && other.is_subsystem_of(self)?)
    }
}

impl fmt::Debug for FusionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let over = match &self.realization {
            Realization::Conjugation(a) => format!("conjugation in {a}"),
            Realization::Explicit(t) => format!("{} explicit hom sets", t.len()),
        };
        write!(f, "FusionSystem(p={}, S={}, {over})", self.p, self.s)
    }
}

/// `Hom_F(Q, R)`.
pub fn hom_f(f: &FusionSystem, q: &Subgroup, r: &Subgroup) -> Result<Arc<Vec<GroupHom>>, FusionError> {
    f.hom(q, r)
}

/// `Aut_F(Q)` as an explicit permutation group on `Q`'s element positions.
pub fn aut_f(f: &FusionSystem, q: &Subgroup) -> Result<Arc<FiniteGroup>, FusionError> {
    f.aut(q)
}

pub fn is_subsystem(g: &FusionSystem, f: &FusionSystem) -> Result<bool, FusionError> {
    g.is_subsystem_of(f)
}

pub fn systems_equal(g: &FusionSystem, f: &FusionSystem) -> Result<bool, FusionError> {
    g.equals(f)
}

/// Packs a set of automorphisms of `q` into a permutation group on the
/// positions `0..|q|`.
pub fn automorphism_group(
    name: &str,
    q: &Subgroup,
    autos: &[GroupHom],
    max_elements: usize,
) -> Result<Arc<FiniteGroup>, GroupError> {
    let gens = autos
        .iter()
        .map(|a| {
            let images = a
                .as_position_permutation()
                .ok_or_else(|| GroupError::DomainMismatch(format!("{a} is not an automorphism")))?;
            crate::gcore::Permutation::new(images)
        })
        .collect::<Result<Vec<_>, _>>()?;
    FiniteGroup::new(format!("{name}({q})"), q.order(), gens, max_elements)
}
