use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::{GroupError, Subgroup};

/// A map between two subgroups of the same ambient group, stored as a full
/// table: `table[i]` is the image of `domain.elements()[i]`.
///
/// Equality compares the underlying functions (domain and table); the
/// codomain is carried along for composition and display.
#[derive(Clone)]
pub struct GroupHom {
    domain: Subgroup,
    codomain: Subgroup,
    table: Vec<u32>,
}

impl GroupHom {
    /// Checks that the table has the right length and lands in `codomain`.
    /// Does not check the homomorphism property or injectivity; see
    /// [`GroupHom::is_homomorphism`] and [`GroupHom::is_injective`].
    pub fn new(domain: Subgroup, codomain: Subgroup, table: Vec<u32>) -> Result<Self, GroupError> {
        if !domain.same_ambient(&codomain) {
            return Err(GroupError::DomainMismatch(
                "domain and codomain live in different groups".into(),
            ));
        }
        if table.len() != domain.order() {
            return Err(GroupError::DomainMismatch(format!(
                "table has {} entries for a domain of order {}",
                table.len(),
                domain.order()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| !codomain.contains(x)) {
            return Err(GroupError::NotInGroup(
                domain.group().element(bad).to_string(),
                codomain.to_string(),
            ));
        }
        Ok(GroupHom {
            domain,
            codomain,
            table,
        })
    }

    /// Like [`GroupHom::new`] but also requires an injective homomorphism.
    pub fn checked(domain: Subgroup, codomain: Subgroup, table: Vec<u32>) -> Result<Self, GroupError> {
        let f = Self::new(domain, codomain, table)?;
        if !f.is_homomorphism() {
            return Err(GroupError::NotAHomomorphism);
        }
        if !f.is_injective() {
            return Err(GroupError::NotInjective);
        }
        Ok(f)
    }

    pub(crate) fn from_parts(domain: Subgroup, codomain: Subgroup, table: Vec<u32>) -> Self {
        GroupHom {
            domain,
            codomain,
            table,
        }
    }

    pub fn identity(q: &Subgroup) -> Self {
        GroupHom::from_parts(q.clone(), q.clone(), q.elements().to_vec())
    }

    pub fn inclusion(q: &Subgroup, r: &Subgroup) -> Result<Self, GroupError> {
        if !q.is_subgroup_of(r) {
            return Err(GroupError::NotASubgroup(q.to_string(), r.to_string()));
        }
        Ok(GroupHom::from_parts(q.clone(), r.clone(), q.elements().to_vec()))
    }

    /// Restriction of conjugation by `g` to `q`, landing in `r`.
    pub fn conjugation(g: u32, q: &Subgroup, r: &Subgroup) -> Result<Self, GroupError> {
        let group = q.group();
        let table = q.elements().iter().map(|&x| group.conj(g, x)).collect();
        GroupHom::new(q.clone(), r.clone(), table)
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn codomain(&self) -> &Subgroup {
        &self.codomain
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn apply(&self, x: u32) -> Option<u32> {
        self.domain.position(x).map(|i| self.table[i])
    }

    pub fn is_homomorphism(&self) -> bool {
        let group = self.domain.group();
        let d = self.domain.elements();
        (0..d.len()).all(|i| {
            (0..d.len()).all(|j| {
                let xy = group.mul(d[i], d[j]);
                let k = self.domain.position(xy).expect("domain is closed");
                self.table[k] == group.mul(self.table[i], self.table[j])
            })
        })
    }

    pub fn is_injective(&self) -> bool {
        let distinct: BTreeSet<u32> = self.table.iter().copied().collect();
        distinct.len() == self.table.len()
    }

    pub fn is_inclusion(&self) -> bool {
        self.table == self.domain.elements()
    }

    pub fn image(&self) -> Subgroup {
        let mut e = self.table.clone();
        e.sort_unstable();
        e.dedup();
        Subgroup::from_sorted(self.domain.group().clone(), e)
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.codomain.order()
    }

    /// `self ∘ inner`; requires `image(inner) ⊆ domain(self)`.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom, GroupError> {
        let table = inner
            .table
            .iter()
            .map(|&y| self.apply(y))
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| {
                GroupError::DomainMismatch(format!(
                    "image of inner map is not inside {}",
                    self.domain
                ))
            })?;
        Ok(GroupHom::from_parts(
            inner.domain.clone(),
            self.codomain.clone(),
            table,
        ))
    }

    pub fn restrict(&self, sub: &Subgroup) -> Result<GroupHom, GroupError> {
        if !sub.is_subgroup_of(&self.domain) {
            return Err(GroupError::NotASubgroup(sub.to_string(), self.domain.to_string()));
        }
        let table = sub
            .elements()
            .iter()
            .map(|&x| self.apply(x).expect("sub is inside the domain"))
            .collect();
        Ok(GroupHom::from_parts(sub.clone(), self.codomain.clone(), table))
    }

    /// Same map with a different codomain (which must contain the image).
    pub fn with_codomain(&self, codomain: &Subgroup) -> Result<GroupHom, GroupError> {
        GroupHom::new(self.domain.clone(), codomain.clone(), self.table.clone())
    }

    /// Splits `self` as (isomorphism onto its image, image); the second
    /// factor is the inclusion `image ↪ codomain`.
    pub fn is_iso_onto_image(&self) -> (GroupHom, Subgroup) {
        let image = self.image();
        (
            GroupHom::from_parts(self.domain.clone(), image.clone(), self.table.clone()),
            image,
        )
    }

    /// Inverse of an injective map, from its image back to the domain.
    pub fn inverse(&self) -> Result<GroupHom, GroupError> {
        if !self.is_injective() {
            return Err(GroupError::NotInjective);
        }
        let image = self.image();
        let mut table = vec![0; image.order()];
        for (i, &y) in self.table.iter().enumerate() {
            table[image.position(y).expect("y is in the image")] = self.domain.elements()[i];
        }
        Ok(GroupHom::from_parts(image, self.domain.clone(), table))
    }

    /// The map as a permutation of positions `0..|domain|`, for automorphisms.
    pub fn as_position_permutation(&self) -> Option<Vec<u32>> {
        self.table
            .iter()
            .map(|&y| self.domain.position(y).map(|i| i as u32))
            .collect()
    }
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.table == other.table
    }
}

impl Eq for GroupHom {}

impl Hash for GroupHom {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.domain.hash(state);
        self.table.hash(state);
    }
}

impl PartialOrd for GroupHom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupHom {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.domain, &self.table).cmp(&(&other.domain, &other.table))
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Lists generator images, e.g. `{(0 1 2) -> (0 2 1)}`.
impl fmt::Display for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let group = self.domain.group();
        write!(f, "{{")?;
        for (k, g) in self.domain.generators().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            let img = self.apply(*g).expect("generator in domain");
            write!(f, "{} -> {}", group.element(*g), group.element(img))?;
        }
        write!(f, "}}")
    }
}

/// `{c_g|_Q : g ∈ A, g Q g^-1 ≤ R}`, deduplicated and sorted by table.
pub fn homs_by_conjugation(a: &Subgroup, q: &Subgroup, r: &Subgroup) -> Vec<GroupHom> {
    let group = q.group();
    let mut tables: BTreeSet<Vec<u32>> = BTreeSet::new();
    if q.order() > r.order() {
        return Vec::new();
    }
    for &g in a.elements() {
        let table: Vec<u32> = q.elements().iter().map(|&x| group.conj(g, x)).collect();
        if table.iter().all(|&y| r.contains(y)) {
            tables.insert(table);
        }
    }
    tables
        .into_iter()
        .map(|t| GroupHom::from_parts(q.clone(), r.clone(), t))
        .collect()
}
