use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{FiniteGroup, GroupError, Permutation};

/// A subgroup of an explicit ambient group, held as sorted element indices.
#[derive(Clone)]
pub struct Subgroup {
    group: Arc<FiniteGroup>,
    elements: Vec<u32>,
}

impl Subgroup {
    /// `elements` must be sorted and closed; used by code that has just computed a closure.
    pub(crate) fn from_sorted(group: Arc<FiniteGroup>, elements: Vec<u32>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { group, elements }
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        Subgroup::from_sorted(group.clone(), vec![group.identity()])
    }

    /// Subgroup generated by elements given by index.
    pub fn generated(group: &Arc<FiniteGroup>, gens: &[u32]) -> Self {
        Subgroup::from_sorted(group.clone(), group.close(gens))
    }

    /// Subgroup generated by permutations that must lie in `group`.
    pub fn from_permutations(
        group: &Arc<FiniteGroup>,
        gens: &[Permutation],
    ) -> Result<Self, GroupError> {
        let idx = gens
            .iter()
            .map(|g| {
                group
                    .index_of(g)
                    .ok_or_else(|| GroupError::NotInGroup(g.to_string(), group.name().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Subgroup::generated(group, &idx))
    }

    /// Builds a subgroup from an explicit element set, checking closure.
    pub fn from_elements(group: &Arc<FiniteGroup>, mut elements: Vec<u32>) -> Result<Self, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        let closed = group.close(&elements);
        if closed != elements {
            return Err(GroupError::NotClosed);
        }
        Ok(Subgroup::from_sorted(group.clone(), elements))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, g: u32) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Position of an ambient element inside this subgroup's sorted list.
    pub fn position(&self, g: u32) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.same_ambient(other) && self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn same_ambient(&self, other: &Subgroup) -> bool {
        self.group.same_as(&other.group)
    }

    pub fn permutations(&self) -> impl Iterator<Item = &Permutation> + '_ {
        self.elements.iter().map(move |&g| self.group.element(g))
    }

    /// A small generating set, chosen greedily in element order.
    pub fn generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span = vec![self.group.identity()];
        for &g in &self.elements {
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.group.close(&gens);
                if span.len() == self.elements.len() {
                    break;
                }
            }
        }
        gens
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().enumerate().all(|(i, &a)| {
            gens[i + 1..]
                .iter()
                .all(|&b| self.group.mul(a, b) == self.group.mul(b, a))
        })
    }

    pub fn is_p_group(&self, p: u32) -> bool {
        is_power_of(self.order(), p)
    }

    /// True when every element satisfies `x^p = 1` and the group is abelian.
    pub fn is_elementary_abelian(&self, p: u32) -> bool {
        self.elements
            .iter()
            .all(|&x| self.group.pow(x, p as usize) == self.group.identity())
            && self.is_abelian()
    }

    /// `g Q g^-1`.
    pub fn conjugate_by(&self, g: u32) -> Subgroup {
        let mut elements: Vec<u32> = self.elements.iter().map(|&x| self.group.conj(g, x)).collect();
        elements.sort_unstable();
        Subgroup::from_sorted(self.group.clone(), elements)
    }

    /// Index-level join `⟨self, other⟩`.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators();
        gens.extend(other.generators());
        Subgroup::generated(&self.group, &gens)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let elements = self
            .elements
            .iter()
            .copied()
            .filter(|&g| other.contains(g))
            .collect();
        Subgroup::from_sorted(self.group.clone(), elements)
    }
}

pub(crate) fn is_power_of(mut n: usize, p: u32) -> bool {
    let p = p as usize;
    if p < 2 {
        return n == 1;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: usize, p: u32) -> usize {
    let p = p as usize;
    let mut out = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.same_ambient(other)
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by size first, then by element list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order(), &self.elements).cmp(&(other.order(), &other.elements))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `⟨g1, g2, ..⟩ (order n)` using the greedy generating set.
impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.generators();
        write!(f, "<")?;
        for (k, g) in gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.group.element(*g))?;
        }
        write!(f, "> (order {})", self.order())
    }
}

/// `g Q g^-1` for a permutation `g` of the ambient group.
pub fn conjugate(g: &Permutation, q: &Subgroup) -> Result<Subgroup, GroupError> {
    let gi = q
        .group
        .index_of(g)
        .ok_or_else(|| GroupError::NotInGroup(g.to_string(), q.group.name().to_string()))?;
    Ok(q.conjugate_by(gi))
}

fn check_inside(q: &Subgroup, g: &Subgroup) -> Result<(), GroupError> {
    if q.is_subgroup_of(g) {
        Ok(())
    } else {
        Err(GroupError::NotASubgroup(q.to_string(), g.to_string()))
    }
}

/// `N_G(Q) = {g ∈ G : g Q g^-1 = Q}`. `Q` need not lie in `G`.
pub fn normalizer(g: &Subgroup, q: &Subgroup) -> Subgroup {
    let group = g.group();
    let elements = g
        .elements()
        .iter()
        .copied()
        .filter(|&x| q.elements().iter().all(|&y| q.contains(group.conj(x, y))))
        .collect();
    Subgroup::from_sorted(group.clone(), elements)
}

/// `C_G(Q) = {g ∈ G : gq = qg for all q ∈ Q}`.
pub fn centralizer(g: &Subgroup, q: &Subgroup) -> Subgroup {
    let group = g.group();
    let gens = q.generators();
    let elements = g
        .elements()
        .iter()
        .copied()
        .filter(|&x| gens.iter().all(|&y| group.mul(x, y) == group.mul(y, x)))
        .collect();
    Subgroup::from_sorted(group.clone(), elements)
}

/// A Sylow `p`-subgroup of `g`: starts from a p-element of maximal order and
/// repeatedly adjoins a p-element of the normalizer until the order is the
/// p-part of `|g|`. Deterministic given the element ordering.
pub fn sylow(g: &Subgroup, p: u32) -> Result<Subgroup, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let group = g.group();
    let target = p_part(g.order(), p);
    let is_p_element = |x: u32| is_power_of(group.element_order(x), p);
    let mut best: Option<(usize, u32)> = None;
    for &x in g.elements() {
        let o = group.element_order(x);
        if o > 1 && is_p_element(x) && best.is_none_or(|(bo, _)| o > bo) {
            best = Some((o, x));
        }
    }
    let Some((_, start)) = best else {
        return Ok(Subgroup::trivial(group));
    };
    let mut current = Subgroup::generated(group, &[start]);
    while current.order() < target {
        let n = normalizer(g, &current);
        let y = n
            .elements()
            .iter()
            .copied()
            .find(|&y| !current.contains(y) && is_p_element(y))
            .expect("a p-subgroup below the Sylow order has a p-element in its normalizer outside it");
        let mut gens = current.generators();
        gens.push(y);
        current = Subgroup::generated(group, &gens);
    }
    Ok(current)
}

/// Every subgroup of the p-group `p_sub`, sorted by (order, elements).
///
/// Breadth-first: each found subgroup is extended by one element at a time.
pub fn all_subgroups(p_sub: &Subgroup, max_order: usize) -> Result<Vec<Subgroup>, GroupError> {
    if p_sub.order() > max_order {
        return Err(GroupError::SubgroupCap {
            order: p_sub.order(),
            cap: max_order,
        });
    }
    let group = p_sub.group();
    let mut found: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut queue: Vec<(Vec<u32>, Vec<u32>)> = vec![(vec![group.identity()], Vec::new())];
    found.insert(vec![group.identity()]);
    let mut head = 0;
    while head < queue.len() {
        let (elements, gens) = queue[head].clone();
        head += 1;
        for &x in p_sub.elements() {
            if elements.binary_search(&x).is_ok() {
                continue;
            }
            let mut new_gens = gens.clone();
            new_gens.push(x);
            let closed = group.close(&new_gens);
            if found.insert(closed.clone()) {
                queue.push((closed, new_gens));
            }
        }
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(|e| Subgroup::from_sorted(group.clone(), e))
        .collect();
    out.sort();
    Ok(out)
}

/// Checks `q ≤ g`, for callers that need the error value.
pub fn require_subgroup(q: &Subgroup, g: &Subgroup) -> Result<(), GroupError> {
    check_inside(q, g)
}
