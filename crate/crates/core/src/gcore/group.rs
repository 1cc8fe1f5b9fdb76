use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::{GroupError, Permutation, Subgroup};

/// Groups up to this order keep a full Cayley table.
const TABLE_LIMIT: usize = 1024;

/// An explicit permutation group with its element list cached.
///
/// Elements are sorted lexicographically by image array, so the identity
/// always sits at index 0. Everything downstream refers to elements by
/// their index in this list.
pub struct FiniteGroup {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    inverses: Vec<u32>,
    table: Option<Vec<u32>>,
}

/// The group generated by `generators`, sorted by image arrays.
pub fn closure(
    degree: usize,
    generators: &[Permutation],
    max_elements: usize,
) -> Result<Vec<Permutation>, GroupError> {
    for g in generators {
        if g.degree() != degree {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.compose(&x);
            if !seen.contains(&y) {
                if seen.len() >= max_elements {
                    return Err(GroupError::ElementCap { cap: max_elements });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort();
    Ok(elements)
}

impl FiniteGroup {
    pub fn new(
        name: impl Into<String>,
        degree: usize,
        generators: Vec<Permutation>,
        max_elements: usize,
    ) -> Result<Arc<Self>, GroupError> {
        let elements = closure(degree, &generators, max_elements)?;
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        let inverses = elements.iter().map(|g| index[&g.inverse()]).collect();
        let mut group = FiniteGroup {
            name: name.into(),
            degree,
            generators,
            elements,
            index,
            inverses,
            table: None,
        };
        if group.order() <= TABLE_LIMIT {
            let n = group.order();
            let mut table = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    table.push(group.mul_slow(a as u32, b as u32));
                }
            }
            group.table = Some(table);
        }
        Ok(Arc::new(group))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<u32> {
        self.index.get(g).copied()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let c = self.elements[a as usize].compose(&self.elements[b as usize]);
        self.index[&c]
    }

    /// Index of `a ∘ b`.
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.mul_slow(a, b),
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    /// `g x g^-1`.
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: u32, mut e: usize) -> u32 {
        let mut acc = self.identity();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: u32) -> usize {
        self.elements[a as usize].order()
    }

    /// Sorted indices of the subgroup generated by `gens`.
    pub fn close(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order()];
        let mut out = vec![self.identity()];
        seen[0] = true;
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for &g in gens {
                let y = self.mul(g, x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The whole group as a subgroup of itself.
    pub fn whole(self: &Arc<Self>) -> Subgroup {
        Subgroup::from_sorted(self.clone(), (0..self.order() as u32).collect())
    }

    pub fn same_as(&self, other: &FiniteGroup) -> bool {
        std::ptr::eq(self, other) || self.elements == other.elements
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[u32]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    #[test]
    fn closure_of_three_cycle() {
        let c = closure(3, &[perm(&[1, 2, 0])], 100).unwrap();
        assert_eq!(c, vec![perm(&[0, 1, 2]), perm(&[1, 2, 0]), perm(&[2, 0, 1])]);
    }

    #[test]
    fn closure_of_nothing_is_trivial() {
        assert_eq!(closure(4, &[], 100).unwrap(), vec![Permutation::identity(4)]);
    }

    #[test]
    fn closure_s4_matches_brute_force() {
        let gens = [perm(&[1, 2, 3, 0]), perm(&[1, 0, 2, 3])];
        let c = closure(4, &gens, 100).unwrap();
        // every permutation of 4 points, by brute force
        let mut all = Vec::new();
        for a in 0..4u32 {
            for b in 0..4u32 {
                for c in 0..4u32 {
                    for d in 0..4u32 {
                        if let Ok(p) = Permutation::new(vec![a, b, c, d]) {
                            all.push(p);
                        }
                    }
                }
            }
        }
        all.sort();
        assert_eq!(c.len(), 24);
        assert_eq!(c, all);
    }

    #[test]
    fn closure_errors() {
        assert!(matches!(
            closure(3, &[perm(&[1, 0])], 100),
            Err(GroupError::DegreeMismatch { .. })
        ));
        let gens = [perm(&[1, 2, 3, 0]), perm(&[1, 0, 2, 3])];
        assert!(matches!(
            closure(4, &gens, 10),
            Err(GroupError::ElementCap { cap: 10 })
        ));
    }

    #[test]
    fn identity_is_index_zero_and_inverses_work() {
        let g = FiniteGroup::new("S3", 3, vec![perm(&[1, 0, 2]), perm(&[1, 2, 0])], 100).unwrap();
        assert!(g.element(0).is_identity());
        for a in 0..g.order() as u32 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }
}
