//! Small groups used throughout the unit tests.

use std::sync::Arc;

use crate::gcore::{sylow, FiniteGroup, Permutation, Subgroup};

pub fn group(name: &str, degree: usize, gens: &[&[u32]]) -> Arc<FiniteGroup> {
    let gens = gens
        .iter()
        .map(|g| Permutation::new(g.to_vec()).unwrap())
        .collect();
    FiniteGroup::new(name, degree, gens, 50_000).unwrap()
}

pub fn cyclic(n: u32) -> Arc<FiniteGroup> {
    let images: Vec<u32> = (0..n).map(|i| (i + 1) % n).collect();
    group(&format!("C{n}"), n as usize, &[&images])
}

pub fn v4() -> Arc<FiniteGroup> {
    group("C2xC2", 4, &[&[1, 0, 3, 2], &[2, 3, 0, 1]])
}

pub fn c3xc3() -> Arc<FiniteGroup> {
    group("C3xC3", 6, &[&[1, 2, 0, 3, 4, 5], &[0, 1, 2, 4, 5, 3]])
}

pub fn s3() -> Arc<FiniteGroup> {
    group("S3", 3, &[&[1, 0, 2], &[1, 2, 0]])
}

pub fn s4() -> Arc<FiniteGroup> {
    group("S4", 4, &[&[1, 2, 3, 0], &[1, 0, 2, 3]])
}

pub fn d8() -> Arc<FiniteGroup> {
    group("D8", 4, &[&[1, 2, 3, 0], &[3, 2, 1, 0]])
}

pub fn q8() -> Arc<FiniteGroup> {
    group("Q8", 8, &[&[2, 3, 1, 0, 6, 7, 5, 4], &[4, 5, 7, 6, 1, 0, 2, 3]])
}

pub fn sl23() -> Arc<FiniteGroup> {
    group("SL(2,3)", 8, &[&[3, 7, 2, 6, 1, 5, 0, 4], &[5, 2, 0, 6, 3, 1, 7, 4]])
}

pub fn sub(g: &Arc<FiniteGroup>, gens: &[&[u32]]) -> Subgroup {
    let gens: Vec<Permutation> = gens
        .iter()
        .map(|x| Permutation::new(x.to_vec()).unwrap())
        .collect();
    Subgroup::from_permutations(g, &gens).unwrap()
}

pub fn syl(g: &Arc<FiniteGroup>, p: u32) -> Subgroup {
    sylow(&g.whole(), p).unwrap()
}
