//! Fusion systems of finite groups, control of fusion, and mod-p cohomology
//! of p-groups with stable-element subalgebras.

pub mod gcore;

/// Size limits shared by the enumeration and cohomology code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group closure that will be materialized.
    pub max_elements: usize,
    /// Largest p-group whose subgroup lattice will be enumerated.
    pub max_subgroup_order: usize,
    /// Largest cochain space (dimension of the target of a differential).
    pub max_cochain_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 50_000,
            max_subgroup_order: 64,
            max_cochain_dim: 500_000,
        }
    }
}

pub mod control;
pub mod fusion;

#[cfg(test)]
pub(crate) mod testgroups;
pub mod cohom;
pub mod linalg;
