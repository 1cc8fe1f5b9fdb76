use super::{CohomError, Cohomology};
use crate::fusion::FusionSystem;
use crate::linalg::{dense_to_sparse, rref_basis, Echelon, Field};

/// The F-stable classes of degree `n`, as a subspace of H^n(S) in the
/// coordinates of the cached basis of H^n(S).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableSubspace {
    p: u32,
    n: usize,
    ambient_dim: usize,
    /// Reduced row-echelon basis; canonical for the subspace.
    basis: Vec<Vec<u32>>,
}

impl StableSubspace {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// dim H^n(S).
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn is_everything(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let f = Field::new(self.p);
        let mut w = v.to_vec();
        for row in &self.basis {
            let lead = row.iter().position(|&x| x != 0).expect("basis rows are nonzero");
            let x = w[lead];
            if x != 0 {
                for (a, &b) in w.iter_mut().zip(row) {
                    *a = f.sub(*a, f.mul(x, b));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &StableSubspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|v| other.contains(v))
    }
}

impl Cohomology {
    /// Classes `z` of H^n(S) with `res^S_Q(z) = res_phi(z)` for every
    /// `Q <= S` and every `phi` in `Hom_F(Q, S)`.
    pub fn stable_subspace(&self, f: &FusionSystem, n: usize) -> Result<StableSubspace, CohomError> {
        if f.p() != self.p() {
            return Err(crate::fusion::FusionError::Incompatible.into());
        }
        let s = f.s();
        let top = self.basis(s, n)?.dim();
        let mut constraints = Echelon::new(self.field().clone(), top);
        if top > 0 {
            for q in f.subgroups()? {
                if constraints.rank() == top {
                    break;
                }
                if self.basis(q, n)?.dim() == 0 {
                    continue;
                }
                let incl = self.restriction(q, s, n)?.to_dense();
                for phi in f.hom(q, s)?.iter().filter(|phi| !phi.is_inclusion()) {
                    let along = self.restriction_along(phi, n)?.to_dense();
                    for (a, b) in incl.iter().zip(&along) {
                        let diff: Vec<u32> = a
                            .iter()
                            .zip(b)
                            .map(|(&x, &y)| self.field().sub(x, y))
                            .collect();
                        constraints.insert(dense_to_sparse(&diff));
                    }
                }
            }
        }
        let kernel = constraints.kernel_basis();
        Ok(StableSubspace {
            p: self.p(),
            n,
            ambient_dim: top,
            basis: rref_basis(self.field(), top, &kernel),
        })
    }

    /// `dim H^n(F)` for `n = 0..=top`.
    pub fn dims_table(&self, f: &FusionSystem, top: usize) -> Result<Vec<usize>, CohomError> {
        (0..=top)
            .map(|n| Ok(self.stable_subspace(f, n)?.dim()))
            .collect()
    }
}
