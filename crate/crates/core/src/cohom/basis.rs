//! H^n(Q; GF(p)) from the normalized bar complex.
//!
//! Z^n is never written down. Row-reducing d^n leaves a set F of free
//! columns, and a cocycle is determined by its values on F: projecting onto
//! F is an isomorphism Z^n -> k^F. Coboundaries are projected the same way
//! and row-reduced inside k^F; the free positions that are not pivots of
//! that second echelon index the basis of H^n, and each representative is
//! the unique cocycle that is 1 there and 0 on the other free columns.

use std::sync::Arc;

use super::bar::{bar_row, check_cap, coboundary, LocalGroup};
use super::CohomError;
use crate::gcore::Subgroup;
use crate::linalg::{Echelon, Field, SparseRow};

const NOT_FREE: u32 = u32::MAX;

#[derive(Debug)]
pub struct CohomologyBasis {
    local: Arc<LocalGroup>,
    field: Field,
    n: usize,
    cochain_dim: usize,
    /// Position in k^F of each cochain index, or NOT_FREE.
    free_pos: Vec<u32>,
    dim_cocycles: usize,
    coboundaries: Echelon,
    /// Positions in k^F that index the cohomology basis.
    complement: Vec<usize>,
    reps: Vec<Vec<u32>>,
}

impl CohomologyBasis {
    pub(crate) fn compute(
        local: Arc<LocalGroup>,
        p: u32,
        n: usize,
        cap: usize,
    ) -> Result<Self, CohomError> {
        let q = local.subgroup().clone();
        let field = Field::new(p);
        let rows = check_cap(&q, n + 1, cap)?;
        let cols = check_cap(&q, n, cap)?;

        // Columns are eliminated right to left (reversed indices): with the
        // first tuple entry most significant this keeps fill-in far lower
        // than leftmost pivoting.
        let rev = |c: usize| cols - 1 - c;
        let mut cocycle_ech = Echelon::new(field.clone(), cols);
        let mut scratch = Vec::new();
        for r in 0..rows {
            let row: SparseRow = bar_row(&local, &field, n, r, &mut scratch)
                .into_iter()
                .rev()
                .map(|(c, v)| (rev(c as usize) as u32, v))
                .collect();
            cocycle_ech.insert(row);
            if cocycle_ech.rank() == cols {
                break;
            }
        }
        let mut free: Vec<usize> = cocycle_ech.free_columns().into_iter().map(rev).collect();
        free.sort_unstable();
        let mut free_pos = vec![NOT_FREE; cols];
        for (k, &c) in free.iter().enumerate() {
            free_pos[c] = k as u32;
        }

        // Columns of d^(n-1), i.e. images of the basis cochains of degree n-1.
        let mut coboundaries = Echelon::new(field.clone(), free.len());
        if n > 0 {
            let below = check_cap(&q, n - 1, cap)?;
            let mut columns: Vec<SparseRow> = vec![Vec::new(); below];
            for r in 0..cols {
                for (c, v) in bar_row(&local, &field, n - 1, r, &mut scratch) {
                    let k = free_pos[r];
                    if k != NOT_FREE {
                        columns[c as usize].push((k, v));
                    }
                }
            }
            for col in columns {
                coboundaries.insert(col);
            }
        }
        let complement = coboundaries.free_columns();
        let reps = complement
            .iter()
            .map(|&k| {
                let mut v = cocycle_ech.kernel_vector(rev(free[k]));
                v.reverse();
                v
            })
            .collect();
        Ok(CohomologyBasis {
            local,
            field,
            n,
            cochain_dim: cols,
            free_pos,
            dim_cocycles: free.len(),
            coboundaries,
            complement,
            reps,
        })
    }

    pub fn group(&self) -> &Subgroup {
        self.local.subgroup()
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// dim H^n.
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn cochain_dim(&self) -> usize {
        self.cochain_dim
    }

    pub fn dim_cocycles(&self) -> usize {
        self.dim_cocycles
    }

    pub fn dim_coboundaries(&self) -> usize {
        self.coboundaries.rank()
    }

    /// Cocycle representatives, one per basis class, as dense cochains.
    pub fn representatives(&self) -> &[Vec<u32>] {
        &self.reps
    }

    pub fn is_cocycle(&self, z: &[u32]) -> bool {
        z.len() == self.cochain_dim
            && coboundary(&self.local, &self.field, self.n, z)
                .iter()
                .all(|&x| x == 0)
    }

    /// Coordinates of the class of the cocycle `z`.
    pub fn coordinates(&self, z: &[u32]) -> Result<Vec<u32>, CohomError> {
        if z.len() != self.cochain_dim {
            return Err(CohomError::BadCochain {
                degree: self.n,
                expected: self.cochain_dim,
                found: z.len(),
            });
        }
        if !self.is_cocycle(z) {
            return Err(CohomError::NotACocycle);
        }
        Ok(self.coordinates_unchecked(z))
    }

    /// As [`CohomologyBasis::coordinates`] but trusts that `z` is a cocycle.
    pub(crate) fn coordinates_unchecked(&self, z: &[u32]) -> Vec<u32> {
        let mut w = vec![0u32; self.dim_cocycles];
        for (c, &k) in self.free_pos.iter().enumerate() {
            if k != NOT_FREE {
                w[k as usize] = z[c];
            }
        }
        self.coboundaries.reduce_dense(&mut w);
        self.complement.iter().map(|&k| w[k]).collect()
    }

    /// Whether the cocycle `z` is a coboundary.
    pub fn is_coboundary(&self, z: &[u32]) -> Result<bool, CohomError> {
        Ok(self.coordinates(z)?.iter().all(|&x| x == 0))
    }

    /// The representative cocycle `sum c_i z_i` of the class with the given
    /// coordinates.
    pub fn cochain(&self, coords: &[u32]) -> Result<Vec<u32>, CohomError> {
        if coords.len() != self.dim() {
            return Err(CohomError::BadCoordinates {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        let f = &self.field;
        let mut out = vec![0u32; self.cochain_dim];
        for (c, rep) in coords.iter().zip(&self.reps) {
            if *c == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(rep) {
                *o = f.add(*o, f.mul(*c, r));
            }
        }
        Ok(out)
    }
}
