//! Mod-p cohomology of small groups in low degrees, restriction along
//! homomorphisms, cup products and F-stable subspaces.
//!
//! Everything is computed over GF(p); for trivial coefficients extending
//! scalars to a larger field changes no dimension and no stability verdict.

mod bar;
mod basis;
mod ring;
mod stable;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::fusion::FusionError;
use crate::gcore::{is_prime, GroupError, GroupHom, Subgroup};
use crate::linalg::{Field, FieldMatrix};
use crate::Limits;

pub use bar::{differential, CochainComplexSlice};
pub use basis::CohomologyBasis;
pub use ring::{CohomologyClass, ProbeEntry, ProbeReport};
pub use stable::StableSubspace;

use bar::{cochain_dim, decode, encode, LocalGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomError {
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error("cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: String,
        needed: u128,
        cap: usize,
    },
    #[error("cochain of length {found} given in degree {degree}, expected {expected}")]
    BadCochain {
        degree: usize,
        expected: usize,
        found: usize,
    },
    #[error("coordinate vector of length {found}, expected {expected}")]
    BadCoordinates { expected: usize, found: usize },
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("prime {0} is too large for the field arithmetic")]
    PrimeTooLarge(u32),
}

impl From<GroupError> for CohomError {
    fn from(e: GroupError) -> Self {
        CohomError::Fusion(e.into())
    }
}

pub(crate) fn require_prime(p: u32) -> Result<(), CohomError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p).into());
    }
    if p >= 1 << 16 {
        return Err(CohomError::PrimeTooLarge(p));
    }
    Ok(())
}

type BasisKey = (usize, Vec<u32>, usize);

/// Cohomology over GF(p) with memoized bases. Shareable across threads.
pub struct Cohomology {
    field: Field,
    limits: Limits,
    locals: Mutex<HashMap<(usize, Vec<u32>), Arc<LocalGroup>>>,
    bases: Mutex<HashMap<BasisKey, Arc<CohomologyBasis>>>,
}

impl Cohomology {
    pub fn new(p: u32, limits: Limits) -> Result<Self, CohomError> {
        require_prime(p)?;
        Ok(Cohomology {
            field: Field::new(p),
            limits,
            locals: Mutex::default(),
            bases: Mutex::default(),
        })
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub(crate) fn field(&self) -> &Field {
        &self.field
    }

    fn local(&self, q: &Subgroup) -> Arc<LocalGroup> {
        let key = (Arc::as_ptr(q.group()) as usize, q.elements().to_vec());
        self.locals
            .lock()
            .expect("cohomology cache poisoned")
            .entry(key)
            .or_insert_with(|| Arc::new(LocalGroup::new(q)))
            .clone()
    }

    /// Basis of H^n(Q), memoized per (Q, n).
    pub fn basis(&self, q: &Subgroup, n: usize) -> Result<Arc<CohomologyBasis>, CohomError> {
        // the cached LocalGroup keeps the ambient group alive, so its
        // address cannot be reused while the key exists
        let key = (Arc::as_ptr(q.group()) as usize, q.elements().to_vec(), n);
        if let Some(b) = self.bases.lock().expect("cohomology cache poisoned").get(&key) {
            return Ok(b.clone());
        }
        let basis = Arc::new(CohomologyBasis::compute(
            self.local(q),
            self.p(),
            n,
            self.limits.max_cochain_dim,
        )?);
        self.bases
            .lock()
            .expect("cohomology cache poisoned")
            .insert(key, basis.clone());
        Ok(basis)
    }

    /// `res_phi : H^n(P') -> H^n(Q)` for `phi : Q -> P'`, as a
    /// `dim H^n(Q) x dim H^n(P')` matrix acting on coordinate columns.
    pub fn restriction_along(&self, phi: &GroupHom, n: usize) -> Result<FieldMatrix, CohomError> {
        let q = phi.domain();
        let target = phi.codomain();
        let bq = self.basis(q, n)?;
        let bp = self.basis(target, n)?;
        let mq = q.order() - 1;
        let mp = target.order() - 1;
        let local_image: Vec<u32> = phi
            .table()
            .iter()
            .map(|&x| target.position(x).expect("hom lands in codomain") as u32)
            .collect();
        // pullback index map on tuples; None where phi hits the identity
        let len = cochain_dim(mq, n).expect("basis exists");
        let mut tuple = Vec::new();
        let index: Vec<Option<usize>> = (0..len)
            .map(|t| {
                decode(mq, n, t, &mut tuple);
                let mapped: Vec<u32> = tuple.iter().map(|&a| local_image[a as usize]).collect();
                if mapped.contains(&0) {
                    None
                } else {
                    Some(encode(mp, mapped))
                }
            })
            .collect();
        let mut columns = Vec::with_capacity(bp.dim());
        for rep in bp.representatives() {
            let pulled: Vec<u32> = index.iter().map(|i| i.map_or(0, |i| rep[i])).collect();
            columns.push(bq.coordinates_unchecked(&pulled));
        }
        let rows: Vec<Vec<u32>> = (0..bq.dim())
            .map(|i| columns.iter().map(|c| c[i]).collect())
            .collect();
        Ok(FieldMatrix::from_dense(self.p(), &rows, bp.dim()))
    }

    /// `res^R_Q` for `Q <= R`.
    pub fn restriction(&self, q: &Subgroup, r: &Subgroup, n: usize) -> Result<FieldMatrix, CohomError> {
        self.restriction_along(&GroupHom::inclusion(q, r)?, n)
    }
}

/// Standalone basis computation without a shared cache.
pub fn cohomology_basis(
    q: &Subgroup,
    p: u32,
    n: usize,
    limits: Limits,
) -> Result<Arc<CohomologyBasis>, CohomError> {
    Cohomology::new(p, limits)?.basis(q, n)
}
