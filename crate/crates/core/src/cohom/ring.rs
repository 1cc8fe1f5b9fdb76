use std::collections::BTreeMap;

use serde::Serialize;

use super::bar::check_cap;
use super::{CohomError, Cohomology, StableSubspace};
use crate::fusion::{FusionError, FusionSystem};
use crate::gcore::Subgroup;

/// A class in H^degree(Q), in the coordinates of the cached basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CohomologyClass {
    pub degree: usize,
    pub coords: Vec<u32>,
}

impl CohomologyClass {
    pub fn new(degree: usize, coords: Vec<u32>) -> Self {
        CohomologyClass { degree, coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }
}

/// Outcome of the Frobenius-power probe for one stable class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeEntry {
    /// Coordinates in H^n(S).
    pub zeta: Vec<u32>,
    /// Least `r <= rmax` with `zeta^(p^r)` stable for the larger system.
    pub least_r: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub n: usize,
    pub rmax: u32,
    pub entries: Vec<ProbeEntry>,
}

impl ProbeReport {
    /// Every probed class reached the image within `rmax`.
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.least_r.is_some())
    }

    /// Largest least-r over the entries, if all passed.
    pub fn max_r(&self) -> Option<u32> {
        self.entries
            .iter()
            .map(|e| e.least_r)
            .try_fold(0, |acc, r| r.map(|r| acc.max(r)))
    }
}

impl Cohomology {
    pub fn unit(&self, q: &Subgroup) -> Result<CohomologyClass, CohomError> {
        let b = self.basis(q, 0)?;
        Ok(CohomologyClass::new(0, b.coordinates_unchecked(&[1])))
    }

    /// Cup product via the front-face/back-face formula
    /// `(a u b)(g_1..g_(m+n)) = a(g_1..g_m) b(g_(m+1)..g_(m+n))`.
    pub fn cup(
        &self,
        q: &Subgroup,
        a: &CohomologyClass,
        b: &CohomologyClass,
    ) -> Result<CohomologyClass, CohomError> {
        let degree = a.degree + b.degree;
        check_cap(q, degree + 1, self.limits().max_cochain_dim)?;
        let va = self.basis(q, a.degree)?.cochain(&a.coords)?;
        let vb = self.basis(q, b.degree)?.cochain(&b.coords)?;
        let f = self.field();
        let mut product = Vec::with_capacity(va.len() * vb.len());
        for &x in &va {
            if x == 0 {
                product.resize(product.len() + vb.len(), 0);
            } else {
                product.extend(vb.iter().map(|&y| f.mul(x, y)));
            }
        }
        let target = self.basis(q, degree)?;
        Ok(CohomologyClass::new(degree, target.coordinates_unchecked(&product)))
    }

    /// `zeta^(p^r)` by iterated cup products.
    pub fn frobenius_power(
        &self,
        q: &Subgroup,
        zeta: &CohomologyClass,
        r: u32,
    ) -> Result<CohomologyClass, CohomError> {
        let mut x = zeta.clone();
        for _ in 0..r {
            x = self.pth_power(q, &x)?;
        }
        Ok(x)
    }

    fn pth_power(&self, q: &Subgroup, x: &CohomologyClass) -> Result<CohomologyClass, CohomError> {
        let target = x.degree * self.p() as usize;
        check_cap(q, target + 1, self.limits().max_cochain_dim)?;
        let mut acc = x.clone();
        for _ in 1..self.p() {
            acc = self.cup(q, &acc, x)?;
        }
        Ok(acc)
    }

    /// For each basis class `zeta` of H^n(`small`), the least `r <= rmax`
    /// with `zeta^(p^r)` in H^(n p^r)(`big`). `small` must be a subsystem of
    /// `big` on the same p-group.
    pub fn mislin_hypothesis_probe(
        &self,
        small: &FusionSystem,
        big: &FusionSystem,
        n: usize,
        rmax: u32,
    ) -> Result<ProbeReport, CohomError> {
        if small.p() != big.p() || small.s().elements() != big.s().elements() {
            return Err(FusionError::Incompatible.into());
        }
        if !small.is_subsystem_of(big)? {
            return Err(FusionError::NotSubsystem("probe needs a subsystem".into()).into());
        }
        let s = small.s();
        let mut big_stable: BTreeMap<usize, StableSubspace> = BTreeMap::new();
        let mut entries = Vec::new();
        for zeta in self.stable_subspace(small, n)?.basis() {
            let mut power = CohomologyClass::new(n, zeta.clone());
            let mut least_r = None;
            for r in 0..=rmax {
                if r > 0 {
                    power = self.pth_power(s, &power)?;
                }
                let d = power.degree;
                if let std::collections::btree_map::Entry::Vacant(e) = big_stable.entry(d) {
                    e.insert(self.stable_subspace(big, d)?);
                }
                if big_stable[&d].contains(&power.coords) {
                    least_r = Some(r);
                    break;
                }
            }
            entries.push(ProbeEntry {
                zeta: zeta.clone(),
                least_r,
            });
        }
        Ok(ProbeReport { n, rmax, entries })
    }
}
