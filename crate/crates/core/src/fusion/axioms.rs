use std::fmt;

use serde::Serialize;

use super::{FusionError, FusionSystem};
use crate::gcore::{GroupHom, Subgroup};

/// The fusion-system axiom a morphism family can violate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    HomSContained,
    Injective,
    Decomposition,
    Composition,
    Restriction,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::HomSContained => "Hom_S not contained",
            Axiom::Injective => "not in Inj",
            Axiom::Decomposition => "not an isomorphism followed by an inclusion",
            Axiom::Composition => "not closed under composition",
            Axiom::Restriction => "not closed under restriction",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub holds: bool,
    pub violated: Option<Axiom>,
    pub detail: Option<String>,
}

impl AxiomReport {
    fn ok() -> Self {
        AxiomReport {
            holds: true,
            violated: None,
            detail: None,
        }
    }

    fn fail(axiom: Axiom, detail: String) -> Self {
        AxiomReport {
            holds: false,
            violated: Some(axiom),
            detail: Some(detail),
        }
    }
}

impl FusionSystem {
    /// Checks the category axioms on the whole morphism family: `Hom_S`
    /// containment, injectivity, iso-then-inclusion decomposition, and
    /// closure under composition and restriction.
    pub fn is_fusion_system(&self) -> Result<AxiomReport, FusionError> {
        let subs = self.subgroups()?.to_vec();
        for q in &subs {
            for r in &subs {
                let homs = self.hom(q, r)?;
                if let Some(f) = homs
                    .iter()
                    .find(|f| !f.is_homomorphism() || !f.is_injective())
                {
                    return Ok(AxiomReport::fail(Axiom::Injective, format!("{f} from {q} to {r}")));
                }
            }
        }
        for q in &subs {
            for r in &subs {
                let homs = self.hom(q, r)?;
                if let Some(f) = self.hom_s(q, r).into_iter().find(|f| !homs.contains(f)) {
                    return Ok(AxiomReport::fail(
                        Axiom::HomSContained,
                        format!("{f} from {q} to {r}"),
                    ));
                }
            }
        }
        for q in &subs {
            for r in &subs {
                for f in self.hom(q, r)?.iter() {
                    if let Some(report) = self.check_decomposition(f)? {
                        return Ok(report);
                    }
                    if let Some(report) = self.check_restrictions(f, &subs)? {
                        return Ok(report);
                    }
                    for t in &subs {
                        for g in self.hom(r, t)?.iter() {
                            let gf = g.compose(f)?;
                            if !self.hom(q, t)?.contains(&gf) {
                                return Ok(AxiomReport::fail(
                                    Axiom::Composition,
                                    format!("{g} after {f}"),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(AxiomReport::ok())
    }

    fn check_decomposition(&self, f: &GroupHom) -> Result<Option<AxiomReport>, FusionError> {
        let (iso, image) = f.is_iso_onto_image();
        let fail = || Some(AxiomReport::fail(Axiom::Decomposition, f.to_string()));
        if !self.hom(f.domain(), &image)?.contains(&iso) {
            return Ok(fail());
        }
        let inverse = iso.inverse()?;
        if !self.hom(&image, f.domain())?.contains(&inverse) {
            return Ok(fail());
        }
        Ok(None)
    }

    fn check_restrictions(
        &self,
        f: &GroupHom,
        subs: &[Subgroup],
    ) -> Result<Option<AxiomReport>, FusionError> {
        for sub in subs {
            if sub.order() < f.domain().order() && sub.is_subgroup_of(f.domain()) {
                let res = f.restrict(sub)?;
                if !self.hom(sub, f.codomain())?.contains(&res) {
                    return Ok(Some(AxiomReport::fail(
                        Axiom::Restriction,
                        format!("{f} restricted to {sub}"),
                    )));
                }
            }
        }
        Ok(None)
    }
}
