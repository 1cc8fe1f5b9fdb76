//! Scenario files and their resolution into fusion systems.
//!
//! ```toml
//! format = 1
//!
//! [[scenarios]]
//! id = "s3-p3"
//! group = "S3"
//! p = 3
//! ambient_sub_gens = [[1, 2, 0]]
//! max_degree = 4
//! checks = ["mislin", "dims"]
//! ```
//!
//! `subgroup_gens` generates the p-group P (default: a Sylow p-subgroup of
//! the group); `ambient_sub_gens` generates H with P <= H <= G (default G).
//! Checks compare the subsystem F_P(H) against F_P(G).

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use fusion_core::cohom::Cohomology;
use fusion_core::fusion::FusionSystem;
use fusion_core::gcore::{is_prime, p_part, sylow, FiniteGroup, Permutation, Subgroup};
use fusion_core::Limits;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::catalog::{Catalog, FORMAT};
use crate::checks::Registry;
use crate::error::AppError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub id: String,
    pub group: String,
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup_gens: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient_sub_gens: Option<Vec<Vec<u32>>>,
    pub max_degree: usize,
    pub checks: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    format: u32,
    #[serde(default)]
    scenarios: Vec<Scenario>,
}

pub fn parse_scenarios(text: &str, origin: &str) -> Result<Vec<Scenario>, AppError> {
    let file: ScenarioFile = toml::from_str(text).map_err(|e| AppError::Parse {
        origin: origin.to_string(),
        message: e.to_string(),
    })?;
    if file.format != FORMAT {
        return Err(AppError::Format {
            origin: origin.to_string(),
            found: file.format,
            expected: FORMAT,
        });
    }
    Ok(file.scenarios)
}

pub fn load_scenarios(path: &Path) -> Result<Vec<Scenario>, AppError> {
    let text = std::fs::read_to_string(path).map_err(|source| AppError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_scenarios(&text, &path.display().to_string())
}

pub fn scenarios_to_toml(scenarios: &[Scenario]) -> String {
    toml::to_string(&ScenarioFile {
        format: FORMAT,
        scenarios: scenarios.to_vec(),
    })
    .expect("scenarios serialize")
}

pub fn scenarios_sha256(scenarios: &[Scenario]) -> String {
    hex::encode(Sha256::digest(scenarios_to_toml(scenarios).as_bytes()))
}

/// The scenario suite shipped with the crate.
pub fn builtin_scenarios() -> Vec<Scenario> {
    parse_scenarios(include_str!("../scenarios/builtin.toml"), "builtin.toml")
        .expect("built-in scenarios parse")
}

/// Run-wide knobs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[derive(Default)]
pub struct Settings {
    pub limits: Limits,
    /// Upper bound applied to every scenario's `max_degree`.
    pub max_degree: Option<usize>,
    /// Record wall-clock times; off by default so reports are reproducible.
    pub timings: bool,
}


/// Everything a check needs, built once per scenario.
pub struct ScenarioContext {
    pub scenario: Scenario,
    pub group: Arc<FiniteGroup>,
    pub p: u32,
    /// The p-group P.
    pub s: Subgroup,
    /// H, the ambient subgroup of the subsystem.
    pub h: Subgroup,
    /// F_P(G).
    pub system: FusionSystem,
    /// F_P(H).
    pub subsystem: FusionSystem,
    pub cohomology: Cohomology,
    pub max_degree: usize,
    pub limits: Limits,
}

impl ScenarioContext {
    /// Whether H is all of G.
    pub fn h_is_whole(&self) -> bool {
        self.h.order() == self.group.order()
    }

    /// Whether P is a Sylow p-subgroup of `a`.
    pub fn is_sylow_in(&self, a: &Subgroup) -> bool {
        self.s.order() == p_part(a.order(), self.p)
    }
}

fn generated(
    id: &str,
    group: &Arc<FiniteGroup>,
    gens: &[Vec<u32>],
    what: &str,
) -> Result<Subgroup, AppError> {
    let perms = gens
        .iter()
        .map(|g| Permutation::new(g.clone()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| AppError::scenario(id, format!("{what}: {e}")))?;
    Subgroup::from_permutations(group, &perms).map_err(|e| AppError::scenario(id, format!("{what}: {e}")))
}

/// Checks the static parts of a scenario list: ids, groups, checks.
pub fn validate(scenarios: &[Scenario], catalog: &Catalog, registry: &Registry) -> Result<(), AppError> {
    let mut ids = BTreeSet::new();
    for s in scenarios {
        if !ids.insert(s.id.as_str()) {
            return Err(AppError::DuplicateScenario(s.id.clone()));
        }
        if catalog.get(&s.group).is_none() {
            return Err(AppError::UnknownGroup {
                scenario: s.id.clone(),
                group: s.group.clone(),
            });
        }
        if let Some(bad) = s.checks.iter().find(|c| registry.get(c).is_none()) {
            return Err(AppError::UnknownCheck {
                scenario: s.id.clone(),
                check: bad.clone(),
            });
        }
        if !is_prime(s.p) {
            return Err(AppError::scenario(&s.id, format!("{} is not prime", s.p)));
        }
    }
    Ok(())
}

/// Builds G, P, H and both fusion systems, enforcing P <= H <= G and that
/// P is a p-group.
pub fn prepare(scenario: &Scenario, catalog: &Catalog, settings: &Settings) -> Result<ScenarioContext, AppError> {
    let id = scenario.id.as_str();
    let spec = catalog.get(&scenario.group).ok_or_else(|| AppError::UnknownGroup {
        scenario: id.to_string(),
        group: scenario.group.clone(),
    })?;
    let p = scenario.p;
    if !is_prime(p) {
        return Err(AppError::scenario(id, format!("{p} is not prime")));
    }
    let limits = settings.limits;
    let group = spec.build(limits.max_elements)?;
    let whole = group.whole();
    let s = match &scenario.subgroup_gens {
        Some(gens) => generated(id, &group, gens, "subgroup_gens")?,
        None => sylow(&whole, p).map_err(|e| AppError::scenario(id, e))?,
    };
    if !s.is_p_group(p) {
        return Err(AppError::scenario(id, format!("{s} is not a {p}-group")));
    }
    let h = match &scenario.ambient_sub_gens {
        Some(gens) => generated(id, &group, gens, "ambient_sub_gens")?,
        None => whole.clone(),
    };
    if !s.is_subgroup_of(&h) {
        return Err(AppError::scenario(id, format!("{s} is not contained in H = {h}")));
    }
    let system = FusionSystem::realized(&whole, &s, p, limits).map_err(|e| AppError::scenario(id, e))?;
    let subsystem = FusionSystem::realized(&h, &s, p, limits).map_err(|e| AppError::scenario(id, e))?;
    let cohomology = Cohomology::new(p, limits).map_err(|e| AppError::scenario(id, e))?;
    let max_degree = settings
        .max_degree
        .map_or(scenario.max_degree, |cap| scenario.max_degree.min(cap));
    Ok(ScenarioContext {
        scenario: scenario.clone(),
        group,
        p,
        s,
        h,
        system,
        subsystem,
        cohomology,
        max_degree,
        limits,
    })
}
