//! Group catalogs: named permutation groups given by 0-based image arrays.
//!
//! ```toml
//! format = 1
//!
//! [[groups]]
//! name = "S3"
//! degree = 3
//! generators = [[1, 0, 2], [1, 2, 0]]
//! ```

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use fusion_core::gcore::{FiniteGroup, Permutation};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::AppError;

pub const FORMAT: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

impl GroupSpec {
    pub fn new(name: &str, degree: usize, generators: &[&[u32]]) -> Self {
        GroupSpec {
            name: name.to_string(),
            degree,
            generators: generators.iter().map(|g| g.to_vec()).collect(),
        }
    }

    pub fn permutations(&self) -> Result<Vec<Permutation>, AppError> {
        self.generators
            .iter()
            .enumerate()
            .map(|(i, images)| {
                let invalid = |reason| AppError::InvalidGroup {
                    group: self.name.clone(),
                    generator: i,
                    reason,
                };
                if images.len() != self.degree {
                    return Err(invalid(fusion_core::gcore::GroupError::DegreeMismatch {
                        expected: self.degree,
                        found: images.len(),
                    }));
                }
                Permutation::new(images.clone()).map_err(invalid)
            })
            .collect()
    }

    pub fn build(&self, max_elements: usize) -> Result<Arc<FiniteGroup>, AppError> {
        FiniteGroup::new(&self.name, self.degree, self.permutations()?, max_elements).map_err(
            |reason| AppError::GroupClosure {
                group: self.name.clone(),
                reason,
            },
        )
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    format: u32,
    #[serde(default)]
    groups: Vec<GroupSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    groups: Vec<GroupSpec>,
}

impl Catalog {
    /// Validates generators and name uniqueness.
    pub fn new(groups: Vec<GroupSpec>) -> Result<Self, AppError> {
        let mut seen = BTreeSet::new();
        for g in &groups {
            if !seen.insert(g.name.as_str()) {
                return Err(AppError::DuplicateGroup(g.name.clone()));
            }
            g.permutations()?;
        }
        Ok(Catalog { groups })
    }

    pub fn builtin() -> Self {
        Catalog::new(builtin_groups()).expect("built-in catalog is valid")
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self, AppError> {
        let file: CatalogFile = toml::from_str(text).map_err(|e| AppError::Parse {
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
        Catalog::new(file.groups)
    }

    pub fn load(path: &Path) -> Result<Self, AppError> {
        let text = std::fs::read_to_string(path).map_err(|source| AppError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Catalog::parse(&text, &path.display().to_string())
    }

    /// The built-in groups followed by those of `other`; names must stay unique.
    pub fn extended(&self, other: &Catalog) -> Result<Self, AppError> {
        Catalog::new(self.groups.iter().chain(&other.groups).cloned().collect())
    }

    pub fn groups(&self) -> &[GroupSpec] {
        &self.groups
    }

    pub fn get(&self, name: &str) -> Option<&GroupSpec> {
        self.groups.iter().find(|g| g.name == name)
    }

    /// Canonical text form; `Catalog::parse(c.to_toml())` gives back `c`.
    pub fn to_toml(&self) -> String {
        toml::to_string(&CatalogFile {
            format: FORMAT,
            groups: self.groups.clone(),
        })
        .expect("catalog serializes")
    }

    /// SHA-256 of the canonical form, hex encoded.
    pub fn sha256(&self) -> String {
        hex::encode(Sha256::digest(self.to_toml().as_bytes()))
    }
}

fn builtin_groups() -> Vec<GroupSpec> {
    vec![
        GroupSpec::new("C2", 2, &[&[1, 0]]),
        GroupSpec::new("C3", 3, &[&[1, 2, 0]]),
        GroupSpec::new("C4", 4, &[&[1, 2, 3, 0]]),
        GroupSpec::new("C5", 5, &[&[1, 2, 3, 4, 0]]),
        GroupSpec::new("C2xC2", 4, &[&[1, 0, 3, 2], &[2, 3, 0, 1]]),
        GroupSpec::new("C3xC3", 6, &[&[1, 2, 0, 3, 4, 5], &[0, 1, 2, 4, 5, 3]]),
        GroupSpec::new("S3", 3, &[&[1, 0, 2], &[1, 2, 0]]),
        GroupSpec::new("S4", 4, &[&[1, 2, 3, 0], &[1, 0, 2, 3]]),
        GroupSpec::new("A4", 4, &[&[1, 2, 0, 3], &[1, 0, 3, 2]]),
        GroupSpec::new("D8", 4, &[&[1, 2, 3, 0], &[3, 2, 1, 0]]),
        // left regular representation
        GroupSpec::new("Q8", 8, &[&[2, 3, 1, 0, 6, 7, 5, 4], &[4, 5, 7, 6, 1, 0, 2, 3]]),
        // action on the eight nonzero vectors of GF(3)^2
        GroupSpec::new("SL(2,3)", 8, &[&[3, 7, 2, 6, 1, 5, 0, 4], &[5, 2, 0, 6, 3, 1, 7, 4]]),
        // x -> x + 1 and x -> 2x on GF(7)
        GroupSpec::new("C7:C3", 7, &[&[1, 2, 3, 4, 5, 6, 0], &[0, 2, 4, 6, 1, 3, 5]]),
    ]
}
