//! JSON instance files.
//!
//! ```json
//! {"domain_size": 3,
//!  "distributions": [[[0, 1, 0.5], [2, 0, 0.5]]],
//!  "class": {"family": "explicit", "hypotheses": [[0, 1, 1], [1, 0, 0]]}}
//! ```
//!
//! Structured families (`thresholds`, `intervals`, `singletons`) omit
//! `hypotheses`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{ClassFamily, FiniteDistribution, HypothesisClass, MdlInstance};
use crate::error::{MdlError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub domain_size: usize,
    pub distributions: Vec<Vec<(usize, u8, f64)>>,
    pub class: ClassFile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassFile {
    pub family: ClassFamily,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypotheses: Option<Vec<Vec<u8>>>,
}

impl InstanceFile {
    pub fn from_instance(instance: &MdlInstance) -> Self {
        let distributions = instance
            .distributions()
            .iter()
            .map(|d| {
                d.atoms()
                    .iter()
                    .map(|a| (a.example.point.0, a.example.label as u8, a.prob))
                    .collect()
            })
            .collect();
        let class = instance.class();
        let hypotheses = match class.family() {
            ClassFamily::Explicit => Some(
                class
                    .hypotheses()
                    .iter()
                    .map(|h| h.bits().into_iter().map(u8::from).collect())
                    .collect(),
            ),
            _ => None,
        };
        Self {
            domain_size: instance.domain_size(),
            distributions,
            class: ClassFile {
                family: class.family(),
                hypotheses,
            },
        }
    }

    pub fn into_instance(self) -> Result<MdlInstance> {
        let n = self.domain_size;
        let distributions = self
            .distributions
            .iter()
            .map(|cells| {
                let cells = cells
                    .iter()
                    .map(|&(x, y, p)| Ok((x, parse_bit(y)?, p)))
                    .collect::<Result<Vec<_>>>()?;
                FiniteDistribution::new(n, &cells)
            })
            .collect::<Result<Vec<_>>>()?;
        let class = match (self.class.family, self.class.hypotheses) {
            (ClassFamily::Explicit, Some(rows)) => {
                let masks = rows
                    .iter()
                    .map(|row| {
                        if row.len() != n {
                            return Err(MdlError::InvalidClass(format!(
                                "hypothesis has {} labels, domain size is {n}",
                                row.len()
                            )));
                        }
                        row.iter().enumerate().try_fold(0u64, |acc, (i, &b)| {
                            Ok(acc | (u64::from(parse_bit(b)?) << i))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                HypothesisClass::explicit(n, masks)?
            }
            (ClassFamily::Explicit, None) => {
                return Err(MdlError::InvalidClass(
                    "explicit family requires `hypotheses`".into(),
                ))
            }
            (family, _) => HypothesisClass::structured(family, n)?,
        };
        MdlInstance::new(n, distributions, class)
    }
}

fn parse_bit(b: u8) -> Result<bool> {
    match b {
        0 => Ok(false),
        1 => Ok(true),
        _ => Err(MdlError::InvalidInstance(format!(
            "label {b} is not 0 or 1"
        ))),
    }
}

impl MdlInstance {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&InstanceFile::from_instance(self)).expect("instance serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)
            .map_err(|e| MdlError::InvalidInstance(format!("malformed instance JSON: {e}")))?;
        file.into_instance()
    }

    pub fn read_json(path: &Path) -> std::io::Result<Result<Self>> {
        Ok(Self::from_json(&std::fs::read_to_string(path)?))
    }
}
