//! File formats: algebras, N-functions, campaign configuration, reports.
//!
//! An algebra file lists elements and a Cayley table of labels, row `i`
//! column `j` holding `elements[i] ∗ elements[j]`:
//!
//! ```json
//! {"elements": ["1", "a"], "table": [["1", "a"], ["1", "1"]]}
//! ```
//!
//! Elements may appear in any order; construction relabels so the unit is
//! index 0. An N-function file maps element labels to values written as
//! exact decimal or `p/q` strings:
//!
//! ```json
//! {"function": {"1": "-0.7", "a": "-1/5"}}
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, BEAlgebra};
use crate::nfun::{DomainError, NFunction};
use crate::rat::{ParseRatError, Rat};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot read or write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON in {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("bad rational for element {label:?}: {source}")]
    Rat {
        label: String,
        #[source]
        source: ParseRatError,
    },
}

/// Wire form of an algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

impl AlgebraFile {
    pub fn from_algebra(alg: &BEAlgebra) -> Self {
        let elements = alg.names().to_vec();
        let table = alg
            .rows()
            .into_iter()
            .map(|row| row.into_iter().map(|v| alg.label(v).to_string()).collect())
            .collect();
        AlgebraFile { elements, table }
    }

    pub fn into_algebra(&self) -> Result<BEAlgebra, AlgebraError> {
        BEAlgebra::from_labeled(&self.elements, &self.table)
    }
}

/// Wire form of an N-function. Values are strings so they stay exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NFunctionFile {
    pub function: BTreeMap<String, String>,
}

impl NFunctionFile {
    pub fn from_function(alg: &BEAlgebra, f: &NFunction) -> Self {
        let function = f
            .labeled(alg)
            .into_iter()
            .map(|(l, v)| (l, v.to_string()))
            .collect();
        NFunctionFile { function }
    }

    pub fn into_function(&self, alg: &BEAlgebra) -> Result<NFunction, FileError> {
        let mut map = BTreeMap::new();
        for (label, raw) in &self.function {
            let v = Rat::parse(raw).map_err(|source| FileError::Rat {
                label: label.clone(),
                source,
            })?;
            map.insert(label.clone(), v);
        }
        Ok(NFunction::from_labeled(alg, &map)?)
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, FileError> {
    let text = std::fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| FileError::Json {
        path: path.display().to_string(),
        source,
    })
}

/// Serializes as pretty-printed JSON with a trailing newline, the format
/// every report and output file uses.
pub fn render_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), FileError> {
    std::fs::write(path, render_json(value)).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_algebra(path: &Path) -> Result<BEAlgebra, FileError> {
    let file: AlgebraFile = read_json(path)?;
    Ok(file.into_algebra()?)
}

pub fn save_algebra(path: &Path, alg: &BEAlgebra) -> Result<(), FileError> {
    write_json(path, &AlgebraFile::from_algebra(alg))
}

pub fn load_n_function(path: &Path, alg: &BEAlgebra) -> Result<NFunction, FileError> {
    let file: NFunctionFile = read_json(path)?;
    file.into_function(alg)
}

pub fn save_n_function(path: &Path, alg: &BEAlgebra, f: &NFunction) -> Result<(), FileError> {
    write_json(path, &NFunctionFile::from_function(alg, f))
}

pub fn load_campaign_config(path: &Path) -> Result<crate::campaign::CampaignConfig, FileError> {
    read_json(path)
}
