//! JSON exchange format for CW complexes:
//!
//! ```json
//! {"cells": {"0": ["v"], "1": ["e"]}, "boundary": {"e": []}, "labels": {"rim": ["v", "e"]}}
//! ```
//!
//! Face lists are already reduced mod 2; a face listed twice is an error.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::complex::ChainComplexF2;
use super::ComplexError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CwFile {
    pub cells: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub boundary: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub labels: BTreeMap<String, Vec<String>>,
}

impl CwFile {
    pub fn from_complex(c: &ChainComplexF2) -> Self {
        let mut cells = BTreeMap::new();
        let mut boundary = BTreeMap::new();
        for dim in 0..c.num_dims() {
            cells.insert(dim.to_string(), c.cells(dim).to_vec());
            if dim > 0 {
                for id in c.cells(dim) {
                    let faces = c.face_ids(id).expect("cell exists");
                    boundary.insert(id.clone(), faces.into_iter().map(String::from).collect());
                }
            }
        }
        let labels = c
            .labels()
            .keys()
            .map(|name| {
                let ids = c.label_ids(name).expect("label exists");
                (name.clone(), ids.into_iter().map(String::from).collect())
            })
            .collect();
        CwFile {
            cells,
            boundary,
            labels,
        }
    }

    pub fn to_complex(&self) -> Result<ChainComplexF2, ComplexError> {
        let mut dims: BTreeMap<usize, &Vec<String>> = BTreeMap::new();
        for (key, ids) in &self.cells {
            let dim: usize = key.parse().map_err(|_| ComplexError::Parse {
                cell: None,
                message: format!("cell dimension {key:?} is not a nonnegative integer"),
            })?;
            dims.insert(dim, ids);
        }
        let mut dim_of: BTreeMap<&str, usize> = BTreeMap::new();
        for (&dim, ids) in &dims {
            for id in ids.iter() {
                if dim_of.insert(id, dim).is_some() {
                    return Err(ComplexError::DuplicateCell(id.clone()));
                }
            }
        }
        for id in self.boundary.keys() {
            match dim_of.get(id.as_str()) {
                None => {
                    return Err(ComplexError::Parse {
                        cell: Some(id.clone()),
                        message: "boundary given for a cell that is not listed under \"cells\"".into(),
                    })
                }
                Some(0) if !self.boundary[id].is_empty() => {
                    return Err(ComplexError::VertexWithBoundary(id.clone()))
                }
                _ => {}
            }
        }
        let mut builder = ChainComplexF2::builder();
        for (&dim, ids) in &dims {
            for id in ids.iter() {
                let faces = self.boundary.get(id).cloned().unwrap_or_default();
                builder.add_cell(id.clone(), dim, faces);
            }
        }
        for (name, ids) in &self.labels {
            builder.label(name.clone(), ids.clone());
        }
        builder.build()
    }
}

pub fn to_json(c: &ChainComplexF2) -> String {
    serde_json::to_string_pretty(&CwFile::from_complex(c)).expect("CW file serializes")
}

pub fn from_json(text: &str) -> Result<ChainComplexF2, ComplexError> {
    let file: CwFile = serde_json::from_str(text).map_err(|e| ComplexError::Parse {
        cell: None,
        message: e.to_string(),
    })?;
    file.to_complex()
}
