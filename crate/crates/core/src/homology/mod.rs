//! Finite CW complexes over GF(2) and their Betti numbers.

mod bitmatrix;
mod complex;
mod io;
mod ops;

use thiserror::Error;

pub use bitmatrix::BitMatrixF2;
pub use complex::{BettiVector, CellRef, ChainComplexF2, ComplexBuilder};
pub use io::{from_json, to_json, CwFile};
pub use ops::{disjoint_union, glue, product, product_id, split_cell, CellMatching};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("cell {0} is defined twice")]
    DuplicateCell(String),
    #[error("cell {0} does not exist")]
    UnknownCell(String),
    #[error("cell {cell}: face {face} does not exist")]
    UnknownFace { cell: String, face: String },
    #[error("cell {cell}: face {face} has dimension {found}, expected {expected}")]
    FaceDimension {
        cell: String,
        face: String,
        expected: usize,
        found: usize,
    },
    #[error("cell {cell}: face {face} is listed more than once (faces must be reduced mod 2)")]
    RepeatedFace { cell: String, face: String },
    #[error("cell {cell}: an edge needs zero or two endpoints, found {count}")]
    EdgeEndpoints { cell: String, count: usize },
    #[error("cell {0}: a vertex cannot have faces")]
    VertexWithBoundary(String),
    #[error("cell {cell}: the boundary of its boundary is nonzero mod 2")]
    BoundaryNotCycle { cell: String },
    #[error("label {0} does not exist")]
    UnknownLabel(String),
    #[error("label {0} is defined twice")]
    DuplicateLabel(String),
    #[error("label {label}: cell {cell} does not exist")]
    LabelUnknownCell { label: String, cell: String },
    #[error("label {label} is not a subcomplex: {cell} has face {face} outside it")]
    LabelNotClosed {
        label: String,
        cell: String,
        face: String,
    },
    #[error("interface mismatch: {0}")]
    InterfaceMismatch(String),
    #[error("glued complexes both contain a cell named {0}")]
    CellCollision(String),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("{}{message}", cell.as_ref().map(|c| format!("cell {c}: ")).unwrap_or_default())]
    Parse {
        cell: Option<String>,
        message: String,
    },
}
