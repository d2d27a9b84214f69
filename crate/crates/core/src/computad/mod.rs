//! Combinatorial computads, pasting schemes, and labellings of them by
//! categories, functors and natural transformations.

pub mod examples;
mod label;
mod structure;

pub use label::{compose_2_diagram, compose_along, compose_path, whiskered_step, DiagramLabel};
pub use structure::{
    enumerate_sequentializations, sequentialize, validate_computad3, validate_pasting_scheme2, Cell2, Cell3,
    Computad3, Edge, Path, Scheme, Sequentialization, Step,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComputadError {
    #[error("unknown {kind} `{id}`")]
    UnknownId { kind: &'static str, id: String },
    #[error("duplicate {kind} `{id}`")]
    Duplicate { kind: &'static str, id: String },
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("boundary mismatch: {0}")]
    Boundary(String),
    #[error(transparent)]
    Lincat(#[from] crate::lincat::LincatError),
}
