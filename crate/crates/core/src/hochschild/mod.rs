//! Hochschild cochains of parallel functor pairs and the operations on them:
//! coboundary, cup, braces, whiskering, and the normalizing retraction.

mod cochain;
mod ops;
mod retraction;
mod space;

pub use cochain::{eval, eval_basis, Arg, Cochain, Operand, Unknown, Values};
pub use ops::{
    brace, brace_v, coboundary, coboundary_v, cup, cup_sv, cup_vs, delta_matrix, delta_matrix_capped,
    forms_to_matrix, nat_pre_post, nat_pre_post_v, op_matrix, pullback, pullback_v, pushforward, pushforward_v,
    sigma_dagger, NatSide, SIGMA_DAGGER_SIGNS,
};
pub use retraction::{h_bar, h_k, homotopy, normalize_retraction, normalized_part, s_k, Retraction};
pub use space::{compose_cached, identity_functor, Block, CochainSpace};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HochschildError {
    #[error("context mismatch: {0}")]
    Context(String),
    #[error("degree: {0}")]
    Degree(String),
    #[error("dimension: {0}")]
    Dimension(String),
    #[error(transparent)]
    Lincat(#[from] crate::lincat::LincatError),
}
