//! Finite k-linear categories, functors and natural transformations.

mod category;
mod functor;
mod nat;

pub use category::{examples, same_category, Arrow, CategoryBuilder, LinCategory};
pub use functor::{compose_functors, same_functor, LinFunctor};
pub use nat::{vertical_compose_nats, whisker, NatTransf, Side};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LincatError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown basis arrow {0}")]
    UnknownArrow(String),
    #[error("duplicate {0}")]
    Duplicate(String),
    #[error("object `{0}` has no identity basis arrow")]
    MissingIdentity(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("scalars from different fields")]
    FieldMismatch,
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("boundary mismatch: {0}")]
    Boundary(String),
    #[error("missing component: {0}")]
    MissingComponent(String),
}
