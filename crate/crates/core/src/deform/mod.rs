//! Truncated one-parameter deformations over `k[ε]/ε^{N+1}` of categories,
//! functors, natural transformations and labelled diagrams.
//!
//! A deformation is a finite table of Hochschild cochains, one per order.
//! Deformed operations are evaluated on coefficient series of arrows; the
//! defining equations are checked by direct evaluation on basis tuples and
//! the obstruction theory runs through the assembled deformation complexes.

mod category;
mod diagram;
mod equiv;
mod functor;
mod induce;
mod nat;
mod obstruct;
mod realize;
mod units;

pub use category::{CategoryDeformation, CategoryResidual};
pub use diagram::{DiagramDeformation, DiagramResidual};
pub use equiv::{
    check_category_equivalence, check_equivalence_first_order, check_functor_equivalence, check_nat_equivalence,
    CategoryEquivalence, EquivalenceWitness, FirstOrderEquivalence, FunctorEquivalence, NatEquivalence,
};
pub use functor::{FunctorDeformation, FunctorResidual};
pub use induce::{compose_functor_defs, identity_nat_def, induce_scheme, vertical_def, whisker_left_def, whisker_right_def};
pub use nat::NatDeformation;
pub use obstruct::{
    classify_first_order, extend_order, obstruction, obstruction_diagram, Classification, Deformable, Extension,
    Obstruction, ObstructionClass,
};
pub use realize::{realize, RealizedCategory};
pub use units::{normalize_category_units, normalize_functor_units, normalize_nat_units};

use std::sync::Arc;

use thiserror::Error;

use crate::defcomplex::DefcomplexError;
use crate::exactlinalg::{is_zero_vec, Field, LinalgError, Scalar};
use crate::hochschild::{Cochain, CochainSpace, HochschildError};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeformError {
    #[error("order: {0}")]
    Order(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("deformation is invalid at order {order}:\n{report}")]
    Invalid { order: usize, report: Report },
    #[error("identities are deformed; normalize units first")]
    Units,
    #[error("obstruction is not closed at order {0}")]
    NotClosed(usize),
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Defcomplex(#[from] DefcomplexError),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
    #[error(transparent)]
    Lincat(#[from] crate::lincat::LincatError),
    #[error(transparent)]
    Computad(#[from] crate::computad::ComputadError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Coefficients of a truncated power series in `ε`: entry `i` multiplies
/// `ε^i`. All entries have the dimension of one hom space.
pub type Series = Vec<Vec<Scalar>>;

/// `v` as a series of the given order.
pub fn constant(field: Field, v: Vec<Scalar>, order: usize) -> Series {
    let zero = vec![field.zero(); v.len()];
    let mut s = Vec::with_capacity(order + 1);
    s.push(v);
    s.resize(order + 1, zero);
    s
}

pub(crate) fn basis_vec(field: Field, dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    v[i] = field.one();
    v
}

pub(crate) fn sub_series(a: &Series, b: &Series) -> Series {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
}

/// Tabulates a series-valued formula on every basis chain of `space` and
/// returns the coefficients of orders `1..=order` as cochains. The order-0
/// coefficient is discarded.
pub(crate) fn tabulate_orders(
    space: &Arc<CochainSpace>,
    order: usize,
    mut value: impl FnMut(&[usize], &[usize]) -> Series,
) -> Vec<Cochain> {
    let mut data: Vec<Vec<Scalar>> = vec![Vec::with_capacity(space.dim()); order];
    space.tabulate::<Scalar>(|objs, idx| {
        let s = value(objs, idx);
        debug_assert_eq!(s.len(), order + 1);
        for (d, c) in data.iter_mut().zip(&s[1..]) {
            d.extend(c.iter().cloned());
        }
        s.into_iter().next().expect("order-0 coefficient")
    });
    data.into_iter().map(|d| Cochain::from_data(space.clone(), d).expect("tabulated dimensions")).collect()
}

/// First basis chain where `c` is nonzero, spelled with basis names.
pub(crate) fn first_violation(c: &Cochain) -> Option<String> {
    let (objs, idx, _, _) = c.entries().into_iter().next()?;
    let a = c.space().src();
    let args: Vec<&str> = objs.windows(2).zip(&idx).map(|(w, &i)| a.basis(w[0], w[1])[i].as_str()).collect();
    Some(if args.is_empty() {
        format!("object {}", a.object_name(objs[0]))
    } else {
        format!("({})", args.join(", "))
    })
}

/// Pushes a finding for every order at which `c` is nonzero.
pub(crate) fn note_residual(rep: &mut Report, what: &str, order: usize, c: &Cochain) {
    if let Some(at) = first_violation(c) {
        rep.push(format!("order {order}: {what} fails on {at}"));
    }
}

pub(crate) fn series_is_zero(s: &Series) -> bool {
    s.iter().all(|v| is_zero_vec(v))
}

/// Recasts a list of per-order cochains, checking their count.
pub(crate) fn recast_terms(
    what: &str,
    terms: Vec<Cochain>,
    order: usize,
    space: &Arc<CochainSpace>,
) -> Result<Vec<Cochain>, DeformError> {
    if terms.len() != order {
        return Err(DeformError::Order(format!("{what}: {} terms for order {order}", terms.len())));
    }
    terms
        .into_iter()
        .map(|t| t.recast(space).map_err(|e| DeformError::Mismatch(format!("{what}: {e}"))))
        .collect()
}

pub(crate) fn zero_terms(space: &Arc<CochainSpace>, order: usize) -> Vec<Cochain> {
    vec![Cochain::zero(space.clone()); order]
}
