//! Exact deformation theory for finite k-linear categories, functors,
//! natural transformations and pasting diagrams of them.

pub mod cli;
pub mod computad;
pub mod defcomplex;
pub mod deform;
pub mod exactlinalg;
pub mod hochschild;
pub mod lincat;
pub mod report;

pub use report::Report;
