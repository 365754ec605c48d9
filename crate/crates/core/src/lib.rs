//! Families of general Dirichlet series: bounded evaluation, zeta-ratio
//! distances between spectra and number fields, convergence diagnostics,
//! Perron coefficient recovery and Laplace–Stieltjes norm estimates.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod arithmetic;
pub mod cli;
pub mod convergence;
pub mod error;
pub mod metric;
pub mod plot;
pub mod quadrature;
pub mod series;
pub mod special;
pub mod spectra;
pub mod stieltjes;
pub mod supsearch;

pub use error::{Error, Result};
pub use series::{BoundKind, EvalResult, GeneralDirichletSeries, QuadraticLaw, TailModel};
