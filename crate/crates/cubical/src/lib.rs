//! Exact engine for cubic higher-order difference calculus: polynomial maps and
//! their difference factorizers, n-fold groupoids presented in affine
//! coordinates, and randomized exact law checking.

pub mod error;
pub mod gen;
pub mod laws;
pub mod mutate;
pub mod check;
pub mod constructions;
pub mod hypercube;
pub mod nfold;
pub mod parse;
pub mod poly;
pub mod rules;
pub mod scalars;
pub mod slope;
pub mod table;

pub use error::{Error, Result};
