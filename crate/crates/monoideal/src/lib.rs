//! Zero-dimensional monomial ideals in two variables, in exact arithmetic:
//! integral and m-full closures, normality criteria, and the defining
//! equations of Rees algebras.
//!
//! The `examples/` directory of this crate has one runnable example per
//! capability; the `monoideal` binary exposes the same operations as
//! subcommands with JSON reports.

pub mod error;
pub mod fm;
pub mod fullness;
pub mod groebner;
pub mod ideal;
pub mod normality;
pub mod rees;
pub mod report;
pub mod parse;
pub mod poly;
pub mod polyhedra;
#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use ideal::{Exp, ExponentVector, MonomialIdeal, StaircaseIdeal2};
