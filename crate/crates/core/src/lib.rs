//! Semiring pairs: finite and windowed carriers, admissibility checks,
//! congruences, polynomials, fractions, modules and growth.

pub mod congruence;
pub mod constructions;
pub mod error;
pub mod extensions;
pub mod format;
pub mod fixtures;
pub mod fractions;
pub mod growth;
pub mod hyper;
pub mod modules;
pub mod pairs;
pub mod poly;
pub mod report;
pub mod semiring;

pub use error::{Error, Result};
pub use report::{AxiomReport, Domain, Verdict};
