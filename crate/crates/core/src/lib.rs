//! Enumeration of finite-field Langlands parameters and the matching count of
//! irreducible characters of finite reductive groups.

pub mod choice;
pub mod coxeter;
pub mod error;
pub mod lattice;
pub mod oracle;
pub mod points;
pub mod report;
pub mod rootdata;
pub mod spectral;
pub mod springer;
pub mod strata;

pub use choice::ChoicePolicy;
pub use error::{Error, Result};
