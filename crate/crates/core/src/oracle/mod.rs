//! Ground truth by brute force: finite fields, finite groups of Lie type as
//! explicit matrix or permutation groups, and table-driven abstract groups.

mod abstract_group;
mod field;
mod matrix_group;

pub use abstract_group::{AbstractFiniteGroup, ProductGroup, TwistedClass};
pub use field::{FiniteField, Fq, MAX_FIELD_ORDER};
pub use matrix_group::{build_group, FiniteMatrixGroup, GroupName, Representation, DEFAULT_GROUP_BOUND};
