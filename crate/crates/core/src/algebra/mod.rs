//! Algebras by structure constants, permutation groups and ring extensions.

mod extension;
mod group;
mod structure;

use thiserror::Error;

pub use extension::{subgroup_extension, RingExtension};
pub use group::{named, PermGroup, Permutation, DEFAULT_ORDER_CAP, DEFAULT_SCAN_CAP};
pub use structure::{ground_field, matrix_algebra, quadratic, truncated_polynomial, Algebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("unit law fails on basis element {index} ({name})")]
    UnitLaw { index: usize, name: String },
    #[error("associativity fails on basis triple {triple:?} ({}, {}, {})", names.0, names.1, names.2)]
    NotAssociative { triple: (usize, usize, usize), names: (String, String, String) },
    #[error("group error: {0}")]
    Group(String),
    #[error("group order exceeds the cap of {cap} elements")]
    OrderCapExceeded { cap: usize },
    #[error("subgroup is not contained in the group: {0}")]
    NotSubgroup(String),
    #[error("subalgebra does not contain the unit of A")]
    SubalgebraMissingUnit,
    #[error("subalgebra is not closed: product of spanning vectors {0} and {1} leaves the span")]
    SubalgebraNotClosed(usize, usize),
}
