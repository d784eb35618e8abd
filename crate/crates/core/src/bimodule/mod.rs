//! The tensor square `A⊗_B A`, the rings `T = (A⊗_B A)^B` and `S = End_B A_B`,
//! and the balanced and Frobenius properties of an extension.

mod balanced;
mod endo;
mod frobenius;
mod over_r;
mod rings;
mod tensor_square;

pub use balanced::{balanced, commutant, BalancedResult};
pub use endo::{apply_endo, compose_endo, endo_from_matrix, endo_to_matrix};
pub use frobenius::{dual_bases, frobenius, hom_bb_to_b, verify_frobenius, FrobeniusOutcome, FrobeniusSystem, NotFoundReason, SearchMethod};
pub use over_r::BalancedTensor;
pub use rings::{compute_s, compute_t, SRing, TMultiplication, TRing};
pub use tensor_square::TensorSquare;
