//! Bialgebroid structures on `T` (right, over `R`) and `S` (left, over `R`),
//! their axiom verifier, the `S`–`T` pairing, the bialgebra case `R = k`, and
//! the weak-bialgebra lift over a separable centralizer.

mod build;
mod pairing;
mod specialize;
mod verify;
mod weak;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Algebra;
use crate::bimodule::BalancedTensor;
use crate::depth_two::Side;
use crate::linalg::{Field, SparseVec};

pub use build::{build_s_bialgebroid, build_t_bialgebroid, coproduct_agrees};
pub use pairing::{pairing, Pairing};
pub use specialize::{bialgebra_specialize, BialgebraReport};
pub use verify::verify_bialgebroid;
pub use weak::{weak_lift, WeakLift, WeakLiftOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// not evaluated because a prerequisite check failed
    Skipped,
}

/// Outcome of one exact identity check, with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl AxiomCheck {
    pub fn from_result(name: &str, r: Result<(), String>) -> AxiomCheck {
        match r {
            Ok(()) => AxiomCheck { name: name.into(), status: Status::Pass, witness: None },
            Err(w) => AxiomCheck { name: name.into(), status: Status::Fail, witness: Some(w) },
        }
    }

    pub fn skipped(name: &str, because: &str) -> AxiomCheck {
        AxiomCheck { name: name.into(), status: Status::Skipped, witness: Some(because.into()) }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn all_pass(checks: &[AxiomCheck]) -> bool {
    checks.iter().all(AxiomCheck::passed)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("quasibase has side {0:?}, expected {1:?}")]
    WrongSide(Side, Side),
    #[error("{0} does not land in the expected space")]
    OutOfSpace(String),
    #[error("centralizer has dimension {0}, not 1")]
    NontrivialCentralizer(usize),
}

/// A bialgebroid over `base` given by matrices on bases.
///
/// `coproduct[i]` is a representative in `ring ⊗_k ring` (basis pair `(i, j)`
/// at index `i*d + j`) of `Δ(x_i) ∈ ring ⊗_base ring`. Source, target and
/// counit are written in ring and base coordinates respectively.
#[derive(Clone, Debug)]
pub struct Bialgebroid {
    pub side: Side,
    pub base: Algebra,
    pub ring: Algebra,
    pub source: Vec<SparseVec>,
    pub target: Vec<SparseVec>,
    pub coproduct: Vec<SparseVec>,
    pub counit: Vec<SparseVec>,
}

fn combine(table: &[SparseVec], coords: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (k, c) in coords.iter() {
        out = out.axpy(c, &table[*k]);
    }
    out
}

impl Bialgebroid {
    pub fn dim(&self) -> usize {
        self.ring.dim()
    }

    pub fn r_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.ring.mul_sparse(x, y)
    }

    pub fn one(&self) -> SparseVec {
        SparseVec::from_dense(self.ring.unit())
    }

    pub fn r_one(&self) -> SparseVec {
        SparseVec::from_dense(self.base.unit())
    }

    pub fn s(&self, r: &SparseVec) -> SparseVec {
        combine(&self.source, r)
    }

    pub fn t(&self, r: &SparseVec) -> SparseVec {
        combine(&self.target, r)
    }

    pub fn eps(&self, x: &SparseVec) -> SparseVec {
        combine(&self.counit, x)
    }

    pub fn delta(&self, x: &SparseVec) -> SparseVec {
        combine(&self.coproduct, x)
    }

    /// The left `R`-action used for `⊗_R`: `x·t(r)` on a right bialgebroid, `s(r)x` on a left one.
    pub fn act_left(&self, r: &SparseVec, x: &SparseVec) -> SparseVec {
        match self.side {
            Side::Right => self.mul(x, &self.t(r)),
            Side::Left => self.mul(&self.s(r), x),
        }
    }

    /// The right `R`-action used for `⊗_R`: `x·s(r)` on a right bialgebroid, `t(r)x` on a left one.
    pub fn act_right(&self, x: &SparseVec, r: &SparseVec) -> SparseVec {
        match self.side {
            Side::Right => self.mul(x, &self.s(r)),
            Side::Left => self.mul(&self.t(r), x),
        }
    }

    /// `ring ⊗_R ring`.
    pub fn tensor_r(&self) -> BalancedTensor {
        let f = self.field();
        let d = self.dim();
        BalancedTensor::over(
            &self.base,
            d,
            d,
            |i, k| self.act_right(&SparseVec::unit(i, f), &SparseVec::unit(k, f)),
            |k, j| self.act_left(&SparseVec::unit(k, f), &SparseVec::unit(j, f)),
        )
    }

    pub fn name(&self, i: usize) -> &str {
        &self.ring.basis_names()[i]
    }

    pub fn r_name(&self, k: usize) -> &str {
        &self.base.basis_names()[k]
    }
}
