//! Numerical lattice computations on Enriques and bielliptic surfaces:
//! decompositions of a class into two positive pieces, dimensions of linear
//! systems, codimension bounds and stabilization thresholds.
//!
//! All quantities are exact; square roots are kept as [`Surd`]s.

mod bounds;
mod lattice;
mod surd;

use thiserror::Error;

pub use bounds::{
    arithmetic_genus, bielliptic_chi, bielliptic_codim_bound, enriques_codim_bound, enriques_d0,
    enriques_dim_ls, enriques_nef_codim_bound, n_lower_bound, BiellipticParams, CodimBound,
    EnriquesDivisor,
};
pub use lattice::{decompose, decompose_brute_force, DivisorClass, LatticeConfig, LatticeModel};
pub use surd::Surd;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("cannot read lattice config: {0}")]
    Config(String),
    #[error("invalid lattice model: {0}")]
    Invalid(String),
    /// The orthogonal basis does not have one positive and `rank - 1`
    /// negative squares.
    #[error("orthogonal basis violates the Hodge index theorem: squares {squares:?}")]
    HodgeIndex { squares: Vec<String> },
    #[error("class has {actual} coordinates, lattice has rank {expected}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("H . beta = {h_dot_beta} <= 0, beta cannot be effective")]
    NotEffectiveCandidate { h_dot_beta: i64 },
    #[error("invalid self-intersection {0}")]
    InvalidSelfIntersection(i64),
    #[error("invalid bielliptic parameters: {0}")]
    InvalidParams(String),
}
