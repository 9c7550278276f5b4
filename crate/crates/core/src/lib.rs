//! Exact computations around the stable intersection Betti numbers of moduli
//! spaces of one-dimensional sheaves on surfaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`]: truncated bivariate power/Laurent series over exact rationals.
//! * [`genfunc`]: Göttsche's generating function, the stable Betti series and
//!   the stable perverse series `H(q, t)`, plus the identities linking them.
//! * [`perverse`]: the inductive reconstruction of the perverse table from
//!   Betti numbers of relative Hilbert schemes (an independent route to the
//!   coefficients of `H(q, t)`).
//! * [`germ`]: Milnor and Tjurina numbers, δ-invariants and branch counts of
//!   plane-curve germs.
//! * [`nslattice`]: divisor-class decompositions in a Néron–Severi lattice and
//!   the explicit codimension / stabilization bounds for Enriques and
//!   bielliptic surfaces.
//!
//! No floating point is used anywhere; every reported number is exact.

pub mod genfunc;
pub mod germ;
pub mod nslattice;
pub mod perverse;
pub mod series;

/// Arbitrary precision rational number used for every coefficient.
pub type Rational = num_rational::BigRational;

pub use genfunc::{PerverseTable, SurfaceTopology};
pub use germ::{BranchSet, CurveGerm};
pub use nslattice::{BiellipticParams, DivisorClass, LatticeModel, Surd};
pub use perverse::RelHilbBettiTower;
pub use series::{TruncatedBiSeries, ZwSeries};
