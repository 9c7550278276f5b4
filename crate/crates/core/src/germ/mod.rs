//! Invariants of plane-curve germs at the origin: Milnor number `mu`,
//! Tjurina number `tau`, delta-invariant and branch count `r`.
//!
//! Everything is exact linear algebra over the rationals on truncated
//! monomial bases; no standard bases and no Puiseux expansions are computed.
//! Branch parametrizations are inputs.

mod corpus;
mod linalg;
mod poly;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use corpus::{parse_corpus, shipped_corpus, BranchSpec, CorpusEntry, CorpusError, Expected};
pub use poly::{ParseError, Poly, UniPoly};

use crate::Rational;
use linalg::Echelon;

/// Largest power of the maximal ideal tried before giving up on finiteness.
pub const LOCAL_DIMENSION_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("polynomial does not vanish at the origin")]
    NotAtOrigin,
    #[error("local algebra did not stabilize up to m^{cap}; the singularity is not isolated")]
    NonIsolatedSingularity { cap: u32 },
    #[error("branch {index} is invalid: {reason}")]
    InvalidBranch { index: usize, reason: String },
    #[error("branch truncation {declared} is too small, need at least {needed}")]
    TruncationTooSmall { declared: u32, needed: u32 },
    #[error("branch set is empty")]
    EmptyBranchSet,
    #[error("branches {first} and {second} are identical")]
    DuplicateBranch { first: usize, second: usize },
}

/// A polynomial `f(x, y)` with `f(0, 0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveGerm {
    poly: Poly,
}

impl CurveGerm {
    pub fn new(poly: Poly) -> Result<Self, GermError> {
        if !poly.coeff(0, 0).is_zero() {
            return Err(GermError::NotAtOrigin);
        }
        Ok(CurveGerm { poly })
    }

    pub fn parse(s: &str) -> Result<Self, GermError> {
        CurveGerm::new(Poly::parse(s)?)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }
}

/// Parametrizations `(x_i(t), y_i(t))` of the branches of a germ, each exact
/// up to `t^declared_truncation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchSet {
    branches: Vec<(UniPoly, UniPoly)>,
    declared_truncation: u32,
}

impl BranchSet {
    /// Checks that every branch passes through the origin, is not constant
    /// and occurs once.
    pub fn new(branches: Vec<(UniPoly, UniPoly)>, declared_truncation: u32) -> Result<Self, GermError> {
        if branches.is_empty() {
            return Err(GermError::EmptyBranchSet);
        }
        if declared_truncation == 0 {
            return Err(GermError::TruncationTooSmall {
                declared: 0,
                needed: 1,
            });
        }
        let precision = declared_truncation as usize + 1;
        let branches: Vec<_> = branches
            .into_iter()
            .map(|(x, y)| (x.truncate(precision), y.truncate(precision)))
            .collect();
        for (index, (x, y)) in branches.iter().enumerate() {
            let invalid = |reason: &str| GermError::InvalidBranch {
                index,
                reason: reason.to_string(),
            };
            if !x.coeff(0).is_zero() || !y.coeff(0).is_zero() {
                return Err(invalid("does not pass through the origin"));
            }
            if x.is_zero() && y.is_zero() {
                return Err(invalid("both coordinates vanish"));
            }
            if let Some(first) = branches[..index].iter().position(|b| b == &branches[index]) {
                return Err(GermError::DuplicateBranch { first, second: index });
            }
        }
        Ok(BranchSet {
            branches,
            declared_truncation,
        })
    }

    /// Parses `(x(t), y(t))` string pairs.
    pub fn parse<S: AsRef<str>>(pairs: &[(S, S)], declared_truncation: u32) -> Result<Self, GermError> {
        let branches = pairs
            .iter()
            .map(|(x, y)| Ok((UniPoly::parse(x.as_ref())?, UniPoly::parse(y.as_ref())?)))
            .collect::<Result<Vec<_>, ParseError>>()?;
        BranchSet::new(branches, declared_truncation)
    }

    pub fn branches(&self) -> &[(UniPoly, UniPoly)] {
        &self.branches
    }

    pub fn declared_truncation(&self) -> u32 {
        self.declared_truncation
    }

    /// Checks `f(x_i(t), y_i(t)) = 0 mod t^(T0 + 1)` for every branch.
    pub fn validate_for(&self, g: &CurveGerm) -> Result<(), GermError> {
        let precision = self.declared_truncation as usize + 1;
        for (index, (x, y)) in self.branches.iter().enumerate() {
            let value = g.poly.eval_branch(x, y, precision);
            if let Some(k) = value.valuation() {
                return Err(GermError::InvalidBranch {
                    index,
                    reason: format!("f(x(t), y(t)) has a nonzero t^{k} term"),
                });
            }
        }
        Ok(())
    }
}

/// `dim C[x,y] / (I + m^n)` for the ideal `I` generated by `gens`.
fn truncated_quotient_dimension(gens: &[Poly], n: u32) -> usize {
    let column = |a: u32, b: u32| -> usize {
        // monomials ordered by degree, then by y-exponent
        let d = (a + b) as usize;
        d * (d + 1) / 2 + b as usize
    };
    let total = (n as usize) * (n as usize + 1) / 2;
    let mut echelon = Echelon::new();
    for g in gens {
        let Some(ord) = g.order() else { continue };
        for d in 0..n.saturating_sub(ord) {
            for b in 0..=d {
                let a = d - b;
                let row: BTreeMap<usize, Rational> = g
                    .terms()
                    .filter(|((ga, gb), _)| ga + gb + d < n)
                    .map(|((ga, gb), c)| (column(ga + a, gb + b), c.clone()))
                    .collect();
                echelon.insert(row);
                if echelon.rank() == total {
                    return 0;
                }
            }
        }
    }
    total - echelon.rank()
}

/// `dim C[[x,y]] / (gens)`, which must be finite.
///
/// `d_N = dim C[x,y]/(I + m^N)` is computed for `N = 2, 4, 8, ...`. Once
/// `d_N = d_{N+1}`, Nakayama's lemma gives `m^N ⊆ I` in the completion, so
/// `d_N` is the local dimension.
pub fn local_dimension(gens: &[Poly]) -> Result<u32, GermError> {
    let mut n = 2;
    while n <= LOCAL_DIMENSION_CAP {
        let d = truncated_quotient_dimension(gens, n);
        if d == truncated_quotient_dimension(gens, n + 1) {
            return Ok(d as u32);
        }
        n *= 2;
    }
    Err(GermError::NonIsolatedSingularity {
        cap: LOCAL_DIMENSION_CAP,
    })
}

/// `mu = dim C[[x,y]] / (f_x, f_y)`; zero at a smooth point.
pub fn milnor(g: &CurveGerm) -> Result<u32, GermError> {
    local_dimension(&[g.poly.dx(), g.poly.dy()])
}

/// `tau = dim C[[x,y]] / (f, f_x, f_y)`.
pub fn tjurina(g: &CurveGerm) -> Result<u32, GermError> {
    local_dimension(&[g.poly.clone(), g.poly.dx(), g.poly.dy()])
}

/// `r * T - rank` of the image of the monomials of degree `< T` in
/// `prod_i C[t]/t^T`.
fn delta_at(branches: &BranchSet, precision: u32) -> u32 {
    let t = precision as usize;
    let powers: Vec<(Vec<UniPoly>, Vec<UniPoly>)> = branches
        .branches
        .iter()
        .map(|(x, y)| (x.powers(precision, t), y.powers(precision, t)))
        .collect();
    let mut echelon = Echelon::new();
    for d in 0..precision {
        for b in 0..=d {
            let a = d - b;
            let mut row = BTreeMap::new();
            for (i, (xp, yp)) in powers.iter().enumerate() {
                let image = xp[a as usize].mul_trunc(&yp[b as usize], t);
                for (k, c) in image.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        row.insert(i * t + k, c.clone());
                    }
                }
            }
            echelon.insert(row);
        }
    }
    (branches.branches.len() * t - echelon.rank()) as u32
}

/// `delta = dim (normalization / local ring)`.
///
/// The conductor of a reduced plane curve germ is generated in each branch
/// by a power of `t` at most `2 delta <= 2 mu`, so truncating at `t^(2 mu + 1)`
/// already sees the whole cokernel. The value is also computed at
/// `t^(2 mu + 2)`; a difference means the branch data is not a set of
/// distinct branches of `f` and is reported as [`GermError::TruncationTooSmall`].
pub fn delta(g: &CurveGerm, branches: &BranchSet) -> Result<u32, GermError> {
    branches.validate_for(g)?;
    let mu = milnor(g)?;
    let needed = 2 * mu + 2;
    if branches.declared_truncation < needed {
        return Err(GermError::TruncationTooSmall {
            declared: branches.declared_truncation,
            needed,
        });
    }
    let low = delta_at(branches, needed - 1);
    let high = delta_at(branches, needed);
    if low != high {
        return Err(GermError::TruncationTooSmall {
            declared: branches.declared_truncation,
            needed: needed + 1,
        });
    }
    Ok(high)
}

pub fn branch_count(branches: &BranchSet) -> u32 {
    branches.branches.len() as u32
}

/// The four invariants of a germ with known branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermInvariants {
    pub mu: u32,
    pub tau: u32,
    pub delta: u32,
    pub r: u32,
}

impl GermInvariants {
    /// `mu = 2 delta - r + 1`.
    pub fn satisfies_milnor_formula(&self) -> bool {
        i64::from(self.mu) == 2 * i64::from(self.delta) - i64::from(self.r) + 1
    }
}

pub fn invariants(g: &CurveGerm, branches: &BranchSet) -> Result<GermInvariants, GermError> {
    Ok(GermInvariants {
        mu: milnor(g)?,
        tau: tjurina(g)?,
        delta: delta(g, branches)?,
        r: branch_count(branches),
    })
}

/// Whether `mu = 2 delta - r + 1`.
pub fn milnor_formula_check(g: &CurveGerm, branches: &BranchSet) -> Result<bool, GermError> {
    let mu = milnor(g)?;
    let d = delta(g, branches)?;
    Ok(i64::from(mu) == 2 * i64::from(d) - i64::from(branch_count(branches)) + 1)
}
