//! Perverse numbers from Betti numbers of relative Hilbert schemes.
//!
//! `T(l, m)` is the `m`-th Betti number of the relative Hilbert scheme of
//! `l` points on the universal curve in the stable range, where it is a
//! projective bundle over `S^[l]` of large rank:
//! `T(l, m) = sum_{n >= 0} b_{m - 2n}(S^[l])`.
//!
//! The perverse numbers are recovered one row `i` at a time from
//! `T(i, m) - T(i - 1, m) = sum_{i' <= i} n^{i', m - 2i + i'}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genfunc::{stable_perverse_table, GenfuncError, HilbertBetti, PerverseTable, SurfaceTopology};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PerverseError {
    /// The recursion produced a negative perverse number.
    #[error("inconsistent tower: n^({i},{j}) would be {value}")]
    InconsistentTower { i: u32, j: u32, value: i128 },
    #[error(transparent)]
    Genfunc(#[from] GenfuncError),
}

/// Table `T(l, m)` for `0 <= l, m <= max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelHilbBettiTower {
    max: u32,
    values: Vec<Vec<u64>>,
}

impl RelHilbBettiTower {
    /// Square table; returns `None` unless every row has `rows.len()` entries.
    pub fn from_values(values: Vec<Vec<u64>>) -> Option<Self> {
        let n = values.len();
        if n == 0 || values.iter().any(|row| row.len() != n) {
            return None;
        }
        Some(RelHilbBettiTower {
            max: (n - 1) as u32,
            values,
        })
    }

    pub fn max(&self) -> u32 {
        self.max
    }

    pub fn get(&self, l: u32, m: u32) -> Option<u64> {
        self.values.get(l as usize)?.get(m as usize).copied()
    }

    pub fn values(&self) -> &[Vec<u64>] {
        &self.values
    }
}

/// `T(l, m)` for `l, m <= max`, from Göttsche's formula.
pub fn build_tower(s: &SurfaceTopology, max: u32) -> Result<RelHilbBettiTower, PerverseError> {
    let betti = HilbertBetti::new(s, max)?;
    let mut values = Vec::with_capacity(max as usize + 1);
    for l in 0..=max {
        let mut row = Vec::with_capacity(max as usize + 1);
        for m in 0..=max {
            let mut total = 0u64;
            for n in 0..=m / 2 {
                total += betti.get(l, m - 2 * n)?;
            }
            row.push(total);
        }
        values.push(row);
    }
    Ok(RelHilbBettiTower { max, values })
}

/// One solved entry and the entries it was computed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveStep {
    pub entry: (u32, u32),
    pub reads: Vec<(u32, u32)>,
}

/// [`solve_perverse`] together with the order of evaluation.
pub fn solve_perverse_traced(
    tower: &RelHilbBettiTower,
) -> Result<(PerverseTable, Vec<SolveStep>), PerverseError> {
    let order = tower.max;
    let mut table = PerverseTable::new(order);
    let mut log = Vec::new();
    for j in 0..=order {
        table.set(0, j, u64::from(j % 2 == 0));
        log.push(SolveStep {
            entry: (0, j),
            reads: Vec::new(),
        });
    }
    for i in 1..=order {
        for m in i..=order {
            let t = |l: u32| i128::from(tower.values[l as usize][m as usize]);
            let mut value = t(i) - t(i - 1);
            let mut reads = Vec::new();
            for ip in 0..i {
                let j = i64::from(m) - 2 * i64::from(i) + i64::from(ip);
                if j < 0 {
                    continue;
                }
                let j = j as u32;
                reads.push((ip, j));
                value -= i128::from(table.get(ip, j).unwrap_or(0));
            }
            let j = m - i;
            if value < 0 {
                return Err(PerverseError::InconsistentTower { i, j, value });
            }
            table.set(i, j, value as u64);
            log.push(SolveStep { entry: (i, j), reads });
        }
    }
    Ok((table, log))
}

/// Perverse numbers `n^{i,j}` for `i + j` up to the size of the tower.
pub fn solve_perverse(tower: &RelHilbBettiTower) -> Result<PerverseTable, PerverseError> {
    Ok(solve_perverse_traced(tower)?.0)
}

/// Outcome of comparing the tower route with the coefficients of `H(q, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub from_tower: PerverseTable,
    pub from_series: PerverseTable,
    /// First differing entry as `((i, j), tower, series)`.
    pub mismatch: Option<((u32, u32), u64, u64)>,
}

impl OracleReport {
    pub fn agrees(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Both routes to the perverse table, side by side.
pub fn oracle_report(s: &SurfaceTopology, order: u32) -> Result<OracleReport, PerverseError> {
    let from_tower = solve_perverse(&build_tower(s, order)?)?;
    let from_series = stable_perverse_table(s, order)?;
    let mismatch = from_tower.first_difference(&from_series);
    Ok(OracleReport {
        from_tower,
        from_series,
        mismatch,
    })
}

/// Whether the tower recursion reproduces the coefficients of `H(q, t)`.
pub fn oracle_check(s: &SurfaceTopology, order: u32) -> Result<bool, PerverseError> {
    Ok(oracle_report(s, order)?.agrees())
}
