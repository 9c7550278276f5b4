//! Göttsche's formula, the stable Betti series and the stable perverse
//! series `H(q, t)`.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{
    binomial_product, substitute_zw_to_qt, Binomial, FactorFamily, Key, SeriesError,
    TruncatedBiSeries, ZwSeries,
};
use crate::Rational;

/// Default truncation order of every generating function.
pub const DEFAULT_ORDER: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenfuncError {
    #[error("invalid surface topology: {0}")]
    InvalidTopology(String),
    /// A coefficient that must be a dimension came out negative or fractional.
    /// This never happens for a correct implementation.
    #[error("internal identity failure at {key:?}: coefficient {value}")]
    InternalIdentityFailure { key: (i64, i64), value: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Topological input `(b1, b2, chi(O_S))` of a smooth projective surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceTopology {
    b1: u32,
    b2: u32,
    chi_o: i64,
}

impl SurfaceTopology {
    pub const ENRIQUES: SurfaceTopology = SurfaceTopology { b1: 0, b2: 10, chi_o: 1 };
    pub const BIELLIPTIC: SurfaceTopology = SurfaceTopology { b1: 2, b2: 2, chi_o: 0 };

    pub fn new(b1: u32, b2: u32, chi_o: i64) -> Result<Self, GenfuncError> {
        if !b1.is_multiple_of(2) {
            return Err(GenfuncError::InvalidTopology(format!("b1 = {b1} must be even")));
        }
        if b2 == 0 {
            return Err(GenfuncError::InvalidTopology("b2 must be positive".into()));
        }
        Ok(SurfaceTopology { b1, b2, chi_o })
    }

    pub fn b1(&self) -> u32 {
        self.b1
    }

    pub fn b2(&self) -> u32 {
        self.b2
    }

    pub fn chi_o(&self) -> i64 {
        self.chi_o
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "enriques" => Some(Self::ENRIQUES),
            "bielliptic" => Some(Self::BIELLIPTIC),
            _ => None,
        }
    }
}

fn to_count(key: Key, value: &Rational) -> Result<u64, GenfuncError> {
    let fail = || GenfuncError::InternalIdentityFailure {
        key: (i64::from(key.0), i64::from(key.1)),
        value: value.to_string(),
    };
    if !value.is_integer() || value.is_negative() {
        return Err(fail());
    }
    value.to_integer().to_u64().ok_or_else(fail)
}

/// `sum_{n,i} b_i(S^[n]) z^i w^n`, exact for every `w`-degree `<= order`.
pub fn goettsche_series(s: &SurfaceTopology, order: u32) -> Result<ZwSeries, GenfuncError> {
    let b1 = i64::from(s.b1);
    let b2 = i64::from(s.b2);
    // keys are (w-exponent, z-exponent)
    let odd_low = move |m: u32| Binomial::plus((m, (2 * m - 1) as i32), b1);
    let odd_high = move |m: u32| Binomial::plus((m, (2 * m + 1) as i32), b1);
    let even_low = |m: u32| Binomial::minus((m, (2 * m - 2) as i32), -1);
    let middle = move |m: u32| Binomial::minus((m, (2 * m) as i32), -b2);
    let even_high = |m: u32| Binomial::minus((m, (2 * m + 2) as i32), -1);
    let families: [FactorFamily<'_>; 5] = [&odd_low, &odd_high, &even_low, &middle, &even_high];
    Ok(binomial_product(&families, order)?)
}

/// Betti numbers `b_k(S^[n])` for every `n <= max_n`.
#[derive(Debug, Clone)]
pub struct HilbertBetti {
    max_n: u32,
    series: ZwSeries,
}

impl HilbertBetti {
    pub fn new(s: &SurfaceTopology, max_n: u32) -> Result<Self, GenfuncError> {
        Ok(HilbertBetti {
            max_n,
            series: goettsche_series(s, max_n)?,
        })
    }

    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    /// `b_k(S^[n])`; zero for `k > 4n`. Panics if `n > max_n`.
    pub fn get(&self, n: u32, k: u32) -> Result<u64, GenfuncError> {
        assert!(n <= self.max_n, "Hilbert scheme S^[{n}] beyond tabulated range {}", self.max_n);
        if k > 4 * n {
            return Ok(0);
        }
        let key = (n, k as i32);
        to_count(key, &self.series.coeff(i64::from(n), i64::from(k))?)
    }

    pub fn series(&self) -> &ZwSeries {
        &self.series
    }
}

/// `b_k(S^[n])`, the coefficient of `z^k w^n` in Göttsche's formula.
pub fn hilb_betti(s: &SurfaceTopology, n: u32, k: u32) -> Result<u64, GenfuncError> {
    HilbertBetti::new(s, n)?.get(n, k)
}

/// Coefficients `b_0^inf, ..., b_max_k^inf` of the stable Betti product.
pub fn stable_betti_numbers(s: &SurfaceTopology, max_k: u32) -> Result<Vec<u64>, GenfuncError> {
    let b1 = i64::from(s.b1);
    let b2 = i64::from(s.b2);
    let odd_low = move |m: u32| Binomial::plus((2 * m - 1, 0), b1);
    let odd_high = move |m: u32| Binomial::plus((2 * m + 1, 0), b1);
    let even = move |m: u32| Binomial::minus((2 * m, 0), -(b2 + 1));
    let even_high = |m: u32| Binomial::minus((2 * m + 2, 0), -1);
    let families: [FactorFamily<'_>; 4] = [&odd_low, &odd_high, &even, &even_high];
    let series: TruncatedBiSeries = binomial_product(&families, max_k)?;
    (0..=max_k)
        .map(|k| to_count((k, 0), &series.coeff(i64::from(k), 0)?))
        .collect()
}

/// `b_k^inf`.
pub fn stable_betti(s: &SurfaceTopology, k: u32) -> Result<u64, GenfuncError> {
    Ok(stable_betti_numbers(s, k)?[k as usize])
}

/// `H(q, t)` truncated at total order `order`.
pub fn stable_perverse_series(
    s: &SurfaceTopology,
    order: u32,
) -> Result<TruncatedBiSeries, GenfuncError> {
    let b1 = i64::from(s.b1);
    let b2 = i64::from(s.b2);
    let odd_low = move |m: u32| Binomial::plus((m, m as i32 - 1), b1);
    let odd_high = move |m: u32| Binomial::plus((m, m as i32 + 1), b1);
    let q_heavy = |m: u32| Binomial::minus((m + 1, m as i32 - 1), -1);
    let diagonal = move |m: u32| Binomial::minus((m, m as i32), -b2);
    let t_heavy = |m: u32| Binomial::minus((m - 1, m as i32 + 1), -1);
    let families: [FactorFamily<'_>; 5] = [&odd_low, &odd_high, &q_heavy, &diagonal, &t_heavy];
    let product: TruncatedBiSeries = binomial_product(&families, order)?;
    Ok(product.mul_binomial(&-Rational::from_integer(1.into()), (1, 1), 1)?)
}

/// Finite table `(i, j) -> n^{i,j}` for `i + j <= order`.
///
/// Only nonzero entries are stored; every entry is a nonnegative integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerverseTable {
    order: u32,
    entries: BTreeMap<(u32, u32), u64>,
}

impl PerverseTable {
    pub fn new(order: u32) -> Self {
        PerverseTable {
            order,
            entries: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Entry `n^{i,j}`, `None` beyond the truncation order.
    pub fn get(&self, i: u32, j: u32) -> Option<u64> {
        (i + j <= self.order).then(|| self.entries.get(&(i, j)).copied().unwrap_or(0))
    }

    /// Panics if `i + j` exceeds the order.
    pub fn set(&mut self, i: u32, j: u32, value: u64) {
        assert!(i + j <= self.order, "entry ({i}, {j}) beyond order {}", self.order);
        if value == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), value);
        }
    }

    /// Nonzero entries in `(i, j)` order.
    pub fn nonzero(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    /// `sum_i n^{i, k-i}`.
    pub fn diagonal_sum(&self, k: u32) -> Option<u64> {
        (k <= self.order).then(|| (0..=k).map(|i| self.get(i, k - i).unwrap_or(0)).sum())
    }

    /// First `(i, j)` in order of `i + j`, then `i`, where the tables differ.
    pub fn first_difference(&self, other: &PerverseTable) -> Option<((u32, u32), u64, u64)> {
        let order = self.order.min(other.order);
        for total in 0..=order {
            for i in 0..=total {
                let (a, b) = (self.get(i, total - i)?, other.get(i, total - i)?);
                if a != b {
                    return Some(((i, total - i), a, b));
                }
            }
        }
        None
    }
}

/// `n_inf^{i,j}` read off `H(q, t)`.
pub fn stable_perverse_table(s: &SurfaceTopology, order: u32) -> Result<PerverseTable, GenfuncError> {
    let h = stable_perverse_series(s, order)?;
    let mut table = PerverseTable::new(order);
    for ((a, b), c) in h.terms() {
        if b < 0 {
            return Err(GenfuncError::InternalIdentityFailure {
                key: (i64::from(a), i64::from(b)),
                value: c.to_string(),
            });
        }
        table.set(a, b as u32, to_count((a, b), c)?);
    }
    Ok(table)
}

/// `sum_{i=0}^{k} n_inf^{i, k-i}`, i.e. the coefficient of `q^k` in `H(q, q)`.
pub fn stable_betti_from_perverse(s: &SurfaceTopology, k: u32) -> Result<u64, GenfuncError> {
    let table = stable_perverse_table(s, k)?;
    Ok(table.diagonal_sum(k).unwrap_or(0))
}

/// Both sides of `H(q,t) / (1 - qt) = G(t, q/t) (1 - q/t) / (1 - t^2)`.
#[derive(Debug, Clone)]
pub struct RemarkIdentitySides {
    pub lhs: TruncatedBiSeries,
    pub rhs: TruncatedBiSeries,
}

impl RemarkIdentitySides {
    /// First coefficient where the sides differ, as `((a, b), lhs, rhs)`.
    pub fn first_mismatch(&self) -> Option<(Key, Rational, Rational)> {
        self.lhs.first_difference(&self.rhs)
    }
}

pub fn remark_identity_sides(
    s: &SurfaceTopology,
    order: u32,
) -> Result<RemarkIdentitySides, GenfuncError> {
    let one = Rational::from_integer(1.into());
    let lhs = stable_perverse_series(s, order)?.mul_binomial(&-one.clone(), (1, 1), -1)?;
    let g = goettsche_series(s, order)?;
    let rhs = substitute_zw_to_qt(&g, order)?
        .mul_binomial(&-one.clone(), (1, -1), 1)?
        .mul_binomial(&-one, (0, 2), -1)?;
    Ok(RemarkIdentitySides { lhs, rhs })
}

/// Whether `H(q,t)/(1-qt)` equals the substituted Göttsche series times
/// `(1 - q/t)/(1 - t^2)` to the given order.
pub fn check_remark_identity(s: &SurfaceTopology, order: u32) -> Result<bool, GenfuncError> {
    Ok(remark_identity_sides(s, order)?.first_mismatch().is_none())
}

/// Exact value of a series coefficient as a signed integer, if it is one.
pub fn integer_coefficient(value: &Rational) -> Option<i64> {
    if value.is_zero() {
        return Some(0);
    }
    value.is_integer().then(|| value.to_integer()).and_then(|n| n.to_i64())
}

#[cfg(test)]
mod tests {
    use super::*;

    const E: SurfaceTopology = SurfaceTopology::ENRIQUES;
    const B: SurfaceTopology = SurfaceTopology::BIELLIPTIC;

    #[test]
    fn topology_validation() {
        assert!(SurfaceTopology::new(1, 2, 0).is_err());
        assert!(SurfaceTopology::new(0, 0, 0).is_err());
        assert_eq!(SurfaceTopology::new(0, 10, 1).unwrap(), E);
        assert_eq!(SurfaceTopology::preset("bielliptic"), Some(B));
    }

    #[test]
    fn goettsche_low_coefficients() {
        let g = goettsche_series(&E, 4).unwrap();
        assert_eq!(g.coeff(1, 2).unwrap(), Rational::from_integer(10.into()));
        assert_eq!(g.coeff(2, 2).unwrap(), Rational::from_integer(11.into()));
        for n in 0..=4 {
            assert_eq!(g.coeff(n, 0).unwrap(), Rational::from_integer(1.into()));
        }
    }

    #[test]
    fn hilb_betti_examples() {
        assert_eq!(hilb_betti(&E, 2, 2).unwrap(), 11);
        assert_eq!(hilb_betti(&B, 3, 0).unwrap(), 1);
        assert_eq!(hilb_betti(&B, 1, 1).unwrap(), 2);
        assert_eq!(hilb_betti(&E, 1, 9).unwrap(), 0);
        // S^[1] = S
        assert_eq!(hilb_betti(&B, 1, 2).unwrap(), 2);
        assert_eq!(hilb_betti(&B, 1, 4).unwrap(), 1);
    }

    #[test]
    fn stable_betti_examples() {
        assert_eq!(stable_betti(&E, 2).unwrap(), 11);
        assert_eq!(stable_betti(&B, 0).unwrap(), 1);
        assert_eq!(stable_betti(&B, 1).unwrap(), 2);
        assert_eq!(stable_betti_numbers(&E, 4).unwrap(), vec![1, 0, 11, 0, 78]);
        assert_eq!(stable_betti_numbers(&B, 2).unwrap(), vec![1, 2, 4]);
    }

    #[test]
    fn perverse_examples() {
        let h = stable_perverse_series(&E, 6).unwrap();
        assert_eq!(h.coeff(1, 1).unwrap(), Rational::from_integer(9.into()));
        assert_eq!(h.coeff(2, 0).unwrap(), Rational::from_integer(1.into()));
        assert_eq!(h.coeff(0, 2).unwrap(), Rational::from_integer(1.into()));
        assert_eq!(h.coeff(0, 0).unwrap(), Rational::from_integer(1.into()));

        let table = stable_perverse_table(&E, 2).unwrap();
        let expected: Vec<_> = vec![((0, 0), 1), ((0, 2), 1), ((1, 1), 9), ((2, 0), 1)];
        assert_eq!(table.nonzero().collect::<Vec<_>>(), expected);
        let table = stable_perverse_table(&E, 9).unwrap();
        for j in (1..=9).step_by(2) {
            assert_eq!(table.get(0, j), Some(0));
        }
    }

    #[test]
    fn diagonal_sums_match_stable_betti() {
        assert_eq!(stable_betti_from_perverse(&E, 2).unwrap(), 11);
        assert_eq!(stable_betti_from_perverse(&E, 0).unwrap(), 1);
        assert_eq!(stable_betti_from_perverse(&B, 1).unwrap(), 2);
    }

    #[test]
    fn remark_identity_small_orders() {
        assert!(check_remark_identity(&E, 0).unwrap());
        assert!(check_remark_identity(&SurfaceTopology::new(0, 1, 0).unwrap(), 6).unwrap());
        assert!(check_remark_identity(&E, 8).unwrap());
    }

    #[test]
    fn table_difference_is_located() {
        let a = stable_perverse_table(&E, 3).unwrap();
        let mut b = a.clone();
        b.set(1, 2, 7);
        assert_eq!(a.first_difference(&b), Some(((1, 2), a.get(1, 2).unwrap(), 7)));
    }
}
