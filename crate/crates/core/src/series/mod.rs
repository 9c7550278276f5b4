//! Truncated bivariate series with exact rational coefficients.
//!
//! A [`BiSeries`] stores the nonzero coefficients of a series in two formal
//! variables together with a truncation order `K`. Which exponent pairs are
//! allowed, and how a pair is graded, is decided by a [`Grading`]:
//!
//! * [`QtGrading`] is used for series in `(q, t)`. The `t`-exponent may be
//!   negative but never below minus the `q`-exponent (`b >= -a`). The degree
//!   of `q^a t^b` is `a + max(b, 0)`, i.e. the total degree `a + b` whenever
//!   `b >= 0`.
//! * [`ZwGrading`] is used for Göttsche-type series in `(z, w)`. Keys are
//!   stored as `(w-exponent, z-exponent)`, the `z`-exponent is at most four
//!   times the `w`-exponent, and the degree is the `w`-exponent.
//!
//! In both gradings the degree of a product of two allowed monomials is at
//! least the degree of either factor, so every coefficient of degree `<= K`
//! of a sum, product or inverse only depends on coefficients of degree
//! `<= K` of the inputs. Truncation is therefore exact.
//!
//! Invariants of every value:
//! - no stored coefficient is zero,
//! - every key lies in the support of the grading,
//! - every key has degree `<= order`.

mod product;

pub use product::{
    binomial_product, substitute_zw_to_qt, truncated_product, Binomial, FactorFamily,
};

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::Rational;

/// Exponent pair `(first, second)`; see the grading for the meaning of each slot.
pub type Key = (u32, i32);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: u32, right: u32 },
    #[error("series has zero constant term and is not invertible")]
    NotInvertible,
    #[error("factor {index} declares minimal degree {declared} but has a term of degree {actual}")]
    BadFactorBound {
        index: usize,
        declared: u32,
        actual: u32,
    },
    #[error("coefficient {key:?} lies beyond truncation order {order}")]
    OutOfOrder { key: (i64, i64), order: u32 },
    #[error("exponent pair {key:?} violates the support bound of the series")]
    LaurentBoundViolated { key: (i64, i64) },
    #[error("input known to order {have} but order {need} was requested")]
    InsufficientOrder { have: u32, need: u32 },
}

/// Grading and support of a family of bivariate series.
pub trait Grading: Copy + Clone + fmt::Debug + Default + PartialEq + Eq {
    /// Degree of the monomial with exponents `key`, or `None` when the key is
    /// outside the allowed support.
    fn degree(key: Key) -> Option<u32>;

    /// Every allowed key of degree `<= order`, in lexicographic order.
    fn keys_up_to(order: u32) -> Vec<Key>;

    /// Human readable monomial, without coefficient. Empty for the unit.
    fn monomial_name(key: Key) -> String;
}

/// Laurent series in `(q, t)` with `b >= -a`, graded by `a + max(b, 0)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QtGrading;

impl Grading for QtGrading {
    fn degree((a, b): Key) -> Option<u32> {
        if i64::from(b) < -i64::from(a) {
            return None;
        }
        Some(a + b.max(0) as u32)
    }

    fn keys_up_to(order: u32) -> Vec<Key> {
        let mut keys = Vec::new();
        for a in 0..=order {
            let lo = -(a as i32);
            let hi = (order - a) as i32;
            keys.extend((lo..=hi).map(|b| (a, b)));
        }
        keys
    }

    fn monomial_name((a, b): Key) -> String {
        join_powers(&[("q", i64::from(a)), ("t", i64::from(b))])
    }
}

/// Power series in `(z, w)` stored as `(w-exponent, z-exponent)` with
/// `0 <= z-exponent <= 4 * w-exponent`, graded by the `w`-exponent.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ZwGrading;

impl Grading for ZwGrading {
    fn degree((n, i): Key) -> Option<u32> {
        if i < 0 || i64::from(i) > 4 * i64::from(n) {
            return None;
        }
        Some(n)
    }

    fn keys_up_to(order: u32) -> Vec<Key> {
        let mut keys = Vec::new();
        for n in 0..=order {
            keys.extend((0..=(4 * n) as i32).map(|i| (n, i)));
        }
        keys
    }

    fn monomial_name((n, i): Key) -> String {
        join_powers(&[("z", i64::from(i)), ("w", i64::from(n))])
    }
}

fn join_powers(parts: &[(&str, i64)]) -> String {
    parts
        .iter()
        .filter(|(_, e)| *e != 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// Truncated bivariate series with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct BiSeries<G: Grading> {
    order: u32,
    terms: BTreeMap<Key, Rational>,
    grading: PhantomData<G>,
}

/// Series in `(q, t)`, the substrate of the perverse generating function.
pub type TruncatedBiSeries = BiSeries<QtGrading>;

/// Series in `(z, w)`, the substrate of Göttsche's formula.
pub type ZwSeries = BiSeries<ZwGrading>;

fn widen(key: Key) -> (i64, i64) {
    (i64::from(key.0), i64::from(key.1))
}

impl<G: Grading> BiSeries<G> {
    pub fn zero(order: u32) -> Self {
        BiSeries {
            order,
            terms: BTreeMap::new(),
            grading: PhantomData,
        }
    }

    pub fn one(order: u32) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: u32) -> Self {
        let mut s = Self::zero(order);
        if !c.is_zero() {
            s.terms.insert((0, 0), c);
        }
        s
    }

    /// `c * x^key`, dropped if its degree exceeds `order`.
    pub fn monomial(c: Rational, key: Key, order: u32) -> Result<Self, SeriesError> {
        Self::from_terms([(key, c)], order)
    }

    /// Builds a canonical series: zero coefficients and keys beyond the order
    /// are dropped, repeated keys are summed.
    pub fn from_terms<I>(terms: I, order: u32) -> Result<Self, SeriesError>
    where
        I: IntoIterator<Item = (Key, Rational)>,
    {
        let mut s = Self::zero(order);
        for (key, c) in terms {
            let deg = G::degree(key).ok_or(SeriesError::LaurentBoundViolated { key: widen(key) })?;
            if deg <= order {
                s.accumulate(key, &c);
            }
        }
        Ok(s)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) coefficients.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero coefficients in lexicographic key order.
    pub fn terms(&self) -> impl Iterator<Item = (Key, &Rational)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&(0, 0)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the monomial `key`.
    ///
    /// Keys outside the support of the grading are structurally zero. Keys
    /// whose degree exceeds the truncation order are unknown and rejected.
    pub fn coeff(&self, first: i64, second: i64) -> Result<Rational, SeriesError> {
        let key = (first, second);
        let (Ok(a), Ok(b)) = (u32::try_from(first), i32::try_from(second)) else {
            return Ok(Rational::zero());
        };
        match G::degree((a, b)) {
            None => Ok(Rational::zero()),
            Some(d) if d > self.order => Err(SeriesError::OutOfOrder { key, order: self.order }),
            Some(_) => Ok(self.terms.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)),
        }
    }

    /// Same series known to a lower order.
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| G::degree(**k).is_some_and(|d| d <= order))
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        BiSeries {
            order,
            terms,
            grading: PhantomData,
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order != other.order {
            return Err(SeriesError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    fn accumulate(&mut self, key: Key, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(*k, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.order);
        }
        BiSeries {
            order: self.order,
            terms: self.terms.iter().map(|(k, v)| (*k, v * s)).collect(),
            grading: PhantomData,
        }
    }

    /// Cauchy product truncated to the common order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let mut out = Self::zero(self.order);
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                let key = (a1 + a2, b1 + b2);
                if G::degree(key).is_some_and(|d| d <= self.order) {
                    out.accumulate(key, &(c1 * c2));
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse to the truncation order.
    ///
    /// Only the constant monomial has degree zero, so every other key of the
    /// inverse is determined by keys that precede it lexicographically.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let inv_c0 = c0.recip();
        let tail: Vec<(Key, &Rational)> =
            self.terms.iter().filter(|(k, _)| **k != (0, 0)).map(|(k, v)| (*k, v)).collect();
        let mut out = Self::zero(self.order);
        for key in G::keys_up_to(self.order) {
            let mut acc = if key == (0, 0) { Rational::one() } else { Rational::zero() };
            for &((a, b), c) in &tail {
                if a > key.0 {
                    continue;
                }
                let prev = (key.0 - a, key.1 - b);
                if let Some(g) = out.terms.get(&prev) {
                    acc -= c * g;
                }
            }
            let value = acc * &inv_c0;
            if !value.is_zero() {
                out.terms.insert(key, value);
            }
        }
        Ok(out)
    }

    /// Integer power; negative exponents go through [`inverse`](Self::inverse).
    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut result = Self::one(self.order);
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&sq)?;
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(result)
    }

    /// Multiplies by `(1 + c * x^key)^power` in `O(|power| * #keys)` time.
    ///
    /// `key` must be an allowed exponent of positive degree.
    pub fn mul_binomial(&self, c: &Rational, key: Key, power: i64) -> Result<Self, SeriesError> {
        let deg = G::degree(key).ok_or(SeriesError::LaurentBoundViolated { key: widen(key) })?;
        if deg == 0 {
            return Err(SeriesError::BadFactorBound {
                index: 0,
                declared: 1,
                actual: 0,
            });
        }
        let mut out = self.clone();
        if c.is_zero() || deg > self.order {
            return Ok(out);
        }
        let shift = |k: Key| -> Option<Key> {
            if k.0 < key.0 {
                return None;
            }
            let prev = (k.0 - key.0, k.1 - key.1);
            G::degree(prev).map(|_| prev)
        };
        if power > 0 {
            for _ in 0..power {
                let mut next = out.clone();
                for (&(a, b), v) in &out.terms {
                    let k = (a + key.0, b + key.1);
                    if G::degree(k).is_some_and(|d| d <= self.order) {
                        next.accumulate(k, &(v * c));
                    }
                }
                out = next;
            }
        } else if power < 0 {
            let keys = G::keys_up_to(self.order);
            for _ in 0..power.unsigned_abs() {
                // g = f - c x g, filled in lexicographic order.
                let mut next = Self::zero(self.order);
                for &k in &keys {
                    let mut value = out.terms.get(&k).cloned().unwrap_or_else(Rational::zero);
                    if let Some(prev) = shift(k) {
                        if let Some(g) = next.terms.get(&prev) {
                            value -= c * g;
                        }
                    }
                    if !value.is_zero() {
                        next.terms.insert(k, value);
                    }
                }
                out = next;
            }
        }
        Ok(out)
    }

    /// Smallest degree among nonconstant terms, `None` if there are none.
    pub fn min_nonconstant_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .filter(|k| **k != (0, 0))
            .filter_map(|k| G::degree(*k))
            .min()
    }

    /// First key (lexicographically) on which two series of the same order
    /// disagree, with both coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<(Key, Rational, Rational)> {
        let keys: std::collections::BTreeSet<Key> =
            self.terms.keys().chain(other.terms.keys()).copied().collect();
        keys.into_iter().find_map(|k| {
            let l = self.terms.get(&k).cloned().unwrap_or_else(Rational::zero);
            let r = other.terms.get(&k).cloned().unwrap_or_else(Rational::zero);
            (l != r).then_some((k, l, r))
        })
    }
}

impl<G: Grading> fmt::Debug for BiSeries<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} + O(deg > {})", self.order)
    }
}

impl<G: Grading> fmt::Display for BiSeries<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            let name = G::monomial_name(*k);
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if name.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{abs}*{name}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn qt(terms: &[((u32, i32), i64)], order: u32) -> TruncatedBiSeries {
        TruncatedBiSeries::from_terms(terms.iter().map(|(k, c)| (*k, r(*c))), order).unwrap()
    }

    #[test]
    fn add_cancels_and_merges() {
        let f = qt(&[((0, 0), 1), ((1, 0), 1)], 4);
        let g = qt(&[((0, 0), 1), ((1, 0), -1)], 4);
        assert_eq!(f.add(&g).unwrap(), qt(&[((0, 0), 2)], 4));

        let f = qt(&[((1, 1), 1)], 4);
        let g = qt(&[((2, -1), 1)], 4);
        assert_eq!(f.add(&g).unwrap(), qt(&[((1, 1), 1), ((2, -1), 1)], 4));

        let f = qt(&[((0, 0), 3), ((2, 1), 5)], 4);
        assert_eq!(f.add(&TruncatedBiSeries::zero(4)).unwrap(), f);
    }

    #[test]
    fn add_rejects_order_mismatch() {
        let err = TruncatedBiSeries::one(3).add(&TruncatedBiSeries::one(4)).unwrap_err();
        assert_eq!(err, SeriesError::OrderMismatch { left: 3, right: 4 });
        assert!(TruncatedBiSeries::one(3).mul(&TruncatedBiSeries::one(4)).is_err());
    }

    #[test]
    fn mul_examples() {
        let f = qt(&[((0, 0), 1), ((1, 0), 1)], 6);
        let g = qt(&[((0, 0), 1), ((1, 0), -1)], 6);
        assert_eq!(f.mul(&g).unwrap(), qt(&[((0, 0), 1), ((2, 0), -1)], 6));

        let f = qt(&[((1, -1), 1)], 6);
        let g = qt(&[((1, 1), 1)], 6);
        assert_eq!(f.mul(&g).unwrap(), qt(&[((2, 0), 1)], 6));

        // (1 - qt) * sum_k (qt)^k by direct convolution
        let one_minus = qt(&[((0, 0), 1), ((1, 1), -1)], 10);
        let geometric = TruncatedBiSeries::from_terms((0..=5).map(|k| ((k, k as i32), r(1))), 10).unwrap();
        assert_eq!(one_minus.mul(&geometric).unwrap(), TruncatedBiSeries::one(10));
    }

    #[test]
    fn laurent_terms_survive_and_truncate_correctly() {
        // q^3 t^-3 has degree 3; times t^3 gives q^3 of degree 3.
        let f = qt(&[((3, -3), 1)], 3);
        let g = qt(&[((0, 3), 1)], 3);
        assert_eq!(f.mul(&g).unwrap(), qt(&[((3, 0), 1)], 3));
        assert!(TruncatedBiSeries::monomial(r(1), (1, -2), 4).is_err());
    }

    #[test]
    fn inverse_examples() {
        let f = qt(&[((0, 0), 1), ((2, 0), -1)], 6);
        let expected = qt(&[((0, 0), 1), ((2, 0), 1), ((4, 0), 1), ((6, 0), 1)], 6);
        assert_eq!(f.inverse().unwrap(), expected);

        let two = TruncatedBiSeries::constant(r(2), 5);
        assert_eq!(two.inverse().unwrap(), TruncatedBiSeries::constant(Rational::new(1.into(), 2.into()), 5));

        let f = qt(&[((0, 0), 1), ((1, 1), -1)], 12);
        assert_eq!(f.inverse().unwrap().mul(&f).unwrap(), TruncatedBiSeries::one(12));

        let g = qt(&[((1, 0), 1)], 4);
        assert_eq!(g.inverse().unwrap_err(), SeriesError::NotInvertible);
    }

    #[test]
    fn coeff_examples() {
        let f = qt(&[((0, 0), 1), ((1, 1), -1)], 4);
        assert_eq!(f.coeff(1, 1).unwrap(), r(-1));
        let g = qt(&[((0, 0), 1), ((2, 0), -1)], 6).inverse().unwrap();
        assert_eq!(g.coeff(0, 0).unwrap(), r(1));
        assert!(matches!(f.coeff(3, 2), Err(SeriesError::OutOfOrder { .. })));
        assert_eq!(f.coeff(1, -3).unwrap(), r(0));
    }

    #[test]
    fn binomial_fast_path_matches_general_route() {
        let order = 8;
        let base = qt(&[((0, 0), 2), ((1, -1), 3), ((0, 2), -1), ((2, 1), 5)], order);
        for (c, key, power) in [(1, (1, 1), -3), (-1, (2, -1), -2), (1, (0, 1), 4), (-1, (1, 0), -1)] {
            let x = TruncatedBiSeries::from_terms([((0, 0), r(1)), (key, r(c))], order).unwrap();
            let slow = base.mul(&x.pow(power).unwrap()).unwrap();
            let fast = base.mul_binomial(&r(c), key, power).unwrap();
            assert_eq!(fast, slow, "factor (1 + {c} x^{key:?})^{power}");
        }
    }

    #[test]
    fn zw_series_inverse_and_support() {
        let f = ZwSeries::from_terms([((0, 0), r(1)), ((1, 2), r(-1))], 5).unwrap();
        let inv = f.inverse().unwrap();
        assert_eq!(inv.coeff(5, 10).unwrap(), r(1));
        assert_eq!(inv.mul(&f).unwrap(), ZwSeries::one(5));
        assert!(ZwSeries::monomial(r(1), (1, 5), 5).is_err());
    }

    #[test]
    fn display_is_readable() {
        let f = qt(&[((0, 0), 1), ((1, 1), -9), ((2, -1), 1)], 4);
        assert_eq!(f.to_string(), "1 - 9*q*t + q^2*t^-1");
    }

    fn arb_series(order: u32) -> impl Strategy<Value = TruncatedBiSeries> {
        let keys = QtGrading::keys_up_to(order);
        proptest::collection::vec((0..keys.len(), -10i64..=10, 1i64..=10), 0..12).prop_map(
            move |picks| {
                TruncatedBiSeries::from_terms(
                    picks.into_iter().map(|(i, p, q)| (keys[i], Rational::new(p.into(), q.into()))),
                    order,
                )
                .unwrap()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_laws(f in arb_series(6), g in arb_series(6), h in arb_series(6)) {
            prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
            prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
            prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
            prop_assert_eq!(
                f.mul(&g.add(&h).unwrap()).unwrap(),
                f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
            );
        }

        #[test]
        fn inverse_is_two_sided(f in arb_series(6), c in 1i64..=7) {
            let f = f.add(&TruncatedBiSeries::constant(Rational::from_integer(c.into()), 6)).unwrap();
            prop_assume!(!f.constant_term().is_zero());
            let g = f.inverse().unwrap();
            prop_assert_eq!(f.mul(&g).unwrap(), TruncatedBiSeries::one(6));
            prop_assert_eq!(g.mul(&f).unwrap(), TruncatedBiSeries::one(6));
        }
    }
}
