use num_traits::{One, Zero};

use super::{BiSeries, Grading, Key, SeriesError, TruncatedBiSeries, ZwSeries};
use crate::Rational;

/// Product of the factors whose declared minimal degree is `<= order`.
///
/// Each item is `(factor, min_degree)` where `factor - 1` only has terms of
/// degree `>= min_degree`. The declared degrees must be nondecreasing, so the
/// first factor above the order ends the product: all later factors are `1`
/// modulo truncation.
pub fn truncated_product<G, I>(factors: I, order: u32) -> Result<BiSeries<G>, SeriesError>
where
    G: Grading,
    I: IntoIterator<Item = (BiSeries<G>, u32)>,
{
    let mut acc = BiSeries::one(order);
    let mut last_declared = 0;
    for (index, (factor, declared)) in factors.into_iter().enumerate() {
        if declared < last_declared {
            return Err(SeriesError::BadFactorBound {
                index,
                declared,
                actual: last_declared,
            });
        }
        last_declared = declared;
        if declared > order {
            break;
        }
        if factor.order() != order {
            return Err(SeriesError::OrderMismatch {
                left: order,
                right: factor.order(),
            });
        }
        let bad_constant = !factor.constant_term().is_one();
        match factor.min_nonconstant_degree() {
            Some(actual) if actual < declared => {
                return Err(SeriesError::BadFactorBound {
                    index,
                    declared,
                    actual,
                })
            }
            _ if bad_constant => {
                return Err(SeriesError::BadFactorBound {
                    index,
                    declared,
                    actual: 0,
                })
            }
            _ => {}
        }
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// The factor `(1 + coeff * x^exponent)^power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binomial {
    pub coeff: Rational,
    pub exponent: Key,
    pub power: i64,
}

impl Binomial {
    /// `(1 + x)^power`
    pub fn plus(exponent: Key, power: i64) -> Self {
        Binomial {
            coeff: Rational::one(),
            exponent,
            power,
        }
    }

    /// `(1 - x)^power`
    pub fn minus(exponent: Key, power: i64) -> Self {
        Binomial {
            coeff: -Rational::one(),
            exponent,
            power,
        }
    }

    /// Expanded series of the factor.
    pub fn to_series<G: Grading>(&self, order: u32) -> Result<BiSeries<G>, SeriesError> {
        BiSeries::one(order).mul_binomial(&self.coeff, self.exponent, self.power)
    }
}

/// A family of binomial factors indexed by `m = 1, 2, ...`.
pub type FactorFamily<'a> = &'a dyn Fn(u32) -> Binomial;

/// Product over `m >= 1` of every family, truncated at `order`.
///
/// The degree of `x^exponent` must strictly increase with `m` within each
/// family; a family is cut off at the first `m` whose degree exceeds `order`.
pub fn binomial_product<G: Grading>(
    families: &[FactorFamily<'_>],
    order: u32,
) -> Result<BiSeries<G>, SeriesError> {
    let mut acc = BiSeries::one(order);
    for family in families {
        let mut previous: Option<u32> = None;
        for m in 1.. {
            let factor = family(m);
            let deg = G::degree(factor.exponent).ok_or(SeriesError::LaurentBoundViolated {
                key: (i64::from(factor.exponent.0), i64::from(factor.exponent.1)),
            })?;
            if let Some(prev) = previous {
                if deg <= prev {
                    return Err(SeriesError::BadFactorBound {
                        index: m as usize,
                        declared: prev + 1,
                        actual: deg,
                    });
                }
            }
            previous = Some(deg);
            if deg > order {
                break;
            }
            if factor.power != 0 && !factor.coeff.is_zero() {
                acc = acc.mul_binomial(&factor.coeff, factor.exponent, factor.power)?;
            }
        }
    }
    Ok(acc)
}

/// Image of a `(z, w)` series under `z = t`, `w = q / t`, truncated at `order`.
///
/// The term `z^i w^n` maps to `q^n t^(i - n)`. Its degree is `max(n, i)`, so
/// the input must be known at least to `w`-order `order`.
pub fn substitute_zw_to_qt(g: &ZwSeries, order: u32) -> Result<TruncatedBiSeries, SeriesError> {
    if g.order() < order {
        return Err(SeriesError::InsufficientOrder {
            have: g.order(),
            need: order,
        });
    }
    let image = g.terms().map(|((n, i), c)| ((n, i - n as i32), c.clone()));
    TruncatedBiSeries::from_terms(image, order)
}
