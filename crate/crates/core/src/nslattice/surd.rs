//! Exact real numbers `p + q * sqrt(n)` with rational `p, q` and squarefree `n`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    p: Rational,
    q: Rational,
    /// squarefree, and `1` whenever `q == 0`
    n: BigInt,
}

/// Splits `m > 0` as `s^2 * f` with `f` squarefree.
fn square_part(m: &BigInt) -> (BigInt, BigInt) {
    let mut rest = m.clone();
    let mut s = BigInt::one();
    let mut f = BigInt::one();
    let mut k = BigInt::from(2);
    while &k * &k <= rest {
        let k2 = &k * &k;
        while (&rest % &k2).is_zero() {
            rest /= &k2;
            s *= &k;
        }
        if (&rest % &k).is_zero() {
            rest /= &k;
            f *= &k;
        }
        k += 1;
    }
    (s, f * rest)
}

/// Sign of `x + y * sqrt(k)` for `k >= 0`.
fn sign_with_root(x: &Rational, y: &Rational, k: &Rational) -> Ordering {
    let sx = x.cmp(&Rational::zero());
    let sy = y.cmp(&Rational::zero());
    if k.is_zero() || sy == Ordering::Equal {
        return sx;
    }
    if sx == Ordering::Equal || sx == sy {
        return sy;
    }
    // opposite signs: the larger magnitude wins
    match (x * x).cmp(&(y * y * k)) {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => Ordering::Equal,
    }
}

impl Surd {
    pub fn rational(p: Rational) -> Self {
        Surd {
            p,
            q: Rational::zero(),
            n: BigInt::one(),
        }
    }

    pub fn integer(v: i64) -> Self {
        Surd::rational(Rational::from_integer(v.into()))
    }

    /// `p + q * sqrt(n)` for any `n >= 0`; square factors are pulled out.
    pub fn new(p: Rational, q: Rational, n: &BigInt) -> Self {
        assert!(!n.is_negative(), "negative radicand {n}");
        if q.is_zero() || n.is_zero() {
            return Surd::rational(p);
        }
        let (s, f) = square_part(n);
        let q = q * Rational::from_integer(s);
        if f.is_one() {
            return Surd::rational(p + q);
        }
        Surd { p, q, n: f }
    }

    /// `sqrt(r)` for a rational `r >= 0`.
    pub fn sqrt(r: &Rational) -> Self {
        assert!(!r.is_negative(), "square root of negative {r}");
        // sqrt(a/b) = sqrt(a b) / b
        let num = r.numer() * r.denom();
        Surd::new(Rational::zero(), Rational::new(BigInt::one(), r.denom().clone()), &num)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.p
    }

    pub fn surd_coefficient(&self) -> &Rational {
        &self.q
    }

    pub fn radicand(&self) -> &BigInt {
        &self.n
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.p)
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        Surd {
            p: &self.p + r,
            ..self.clone()
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Surd::new(&self.p * r, &self.q * r, &self.n)
    }

    /// Sign of `self - other`, exact.
    fn cmp_exact(&self, other: &Surd) -> Ordering {
        let x = &self.p - &other.p;
        if self.n == other.n {
            return sign_with_root(&x, &(&self.q - &other.q), &Rational::from_integer(self.n.clone()));
        }
        // x + b sqrt(m) + c sqrt(n), with b = q1, c = -q2
        let (b, m) = (&self.q, Rational::from_integer(self.n.clone()));
        let (c, n) = (-&other.q, Rational::from_integer(other.n.clone()));
        let zero = Rational::zero();
        // sign of u = b sqrt(m) + c sqrt(n)
        let su = {
            let sb = b.cmp(&zero);
            let sc = c.cmp(&zero);
            if sb == Ordering::Equal || sb == sc {
                if sb == Ordering::Equal { sc } else { sb }
            } else if sc == Ordering::Equal {
                sb
            } else {
                match (b * b * &m).cmp(&(&c * &c * &n)) {
                    Ordering::Greater => sb,
                    Ordering::Less => sc,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        };
        let sx = x.cmp(&zero);
        if su == Ordering::Equal || sx == Ordering::Equal || sx == su {
            return if sx == Ordering::Equal { su } else { sx };
        }
        // compare x^2 with u^2 = b^2 m + c^2 n + 2 b c sqrt(m n)
        let diff = &x * &x - b * b * &m - &c * &c * &n;
        let cross = -(Rational::from_integer(2.into()) * b * &c);
        match sign_with_root(&diff, &cross, &(&m * &n)) {
            Ordering::Greater => sx,
            Ordering::Less => su,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> BigInt {
        // start from an estimate within one of the answer and correct exactly
        let root_floor = {
            let q2n = &self.q * &self.q * Rational::from_integer(self.n.clone());
            q2n.floor().to_integer().sqrt()
        };
        let estimate = self.p.floor().to_integer()
            + if self.q.is_negative() { -root_floor - 1 } else { root_floor };
        let mut k = estimate;
        while Surd::rational(Rational::from_integer(k.clone())) > *self {
            k -= 1;
        }
        while Surd::rational(Rational::from_integer(&k + 1)) <= *self {
            k += 1;
        }
        k
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> BigInt {
        let f = self.floor();
        if Surd::rational(Rational::from_integer(f.clone())) == *self {
            f
        } else {
            f + 1
        }
    }

    pub fn signum(&self) -> Sign {
        match self.cmp(&Surd::integer(0)) {
            Ordering::Less => Sign::Minus,
            Ordering::Equal => Sign::NoSign,
            Ordering::Greater => Sign::Plus,
        }
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

impl From<Rational> for Surd {
    fn from(r: Rational) -> Self {
        Surd::rational(r)
    }
}

impl fmt::Display for Surd {
    /// `p`, `q*sqrt(n)` or `p+q*sqrt(n)`, rationals written `a/b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return write!(f, "{}", self.p);
        }
        if !self.p.is_zero() {
            write!(f, "{}", self.p)?;
            if self.q.is_positive() {
                write!(f, "+")?;
            }
        }
        write!(f, "{}*sqrt({})", self.q, self.n)
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surd({self})")
    }
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn sqrt(n: i64) -> Surd {
        Surd::sqrt(&r(n, 1))
    }

    #[test]
    fn normalizes_radicand() {
        assert_eq!(sqrt(20), Surd::new(r(0, 1), r(2, 1), &BigInt::from(5)));
        assert_eq!(sqrt(16), Surd::integer(4));
        assert_eq!(Surd::sqrt(&r(1, 2)), Surd::new(r(0, 1), r(1, 2), &BigInt::from(2)));
        assert_eq!(sqrt(0), Surd::integer(0));
    }

    #[test]
    fn ordering() {
        assert!(sqrt(2) < Surd::rational(r(3, 2)));
        assert!(sqrt(2) > Surd::rational(r(7, 5)));
        assert!(sqrt(3) > sqrt(2));
        assert!(sqrt(2).add_rational(&r(1, 1)) > sqrt(5));
        // 1 + sqrt(2) = 2.414.. < -1 + 2 sqrt(3) = 2.464..
        let a = sqrt(2).add_rational(&r(1, 1));
        let b = sqrt(3).scale(&r(2, 1)).add_rational(&r(-1, 1));
        assert!(a < b && b > a);
        assert!(sqrt(2).scale(&r(-1, 1)) < Surd::integer(0));
        assert_eq!(sqrt(8).cmp(&sqrt(2).scale(&r(2, 1))), Ordering::Equal);
    }

    #[test]
    fn floor_and_ceil() {
        let x = sqrt(20).scale(&r(10, 1)).add_rational(&r(-2, 1)); // 42.72...
        assert_eq!(x.floor(), BigInt::from(42));
        assert_eq!(x.ceil(), BigInt::from(43));
        let y = sqrt(2).scale(&r(-1, 1)); // -1.41...
        assert_eq!(y.floor(), BigInt::from(-2));
        assert_eq!(y.ceil(), BigInt::from(-1));
        assert_eq!(Surd::rational(r(7, 2)).ceil(), BigInt::from(4));
        assert_eq!(Surd::integer(5).ceil(), BigInt::from(5));
        assert_eq!(Surd::integer(-5).floor(), BigInt::from(-5));
    }

    #[test]
    fn display() {
        assert_eq!(sqrt(20).scale(&r(10, 1)).add_rational(&r(-2, 1)).to_string(), "-2+20*sqrt(5)");
        assert_eq!(Surd::sqrt(&r(1, 2)).to_string(), "1/2*sqrt(2)");
        assert_eq!(Surd::rational(r(19, 2)).to_string(), "19/2");
        assert_eq!(sqrt(3).scale(&r(-1, 1)).add_rational(&r(1, 1)).to_string(), "1-1*sqrt(3)");
    }
}
