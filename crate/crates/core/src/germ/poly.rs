//! Sparse polynomials with rational coefficients and a small text parser.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! poly    := ['+'|'-'] term (('+'|'-') term)*
//! term    := coeff ['*'] factors | coeff | factors
//! factors := factor ('*' factor)*
//! factor  := VAR ['^' UINT]
//! coeff   := UINT ['/' UINT]
//! ```
//!
//! `VAR` is one of the variable names given to the parser. The `*` between
//! factors may be omitted (`2xy^2`), and repeated factors multiply, so `x*x`
//! is `x^2`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial {input:?} at byte {position}: {reason}")]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub reason: String,
}

/// Polynomial in `x, y` stored as `(x-exponent, y-exponent) -> coefficient`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<(u32, u32), Rational>,
}

/// Polynomial in one variable `t`, dense, lowest degree first.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn monomial(c: Rational, a: u32, b: u32) -> Self {
        Poly::from_terms([((a, b), c)])
    }

    pub fn parse(s: &str) -> Result<Self, ParseError> {
        let terms = parse_terms(s, &["x", "y"])?;
        Ok(Poly::from_terms(terms.into_iter().map(|(e, c)| ((e[0], e[1]), c))))
    }

    fn add_term(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lowest total degree of a term, `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).min()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    pub fn dx(&self) -> Self {
        Poly::from_terms(
            self.terms()
                .filter(|((a, _), _)| *a > 0)
                .map(|((a, b), c)| ((a - 1, b), c * Rational::from_integer(a.into()))),
        )
    }

    pub fn dy(&self) -> Self {
        Poly::from_terms(
            self.terms()
                .filter(|((_, b), _)| *b > 0)
                .map(|((a, b), c)| ((a, b - 1), c * Rational::from_integer(b.into()))),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        for (k, c) in other.terms() {
            p.add_term(k, c.clone());
        }
        p
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::from_terms(self.terms().map(|(k, c)| (k, c * s)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut p = Poly::zero();
        for ((a, b), c) in self.terms() {
            for ((a2, b2), c2) in other.terms() {
                p.add_term((a + a2, b + b2), c * c2);
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::monomial(Rational::one(), 0, 0);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self(x, y)` with `x` and `y` replaced by the given polynomials.
    pub fn compose(&self, x: &Poly, y: &Poly) -> Poly {
        let mut p = Poly::zero();
        for ((a, b), c) in self.terms() {
            p = p.add(&x.pow(a).mul(&y.pow(b)).scale(c));
        }
        p
    }

    /// `self(x(t), y(t))` modulo `t^precision`.
    pub fn eval_branch(&self, x: &UniPoly, y: &UniPoly, precision: usize) -> UniPoly {
        let max_a = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let max_b = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let xp = x.powers(max_a, precision);
        let yp = y.powers(max_b, precision);
        let mut out = UniPoly::zero();
        for ((a, b), c) in self.terms() {
            out = out.add(&xp[a as usize].mul_trunc(&yp[b as usize], precision).scale(c));
        }
        out
    }
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = UniPoly { coeffs };
        p.normalize();
        p
    }

    pub fn parse(s: &str) -> Result<Self, ParseError> {
        let mut coeffs = Vec::new();
        for (e, c) in parse_terms(s, &["t"])? {
            let k = e[0] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] += c;
        }
        Ok(UniPoly::from_coeffs(coeffs))
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, precision: usize) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().take(precision).cloned().collect())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn scale(&self, s: &Rational) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul_trunc(&self, other: &UniPoly, precision: usize) -> UniPoly {
        let n = (self.coeffs.len() + other.coeffs.len()).saturating_sub(1).min(precision);
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().take(n.saturating_sub(i)) {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }

    /// `[1, p, p^2, ..., p^max]`, each modulo `t^precision`.
    pub fn powers(&self, max: u32, precision: usize) -> Vec<UniPoly> {
        let mut out = vec![UniPoly::from_coeffs(vec![Rational::one()]).truncate(precision)];
        for k in 1..=max as usize {
            let next = out[k - 1].mul_trunc(self, precision);
            out.push(next);
        }
        out
    }
}

fn parse_terms(input: &str, vars: &[&str]) -> Result<Vec<(Vec<u32>, Rational)>, ParseError> {
    let mut p = Parser {
        input,
        chars: input.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
        pos: 0,
        vars,
    };
    if p.chars.is_empty() {
        return Err(p.error("empty polynomial"));
    }
    let mut terms = Vec::new();
    let mut first = true;
    while p.pos < p.chars.len() {
        let negative = match p.peek() {
            Some('+') => {
                p.pos += 1;
                false
            }
            Some('-') => {
                p.pos += 1;
                true
            }
            _ if first => false,
            _ => return Err(p.error("expected '+' or '-'")),
        };
        first = false;
        let (exps, c) = p.term()?;
        terms.push((exps, if negative { -c } else { c }));
    }
    Ok(terms)
}

struct Parser<'a> {
    input: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn error(&self, reason: &str) -> ParseError {
        ParseError {
            input: self.input.to_string(),
            position: self.chars.get(self.pos).map_or(self.input.len(), |(i, _)| *i),
            reason: reason.to_string(),
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|(_, c)| *c).collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn var(&mut self) -> Option<usize> {
        for (index, name) in self.vars.iter().enumerate() {
            let n = name.chars().count();
            let matches = self.chars.len() >= self.pos + n
                && self.chars[self.pos..self.pos + n].iter().map(|(_, c)| *c).eq(name.chars());
            if matches {
                self.pos += n;
                return Some(index);
            }
        }
        None
    }

    fn term(&mut self) -> Result<(Vec<u32>, Rational), ParseError> {
        let mut exps = vec![0u32; self.vars.len()];
        let mut coeff = Rational::one();
        let mut need_factor = false;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.uint()?;
            let den = if self.peek() == Some('/') {
                self.pos += 1;
                let d = self.uint()?;
                if d.is_zero() {
                    return Err(self.error("zero denominator"));
                }
                d
            } else {
                BigInt::one()
            };
            coeff = Rational::new(num, den);
            if self.peek() == Some('*') {
                self.pos += 1;
                need_factor = true;
            } else if !self.peek().is_some_and(|c| c.is_alphabetic()) {
                return Ok((exps, coeff));
            }
        }
        loop {
            let Some(v) = self.var() else {
                return Err(self.error(if need_factor || !coeff.is_one() {
                    "expected a variable"
                } else {
                    "expected a number or a variable"
                }));
            };
            let mut e = 1u32;
            if self.peek() == Some('^') {
                self.pos += 1;
                let big = self.uint()?;
                e = u32::try_from(big).map_err(|_| self.error("exponent too large"))?;
            }
            exps[v] += e;
            if self.peek() == Some('*') {
                self.pos += 1;
                need_factor = true;
            } else if !self.peek().is_some_and(|c| c.is_alphabetic()) {
                return Ok((exps, coeff));
            }
        }
    }
}

fn fmt_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (Vec<(&'static str, u32)>, &'a Rational)>,
) -> fmt::Result {
    let mut first = true;
    for (vars, c) in terms {
        let monomial: Vec<String> = vars
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        let sign = if c.is_negative() { "-" } else { "+" };
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        let abs = c.abs();
        match (abs.is_one(), monomial.is_empty()) {
            (true, true) => write!(f, "1")?,
            (true, false) => write!(f, "{}", monomial.join("*"))?,
            (false, true) => write!(f, "{abs}")?,
            (false, false) => write!(f, "{abs}*{}", monomial.join("*"))?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by_key(|((a, b), _)| (a + b, std::cmp::Reverse(*a)));
        fmt_terms(f, keys.into_iter().map(|((a, b), c)| (vec![("x", *a), ("y", *b)], c)))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (vec![("t", k as u32)], c));
        fmt_terms(f, terms)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn parses_basic_forms() {
        let p = Poly::parse("y^2 - x^3").unwrap();
        assert_eq!(p.coeff(0, 2), r(1, 1));
        assert_eq!(p.coeff(3, 0), r(-1, 1));
        let p = Poly::parse(" 3/2*x*y^2 + 2x -x*x ").unwrap();
        assert_eq!(p.coeff(1, 2), r(3, 2));
        assert_eq!(p.coeff(1, 0), r(2, 1));
        assert_eq!(p.coeff(2, 0), r(-1, 1));
        assert_eq!(Poly::parse("-4").unwrap().coeff(0, 0), r(-4, 1));
        assert!(Poly::parse("x - x").unwrap().is_zero());
        assert_eq!(Poly::parse("2xy^2").unwrap(), Poly::parse("2*x*y^2").unwrap());
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "x +", "x^", "2*", "z", "1/0*x", "x^-1", "++x"] {
            assert!(Poly::parse(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["y^2 - x^3", "x^2*y + y^4", "-1/3*x + 7", "x^3 - x*y^2"] {
            let p = Poly::parse(s).unwrap();
            assert_eq!(Poly::parse(&p.to_string()).unwrap(), p);
        }
        let t = UniPoly::parse("t^3 - 2*t").unwrap();
        assert_eq!(t.to_string(), "-2*t + t^3");
        assert_eq!(UniPoly::parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn derivatives() {
        let p = Poly::parse("x^3 + x*y^2 - y").unwrap();
        assert_eq!(p.dx(), Poly::parse("3*x^2 + y^2").unwrap());
        assert_eq!(p.dy(), Poly::parse("2*x*y - 1").unwrap());
    }

    #[test]
    fn branch_evaluation() {
        let f = Poly::parse("y^2 - x^3").unwrap();
        let x = UniPoly::parse("t^2").unwrap();
        let y = UniPoly::parse("t^3").unwrap();
        assert!(f.eval_branch(&x, &y, 20).is_zero());
        let g = Poly::parse("y - x").unwrap();
        assert_eq!(g.eval_branch(&x, &y, 3), UniPoly::parse("-t^2").unwrap());
    }

    #[test]
    fn composition() {
        let f = Poly::parse("x*y").unwrap();
        let u = Poly::parse("x + y").unwrap();
        let v = Poly::parse("x - y").unwrap();
        assert_eq!(f.compose(&u, &v), Poly::parse("x^2 - y^2").unwrap());
    }
}
