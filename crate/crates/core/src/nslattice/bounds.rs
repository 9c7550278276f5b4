//! Dimensions of linear systems and the codimension bounds for the locus of
//! non-integral curves in `|d beta|` on Enriques and bielliptic surfaces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::{LatticeError, Surd};
use crate::Rational;

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Lower bound `min_k term_k` together with every term and the cases
/// attaining the minimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodimBound {
    pub value: Surd,
    pub terms: Vec<(&'static str, Surd)>,
    pub attained_by: Vec<&'static str>,
}

impl CodimBound {
    fn from_terms(terms: Vec<(&'static str, Surd)>) -> Self {
        let value = terms.iter().map(|(_, v)| v).min().expect("at least one term").clone();
        let attained_by = terms.iter().filter(|(_, v)| *v == value).map(|(c, _)| *c).collect();
        CodimBound {
            value,
            terms,
            attained_by,
        }
    }
}

fn check_beta_sq(beta_sq: i64) -> Result<(), LatticeError> {
    if beta_sq < 2 || beta_sq % 2 != 0 {
        return Err(LatticeError::InvalidSelfIntersection(beta_sq));
    }
    Ok(())
}

fn check_d(d: i64) -> Result<(), LatticeError> {
    if d < 1 {
        return Err(LatticeError::Invalid(format!("multiple d = {d} must be positive")));
    }
    Ok(())
}

fn enriques_terms(beta_sq: i64, d: i64) -> Vec<(&'static str, Surd)> {
    let half = Rational::new(1.into(), 2.into());
    let dd = rat(d);
    vec![
        // d sqrt(2 beta^2) - 2
        ("1.1", Surd::sqrt(&rat(2 * beta_sq)).scale(&dd).add_rational(&rat(-2))),
        ("1.2", Surd::rational(&dd - &half)),
        ("1.3", Surd::rational(Rational::new((d * d * beta_sq - 2).into(), 4.into()))),
        ("2.1", Surd::rational(&dd * &half)),
        ("2.2", Surd::rational(&dd - &half)),
    ]
}

/// Lower bound for `codim(|d beta| \ |d beta|^int, |d beta|)` on an Enriques
/// surface: the minimum over cases 1.1, 1.2, 1.3, 2.1 and 2.2.
pub fn enriques_codim_bound(beta_sq: i64, d: i64) -> Result<CodimBound, LatticeError> {
    check_beta_sq(beta_sq)?;
    check_d(d)?;
    Ok(CodimBound::from_terms(enriques_terms(beta_sq, d)))
}

/// Same bound restricted to cases 1.1 to 1.3, the decompositions into two
/// classes with nef components. This is the bound behind [`enriques_d0`].
pub fn enriques_nef_codim_bound(beta_sq: i64, d: i64) -> Result<CodimBound, LatticeError> {
    check_beta_sq(beta_sq)?;
    check_d(d)?;
    let mut terms = enriques_terms(beta_sq, d);
    terms.truncate(3);
    Ok(CodimBound::from_terms(terms))
}

/// `max(2 ceil(c) - 2, -2)`, the resulting lower bound for `N(beta)`.
pub fn n_lower_bound(codim_bound: &Surd) -> i64 {
    let c = codim_bound.ceil();
    let n = &c * BigInt::from(2) - BigInt::from(2);
    n.max(BigInt::from(-2)).to_i64().expect("bound fits in i64")
}

/// `ceil(num / (den * sqrt(m)))` for positive integers.
fn ceil_over_sqrt(num: i64, den: i64, m: i64) -> i64 {
    let x = Surd::sqrt(&Rational::new(1.into(), (den * den * m).into())).scale(&rat(num));
    x.ceil().to_i64().expect("threshold fits in i64")
}

/// Stabilization threshold `d(beta_0, i, j)` for a generic Enriques surface:
/// the max of `2`, `i + 1`, `ceil((i+j+2)/2)`, `ceil((i+j+6)/(2 sqrt(2 beta^2)))`
/// and `ceil(sqrt((2i+2j+6)/beta^2))`.
pub fn enriques_d0(beta_sq: i64, i: i64, j: i64) -> Result<i64, LatticeError> {
    check_beta_sq(beta_sq)?;
    if i < 0 || j < 0 {
        return Err(LatticeError::Invalid(format!("(i, j) = ({i}, {j}) must be nonnegative")));
    }
    let s = i + j;
    let t3 = Rational::new((s + 2).into(), 2.into()).ceil().to_integer().to_i64().expect("small");
    let t4 = ceil_over_sqrt(s + 6, 2, 2 * beta_sq);
    let t5 = Surd::sqrt(&Rational::new((2 * s + 6).into(), beta_sq.into()))
        .ceil()
        .to_i64()
        .expect("small");
    Ok([2, i + 1, t3, t4, t5].into_iter().max().expect("nonempty"))
}

/// `p_a(beta) = beta^2/2 + 1` on a surface with numerically trivial `K_S`.
pub fn arithmetic_genus(beta_sq: i64) -> Result<i64, LatticeError> {
    if beta_sq % 2 != 0 {
        return Err(LatticeError::InvalidSelfIntersection(beta_sq));
    }
    Ok(beta_sq / 2 + 1)
}

/// A nonzero nef effective divisor on an Enriques surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnriquesDivisor {
    /// `D^2 > 0`.
    Big { self_intersection: i64 },
    /// `D = kE` or `D = kE + K_S` with `E` primitive, `E^2 = 0`.
    Isotropic { k: i64, with_canonical: bool },
}

/// `dim |D|`: `D^2/2` when `D^2 > 0`, otherwise `floor(k/2)` for `kE` and
/// `floor((k-1)/2)` for `kE + K_S`.
pub fn enriques_dim_ls(divisor: EnriquesDivisor) -> Result<i64, LatticeError> {
    match divisor {
        EnriquesDivisor::Big { self_intersection: s } => {
            if s <= 0 || s % 2 != 0 {
                return Err(LatticeError::InvalidSelfIntersection(s));
            }
            Ok(s / 2)
        }
        EnriquesDivisor::Isotropic { k, with_canonical } => {
            if k < 1 {
                return Err(LatticeError::Invalid(format!("multiplicity k = {k} must be positive")));
            }
            Ok(if with_canonical { Integer::div_floor(&(k - 1), &2) } else { Integer::div_floor(&k, &2) })
        }
    }
}

/// `chi(O_S(D)) = s t gamma` for `D` of numerical class `sA + tB`.
pub fn bielliptic_chi(s: &Rational, t: &Rational, gamma: i64) -> Rational {
    s * t * rat(gamma)
}

/// `beta = a lambda A + b mu B` on a bielliptic surface with `A.B = gamma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiellipticParams {
    a: i64,
    b: i64,
    lambda: Rational,
    mu: Rational,
    gamma: i64,
}

impl BiellipticParams {
    /// Requires positive parameters and `a b lambda mu gamma` integral.
    pub fn new(a: i64, b: i64, lambda: Rational, mu: Rational, gamma: i64) -> Result<Self, LatticeError> {
        if a <= 0 || b <= 0 || gamma <= 0 || !lambda.is_positive() || !mu.is_positive() {
            return Err(LatticeError::InvalidParams(format!(
                "a, b, lambda, mu, gamma must be positive, got ({a}, {b}, {lambda}, {mu}, {gamma})"
            )));
        }
        let p = BiellipticParams { a, b, lambda, mu, gamma };
        if !p.chi().is_integer() {
            return Err(LatticeError::InvalidParams(format!(
                "a b lambda mu gamma = {} is not an integer",
                p.chi()
            )));
        }
        Ok(p)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    pub fn gamma(&self) -> i64 {
        self.gamma
    }

    /// `chi(O_S(beta)) = a b lambda mu gamma`.
    fn chi(&self) -> Rational {
        bielliptic_chi(&(rat(self.a) * &self.lambda), &(rat(self.b) * &self.mu), self.gamma)
    }

    /// `beta^2 = 2 a b lambda mu gamma`.
    pub fn beta_sq(&self) -> Rational {
        rat(2) * self.chi()
    }

    /// `dim |d beta| = d^2 a b lambda mu gamma - 1`.
    pub fn dim_linear_system(&self, d: i64) -> Rational {
        rat(d * d) * self.chi() - Rational::one()
    }
}

/// Lower bound for `codim(|d beta| \ |d beta|^int, |d beta|)` on a bielliptic
/// surface, over the case with all `a_i, b_i > 0` and the three distinct
/// expressions of the case where some `a_i` or `b_i` vanishes.
pub fn bielliptic_codim_bound(p: &BiellipticParams, d: i64) -> Result<CodimBound, LatticeError> {
    check_d(d)?;
    let dd = rat(d);
    let gamma = rat(p.gamma);
    let da_l = &dd * rat(p.a) * &p.lambda;
    let db_m = &dd * rat(p.b) * &p.mu;
    let terms = vec![
        ("1", Surd::sqrt(&p.beta_sq()).scale(&dd).add_rational(&rat(-1))),
        // a_1 = 0, b_2 > 0
        ("2 (a_i = 0)", Surd::rational((&da_l - Rational::one()) * &p.mu * &gamma + Rational::one())),
        // b_1 = 0, a_2 > 0
        ("2 (b_i = 0)", Surd::rational((&db_m - Rational::one()) * &p.lambda * &gamma + Rational::one())),
        // a_1 = 0, b_2 = 0
        (
            "2 (a_1 = b_2 = 0)",
            Surd::rational(&dd * &dd * p.chi() - &db_m * &gamma - &da_l * &gamma),
        ),
    ];
    Ok(CodimBound::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn unit_params() -> BiellipticParams {
        BiellipticParams::new(1, 1, r(1, 1), r(1, 1), 2).unwrap()
    }

    #[test]
    fn enriques_bound_examples() {
        let b = enriques_codim_bound(10, 10).unwrap();
        assert_eq!(b.value, Surd::integer(5));
        assert_eq!(b.attained_by, vec!["2.1"]);
        assert_eq!(n_lower_bound(&b.value), 8);
        // cases 1.1 and 1.3 both give 0 here
        let b = enriques_codim_bound(2, 1).unwrap();
        assert_eq!(b.value, Surd::integer(0));
        assert_eq!(b.attained_by, vec!["1.1", "1.3"]);
        assert!(enriques_codim_bound(3, 1).is_err());
        assert!(enriques_codim_bound(10, 0).is_err());
    }

    #[test]
    fn n_lower_bound_examples() {
        assert_eq!(n_lower_bound(&Surd::integer(5)), 8);
        assert_eq!(n_lower_bound(&Surd::rational(r(1, 2))), 0);
        assert_eq!(n_lower_bound(&Surd::integer(0)), -2);
        assert_eq!(n_lower_bound(&Surd::integer(-7)), -2);
    }

    #[test]
    fn d0_examples() {
        assert_eq!(enriques_d0(10, 2, 3).unwrap(), 4);
        assert_eq!(enriques_d0(10, 0, 0).unwrap(), 2);
        assert_eq!(enriques_d0(2, 5, 0).unwrap(), 6);
        assert_eq!(enriques_d0(2, 0, 10).unwrap(), 6);
        assert!(enriques_d0(1, 0, 0).is_err());
    }

    #[test]
    fn genus_and_dimensions() {
        assert_eq!(arithmetic_genus(10).unwrap(), 6);
        assert_eq!(arithmetic_genus(0).unwrap(), 1);
        assert!(arithmetic_genus(3).is_err());
        assert_eq!(enriques_dim_ls(EnriquesDivisor::Big { self_intersection: 10 }).unwrap(), 5);
        assert_eq!(enriques_dim_ls(EnriquesDivisor::Isotropic { k: 3, with_canonical: false }).unwrap(), 1);
        assert_eq!(enriques_dim_ls(EnriquesDivisor::Isotropic { k: 3, with_canonical: true }).unwrap(), 1);
        assert_eq!(enriques_dim_ls(EnriquesDivisor::Isotropic { k: 1, with_canonical: true }).unwrap(), 0);
        assert!(enriques_dim_ls(EnriquesDivisor::Big { self_intersection: 7 }).is_err());
        // dim|beta| + p_a = beta^2 + chi(O_S)
        for s in (2..40).step_by(2) {
            let dim = enriques_dim_ls(EnriquesDivisor::Big { self_intersection: s }).unwrap();
            assert_eq!(dim + arithmetic_genus(s).unwrap(), s + 1);
        }
    }

    #[test]
    fn bielliptic_examples() {
        assert_eq!(bielliptic_chi(&r(1, 1), &r(1, 1), 2), r(2, 1));
        assert_eq!(bielliptic_chi(&r(0, 1), &r(5, 3), 4), r(0, 1));
        assert_eq!(bielliptic_chi(&r(3, 1), &r(2, 1), 3), r(18, 1));

        let p = unit_params();
        let b = bielliptic_codim_bound(&p, 3).unwrap();
        assert_eq!(b.value, Surd::integer(5));
        assert_eq!(b.attained_by, vec!["1", "2 (a_i = 0)", "2 (b_i = 0)"]);
        assert_eq!(b.terms[3].1, Surd::integer(6));
        assert_eq!(n_lower_bound(&b.value), 8);
        assert_eq!(bielliptic_codim_bound(&p, 1).unwrap().value, Surd::integer(-2));
        assert_eq!(p.dim_linear_system(3), r(17, 1));
    }

    #[test]
    fn bielliptic_params_validation() {
        assert!(BiellipticParams::new(0, 1, r(1, 1), r(1, 1), 2).is_err());
        assert!(BiellipticParams::new(1, 1, r(-1, 1), r(1, 1), 2).is_err());
        assert!(BiellipticParams::new(1, 1, r(1, 3), r(1, 1), 2).is_err());
        assert!(BiellipticParams::new(3, 1, r(1, 3), r(1, 2), 2).is_ok());
    }
}
