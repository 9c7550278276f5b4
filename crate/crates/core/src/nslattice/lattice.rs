//! Numerical lattices `Num(S)` and decompositions `beta = theta_1 + theta_2`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LatticeError;
use crate::Rational;

/// Integer coordinates of a class in the basis of the Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass {
    pub coords: Vec<i64>,
}

impl DivisorClass {
    pub fn new(coords: Vec<i64>) -> Self {
        DivisorClass { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn sub(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }
}

impl FromStr for DivisorClass {
    type Err = LatticeError;

    /// Comma separated integers, e.g. `"1,1"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coords = s
            .split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| LatticeError::Invalid(format!("class {s:?}: {e}")))?;
        Ok(DivisorClass { coords })
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// On-disk form of a [`LatticeModel`].
///
/// ```toml
/// rank = 2
/// gram = [0, 2, 2, 0]                      # row-major, symmetric
/// ample_witness = [1, 3]                   # H, with H.H > 0
/// ortho_basis = [["1", "1"], ["1", "-1"]]  # D_1 .. D_rank, entries "p/q"
/// ample_tests = [2]                        # n_l with A_l = n_l D_1 + D_l ample
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    pub rank: usize,
    pub gram: Vec<i64>,
    pub ample_witness: Vec<i64>,
    pub ortho_basis: Vec<Vec<String>>,
    pub ample_tests: Vec<i64>,
}

/// A lattice with intersection form, an ample class `H` and an orthogonal
/// basis `D_1, ..., D_rank` with `D_1^2 > 0 > D_l^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeModel {
    rank: usize,
    gram: Vec<Vec<i64>>,
    ample_witness: DivisorClass,
    ortho_basis: Vec<Vec<Rational>>,
    ample_tests: Vec<i64>,
}

const BIELLIPTIC_PRESET: &str = include_str!("../../data/bielliptic-rank2.toml");
const ENRIQUES_PRESET: &str = include_str!("../../data/enriques-u-e8.toml");

fn parse_rational(s: &str) -> Result<Rational, LatticeError> {
    let bad = || LatticeError::Invalid(format!("not a rational number: {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

impl LatticeModel {
    pub fn from_config(cfg: LatticeConfig) -> Result<Self, LatticeError> {
        let n = cfg.rank;
        let invalid = |msg: String| Err(LatticeError::Invalid(msg));
        if n == 0 {
            return invalid("rank must be positive".into());
        }
        if cfg.gram.len() != n * n {
            return invalid(format!("gram has {} entries, expected {}", cfg.gram.len(), n * n));
        }
        let gram: Vec<Vec<i64>> = cfg.gram.chunks(n).map(<[i64]>::to_vec).collect();
        for (i, row) in gram.iter().enumerate() {
            for (j, &g) in row.iter().enumerate().take(i) {
                if g != gram[j][i] {
                    return invalid(format!("gram is not symmetric at ({i}, {j})"));
                }
            }
        }
        if cfg.ample_witness.len() != n {
            return invalid(format!("ample_witness has length {}, expected {n}", cfg.ample_witness.len()));
        }
        if cfg.ortho_basis.len() != n || cfg.ortho_basis.iter().any(|v| v.len() != n) {
            return invalid(format!("ortho_basis must be {n} vectors of length {n}"));
        }
        let ortho_basis = cfg
            .ortho_basis
            .iter()
            .map(|v| v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        if cfg.ample_tests.len() != n - 1 {
            return invalid(format!("ample_tests has length {}, expected {}", cfg.ample_tests.len(), n - 1));
        }
        let model = LatticeModel {
            rank: n,
            gram,
            ample_witness: DivisorClass::new(cfg.ample_witness),
            ortho_basis,
            ample_tests: cfg.ample_tests,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn from_toml(text: &str) -> Result<Self, LatticeError> {
        let cfg: LatticeConfig = toml::from_str(text).map_err(|e| LatticeError::Config(e.to_string()))?;
        LatticeModel::from_config(cfg)
    }

    /// `"bielliptic-rank2"` or `"enriques-u-e8"`.
    pub fn preset(name: &str) -> Option<Self> {
        let text = match name {
            "bielliptic-rank2" => BIELLIPTIC_PRESET,
            "enriques-u-e8" => ENRIQUES_PRESET,
            _ => return None,
        };
        Some(LatticeModel::from_toml(text).expect("bundled preset is valid"))
    }

    fn validate(&self) -> Result<(), LatticeError> {
        let h2 = self.pair_int(&self.ample_witness.coords, &self.ample_witness.coords);
        if h2 <= 0 {
            return Err(LatticeError::Invalid(format!("ample witness has H.H = {h2} <= 0")));
        }
        let d = &self.ortho_basis;
        for i in 0..self.rank {
            for j in 0..i {
                let p = self.pair_rat(&d[i], &d[j]);
                if !p.is_zero() {
                    return Err(LatticeError::Invalid(format!("D_{} . D_{} = {p}, expected 0", j + 1, i + 1)));
                }
            }
        }
        let squares: Vec<Rational> = d.iter().map(|v| self.pair_rat(v, v)).collect();
        let positive: Vec<usize> = (0..self.rank).filter(|&l| squares[l].is_positive()).collect();
        if positive.len() > 1 || !squares[0].is_positive() || squares.iter().skip(1).any(|s| !s.is_negative()) {
            return Err(LatticeError::HodgeIndex {
                squares: squares.iter().map(ToString::to_string).collect(),
            });
        }
        let h = self.to_rational(&self.ample_witness);
        if !self.pair_rat(&d[0], &h).is_positive() {
            return Err(LatticeError::Invalid("D_1 . H must be positive".into()));
        }
        for (l, n) in self.ample_tests.iter().enumerate() {
            let a = self.ample_test_class(l + 1);
            let a2 = self.pair_rat(&a, &a);
            if *n <= 0 || !a2.is_positive() {
                return Err(LatticeError::Invalid(format!(
                    "A_{} = {n} D_1 + D_{} has square {a2}, need n > 0 and A^2 > 0",
                    l + 2,
                    l + 2
                )));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn ample_witness(&self) -> &DivisorClass {
        &self.ample_witness
    }

    pub fn ortho_basis(&self) -> &[Vec<Rational>] {
        &self.ortho_basis
    }

    pub fn ample_tests(&self) -> &[i64] {
        &self.ample_tests
    }

    fn pair_int(&self, x: &[i64], y: &[i64]) -> i64 {
        x.iter()
            .zip(&self.gram)
            .map(|(xi, row)| xi * row.iter().zip(y).map(|(g, yj)| g * yj).sum::<i64>())
            .sum()
    }

    fn pair_rat(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (xi, row) in x.iter().zip(&self.gram) {
            for (yj, &g) in y.iter().zip(row) {
                if g != 0 {
                    s += xi * yj * Rational::from_integer(g.into());
                }
            }
        }
        s
    }

    fn to_rational(&self, c: &DivisorClass) -> Vec<Rational> {
        c.coords.iter().map(|&v| Rational::from_integer(v.into())).collect()
    }

    /// `x . y`.
    pub fn intersect(&self, x: &DivisorClass, y: &DivisorClass) -> i64 {
        self.pair_int(&x.coords, &y.coords)
    }

    /// `A_l = n_l D_1 + D_l` for `l = 1..rank-1` (zero based index into `D`).
    fn ample_test_class(&self, l: usize) -> Vec<Rational> {
        let n = Rational::from_integer(self.ample_tests[l - 1].into());
        self.ortho_basis[0]
            .iter()
            .zip(&self.ortho_basis[l])
            .map(|(a, b)| &n * a + b)
            .collect()
    }

    /// Linear forms whose positivity is tested on each piece: `D_1`, every
    /// `A_l` and `H`, as `x -> sum_k form[k] x_k`.
    fn positivity_forms(&self) -> Vec<Vec<Rational>> {
        let gram_times = |v: &[Rational]| -> Vec<Rational> {
            (0..self.rank)
                .map(|k| {
                    (0..self.rank)
                        .map(|i| &v[i] * Rational::from_integer(self.gram[i][k].into()))
                        .sum()
                })
                .collect()
        };
        let mut forms = vec![gram_times(&self.ortho_basis[0])];
        for l in 1..self.rank {
            forms.push(gram_times(&self.ample_test_class(l)));
        }
        forms.push(gram_times(&self.to_rational(&self.ample_witness)));
        forms
    }

    /// `D_1 . theta > 0`, `A_l . theta > 0` and `H . theta > 0`.
    pub fn is_positive(&self, theta: &DivisorClass) -> bool {
        let x = self.to_rational(theta);
        self.positivity_forms().iter().all(|f| eval(f, &x).is_positive())
    }
}

fn eval(form: &[Rational], x: &[Rational]) -> Rational {
    form.iter().zip(x).map(|(a, b)| a * b).sum()
}

fn floor_i64(r: &Rational) -> i64 {
    r.floor().to_integer().to_i64().expect("enumeration bound fits in i64")
}

fn ceil_i64(r: &Rational) -> i64 {
    r.ceil().to_integer().to_i64().expect("enumeration bound fits in i64")
}

/// Integer points `x` with `lo_l <= rows_l . x <= hi_l` for every row, all
/// in integers.
struct BoxSearch {
    rows: Vec<Vec<i128>>,
    lo: Vec<i128>,
    hi: Vec<i128>,
    /// closed integer box containing the region
    bounds: Vec<(i64, i64)>,
    order: Vec<usize>,
}

fn div_floor(a: i128, b: i128) -> i128 {
    num_integer::Integer::div_floor(&a, &b)
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

impl BoxSearch {
    /// Scales row `l` to integer coefficients; `lo < row . x < hi` becomes an
    /// inclusive integer range.
    fn new(rows: &[Vec<Rational>], lo: &[Rational], hi: &[Rational], bounds: Vec<(i64, i64)>) -> Self {
        let mut int_rows = Vec::with_capacity(rows.len());
        let (mut int_lo, mut int_hi) = (Vec::new(), Vec::new());
        for ((row, l), h) in rows.iter().zip(lo).zip(hi) {
            let den = row
                .iter()
                .fold(BigInt::from(1), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
            let scale = Rational::from_integer(den);
            let to_i128 = |r: &Rational| r.to_integer().to_i128().expect("lattice row fits in i128");
            int_rows.push(row.iter().map(|c| to_i128(&(c * &scale))).collect());
            int_lo.push(to_i128(&(l * &scale).floor()) + 1);
            int_hi.push(to_i128(&(h * &scale).ceil()) - 1);
        }
        let order = search_order(&int_rows, &bounds);
        BoxSearch {
            rows: int_rows,
            lo: int_lo,
            hi: int_hi,
            bounds,
            order,
        }
    }

    /// Tightened range of variable `k`; `sums[l]` is row `l` on the fixed
    /// variables and `spread[l]` the `(min, max)` over the free ones.
    fn range(&self, k: usize, sums: &[i128], spread: &[(i128, i128)]) -> Option<(i64, i64)> {
        let (mut lo, mut hi) = (i128::from(self.bounds[k].0), i128::from(self.bounds[k].1));
        let (a, b) = (lo, hi);
        for (l, row) in self.rows.iter().enumerate() {
            let c = row[k];
            if c == 0 {
                continue;
            }
            let (own_lo, own_hi) = if c > 0 { (c * a, c * b) } else { (c * b, c * a) };
            let others_lo = sums[l] + spread[l].0 - own_lo;
            let others_hi = sums[l] + spread[l].1 - own_hi;
            // lo_l - others_hi <= c x_k <= hi_l - others_lo
            let (p, q) = (self.lo[l] - others_hi, self.hi[l] - others_lo);
            let (xlo, xhi) = if c > 0 {
                (div_ceil(p, c), div_floor(q, c))
            } else {
                (div_ceil(q, c), div_floor(p, c))
            };
            lo = lo.max(xlo);
            hi = hi.min(xhi);
            if lo > hi {
                return None;
            }
        }
        Some((lo as i64, hi as i64))
    }

    fn run(&self) -> Vec<Vec<i64>> {
        let mut spread: Vec<(i128, i128)> = self
            .rows
            .iter()
            .map(|row| {
                row.iter().zip(&self.bounds).fold((0, 0), |(lo, hi), (&c, &(a, b))| {
                    let (ta, tb) = (c * i128::from(a), c * i128::from(b));
                    (lo + ta.min(tb), hi + ta.max(tb))
                })
            })
            .collect();
        let mut sums = vec![0i128; self.rows.len()];
        let mut point = vec![0i64; self.bounds.len()];
        let mut out = Vec::new();
        self.step(0, &mut sums, &mut spread, &mut point, &mut out);
        out
    }

    fn step(
        &self,
        depth: usize,
        sums: &mut [i128],
        spread: &mut [(i128, i128)],
        point: &mut [i64],
        out: &mut Vec<Vec<i64>>,
    ) {
        if depth == self.order.len() {
            if sums.iter().zip(self.lo.iter().zip(&self.hi)).all(|(s, (l, h))| l <= s && s <= h) {
                out.push(point.to_vec());
            }
            return;
        }
        let k = self.order[depth];
        let Some((lo, hi)) = self.range(k, sums, spread) else { return };
        let (a, b) = (i128::from(self.bounds[k].0), i128::from(self.bounds[k].1));
        let own: Vec<(i128, i128)> = self
            .rows
            .iter()
            .map(|row| {
                let c = row[k];
                if c > 0 { (c * a, c * b) } else { (c * b, c * a) }
            })
            .collect();
        for (l, o) in own.iter().enumerate() {
            spread[l].0 -= o.0;
            spread[l].1 -= o.1;
        }
        for v in lo..=hi {
            point[k] = v;
            for (l, row) in self.rows.iter().enumerate() {
                sums[l] += row[k] * i128::from(v);
            }
            self.step(depth + 1, sums, spread, point, out);
            for (l, row) in self.rows.iter().enumerate() {
                sums[l] -= row[k] * i128::from(v);
            }
        }
        for (l, o) in own.iter().enumerate() {
            spread[l].0 += o.0;
            spread[l].1 += o.1;
        }
    }
}

/// Variable order that makes the search exact when `rows` is triangular up
/// to permutation: repeatedly fix the variable of a row with fewest free
/// variables.
fn search_order(rows: &[Vec<i128>], bounds: &[(i64, i64)]) -> Vec<usize> {
    let n = bounds.len();
    let mut free: Vec<bool> = vec![true; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let best_row = rows
            .iter()
            .map(|r| (0..n).filter(|&k| free[k] && r[k] != 0).collect::<Vec<_>>())
            .filter(|vars| !vars.is_empty())
            .min_by_key(Vec::len);
        let candidates = best_row.unwrap_or_else(|| (0..n).filter(|&k| free[k]).collect());
        let k = *candidates
            .iter()
            .min_by_key(|&&k| bounds[k].1 - bounds[k].0)
            .expect("a free variable remains");
        free[k] = false;
        order.push(k);
    }
    order
}

/// All pairs `(theta_1, theta_2)` of integral classes with
/// `theta_1 + theta_2 = beta` and `D_1 . theta_i > 0`, `A_l . theta_i > 0`,
/// `H . theta_i > 0`, sorted by `theta_1`.
///
/// In ortho coordinates `theta_1 = sum a_{1,l} D_l` the conditions confine
/// `a_{1,1}` to `(0, a_1)` and each `a_{1,l}` to
/// `(a_l - n_l a_1 D_1^2/|D_l^2|, n_l a_1 D_1^2/|D_l^2|)`, a bounded box.
/// Integer points are enumerated inside that box, pruning with interval
/// bounds from the box and from `0 < f(theta_1) < f(beta)` for every
/// positivity form `f`, and then filtered exactly.
pub fn decompose(model: &LatticeModel, beta: &DivisorClass) -> Result<Vec<(DivisorClass, DivisorClass)>, LatticeError> {
    let n = model.rank;
    if beta.rank() != n {
        return Err(LatticeError::DimensionMismatch {
            expected: n,
            actual: beta.rank(),
        });
    }
    let h_beta = model.intersect(&model.ample_witness, beta);
    if h_beta <= 0 {
        return Err(LatticeError::NotEffectiveCandidate { h_dot_beta: h_beta });
    }
    let d = &model.ortho_basis;
    let squares: Vec<Rational> = d.iter().map(|v| model.pair_rat(v, v)).collect();
    let bx = model.to_rational(beta);
    // ortho coordinates: a_l(x) = (D_l . x) / D_l^2, a linear form in x
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|l| {
            (0..n)
                .map(|k| {
                    let dl_gk: Rational = (0..n)
                        .map(|i| &d[l][i] * Rational::from_integer(model.gram[i][k].into()))
                        .sum();
                    dl_gk / &squares[l]
                })
                .collect()
        })
        .collect();
    let a: Vec<Rational> = rows.iter().map(|r| eval(r, &bx)).collect();
    if !a[0].is_positive() {
        return Ok(Vec::new());
    }
    let mut lo = vec![Rational::zero(); n];
    let mut hi = vec![a[0].clone(); n];
    for l in 1..n {
        let reach = Rational::from_integer(model.ample_tests[l - 1].into()) * &a[0] * &squares[0] / squares[l].abs();
        lo[l] = &a[l] - &reach;
        hi[l] = reach;
        if lo[l] >= hi[l] {
            return Ok(Vec::new());
        }
    }
    // x = sum_l a_l D_l, so each coordinate lies in an interval
    let bounds: Vec<(i64, i64)> = (0..n)
        .map(|k| {
            let (mut xlo, mut xhi) = (Rational::zero(), Rational::zero());
            for l in 0..n {
                let c = &d[l][k];
                let (p, q) = (c * &lo[l], c * &hi[l]);
                if p <= q {
                    xlo += p;
                    xhi += q;
                } else {
                    xlo += q;
                    xhi += p;
                }
            }
            (ceil_i64(&xlo), floor_i64(&xhi))
        })
        .collect();
    if bounds.iter().any(|(l, h)| l > h) {
        return Ok(Vec::new());
    }
    // each positivity form f gives 0 < f(theta_1) < f(beta) as well
    let forms = model.positivity_forms();
    let mut rows = rows;
    for f in &forms {
        rows.push(f.clone());
        lo.push(Rational::zero());
        hi.push(eval(f, &bx));
    }
    let points = BoxSearch::new(&rows, &lo, &hi, bounds).run();

    let mut pairs: Vec<(DivisorClass, DivisorClass)> = points
        .into_iter()
        .map(DivisorClass::new)
        .filter_map(|t1| {
            let t2 = beta.sub(&t1);
            let ok = [&t1, &t2].iter().all(|t| {
                let x = model.to_rational(t);
                forms.iter().all(|f| eval(f, &x).is_positive())
            });
            ok.then_some((t1, t2))
        })
        .collect();
    pairs.sort();
    Ok(pairs)
}

/// Reference enumeration: every `theta_1` in `[-radius, radius]^rank`.
pub fn decompose_brute_force(
    model: &LatticeModel,
    beta: &DivisorClass,
    radius: i64,
) -> Result<Vec<(DivisorClass, DivisorClass)>, LatticeError> {
    let n = model.rank;
    if beta.rank() != n {
        return Err(LatticeError::DimensionMismatch {
            expected: n,
            actual: beta.rank(),
        });
    }
    let mut pairs = Vec::new();
    let mut x = vec![-radius; n];
    loop {
        let t1 = DivisorClass::new(x.clone());
        let t2 = beta.sub(&t1);
        if model.is_positive(&t1) && model.is_positive(&t2) {
            pairs.push((t1, t2));
        }
        let mut k = n;
        loop {
            if k == 0 {
                pairs.sort();
                return Ok(pairs);
            }
            k -= 1;
            if x[k] < radius {
                x[k] += 1;
                break;
            }
            x[k] = -radius;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(c: &[i64]) -> DivisorClass {
        DivisorClass::new(c.to_vec())
    }

    #[test]
    fn bielliptic_preset_examples() {
        let m = LatticeModel::preset("bielliptic-rank2").unwrap();
        let pairs = decompose(&m, &class(&[1, 1])).unwrap();
        assert_eq!(
            pairs,
            vec![(class(&[0, 1]), class(&[1, 0])), (class(&[1, 0]), class(&[0, 1]))]
        );
        let pairs = decompose(&m, &class(&[2, 2])).unwrap();
        assert_eq!(pairs.len(), 7);
        for (t1, t2) in &pairs {
            assert!(t1.coords.iter().chain(&t2.coords).all(|&c| (0..=2).contains(&c)));
        }
        assert!(decompose(&m, &class(&[1, 0])).unwrap().is_empty());
    }

    #[test]
    fn matches_brute_force_on_preset() {
        let m = LatticeModel::preset("bielliptic-rank2").unwrap();
        for b in [[1, 1], [2, 2], [3, 1], [1, 4], [5, 5], [2, 0]] {
            let beta = class(&b);
            assert_eq!(decompose(&m, &beta).unwrap(), decompose_brute_force(&m, &beta, 20).unwrap());
        }
    }

    #[test]
    fn rejects_non_effective_beta() {
        let m = LatticeModel::preset("bielliptic-rank2").unwrap();
        assert!(matches!(
            decompose(&m, &class(&[-1, 0])),
            Err(LatticeError::NotEffectiveCandidate { .. })
        ));
        assert!(matches!(
            decompose(&m, &class(&[1, 0, 0])),
            Err(LatticeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn validation_catches_bad_models() {
        let base = LatticeConfig {
            rank: 2,
            gram: vec![0, 2, 2, 0],
            ample_witness: vec![1, 3],
            ortho_basis: vec![vec!["1".into(), "1".into()], vec!["1".into(), "-1".into()]],
            ample_tests: vec![2],
        };
        assert!(LatticeModel::from_config(base.clone()).is_ok());

        let mut c = base.clone();
        c.gram = vec![0, 2, 1, 0];
        assert!(matches!(LatticeModel::from_config(c), Err(LatticeError::Invalid(_))));

        // two vectors of positive square
        let mut c = base.clone();
        c.gram = vec![1, 0, 0, 1];
        c.ortho_basis = vec![vec!["1".into(), "0".into()], vec!["0".into(), "1".into()]];
        assert!(matches!(LatticeModel::from_config(c), Err(LatticeError::HodgeIndex { .. })));

        let mut c = base.clone();
        c.ortho_basis[1] = vec!["1".into(), "0".into()];
        assert!(matches!(LatticeModel::from_config(c), Err(LatticeError::Invalid(_))));

        let mut c = base.clone();
        c.ample_witness = vec![1, 0];
        assert!(matches!(LatticeModel::from_config(c), Err(LatticeError::Invalid(_))));

        // A_2 = D_1 + 2 D_2 would have negative square
        let mut c = base.clone();
        c.ortho_basis[1] = vec!["2".into(), "-2".into()];
        c.ample_tests = vec![1];
        assert!(matches!(LatticeModel::from_config(c), Err(LatticeError::Invalid(_))));

        let mut c = base;
        c.ortho_basis[0][0] = "1/0".into();
        assert!(LatticeModel::from_config(c).is_err());
    }

    #[test]
    fn toml_round_trip() {
        let text = "rank = 2\ngram = [0, 2, 2, 0]\nample_witness = [1, 3]\n\
                    ortho_basis = [[\"1\", \"1\"], [\"1/2\", \"-1/2\"]]\nample_tests = [1]\n";
        let m = LatticeModel::from_toml(text).unwrap();
        assert_eq!(m.ortho_basis()[1][0], Rational::new(1.into(), 2.into()));
        assert!(matches!(LatticeModel::from_toml("rank = 2"), Err(LatticeError::Config(_))));
    }

    #[test]
    fn enriques_preset_enumerates() {
        let m = LatticeModel::preset("enriques-u-e8").unwrap();
        assert_eq!(m.rank(), 10);
        let mut beta = vec![0i64; 10];
        beta[0] = 2;
        let beta = DivisorClass::new(beta);
        let pairs = decompose(&m, &beta).unwrap();
        for (t1, t2) in &pairs {
            assert!(m.is_positive(t1) && m.is_positive(t2));
            assert_eq!(&t1.coords.iter().zip(&t2.coords).map(|(a, b)| a + b).collect::<Vec<_>>(), &beta.coords);
        }
        assert!(!pairs.is_empty());
        // swapping the pieces is an involution on the result
        let mut swapped: Vec<_> = pairs.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        swapped.sort();
        assert_eq!(swapped, pairs);
    }
}
