use std::path::Path;

use clap::{ArgGroup, Subcommand};
use serde::Deserialize;
use serde_json::Value;

use stabctab_core::genfunc::{
    remark_identity_sides, stable_betti_numbers, stable_perverse_table, GenfuncError,
};
use stabctab_core::germ::{
    branch_count, delta, milnor, shipped_corpus, tjurina, BranchSpec, GermError,
};
use stabctab_core::nslattice::{
    bielliptic_codim_bound, decompose as decompose_class, enriques_codim_bound, enriques_d0,
    n_lower_bound, CodimBound, LatticeError,
};
use stabctab_core::perverse::{oracle_report, PerverseError};
use stabctab_core::series::{Grading, Key, QtGrading};
use stabctab_core::{
    BiellipticParams, BranchSet, CurveGerm, DivisorClass, LatticeModel, PerverseTable, Rational,
    SurfaceTopology, TruncatedBiSeries,
};

use crate::output::{object, text, Report};
use crate::{Failure, SurfaceArgs};

#[derive(Debug, Subcommand)]
pub enum BoundsSurface {
    /// Enriques surface: codimension bound at multiple d, and/or the
    /// threshold d0 for degrees (i, j).
    #[command(group(ArgGroup::new("query").required(true).multiple(true).args(["d", "i"])))]
    Enriques {
        #[arg(long)]
        beta_sq: i64,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long, requires = "j")]
        i: Option<i64>,
        #[arg(long, requires = "i")]
        j: Option<i64>,
    },
    /// Bielliptic surface with beta = a lambda A + b mu B and A.B = gamma.
    Bielliptic {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        gamma: i64,
        #[arg(long)]
        d: i64,
    },
}

impl From<GenfuncError> for Failure {
    fn from(e: GenfuncError) -> Self {
        match e {
            GenfuncError::InternalIdentityFailure { .. } => Failure::Internal(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<PerverseError> for Failure {
    fn from(e: PerverseError) -> Self {
        match e {
            PerverseError::Genfunc(g) => g.into(),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<GermError> for Failure {
    fn from(e: GermError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn check_order(order: u32, cap: u32) -> Result<(), Failure> {
    if order > cap {
        return Err(Failure::Usage(format!(
            "order {order} exceeds the cap {cap} (raise STABCTAB_MAX_ORDER to allow it)"
        )));
    }
    Ok(())
}

fn surface(args: &SurfaceArgs, report: &mut Report) -> Result<SurfaceTopology, Failure> {
    let s = match (&args.surface, args.b1, args.b2) {
        (Some(name), _, _) => {
            report.param("surface", name);
            SurfaceTopology::preset(name)
                .ok_or_else(|| Failure::Usage(format!("unknown surface {name:?}; use enriques or bielliptic")))?
        }
        (None, Some(b1), Some(b2)) => SurfaceTopology::new(b1, b2, 0)?,
        _ => return Err(Failure::Usage("give --b1 and --b2, or --surface".into())),
    };
    report.param("b1", s.b1()).param("b2", s.b2());
    Ok(s)
}

fn monomial(key: Key) -> String {
    let name = QtGrading::monomial_name(key);
    if name.is_empty() {
        "1".into()
    } else {
        name
    }
}

pub fn stable_betti(args: &SurfaceArgs, max_k: u32, cap: u32) -> Result<Report, Failure> {
    check_order(max_k, cap)?;
    let mut report = Report::new(
        "stable-betti",
        "coefficients of the limit n -> infinity of Göttsche's formula",
        vec!["k", "b_k"],
    );
    let s = surface(args, &mut report)?;
    report.param("max-k", max_k);
    let betti = stable_betti_numbers(&s, max_k)?;
    let mut rows = Vec::new();
    for (k, b) in betti.iter().enumerate() {
        report.row(vec![k.to_string(), b.to_string()]);
        rows.push(object([("k", text(k)), ("b", text(b))]));
    }
    report.result("betti", Value::Array(rows));
    Ok(report)
}

fn table_rows(report: &mut Report, table: &PerverseTable) -> Value {
    let mut entries: Vec<_> = table.nonzero().collect();
    entries.sort_by_key(|&((i, j), _)| (i + j, j));
    let mut rows = Vec::new();
    for ((i, j), n) in entries {
        report.row(vec![i.to_string(), j.to_string(), n.to_string()]);
        rows.push(object([("i", text(i)), ("j", text(j)), ("n", text(n))]));
    }
    Value::Array(rows)
}

pub fn perverse(args: &SurfaceArgs, max_order: u32, oracle: bool, cap: u32) -> Result<Report, Failure> {
    check_order(max_order, cap)?;
    let mut report = Report::new(
        "perverse",
        "coefficients of the stable perverse series H(q, t); with --oracle, also the relative Hilbert scheme recursion",
        vec!["i", "j", "n_ij"],
    );
    let s = surface(args, &mut report)?;
    report.param("max-order", max_order).param("oracle", oracle);
    let table = stable_perverse_table(&s, max_order)?;
    let rows = table_rows(&mut report, &table);
    report.result("entries", rows);
    if oracle {
        let r = oracle_report(&s, max_order)?;
        let verdict = match r.mismatch {
            None => "AGREE".to_owned(),
            Some(((i, j), tower, series)) => {
                report.verified = false;
                format!("DISAGREE at n^{{{i},{j}}}: recursion {tower}, series {series}")
            }
        };
        report.note(format!("oracle: {verdict}"));
        report.result("oracle", text(verdict));
    }
    Ok(report)
}

pub fn identity(args: &SurfaceArgs, order: u32, perturb: bool, cap: u32) -> Result<Report, Failure> {
    check_order(order, cap)?;
    let mut report = Report::new(
        "identity",
        "H(q,t)/(1-qt) against the Göttsche series at z = t, w = q/t, times (1-q/t)/(1-t^2)",
        vec!["key", "value"],
    );
    let s = surface(args, &mut report)?;
    report.param("order", order);
    let mut sides = remark_identity_sides(&s, order)?;
    if perturb {
        report.param("perturb", true);
        let key = if order == 0 { (0, 0) } else { (1, 0) };
        let bump = TruncatedBiSeries::monomial(Rational::from_integer(1.into()), key, order)
            .map_err(|e| Failure::Internal(e.to_string()))?;
        sides.lhs = sides.lhs.add(&bump).map_err(|e| Failure::Internal(e.to_string()))?;
    }
    match sides.first_mismatch() {
        None => {
            report.row(vec!["status".into(), "PASS".into()]);
            report.result("status", text("PASS"));
        }
        Some((key, lhs, rhs)) => {
            report.verified = false;
            let at = monomial(key);
            report
                .row(vec!["status".into(), "FAIL".into()])
                .row(vec!["monomial".into(), at.clone()])
                .row(vec!["lhs".into(), lhs.to_string()])
                .row(vec!["rhs".into(), rhs.to_string()]);
            report
                .result("status", text("FAIL"))
                .result("monomial", text(at))
                .result("lhs", text(lhs))
                .result("rhs", text(rhs));
        }
    }
    Ok(report)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BranchFile {
    truncation: u32,
    branches: Vec<BranchSpec>,
}

fn read_branches(path: &Path) -> Result<BranchSet, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let file: BranchFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let pairs: Vec<(&str, &str)> = file.branches.iter().map(|b| (b.x.as_str(), b.y.as_str())).collect();
    Ok(BranchSet::parse(&pairs, file.truncation)?)
}

pub fn germ(poly: &str, branches: Option<&Path>) -> Result<Report, Failure> {
    let mut report = Report::new(
        "germ",
        "local algebra dimensions by truncated linear algebra; Milnor's formula mu = 2 delta - r + 1",
        vec!["key", "value"],
    );
    report.param("poly", poly);
    let g = CurveGerm::parse(poly)?;
    let mu = milnor(&g)?;
    let tau = tjurina(&g)?;
    report.row(vec!["mu".into(), mu.to_string()]).row(vec!["tau".into(), tau.to_string()]);
    report.result("mu", text(mu)).result("tau", text(tau));
    if let Some(path) = branches {
        report.param("branches", path.display());
        let b = read_branches(path)?;
        let d = delta(&g, &b)?;
        let r = branch_count(&b);
        let holds = i64::from(mu) == 2 * i64::from(d) - i64::from(r) + 1;
        let verdict = if holds { "OK" } else { "FAIL" };
        report.verified = holds;
        report
            .row(vec!["delta".into(), d.to_string()])
            .row(vec!["r".into(), r.to_string()])
            .row(vec!["milnor_formula".into(), verdict.into()]);
        report
            .result("delta", text(d))
            .result("r", text(r))
            .result("milnor_formula", text(verdict));
    }
    Ok(report)
}

fn codim_rows(report: &mut Report, bound: &CodimBound) {
    let governing = bound.attained_by.join(" or ");
    let n = n_lower_bound(&bound.value);
    report
        .row(vec!["codim_bound".into(), bound.value.to_string()])
        .row(vec!["n_lower_bound".into(), n.to_string()])
        .row(vec!["governing_case".into(), governing.clone()]);
    for (case, v) in &bound.terms {
        report.row(vec![format!("case {case}"), v.to_string()]);
    }
    let cases = object(bound.terms.iter().map(|(c, v)| (*c, text(v))));
    report
        .result("codim_bound", text(&bound.value))
        .result("n_lower_bound", text(n))
        .result("governing_case", text(governing))
        .result("cases", cases);
}

pub fn bounds(query: &BoundsSurface) -> Result<Report, Failure> {
    match query {
        BoundsSurface::Enriques { beta_sq, d, i, j } => {
            let mut report = Report::new(
                "bounds enriques",
                "minimum of the case-by-case intersection bounds on an Enriques surface; d0 is the explicit stabilization threshold",
                vec!["key", "value"],
            );
            report.param("surface", "enriques").param("beta-sq", beta_sq);
            if let Some(d) = d {
                report.param("d", d);
                codim_rows(&mut report, &enriques_codim_bound(*beta_sq, *d)?);
            }
            if let (Some(i), Some(j)) = (i, j) {
                report.param("i", i).param("j", j);
                let d0 = enriques_d0(*beta_sq, *i, *j)?;
                report.row(vec!["d0".into(), d0.to_string()]);
                report.result("d0", text(d0));
            }
            Ok(report)
        }
        BoundsSurface::Bielliptic { a, b, lambda, mu, gamma, d } => {
            let mut report = Report::new(
                "bounds bielliptic",
                "minimum of the case-by-case intersection bounds on a bielliptic surface",
                vec!["key", "value"],
            );
            let parse = |name: &str, s: &str| {
                s.trim()
                    .parse::<Rational>()
                    .map_err(|_| Failure::Usage(format!("--{name} {s:?} is not a rational number")))
            };
            let (lambda, mu) = (parse("lambda", lambda)?, parse("mu", mu)?);
            report
                .param("surface", "bielliptic")
                .param("a", a)
                .param("b", b)
                .param("lambda", &lambda)
                .param("mu", &mu)
                .param("gamma", gamma)
                .param("d", d);
            let p = BiellipticParams::new(*a, *b, lambda, mu, *gamma)?;
            codim_rows(&mut report, &bielliptic_codim_bound(&p, *d)?);
            let dim = p.dim_linear_system(*d);
            report.row(vec!["dim_linear_system".into(), dim.to_string()]);
            report.result("dim_linear_system", text(dim));
            Ok(report)
        }
    }
}

pub fn decompose(lattice: Option<&Path>, preset: Option<&str>, beta: &str) -> Result<Report, Failure> {
    let mut report = Report::new(
        "decompose",
        "integer pairs theta1 + theta2 = beta positive against D_1, every A_l and H, enumerated in orthogonal coordinates",
        vec!["theta1", "theta2"],
    );
    let model = match (lattice, preset) {
        (Some(path), _) => {
            report.param("lattice", path.display());
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            LatticeModel::from_toml(&text)?
        }
        (None, Some(name)) => {
            report.param("preset", name);
            LatticeModel::preset(name).ok_or_else(|| {
                Failure::Usage(format!("unknown preset {name:?}; use bielliptic-rank2 or enriques-u-e8"))
            })?
        }
        (None, None) => return Err(Failure::Usage("give --lattice or --preset".into())),
    };
    let beta: DivisorClass = beta.parse()?;
    report.param("beta", &beta);
    let pairs = decompose_class(&model, &beta)?;
    let mut rows = Vec::new();
    for (t1, t2) in &pairs {
        report.row(vec![t1.to_string(), t2.to_string()]);
        rows.push(object([("theta1", text(t1)), ("theta2", text(t2))]));
    }
    report.result("count", text(pairs.len())).result("pairs", Value::Array(rows));
    report.note(format!("{} pairs", pairs.len()));
    Ok(report)
}

type Check = Result<(), String>;
type Suite = Vec<(&'static str, Box<dyn Fn() -> Check>)>;

fn suite() -> Suite {
    fn fail(e: impl ToString) -> String {
        e.to_string()
    }
    vec![
        (
            "identity to order 12",
            Box::new(|| {
                for (b1, b2) in [(0, 10), (2, 2), (0, 1), (4, 6)] {
                    let s = SurfaceTopology::new(b1, b2, 0).map_err(fail)?;
                    if let Some((key, l, r)) = remark_identity_sides(&s, 12).map_err(fail)?.first_mismatch() {
                        return Err(format!("(b1, b2) = ({b1}, {b2}) at {}: {l} vs {r}", monomial(key)));
                    }
                }
                Ok(())
            }),
        ),
        (
            "recursion oracle at order 10",
            Box::new(|| {
                for s in [SurfaceTopology::ENRIQUES, SurfaceTopology::BIELLIPTIC] {
                    if let Some(m) = oracle_report(&s, 10).map_err(fail)?.mismatch {
                        return Err(format!("{s:?}: {m:?}"));
                    }
                }
                Ok(())
            }),
        ),
        (
            "Milnor formula on the ADE corpus",
            Box::new(|| {
                for entry in shipped_corpus() {
                    let g = entry.germ().map_err(fail)?;
                    let b = entry.branch_set().map_err(fail)?;
                    let inv = stabctab_core::germ::invariants(&g, &b).map_err(fail)?;
                    if inv != entry.expected || !inv.satisfies_milnor_formula() {
                        return Err(format!("{}: {inv:?}", entry.name));
                    }
                }
                Ok(())
            }),
        ),
        (
            "bound examples",
            Box::new(|| {
                let d0 = enriques_d0(10, 2, 3).map_err(fail)?;
                let one = Rational::from_integer(1.into());
                let p = BiellipticParams::new(1, 1, one.clone(), one, 2).map_err(fail)?;
                let bb = bielliptic_codim_bound(&p, 3).map_err(fail)?.value;
                let eb = enriques_codim_bound(10, 10).map_err(fail)?.value;
                let got = (d0, bb.to_string(), n_lower_bound(&bb), eb.to_string());
                if got != (4, "5".into(), 8, "5".into()) {
                    return Err(format!("{got:?}"));
                }
                Ok(())
            }),
        ),
        (
            "bielliptic decompositions",
            Box::new(|| {
                let m = LatticeModel::preset("bielliptic-rank2").ok_or("missing preset")?;
                let counts: Vec<usize> = [[1, 1], [2, 2]]
                    .iter()
                    .map(|b| decompose_class(&m, &DivisorClass::new(b.to_vec())).map(|p| p.len()))
                    .collect::<Result<_, _>>()
                    .map_err(fail)?;
                if counts != [2, 7] {
                    return Err(format!("counts {counts:?}"));
                }
                Ok(())
            }),
        ),
    ]
}

pub fn verify() -> Report {
    let mut report = Report::new(
        "verify",
        "built-in identities, oracles and worked examples",
        vec!["check", "status", "detail"],
    );
    let mut rows = Vec::new();
    for (name, check) in suite() {
        let (status, detail) = match check() {
            Ok(()) => ("PASS", String::new()),
            Err(e) => {
                report.verified = false;
                ("FAIL", e)
            }
        };
        report.row(vec![name.into(), status.into(), detail.clone()]);
        rows.push(object([("check", text(name)), ("status", text(status)), ("detail", text(detail))]));
    }
    report.result("checks", Value::Array(rows));
    report
}
