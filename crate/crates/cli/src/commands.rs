use clap::ValueEnum;
use serde::Serialize;

use monogenic::flatfield::{
    cauchy_residual, convergence_study, dirac_invariance_residual, hodge_min_residual, kelvin_residual, mixed_sample,
    ConformalFactor, ConvergenceRow, GridField, GridSpec,
};
use monogenic::linalg::Check;
use monogenic::rarita::{build_f, build_fj, fj_weight, theta_symbol, verify_prop4, RaritaReport};
use monogenic::represent::{
    conformal_weight, epsilon_symbol, symbol_skew, symbol_sym0, symbol_trace, RepAction, SymbolMap, WeightReport,
};
use monogenic::scalar::parse_rational;
use monogenic::spinor::{block_decompose_even, decompose_odd};
use monogenic::suite::{self, Perturbation};
use monogenic::{Complex64, ComplexScalar, Error, ExtIS2, Rational, Scalar};

use crate::config::RunConfig;
use crate::render::{check_csv, check_rows, matrix_strings, status, CheckRow, Output, CHECK_HEADER};

/// Exit status for a well-formed query whose answer is negative.
pub const EXIT_NEGATIVE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SymbolName {
    Skew,
    Sym0,
    Trace,
    Clifford,
    Rarita,
    RaritaJ,
    Hodge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridTest {
    DiracInvariance,
    HodgeNoninvariance,
    Cauchy,
    Kelvin,
    Convergence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Omega {
    Exp,
    Sphere,
}

impl Omega {
    fn factor(self) -> ConformalFactor {
        match self {
            Omega::Exp => ConformalFactor::Exp { a: 0.3 },
            Omega::Sphere => ConformalFactor::Sphere,
        }
    }
}

#[derive(Debug, Serialize)]
struct ReportDoc {
    suite: String,
    n: usize,
    checks: Vec<CheckRow>,
    exit_status: i32,
}

fn report_output(suite: &str, n: usize, checks: &[Check]) -> Output {
    let exit = status(checks);
    let doc = ReportDoc { suite: suite.to_string(), n, checks: check_rows(checks), exit_status: exit };
    Output::new(&doc, CHECK_HEADER.to_vec(), check_csv(checks), exit)
}

pub fn verify(cfg: &RunConfig, perturb: Option<Perturbation>) -> Result<Output, Error> {
    let mode = if cfg.exact() { monogenic::ScalarMode::RationalExact } else { monogenic::ScalarMode::Real64 };
    let report = suite::verify(cfg.n, mode, cfg.seed, perturb)?;
    Ok(report_output(&report.suite, report.n, &report.checks))
}

#[derive(Debug, Serialize)]
struct WeightDoc {
    symbol: String,
    n: usize,
    weight: Option<String>,
    residual: String,
    operator: String,
}

impl WeightDoc {
    fn from_report<S: Scalar>(r: &WeightReport<S>) -> Self {
        WeightDoc {
            symbol: r.symbol.clone(),
            n: r.n,
            weight: r.weight_string(),
            residual: r.residual_string(),
            operator: r.operator.clone(),
        }
    }

    fn row(&self) -> Vec<String> {
        vec![
            self.symbol.clone(),
            self.n.to_string(),
            self.weight.clone().unwrap_or_default(),
            self.residual.clone(),
            self.operator.clone(),
        ]
    }
}

const WEIGHT_HEADER: [&str; 5] = ["symbol", "n", "weight", "residual", "operator"];

fn symbol_for<S: Scalar>(name: SymbolName, n: usize, j: usize) -> Result<SymbolMap<S>, Error> {
    match name {
        SymbolName::Skew => symbol_skew(n),
        SymbolName::Sym0 => symbol_sym0(n),
        SymbolName::Trace => symbol_trace(n),
        SymbolName::Clifford => epsilon_symbol(n),
        SymbolName::Rarita => theta_symbol(&build_f::<S>(n)?),
        SymbolName::RaritaJ => theta_symbol(&build_fj::<S>(n, j)?),
        SymbolName::Hodge => {
            let rep = RepAction::<S>::std_forms(n);
            monogenic::represent::epsilon_symbol_with(n, "hodge", rep)
        }
    }
}

fn weight_typed<S: Scalar>(name: SymbolName, n: usize, j: usize) -> Result<Output, Error> {
    let sym = symbol_for::<S>(name, n, j)?;
    let report = match conformal_weight(&sym) {
        Ok(r) => r,
        Err(Error::ZeroSymbol) => {
            let doc = WeightDoc {
                symbol: sym.name.clone(),
                n,
                weight: None,
                residual: "0/1".into(),
                operator: format!("{}[w] -> {}[w-1]", sym.labels.0, sym.labels.1),
            };
            let row = doc.row();
            return Ok(Output::new(&doc, WEIGHT_HEADER.to_vec(), vec![row], EXIT_NEGATIVE)
                .with_notice("symbol vanishes identically; every weight satisfies the identity"));
        }
        Err(e) => return Err(e),
    };
    let doc = WeightDoc::from_report(&report);
    let row = doc.row();
    if report.weight.is_some() {
        Ok(Output::new(&doc, WEIGHT_HEADER.to_vec(), vec![row], 0))
    } else {
        let exit = if name == SymbolName::Hodge { EXIT_NEGATIVE } else { 1 };
        Ok(Output::new(&doc, WEIGHT_HEADER.to_vec(), vec![row], exit).with_notice("no conformal weight exists"))
    }
}

pub fn weight(cfg: &RunConfig, name: SymbolName, j: usize) -> Result<Output, Error> {
    if cfg.exact() {
        weight_typed::<Rational>(name, cfg.n, j)
    } else {
        weight_typed::<f64>(name, cfg.n, j)
    }
}

#[derive(Debug, Serialize)]
struct EvenGammaDoc {
    suite: &'static str,
    n: usize,
    spinor_dim: usize,
    multiplicity: usize,
    gammas: Vec<Vec<Vec<String>>>,
    phi: Vec<Vec<String>>,
    checks: Vec<CheckRow>,
    exit_status: i32,
}

#[derive(Debug, Serialize)]
struct OddGammaDoc {
    suite: &'static str,
    n: usize,
    spinor_dim: usize,
    multiplicity: usize,
    eigenspace_dims: [usize; 2],
    checks: Vec<CheckRow>,
    exit_status: i32,
}

fn gamma_typed<C: ComplexScalar>(n: usize) -> Result<Output, Error> {
    if n.is_multiple_of(2) {
        let d = block_decompose_even::<C>(n)?;
        let exit = status(&d.checks);
        let doc = EvenGammaDoc {
            suite: "gamma",
            n,
            spinor_dim: d.spinor_dim,
            multiplicity: d.multiplicity,
            gammas: d.gammas.iter().map(matrix_strings).collect(),
            phi: matrix_strings(&d.phi.matrix),
            checks: check_rows(&d.checks),
            exit_status: exit,
        };
        Ok(Output::new(&doc, CHECK_HEADER.to_vec(), check_csv(&d.checks), exit))
    } else {
        let d = decompose_odd::<C>(n)?;
        let exit = status(&d.checks);
        let doc = OddGammaDoc {
            suite: "gamma",
            n,
            spinor_dim: d.spinor_dim,
            multiplicity: d.multiplicity,
            eigenspace_dims: d.eigenspace_dims,
            checks: check_rows(&d.checks),
            exit_status: exit,
        };
        Ok(Output::new(&doc, CHECK_HEADER.to_vec(), check_csv(&d.checks), exit))
    }
}

pub fn gamma(cfg: &RunConfig) -> Result<Output, Error> {
    if cfg.n == 0 {
        return Err(Error::UnsupportedDimension { n: 0, reason: "gamma needs n >= 1" });
    }
    if cfg.exact() {
        gamma_typed::<ExtIS2>(cfg.n)
    } else {
        gamma_typed::<Complex64>(cfg.n)
    }
}

#[derive(Debug, Serialize)]
struct RaritaDoc {
    suite: &'static str,
    n: usize,
    j: usize,
    dim_f: usize,
    weight: Option<WeightDoc>,
    checks: Vec<CheckRow>,
    exit_status: i32,
}

fn rarita_typed<S: Scalar>(n: usize, j: usize) -> Result<Output, Error> {
    let r: RaritaReport<S> = if j == 1 { verify_prop4(n)? } else { fj_weight(n, j)? };
    let exit = status(&r.checks);
    let doc = RaritaDoc {
        suite: "rarita",
        n,
        j,
        dim_f: r.dim_f,
        weight: r.weight.as_ref().map(WeightDoc::from_report),
        checks: check_rows(&r.checks),
        exit_status: exit,
    };
    let out = Output::new(&doc, CHECK_HEADER.to_vec(), check_csv(&r.checks), exit);
    Ok(match r.weight {
        None if exit == 0 => out.with_notice("θ vanishes identically; the weight is not determined"),
        _ => out,
    })
}

pub fn rarita(cfg: &RunConfig, j: usize) -> Result<Output, Error> {
    if cfg.exact() {
        rarita_typed::<Rational>(cfg.n, j)
    } else {
        rarita_typed::<f64>(cfg.n, j)
    }
}

pub struct GridOptions {
    pub test: GridTest,
    pub hs: Vec<f64>,
    pub omega: Option<Omega>,
    pub w: Option<String>,
}

const INVARIANCE_TOL: f64 = 1e-12;
const SCALED_TOL: f64 = 1e-10;
const MIN_ORDER: f64 = 1.9;
const HODGE_FLOOR: f64 = 0.01;
const DEFAULT_INVARIANCE_H: f64 = 0.25;

#[derive(Debug, Serialize)]
struct InvarianceRow {
    omega: &'static str,
    residual: f64,
    max_upsilon_phi: f64,
    expected_residual: f64,
}

#[derive(Debug, Serialize)]
struct HodgeRow {
    omega: &'static str,
    best_weight: f64,
    residual: f64,
    normalized: f64,
}

#[derive(Debug, Serialize)]
struct ConvergenceTable {
    kernel: &'static str,
    rows: Vec<RowDoc>,
}

#[derive(Debug, Serialize)]
struct RowDoc {
    h: f64,
    residual: f64,
    order: Option<f64>,
}

impl From<&ConvergenceRow> for RowDoc {
    fn from(r: &ConvergenceRow) -> Self {
        RowDoc { h: r.h, residual: r.residual, order: r.order }
    }
}

#[derive(Debug, Serialize)]
struct GridDoc<T> {
    suite: &'static str,
    test: &'static str,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<f64>,
    results: Vec<T>,
    checks: Vec<CheckRow>,
    exit_status: i32,
}

fn parse_weight(s: &str) -> Result<f64, Error> {
    if let Ok(q) = parse_rational(s) {
        return Ok(*q.numer() as f64 / *q.denom() as f64);
    }
    s.trim().parse::<f64>().map_err(|_| Error::ParseScalar(format!("weight {s:?} is neither p/q nor a decimal")))
}

fn omegas(choice: Option<Omega>) -> Vec<Omega> {
    choice.map_or_else(|| vec![Omega::Exp, Omega::Sphere], |o| vec![o])
}

fn sample_grid(n: usize, h: f64) -> Result<GridField, Error> {
    let grid = GridSpec::cube(n, -1.0, 1.0, h)?;
    GridField::sample_everywhere(&grid, Rational::from_i64(0), mixed_sample)
}

fn grid_doc<T: Serialize>(test: &'static str, n: usize, weight: Option<f64>, results: Vec<T>, checks: Vec<Check>, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Output {
    let exit = status(&checks);
    let doc = GridDoc { suite: "grid", test, n, weight, results, checks: check_rows(&checks), exit_status: exit };
    Output::new(&doc, header, rows, exit)
}

fn convergence_tables(n: usize, hs: &[f64], kernels: &[&'static str]) -> Result<(Vec<ConvergenceTable>, Vec<Check>), Error> {
    let probe = hs.iter().copied().fold(0.0, f64::max);
    let mut tables = Vec::new();
    let mut checks = Vec::new();
    for &kernel in kernels {
        let rows = match kernel {
            "cauchy" => convergence_study(hs, |h| cauchy_residual(n, h, probe))?,
            _ => convergence_study(hs, |h| kelvin_residual(n, h, probe))?,
        };
        let last = rows.last().and_then(|r| r.order).unwrap_or(f64::NAN);
        checks.push(Check::truth(&format!("{kernel} observed order"), last >= MIN_ORDER, format!("{last}"), ">= 1.9"));
        tables.push(ConvergenceTable { kernel, rows: rows.iter().map(RowDoc::from).collect() });
    }
    Ok((tables, checks))
}

pub fn grid(cfg: &RunConfig, opts: &GridOptions) -> Result<Output, Error> {
    let n = cfg.n;
    let half = (n as f64 - 1.0) / 2.0;
    match opts.test {
        GridTest::DiracInvariance => {
            let w = match &opts.w {
                Some(s) => parse_weight(s)?,
                None => -half,
            };
            let phi = sample_grid(n, opts.hs.first().copied().unwrap_or(DEFAULT_INVARIANCE_H))?;
            let rep = RepAction::<f64>::spin(n);
            let tol = cfg.tol.unwrap_or(SCALED_TOL);
            let mut results = Vec::new();
            let mut checks = Vec::new();
            for o in omegas(opts.omega) {
                let f = o.factor();
                let r = dirac_invariance_residual(&phi, w, &f, &rep)?;
                let expected = (w + half).abs() * r.max_upsilon_phi;
                let tol = if expected == 0.0 { cfg.tol.unwrap_or(INVARIANCE_TOL) } else { tol };
                checks.push(Check::truth(
                    &format!("{} residual = |w + (n−1)/2|·max‖Υ.φ‖", f.name()),
                    (r.residual - expected).abs() <= tol,
                    format!("{}", r.residual),
                    &format!("{expected}"),
                ));
                results.push(InvarianceRow { omega: f.name(), residual: r.residual, max_upsilon_phi: r.max_upsilon_phi, expected_residual: expected });
            }
            let rows = results
                .iter()
                .map(|r| vec![r.omega.to_string(), r.residual.to_string(), r.max_upsilon_phi.to_string(), r.expected_residual.to_string()])
                .collect();
            Ok(grid_doc("dirac-invariance", n, Some(w), results, checks, vec!["omega", "residual", "max_upsilon_phi", "expected_residual"], rows))
        }
        GridTest::HodgeNoninvariance => {
            let phi = sample_grid(n, opts.hs.first().copied().unwrap_or(DEFAULT_INVARIANCE_H))?;
            let mut results = Vec::new();
            let mut checks = Vec::new();
            for o in omegas(opts.omega) {
                let f = o.factor();
                let h = hodge_min_residual(&phi, &f)?;
                checks.push(Check::truth(
                    &format!("{} normalized residual at best weight", f.name()),
                    h.normalized > HODGE_FLOOR,
                    format!("{}", h.normalized),
                    "> 0.01",
                ));
                results.push(HodgeRow { omega: f.name(), best_weight: h.best_weight, residual: h.residual, normalized: h.normalized });
            }
            let rows = results
                .iter()
                .map(|r| vec![r.omega.to_string(), r.best_weight.to_string(), r.residual.to_string(), r.normalized.to_string()])
                .collect();
            Ok(grid_doc("hodge-noninvariance", n, None, results, checks, vec!["omega", "best_weight", "residual", "normalized"], rows))
        }
        GridTest::Cauchy | GridTest::Kelvin | GridTest::Convergence => {
            let hs = if opts.hs.is_empty() { vec![0.1, 0.05] } else { opts.hs.clone() };
            let (label, kernels): (&'static str, &[&'static str]) = match opts.test {
                GridTest::Cauchy => ("cauchy", &["cauchy"]),
                GridTest::Kelvin => ("kelvin", &["kelvin"]),
                _ => ("convergence", &["cauchy", "kelvin"]),
            };
            let (tables, checks) = convergence_tables(n, &hs, kernels)?;
            let rows = tables
                .iter()
                .flat_map(|t| {
                    t.rows.iter().map(move |r| {
                        vec![t.kernel.to_string(), r.h.to_string(), r.residual.to_string(), r.order.map(|o| o.to_string()).unwrap_or_default()]
                    })
                })
                .collect();
            Ok(grid_doc(label, n, None, tables, checks, vec!["kernel", "h", "residual", "order"], rows))
        }
    }
}
