//! Fixed-dimension verification suites shared by the command line driver and
//! the acceptance tests.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Check, Defect, Matrix};
use crate::multivector::{basis_left_mul, clifford_mul_vec, clifford_word, contract, wedge, Metric, Vector};
use crate::rarita::{self, verify_prop4};
use crate::represent::{
    conformal_weight, epsilon_symbol_scaled, epsilon_symbol_with, symbol_skew, symbol_sym0, symbol_trace, RepAction,
    SymbolMap, WeightReport,
};
use crate::sampling;
use crate::scalar::{close, ComplexScalar, ExtIS2, Rational, Scalar, ScalarMode};
use crate::spinor::{self, block_decompose_even, decompose_odd};

/// Deliberate faults for checking that the suite can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Perturbation {
    /// Spin action built with constant `−1/2` on blades instead of `−1/4`.
    SigmaConst,
}

impl Perturbation {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "sigma-const" => Some(Perturbation::SigmaConst),
            _ => None,
        }
    }
}

/// Named list of checks; `exit_status` is 0 iff every check passed.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub n: usize,
    pub checks: Vec<Check>,
    pub exit_status: i32,
}

impl Report {
    pub fn new(suite: &str, n: usize, checks: Vec<Check>) -> Self {
        let exit_status = if checks.iter().all(|c| c.passed) { 0 } else { 1 };
        Report { suite: suite.to_string(), n, checks, exit_status }
    }

    pub fn passed(&self) -> bool {
        self.exit_status == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub const DEFAULT_SAMPLES: usize = 100;

/// Largest `n` the verify suite accepts in the given mode.
pub fn verify_limit(mode: ScalarMode) -> usize {
    if mode.is_exact() {
        spinor::EXACT_LIMIT
    } else {
        spinor::FLOAT_LIMIT
    }
}

fn scalar_string<S: Scalar>(s: &S) -> String {
    crate::scalar::display_scalar(s)
}

/// Clifford relation, the antiderivation rule, the four-term identity and
/// the trace identities, over `samples` random inputs from `seed`.
pub fn clifford_checks<S: Scalar>(n: usize, seed: u64, samples: usize) -> Result<Vec<Check>> {
    let g = Metric::<S>::euclidean(n);
    let mut rng = sampling::rng(seed);
    let mut cliff = Defect::none(S::tolerance());
    let mut anti = Defect::none(S::tolerance());
    let mut four = Defect::none(S::tolerance());
    for _ in 0..samples {
        let u = sampling::vector::<S, _>(&mut rng, n);
        let v = sampling::vector::<S, _>(&mut rng, n);
        let w = sampling::vector::<S, _>(&mut rng, n);
        let e = sampling::multivector::<S, _>(&mut rng, n);
        let uv = g.inner(&u, &v);
        let uw = g.inner(&u, &w);

        let lhs = &clifford_word(&[u.clone(), v.clone()], &e, &g)? + &clifford_word(&[v.clone(), u.clone()], &e, &g)?;
        cliff = cliff.merge(Defect::of_slice((&lhs + &e.scale(S::from_i64(2) * uv)).coeffs()));

        let ue = u.to_multivector();
        let a = &wedge(&ue, &contract(&v, &e, &g)?)? + &contract(&v, &wedge(&ue, &e)?, &g)?;
        anti = anti.merge(Defect::of_slice((&a - &e.scale(uv)).coeffs()));

        let word = |xs: [&Vector<S>; 3]| clifford_word(&[xs[0].clone(), xs[1].clone(), xs[2].clone()], &e, &g);
        let lhs = &(&(&word([&u, &v, &w])? - &word([&v, &w, &u])?) - &word([&u, &w, &v])?) + &word([&w, &v, &u])?;
        let rhs = &clifford_mul_vec(&w, &e, &g)?.scale(S::from_i64(-4) * uv)
            + &clifford_mul_vec(&v, &e, &g)?.scale(S::from_i64(4) * uw);
        four = four.merge(Defect::of_slice((&lhs - &rhs).coeffs()));
    }
    let mut checks = vec![
        Check::defect(&format!("u.v.e + v.u.e + 2<u,v>e = 0 ({samples} random triples)"), cliff),
        Check::defect(&format!("u∧(v⌟e) + v⌟(u∧e) = <u,v>e ({samples} random triples)"), anti),
        Check::defect(&format!("four-term Clifford identity ({samples} random quadruples)"), four),
    ];

    let ls = basis_left_mul::<S>(n);
    let dim = 1usize << n;
    let mut square_sum = Matrix::<S>::identity(dim).scale(S::from_i64(n as i64));
    for l in &ls {
        square_sum = &square_sum + &l.matmul(l);
    }
    checks.push(Check::defect("Σ_a e_a.e_a.e = −n e", square_sum.defect()));
    let mut sandwich = Defect::none(S::tolerance());
    for lc in &ls {
        let mut m = lc.scale(S::from_i64(2 - n as i64));
        for la in &ls {
            m = &m + &la.matmul(lc).matmul(la);
        }
        sandwich = sandwich.merge(m.defect());
    }
    checks.push(Check::defect("Σ_a L(e_a) L(e_c) L(e_a) = (n−2) L(e_c)", sandwich));
    Ok(checks)
}

fn weight_check<S: Scalar>(name: &str, pi: &SymbolMap<S>, expected: S) -> (Check, Option<WeightReport<S>>) {
    match conformal_weight(pi) {
        Ok(r) => {
            let ok = r.weight.is_some_and(|w| close(w, expected));
            let value = r.weight_string().unwrap_or_else(|| "none".into());
            (Check::truth(name, ok, value, &scalar_string(&expected)), Some(r))
        }
        Err(e) => (Check::truth(name, false, e.to_string(), &scalar_string(&expected)), None),
    }
}

/// Representation property, equivariance of ε, its weight with the entrywise
/// identity `M + (n−1)/2 ε = 0`, and weight invariance under rescaling.
pub fn spin_checks<S: Scalar>(n: usize, perturb: Option<Perturbation>) -> Result<Vec<Check>> {
    let rep = match perturb {
        Some(Perturbation::SigmaConst) => RepAction::<S>::spin_with_constant(n, S::ratio(-1, 2)),
        None => RepAction::<S>::spin(n),
    };
    let mut checks = vec![Check::defect("σ is a representation of so(n)", rep.check_representation())];
    let eps = epsilon_symbol_with(n, "clifford", rep)?;
    checks.push(Check::defect("ε is σ-equivariant", eps.check_equivariance()));
    let half = S::ratio(n as i64 - 1, 2);
    let (c, report) = weight_check("weight of ε = −(n−1)/2", &eps, -half);
    checks.push(c);
    if report.is_some() {
        let m = eps.connection_composite();
        checks.push(Check::defect("M + (n−1)/2 ε = 0", (&m + &eps.matrix.scale(half)).defect()));
    }
    let scaled = epsilon_symbol_scaled::<S>(n, S::from_i64(3))?;
    checks.push(weight_check("weight of 3-rescaled ε = −(n−1)/2", &scaled, -half).0);
    Ok(checks)
}

/// Weights of the three first-order operators on one-forms, and the
/// Hodge-de Rham negative control.
pub fn table_checks<S: Scalar>(n: usize) -> Result<Vec<Check>> {
    let mut checks = vec![
        weight_check("weight of skew symbol = −1", &symbol_skew::<S>(n)?, S::from_i64(-1)).0,
        weight_check("weight of trace-free symmetric symbol = 1", &symbol_sym0::<S>(n)?, S::from_i64(1)).0,
        weight_check("weight of trace symbol = −(n−1)", &symbol_trace::<S>(n)?, S::from_i64(1 - n as i64)).0,
    ];
    let hodge = hodge_weight::<S>(n)?;
    let residual_positive = hodge.residual.modulus() > S::tolerance();
    checks.push(
        Check::truth(
            "Hodge-de Rham symbol has no weight",
            hodge.weight.is_none() && residual_positive,
            format!("weight {}, residual {}", hodge.weight_string().unwrap_or_else(|| "none".into()), hodge.residual_string()),
            "none, residual > 0",
        )
        .with_source("negative control"),
    );
    Ok(checks)
}

/// Clifford symbol with the form action on both sides.
pub fn hodge_weight<S: Scalar>(n: usize) -> Result<WeightReport<S>> {
    let sym = epsilon_symbol_with(n, "hodge", RepAction::<S>::std_forms(n))?;
    conformal_weight(&sym)
}

/// Factorization of Λ•ℂW into spinors, even or odd `n`.
pub fn spinor_checks<C: ComplexScalar>(n: usize) -> Result<Vec<Check>> {
    if n.is_multiple_of(2) {
        let d = block_decompose_even::<C>(n)?;
        let mut checks = d.checks;
        checks.push(Check::equal("multiplicity", d.multiplicity, 1usize << (n / 2)));
        Ok(checks)
    } else {
        Ok(decompose_odd::<C>(n)?.checks)
    }
}

/// Whether F for this `n` fits the resource limit of the scalar mode.
pub fn rarita_fits<S: Scalar>(n: usize) -> bool {
    let limit = if S::is_exact() { rarita::EXACT_AMBIENT_LIMIT } else { rarita::FLOAT_AMBIENT_LIMIT };
    n >= 2 && n * (1usize << n) <= limit
}

fn verify_typed<S: Scalar, C: ComplexScalar>(n: usize, seed: u64, perturb: Option<Perturbation>) -> Result<Vec<Check>> {
    let mut checks = clifford_checks::<S>(n, seed, DEFAULT_SAMPLES)?;
    checks.extend(spin_checks::<S>(n, perturb)?);
    if n >= 3 {
        checks.extend(table_checks::<S>(n)?);
    }
    checks.extend(spinor_checks::<C>(n)?);
    if rarita_fits::<S>(n) {
        checks.extend(verify_prop4::<S>(n)?.checks);
    }
    Ok(checks)
}

/// Full identity suite at dimension `n`.
pub fn verify(n: usize, mode: ScalarMode, seed: u64, perturb: Option<Perturbation>) -> Result<Report> {
    let limit = verify_limit(mode);
    if n == 0 || n > limit {
        return Err(Error::UnsupportedDimension { n, reason: "verify supports 1..=6 exact, 1..=8 float" });
    }
    let checks = if mode.is_exact() {
        verify_typed::<Rational, ExtIS2>(n, seed, perturb)?
    } else {
        verify_typed::<f64, Complex64>(n, seed, perturb)?
    };
    Ok(Report::new("verify", n, checks))
}
