//! Λ•ℝⁿ-valued fields sampled on rectangular lattices, central-difference
//! Dirac and Hodge–de Rham operators, and the pointwise connection-change
//! terms that govern conformal invariance on flat space.

use crate::error::{Error, Result};
use crate::multivector::{basis_left_mul, Multivector, Vector};
use crate::represent::{gamma_term, RepAction};
use crate::linalg::Matrix;
use crate::scalar::{Rational, Scalar};

/// Points closer than this to a domain boundary count as inside.
pub const DOMAIN_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    n: usize,
    lo: Vec<f64>,
    h: f64,
    shape: Vec<usize>,
}

impl GridSpec {
    /// Lattice `lo + k·h` per axis, up to `hi`. Needs `2 ≤ n ≤ 4` and at
    /// least five points per axis.
    pub fn new(lo: &[f64], hi: &[f64], h: f64) -> Result<Self> {
        let n = lo.len();
        if !(2..=4).contains(&n) {
            return Err(Error::InvalidGrid(format!("dimension {n} outside 2..=4")));
        }
        if hi.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: hi.len() });
        }
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::InvalidGrid(format!("spacing {h} must be positive")));
        }
        let mut shape = Vec::with_capacity(n);
        for (a, b) in lo.iter().zip(hi) {
            let count = ((b - a) / h + DOMAIN_SLACK).floor();
            if !(count >= 4.0) {
                return Err(Error::InvalidGrid(format!("axis [{a}, {b}] has fewer than 5 points at h = {h}")));
            }
            shape.push(count as usize + 1);
        }
        Ok(GridSpec { n, lo: lo.to_vec(), h, shape })
    }

    /// `[lo, hi]ⁿ`.
    pub fn cube(n: usize, lo: f64, hi: f64, h: f64) -> Result<Self> {
        Self::new(&vec![lo; n], &vec![hi; n], h)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn stride(&self, axis: usize) -> usize {
        self.shape[axis + 1..].iter().product()
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.n];
        for axis in (0..self.n).rev() {
            idx[axis] = flat % self.shape[axis];
            flat /= self.shape[axis];
        }
        idx
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        self.multi_index(flat).iter().zip(&self.lo).map(|(&k, lo)| lo + k as f64 * self.h).collect()
    }

    /// True off the outermost ring of lattice points.
    pub fn is_interior(&self, flat: usize) -> bool {
        self.multi_index(flat).iter().zip(&self.shape).all(|(&k, &s)| k > 0 && k + 1 < s)
    }
}

/// A sampled section of `E[w]`; `None` marks points outside the domain.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    pub grid: GridSpec,
    pub weight: Rational,
    pub values: Vec<Option<Multivector<f64>>>,
}

impl GridField {
    /// Samples `f` at lattice points satisfying `domain`.
    pub fn sample(
        grid: &GridSpec,
        weight: Rational,
        domain: impl Fn(&[f64]) -> bool,
        f: impl Fn(&[f64]) -> Result<Multivector<f64>>,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.len());
        for k in 0..grid.len() {
            let x = grid.point(k);
            if domain(&x) {
                let v = f(&x)?;
                if v.dim() != grid.n {
                    return Err(Error::DimensionMismatch { expected: grid.n, found: v.dim() });
                }
                values.push(Some(v));
            } else {
                values.push(None);
            }
        }
        Ok(GridField { grid: grid.clone(), weight, values })
    }

    pub fn sample_everywhere(grid: &GridSpec, weight: Rational, f: impl Fn(&[f64]) -> Result<Multivector<f64>>) -> Result<Self> {
        Self::sample(grid, weight, |_| true, f)
    }

    pub fn defined(&self) -> impl Iterator<Item = (usize, &Multivector<f64>)> {
        self.values.iter().enumerate().filter_map(|(k, v)| v.as_ref().map(|m| (k, m)))
    }

    pub fn defined_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    /// Largest coefficient-vector norm over defined points.
    pub fn max_norm(&self) -> f64 {
        self.defined().map(|(_, m)| m.norm()).fold(0.0, f64::max)
    }
}

/// Second-order central differences `∂_1 φ … ∂_n φ`, defined where the point
/// and all its axis neighbours are defined and off the boundary ring.
pub fn fd_gradient(f: &GridField) -> Result<Vec<GridField>> {
    let g = &f.grid;
    let n = g.n;
    let inv = 1.0 / (2.0 * g.h);
    let mut out: Vec<Vec<Option<Multivector<f64>>>> = vec![Vec::with_capacity(g.len()); n];
    let mut any = false;
    for k in 0..g.len() {
        let neighbours = if g.is_interior(k) && f.values[k].is_some() {
            (0..n)
                .map(|axis| {
                    let s = g.stride(axis);
                    match (&f.values[k + s], &f.values[k - s]) {
                        (Some(p), Some(m)) => Some((p, m)),
                        _ => None,
                    }
                })
                .collect::<Option<Vec<_>>>()
        } else {
            None
        };
        match neighbours {
            Some(pairs) => {
                any = true;
                for (axis, (p, m)) in pairs.into_iter().enumerate() {
                    out[axis].push(Some((p - m).scale(inv)));
                }
            }
            None => out.iter_mut().for_each(|o| o.push(None)),
        }
    }
    if !any {
        return Err(Error::InvalidGrid("no interior points with a full stencil".into()));
    }
    Ok(out
        .into_iter()
        .map(|values| GridField { grid: g.clone(), weight: f.weight, values })
        .collect())
}

fn combine(grads: &[GridField], op: impl Fn(usize, &Multivector<f64>) -> Multivector<f64>) -> GridField {
    let g = grads[0].grid.clone();
    let n = g.n;
    let values = (0..g.len())
        .map(|k| {
            grads[0].values[k].as_ref()?;
            let mut acc = Multivector::zero(n);
            for (axis, grad) in grads.iter().enumerate() {
                acc = &acc + &op(axis, grad.values[k].as_ref().expect("same support"));
            }
            Some(acc)
        })
        .collect();
    GridField { grid: g, weight: grads[0].weight - Rational::one(), values }
}

/// `Dφ = Σ_i e_i.∂_iφ`.
pub fn dirac_flat(f: &GridField) -> Result<GridField> {
    let grads = fd_gradient(f)?;
    let ls = basis_left_mul::<f64>(f.grid.n);
    let n = f.grid.n;
    Ok(combine(&grads, |axis, d| {
        Multivector::from_coeffs(n, ls[axis].apply(d.coeffs())).expect("same dimension")
    }))
}

/// `dφ = Σ_i e_i∧∂_iφ`, by direct blade-index bookkeeping.
pub fn exterior_derivative(f: &GridField) -> Result<GridField> {
    let grads = fd_gradient(f)?;
    let n = f.grid.n;
    Ok(combine(&grads, |axis, d| {
        let bit = 1usize << axis;
        let mut out = vec![0.0; 1 << n];
        for (mask, c) in d.coeffs().iter().enumerate() {
            if mask & bit == 0 {
                // e_i moves past the blade factors with smaller index
                let sign = if (mask & (bit - 1)).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
                out[mask | bit] += sign * c;
            }
        }
        Multivector::from_coeffs(n, out).expect("length 2^n")
    }))
}

/// `d*φ = Σ_i ι_{e_i}∂_iφ`, so that the Dirac operator is `d − d*`.
pub fn codifferential(f: &GridField) -> Result<GridField> {
    let grads = fd_gradient(f)?;
    let n = f.grid.n;
    Ok(combine(&grads, |axis, d| {
        let bit = 1usize << axis;
        let mut out = vec![0.0; 1 << n];
        for (mask, c) in d.coeffs().iter().enumerate() {
            if mask & bit != 0 {
                let sign = if (mask & (bit - 1)).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
                out[mask & !bit] += sign * c;
            }
        }
        Multivector::from_coeffs(n, out).expect("length 2^n")
    }))
}

/// Largest norm of `a − b` over points where both are defined.
pub fn max_difference(a: &GridField, b: &GridField) -> f64 {
    a.values
        .iter()
        .zip(&b.values)
        .filter_map(|(x, y)| Some((x.as_ref()?, y.as_ref()?)))
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `x/|x|ⁿ` as a grade-1 element.
pub fn cauchy_kernel(x: &[f64]) -> Result<Multivector<f64>> {
    let r2: f64 = x.iter().map(|c| c * c).sum();
    if r2 == 0.0 {
        return Err(Error::Singularity("Cauchy kernel at the origin".into()));
    }
    let scale = r2.sqrt().powi(-(x.len() as i32));
    Ok(Vector::new(x.iter().map(|c| c * scale).collect()).to_multivector())
}

/// `Kf(x) = (x/|x|ⁿ).f(x/|x|²)`.
pub fn kelvin_transform<F>(f: F) -> impl Fn(&[f64]) -> Result<Multivector<f64>>
where
    F: Fn(&[f64]) -> Result<Multivector<f64>>,
{
    move |x: &[f64]| {
        let r2: f64 = x.iter().map(|c| c * c).sum();
        if r2 == 0.0 {
            return Err(Error::Singularity("Kelvin transform at the origin".into()));
        }
        let y: Vec<f64> = x.iter().map(|c| c / r2).collect();
        let fy = f(&y)?;
        let k = cauchy_kernel(x)?.as_vector()?;
        let ls = basis_left_mul::<f64>(x.len());
        let mut out = vec![0.0; 1 << x.len()];
        for (i, l) in ls.iter().enumerate() {
            for (o, v) in out.iter_mut().zip(l.apply(fy.coeffs())) {
                *o += k.comp(i) * v;
            }
        }
        Multivector::from_coeffs(x.len(), out)
    }
}

/// `r0 − slack ≤ |x| ≤ r1 + slack`.
pub fn annulus(r0: f64, r1: f64) -> impl Fn(&[f64]) -> bool {
    move |x: &[f64]| {
        let r = x.iter().map(|c| c * c).sum::<f64>().sqrt();
        r >= r0 - DOMAIN_SLACK && r <= r1 + DOMAIN_SLACK
    }
}

/// Conformal rescaling `ĝ = Ω²g` on flat space, with `Υ = ∇Ω/Ω` supplied
/// analytically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConformalFactor {
    /// `Ω = exp(a·x_1)`, `Υ = a e_1`.
    Exp { a: f64 },
    /// `Ω = (1 + |x|²)⁻¹`, `Υ = −2x/(1 + |x|²)`.
    Sphere,
}

impl ConformalFactor {
    pub fn name(&self) -> &'static str {
        match self {
            ConformalFactor::Exp { .. } => "exp",
            ConformalFactor::Sphere => "sphere",
        }
    }

    pub fn omega(&self, x: &[f64]) -> f64 {
        match *self {
            ConformalFactor::Exp { a } => (a * x[0]).exp(),
            ConformalFactor::Sphere => 1.0 / (1.0 + x.iter().map(|c| c * c).sum::<f64>()),
        }
    }

    pub fn upsilon(&self, x: &[f64]) -> Vector<f64> {
        match *self {
            ConformalFactor::Exp { a } => {
                let mut v = vec![0.0; x.len()];
                v[0] = a;
                Vector::new(v)
            }
            ConformalFactor::Sphere => {
                let s = -2.0 / (1.0 + x.iter().map(|c| c * c).sum::<f64>());
                Vector::new(x.iter().map(|c| c * s).collect())
            }
        }
    }
}

/// `wΥ⊗φ − Γφ`, flattened as `a·2ⁿ + α`.
pub fn hatted_connection_term(phi: &Multivector<f64>, w: f64, upsilon: &Vector<f64>, rep: &RepAction<f64>) -> Result<Vec<f64>> {
    let gamma = gamma_term(upsilon, phi.coeffs(), rep)?;
    let e = phi.coeffs().len();
    Ok(gamma
        .iter()
        .enumerate()
        .map(|(k, g)| w * upsilon.comp(k / e) * phi.coeffs()[k % e] - g)
        .collect())
}

/// `Σ_a e_a.t_a` for `t` in W⊗Λ•W.
pub fn epsilon_contract(t: &[f64], ls: &[Matrix<f64>]) -> Vec<f64> {
    let e = ls[0].rows();
    let mut out = vec![0.0; e];
    for (a, l) in ls.iter().enumerate() {
        for (o, v) in out.iter_mut().zip(l.apply(&t[a * e..(a + 1) * e])) {
            *o += v;
        }
    }
    out
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

/// Deviation of the rescaled Dirac operator from the original one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvarianceResidual {
    /// `max ‖ε(wΥ⊗φ − Γφ)‖`.
    pub residual: f64,
    /// `max ‖Υ.φ‖`.
    pub max_upsilon_phi: f64,
    /// `max |Υ|·‖φ‖`.
    pub max_upsilon_tensor_phi: f64,
}

/// Pointwise `D̂φ − Dφ` for φ of weight `w`; no differencing is involved
/// because the derivative terms cancel identically.
pub fn dirac_invariance_residual(phi: &GridField, w: f64, omega: &ConformalFactor, rep: &RepAction<f64>) -> Result<InvarianceResidual> {
    let n = phi.grid.n;
    let ls = basis_left_mul::<f64>(n);
    let mut out = InvarianceResidual { residual: 0.0, max_upsilon_phi: 0.0, max_upsilon_tensor_phi: 0.0 };
    for (k, p) in phi.defined() {
        let x = phi.grid.point(k);
        let u = omega.upsilon(&x);
        let t = hatted_connection_term(p, w, &u, rep)?;
        out.residual = out.residual.max(norm(&epsilon_contract(&t, &ls)));
        let up = clifford_of(&u, p, &ls);
        out.max_upsilon_phi = out.max_upsilon_phi.max(norm(&up));
        out.max_upsilon_tensor_phi = out.max_upsilon_tensor_phi.max(norm(u.comps()) * p.norm());
    }
    Ok(out)
}

fn clifford_of(u: &Vector<f64>, p: &Multivector<f64>, ls: &[Matrix<f64>]) -> Vec<f64> {
    let mut out = vec![0.0; p.coeffs().len()];
    for (i, l) in ls.iter().enumerate() {
        for (o, v) in out.iter_mut().zip(l.apply(p.coeffs())) {
            *o += u.comp(i) * v;
        }
    }
    out
}

/// Best weight for the Hodge–de Rham operator and what is left over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HodgeResidual {
    pub best_weight: f64,
    pub residual: f64,
    /// `residual / max |Υ|·‖φ‖`.
    pub normalized: f64,
}

/// Minimizes `Σ_x ‖ε(wΥ⊗φ − Γφ)‖²` over `w` with the form action on Λ•W
/// and reports the remaining maximum.
pub fn hodge_min_residual(phi: &GridField, omega: &ConformalFactor) -> Result<HodgeResidual> {
    let n = phi.grid.n;
    let ls = basis_left_mul::<f64>(n);
    let rep = RepAction::<f64>::std_forms(n);
    let mut samples = Vec::new();
    let mut scale: f64 = 0.0;
    for (k, p) in phi.defined() {
        let u = omega.upsilon(&phi.grid.point(k));
        let a = clifford_of(&u, p, &ls);
        let g = gamma_term(&u, p.coeffs(), &rep)?;
        let b = epsilon_contract(&g, &ls);
        scale = scale.max(norm(u.comps()) * p.norm());
        samples.push((a, b));
    }
    let (mut ab, mut aa) = (0.0, 0.0);
    for (a, b) in &samples {
        ab += a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        aa += a.iter().map(|x| x * x).sum::<f64>();
    }
    if aa == 0.0 {
        return Err(Error::Consistency("Υ.φ vanishes on the whole grid".into()));
    }
    let w = ab / aa;
    let residual = samples
        .iter()
        .map(|(a, b)| norm(&a.iter().zip(b).map(|(x, y)| w * x - y).collect::<Vec<_>>()))
        .fold(0.0, f64::max);
    Ok(HodgeResidual { best_weight: w, residual, normalized: residual / scale })
}

/// Change `∇̂_a ω_b − ∇_a ω_b = (w−1)Υ_a ω_b − Υ_b ω_a + ⟨Υ,ω⟩ g_ab` for a
/// one-form of weight `w`, as an n×n matrix indexed `(a, b)`.
pub fn one_form_connection_change(omega: &Vector<f64>, upsilon: &Vector<f64>, w: f64) -> Matrix<f64> {
    let n = omega.dim();
    let dot: f64 = omega.comps().iter().zip(upsilon.comps()).map(|(a, b)| a * b).sum();
    Matrix::from_fn(n, n, |a, b| {
        (w - 1.0) * upsilon.comp(a) * omega.comp(b) - upsilon.comp(b) * omega.comp(a) + if a == b { dot } else { 0.0 }
    })
}

/// One row of a convergence table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub h: f64,
    pub residual: f64,
    /// `log(r_prev/r)/log(h_prev/h)`, absent on the first row.
    pub order: Option<f64>,
}

/// Evaluates `residual_at` for each spacing and fits the observed order.
pub fn convergence_study(hs: &[f64], residual_at: impl Fn(f64) -> Result<f64>) -> Result<Vec<ConvergenceRow>> {
    if hs.len() < 2 {
        return Err(Error::InvalidGrid("convergence study needs at least two spacings".into()));
    }
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(hs.len());
    for &h in hs {
        let residual = residual_at(h)?;
        let order = rows.last().map(|prev| (prev.residual / residual).ln() / (prev.h / h).ln());
        rows.push(ConvergenceRow { h, residual, order });
    }
    Ok(rows)
}

/// Sample field used by the Kelvin test: `2x_1 e_1 − 2x_2 e_2`, the
/// gradient of the harmonic `x_1² − x_2²`.
pub fn harmonic_gradient(x: &[f64]) -> Result<Multivector<f64>> {
    let mut v = vec![0.0; x.len()];
    v[0] = 2.0 * x[0];
    v[1] = -2.0 * x[1];
    Ok(Vector::new(v).to_multivector())
}

/// Radii of the band on which annulus residuals are measured, away from
/// both rims of the sampled annulus.
pub const REPORT_BAND: (f64, f64) = (0.75, 1.25);

/// Dirac residual of `f` sampled on the annulus `0.5 ≤ |x| ≤ 1.5` in
/// `[−1.5, 1.5]ⁿ` with spacing `h`, measured on [`REPORT_BAND`] at the
/// points of the coarser lattice with spacing `probe` (a multiple of `h`).
/// Using the same probe lattice for every `h` compares errors point by point.
pub fn annulus_dirac_residual(
    n: usize,
    h: f64,
    probe: f64,
    f: impl Fn(&[f64]) -> Result<Multivector<f64>>,
) -> Result<f64> {
    let ratio = probe / h;
    let step = ratio.round() as usize;
    if step == 0 || (ratio - step as f64).abs() > 1e-6 {
        return Err(Error::InvalidGrid(format!("probe spacing {probe} is not a multiple of {h}")));
    }
    let grid = GridSpec::cube(n, -1.5, 1.5, h)?;
    let field = GridField::sample(&grid, Rational::from_i64(0), annulus(0.5, 1.5), f)?;
    let d = dirac_flat(&field)?;
    let band = annulus(REPORT_BAND.0, REPORT_BAND.1);
    Ok(d.defined()
        .filter(|(k, _)| grid.multi_index(*k).iter().all(|i| i % step == 0) && band(&grid.point(*k)))
        .map(|(_, m)| m.norm())
        .fold(0.0, f64::max))
}

pub fn cauchy_residual(n: usize, h: f64, probe: f64) -> Result<f64> {
    annulus_dirac_residual(n, h, probe, cauchy_kernel)
}

pub fn kelvin_residual(n: usize, h: f64, probe: f64) -> Result<f64> {
    annulus_dirac_residual(n, h, probe, kelvin_transform(harmonic_gradient))
}

/// Mixed-grade sample section used by the invariance tests.
pub fn mixed_sample(x: &[f64]) -> Result<Multivector<f64>> {
    let n = x.len();
    let mut c = vec![0.0; 1 << n];
    c[0] += 1.0;
    c[0b1] += x[0];
    c[0b10] -= 0.5 * x[1];
    c[0b11] += x[n - 1];
    c[(1 << n) - 2] += 0.25;
    c[(1 << n) - 1] += x[0] * x[1];
    Multivector::from_coeffs(n, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero_w() -> Rational {
        Rational::from_i64(0)
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::cube(1, 0.0, 1.0, 0.1).is_err());
        assert!(GridSpec::cube(3, 0.0, 1.0, 0.3).is_err());
        assert!(GridSpec::cube(3, 0.0, 1.0, -0.1).is_err());
        let g = GridSpec::cube(2, -1.0, 1.0, 0.5).unwrap();
        assert_eq!(g.shape(), &[5, 5]);
        assert_eq!(g.point(6), vec![-0.5, -0.5]);
        assert!(g.is_interior(6));
        assert!(!g.is_interior(4));
    }

    #[test]
    fn gradient_examples() {
        let g = GridSpec::cube(2, -1.0, 1.0, 0.25).unwrap();
        let c = GridField::sample_everywhere(&g, zero_w(), |_| Ok(Multivector::one(2))).unwrap();
        assert!(fd_gradient(&c).unwrap().iter().all(|f| f.max_norm() == 0.0));
        let lin = GridField::sample_everywhere(&g, zero_w(), |x| Ok(Multivector::scalar(2, x[0]))).unwrap();
        let d = fd_gradient(&lin).unwrap();
        for (k, v) in d[0].defined() {
            assert!((v.coeff(0) - 1.0).abs() < 1e-12, "at {k}");
        }
        assert!(d[1].max_norm() < 1e-12);
        let quad = GridField::sample_everywhere(&g, zero_w(), |x| Ok(Multivector::scalar(2, x[0] * x[0]))).unwrap();
        let dq = fd_gradient(&quad).unwrap();
        for (k, v) in dq[0].defined() {
            assert!((v.coeff(0) - 2.0 * g.point(k)[0]).abs() < 1e-12);
        }
    }

    #[test]
    fn dirac_examples() {
        let g = GridSpec::cube(2, -1.0, 1.0, 0.2).unwrap();
        let one = GridField::sample_everywhere(&g, zero_w(), |_| Ok(Multivector::one(2))).unwrap();
        assert_eq!(dirac_flat(&one).unwrap().max_norm(), 0.0);
        let grad = GridField::sample_everywhere(&g, zero_w(), harmonic_gradient).unwrap();
        assert!(dirac_flat(&grad).unwrap().max_norm() < 1e-12);
    }

    #[test]
    fn cauchy_kernel_values() {
        assert_eq!(cauchy_kernel(&[1.0, 0.0]).unwrap().coeffs(), &[0.0, 1.0, 0.0, 0.0]);
        let k = cauchy_kernel(&[0.0, 2.0, 0.0]).unwrap();
        assert!((k.coeff(0b10) - 0.25).abs() < 1e-15);
        assert!(matches!(cauchy_kernel(&[0.0, 0.0]), Err(Error::Singularity(_))));
    }

    #[test]
    fn kelvin_of_one_is_cauchy_kernel_and_squares_to_minus_identity() {
        let k1 = kelvin_transform(|x: &[f64]| Ok(Multivector::one(x.len())));
        let x = [0.3, -0.7, 1.1];
        assert!((&k1(&x).unwrap() - &cauchy_kernel(&x).unwrap()).norm() < 1e-15);
        let kk = kelvin_transform(kelvin_transform(mixed_sample));
        let back = kk(&x).unwrap();
        assert!((&back + &mixed_sample(&x).unwrap()).norm() < 1e-12);
        assert!(k1(&[0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn sigma_contraction_is_linear_in_w() {
        let n = 3;
        let rep = RepAction::<f64>::spin(n);
        let ls = basis_left_mul::<f64>(n);
        let phi = mixed_sample(&[0.2, -0.4, 0.9]).unwrap();
        let u = Vector::new(vec![0.3, -1.2, 0.5]);
        let up = clifford_of(&u, &phi, &ls);
        for w in [-1.0, 0.0, 0.5, 2.0] {
            let t = epsilon_contract(&hatted_connection_term(&phi, w, &u, &rep).unwrap(), &ls);
            for (a, b) in t.iter().zip(&up) {
                assert!((a - (w + 1.0) * b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn one_form_law_matches_hatted_term() {
        // A one-form of Eq.-(3) weight w is a section of W[w − 1].
        let n = 4;
        let rep = RepAction::<f64>::std_w(n);
        let omega = Vector::new(vec![0.5, -1.0, 2.0, 0.25]);
        let u = Vector::new(vec![-0.3, 0.7, 0.1, 1.5]);
        for w in [-2.0, 0.0, 1.0, 2.0] {
            let law = one_form_connection_change(&omega, &u, w);
            let gamma = gamma_term(&u, omega.comps(), &rep).unwrap();
            for a in 0..n {
                for b in 0..n {
                    let hat = (w - 1.0) * u.comp(a) * omega.comp(b) - gamma[a * n + b];
                    assert!((law.get(a, b) - hat).abs() < 1e-12);
                }
            }
        }
    }
}
