//! so(n) actions on W, Λ•W and derived spaces, and the first-order
//! conformal weight extractor.
//!
//! Bivectors are stored on the blade basis `e_i∧e_j` (i < j). The blade
//! `e_i∧e_j` acts on W by `w ↦ e_i⟨e_j,w⟩ − e_j⟨e_i,w⟩`, i.e. as the matrix
//! `E_ij − E_ji`, and the Lie bracket is the matrix commutator.

use crate::error::{Error, Result};
use crate::linalg::{Defect, Matrix};
use crate::multivector::{basis_left_mul, matrix_of_contract, matrix_of_wedge, Metric, Multivector, Vector};
use crate::scalar::{format_rational, Rational, Scalar};

/// 0-based index pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// Position of the 0-based pair `(i, j)`, `i < j`, in [`pairs`].
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bivector<S> {
    n: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> Bivector<S> {
    pub fn zero(n: usize) -> Self {
        Bivector { n, coeffs: vec![S::zero(); n * n.saturating_sub(1) / 2] }
    }

    /// Blade `e_i∧e_j`, 1-based; `i > j` gives the negated blade.
    pub fn blade(n: usize, i: usize, j: usize) -> Result<Self> {
        for k in [i, j] {
            if k == 0 || k > n {
                return Err(Error::BladeIndex { index: k, n });
            }
        }
        let mut b = Self::zero(n);
        if i < j {
            b.coeffs[pair_index(n, i - 1, j - 1)] = S::one();
        } else if i > j {
            b.coeffs[pair_index(n, j - 1, i - 1)] = -S::one();
        }
        Ok(b)
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::DimensionMismatch { expected: n * n.saturating_sub(1) / 2, found: coeffs.len() });
        }
        Ok(Bivector { n, coeffs })
    }

    /// Blade bivector `u∧v`.
    pub fn wedge(u: &Vector<S>, v: &Vector<S>) -> Self {
        let n = u.dim();
        let mut b = Self::zero(n);
        for (k, (i, j)) in pairs(n).into_iter().enumerate() {
            b.coeffs[k] = u.comp(i) * v.comp(j) - u.comp(j) * v.comp(i);
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: S) -> Self {
        Bivector { n: self.n, coeffs: self.coeffs.iter().map(|c| *c * s).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        Bivector { n: self.n, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| *a + *b).collect() }
    }

    /// n×n antisymmetric matrix of the standard action on W.
    pub fn to_matrix(&self) -> Matrix<S> {
        let mut m = Matrix::zeros(self.n, self.n);
        for (k, (i, j)) in pairs(self.n).into_iter().enumerate() {
            m.set(i, j, self.coeffs[k]);
            m.set(j, i, -self.coeffs[k]);
        }
        m
    }

    /// Reads the upper triangle of an antisymmetric matrix.
    pub fn from_matrix(m: &Matrix<S>) -> Self {
        let n = m.rows();
        Bivector { n, coeffs: pairs(n).into_iter().map(|(i, j)| m.get(i, j)).collect() }
    }

    /// Nonzero `(pair index, coefficient)` terms.
    pub fn terms(&self) -> impl Iterator<Item = (usize, S)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, *c))
    }
}

pub fn so_bracket<S: Scalar>(x: &Bivector<S>, y: &Bivector<S>) -> Result<Bivector<S>> {
    if x.n != y.n {
        return Err(Error::DimensionMismatch { expected: x.n, found: y.n });
    }
    Ok(Bivector::from_matrix(&x.to_matrix().commutator(&y.to_matrix())))
}

pub fn std_action_w<S: Scalar>(x: &Bivector<S>, w: &Vector<S>) -> Result<Vector<S>> {
    if x.n != w.dim() {
        return Err(Error::DimensionMismatch { expected: x.n, found: w.dim() });
    }
    Ok(Vector::new(x.to_matrix().apply(w.comps())))
}

/// Derivation extension of the action on W to Λ•W:
/// `e_i∧e_j ↦ e_i∧ι_{e_j} − e_j∧ι_{e_i}`.
pub fn std_action_forms<S: Scalar>(x: &Bivector<S>, a: &Multivector<S>) -> Result<Multivector<S>> {
    if x.n != a.dim() {
        return Err(Error::DimensionMismatch { expected: x.n, found: a.dim() });
    }
    let m = RepAction::std_forms(x.n).act(x);
    Multivector::from_coeffs(x.n, m.apply(a.coeffs()))
}

/// `σ(e_i∧e_j) e = −¼ (e_i.e_j.e − e_j.e_i.e)`.
pub fn spin_action<S: Scalar>(x: &Bivector<S>, e: &Multivector<S>) -> Result<Multivector<S>> {
    if x.n != e.dim() {
        return Err(Error::DimensionMismatch { expected: x.n, found: e.dim() });
    }
    let m = RepAction::spin(x.n).act(x);
    Multivector::from_coeffs(x.n, m.apply(e.coeffs()))
}

/// `ι(w)` as an element of W⊗Λ²W: slot `a` is the blade bivector `−e_a∧w`.
pub fn iota<S: Scalar>(w: &Vector<S>) -> Vec<Bivector<S>> {
    let n = w.dim();
    (1..=n)
        .map(|a| Bivector::wedge(&Vector::basis(n, a).expect("index in range"), w).scale(-S::one()))
        .collect()
}

/// so(n) action on a finite-dimensional space, given by the images of the
/// blade basis bivectors in [`pairs`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct RepAction<S: Scalar> {
    n: usize,
    space_dim: usize,
    generators: Vec<Matrix<S>>,
}

impl<S: Scalar> RepAction<S> {
    pub fn from_generators(n: usize, space_dim: usize, generators: Vec<Matrix<S>>) -> Result<Self> {
        let count = n * n.saturating_sub(1) / 2;
        if generators.len() != count {
            return Err(Error::DimensionMismatch { expected: count, found: generators.len() });
        }
        for g in &generators {
            if g.rows() != space_dim || g.cols() != space_dim {
                return Err(Error::DimensionMismatch { expected: space_dim, found: g.rows().max(g.cols()) });
            }
        }
        Ok(RepAction { n, space_dim, generators })
    }

    /// Standard action on W.
    pub fn std_w(n: usize) -> Self {
        let generators = pairs(n)
            .into_iter()
            .map(|(i, j)| {
                let mut m = Matrix::zeros(n, n);
                m.set(i, j, S::one());
                m.set(j, i, -S::one());
                m
            })
            .collect();
        RepAction { n, space_dim: n, generators }
    }

    /// Trivial action on a space of the given dimension.
    pub fn trivial(n: usize, space_dim: usize) -> Self {
        let count = n * n.saturating_sub(1) / 2;
        RepAction { n, space_dim, generators: vec![Matrix::zeros(space_dim, space_dim); count] }
    }

    /// Tensor action on Λ•W induced from W.
    pub fn std_forms(n: usize) -> Self {
        let g = Metric::euclidean(n);
        let wedges: Vec<Matrix<S>> = (1..=n).map(|i| matrix_of_wedge(&Vector::basis(n, i).expect("in range"))).collect();
        let contracts: Vec<Matrix<S>> = (1..=n)
            .map(|i| matrix_of_contract(&Vector::basis(n, i).expect("in range"), &g).expect("same dimension"))
            .collect();
        let generators = pairs(n)
            .into_iter()
            .map(|(i, j)| &wedges[i].matmul(&contracts[j]) - &wedges[j].matmul(&contracts[i]))
            .collect();
        RepAction { n, space_dim: 1 << n, generators }
    }

    /// Spin action on Λ•W.
    pub fn spin(n: usize) -> Self {
        Self::spin_with_constant(n, S::ratio(-1, 4))
    }

    /// `e_i∧e_j ↦ c (L_i L_j − L_j L_i)`; `c = −¼` is the spin action.
    pub fn spin_with_constant(n: usize, c: S) -> Self {
        Self::spin_from_left_mul(n, &basis_left_mul(n), c)
    }

    /// Same construction over arbitrary Clifford multiplication matrices.
    pub fn spin_from_left_mul(n: usize, ls: &[Matrix<S>], c: S) -> Self {
        let space_dim = ls.first().map_or(1, Matrix::rows);
        let generators = pairs(n)
            .into_iter()
            .map(|(i, j)| (&ls[i].matmul(&ls[j]) - &ls[j].matmul(&ls[i])).scale(c))
            .collect();
        RepAction { n, space_dim, generators }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn generators(&self) -> &[Matrix<S>] {
        &self.generators
    }

    pub fn generator(&self, k: usize) -> &Matrix<S> {
        &self.generators[k]
    }

    /// Image of an arbitrary bivector.
    pub fn act(&self, x: &Bivector<S>) -> Matrix<S> {
        let mut m = Matrix::zeros(self.space_dim, self.space_dim);
        for (k, c) in x.terms() {
            m.add_block(0, 0, &self.generators[k], c);
        }
        m
    }

    /// Image of the blade `e_a∧e_b` for 0-based `a ≠ b`, with its sign.
    pub fn blade_generator(&self, a: usize, b: usize) -> (i32, &Matrix<S>) {
        if a < b {
            (1, &self.generators[pair_index(self.n, a, b)])
        } else {
            (-1, &self.generators[pair_index(self.n, b, a)])
        }
    }

    /// Action on W⊗(this space): `X ↦ X⊗Id + Id⊗ρ(X)`, indexed `a·dim + α`.
    pub fn with_vector_factor(&self) -> Self {
        let w = RepAction::<S>::std_w(self.n);
        let id_w = Matrix::identity(self.n);
        let id_e = Matrix::identity(self.space_dim);
        let generators = w
            .generators
            .iter()
            .zip(&self.generators)
            .map(|(a, r)| &a.kron(&id_e) + &id_w.kron(r))
            .collect();
        RepAction { n: self.n, space_dim: self.n * self.space_dim, generators }
    }

    /// Largest deviation of `ρ([X,Y]) − [ρ(X), ρ(Y)]` over basis pairs.
    pub fn check_representation(&self) -> Defect {
        let basis: Vec<Bivector<S>> = (0..self.generators.len())
            .map(|k| {
                let mut b = Bivector::zero(self.n);
                b.coeffs[k] = S::one();
                b
            })
            .collect();
        let mut defect = Defect::none(S::tolerance());
        for p in 0..basis.len() {
            for q in p + 1..basis.len() {
                let bracket = so_bracket(&basis[p], &basis[q]).expect("same dimension");
                let lhs = self.act(&bracket);
                let rhs = self.generators[p].commutator(&self.generators[q]);
                defect = defect.merge((&lhs - &rhs).defect());
            }
        }
        defect
    }
}

/// Equivariant candidate `π: W⊗E → F` with the actions on E and F.
///
/// The source index is `a·dim_e + α` for `e_a ⊗ (basis vector α of E)`.
#[derive(Debug, Clone)]
pub struct SymbolMap<S: Scalar> {
    pub name: String,
    pub n: usize,
    pub matrix: Matrix<S>,
    pub rep_e: RepAction<S>,
    pub rep_f: RepAction<S>,
    /// Names of the source and target bundles used in operator labels.
    pub labels: (String, String),
}

impl<S: Scalar> SymbolMap<S> {
    pub fn new(name: &str, matrix: Matrix<S>, rep_e: RepAction<S>, rep_f: RepAction<S>) -> Result<Self> {
        let n = rep_e.n;
        if rep_f.n != n {
            return Err(Error::DimensionMismatch { expected: n, found: rep_f.n });
        }
        if matrix.rows() != rep_f.space_dim {
            return Err(Error::DimensionMismatch { expected: rep_f.space_dim, found: matrix.rows() });
        }
        if matrix.cols() != n * rep_e.space_dim {
            return Err(Error::DimensionMismatch { expected: n * rep_e.space_dim, found: matrix.cols() });
        }
        Ok(SymbolMap { name: name.to_string(), n, matrix, rep_e, rep_f, labels: ("E".into(), "F".into()) })
    }

    pub fn with_labels(mut self, source: &str, target: &str) -> Self {
        self.labels = (source.to_string(), target.to_string());
        self
    }

    pub fn dim_e(&self) -> usize {
        self.rep_e.space_dim
    }

    pub fn dim_f(&self) -> usize {
        self.rep_f.space_dim
    }

    /// Column block `π_a = π(e_a ⊗ ·)`.
    pub fn block(&self, a: usize) -> Matrix<S> {
        let de = self.dim_e();
        self.matrix.block(0, a * de, self.dim_f(), de)
    }

    /// Largest deviation of `π∘(X⊗Id + Id⊗ρ_E(X)) − ρ_F(X)∘π` over basis X.
    pub fn check_equivariance(&self) -> Defect {
        let blocks: Vec<Matrix<S>> = (0..self.n).map(|a| self.block(a)).collect();
        let mut defect = Defect::none(S::tolerance());
        for (k, (i, j)) in pairs(self.n).into_iter().enumerate() {
            let re = &self.rep_e.generators[k];
            let rf = &self.rep_f.generators[k];
            for (b, pb) in blocks.iter().enumerate() {
                // (E_ij − E_ji) column b: +e_i if b == j, −e_j if b == i
                let mut lhs = pb.matmul(re);
                if b == j {
                    lhs = &lhs + &blocks[i];
                }
                if b == i {
                    lhs = &lhs - &blocks[j];
                }
                defect = defect.merge((&lhs - &rf.matmul(pb)).defect());
            }
        }
        defect
    }

    /// `π((Id⊗ρ_E)(ι(Υ)⊗φ))` for `Υ = e_b`, as a matrix on W⊗E:
    /// block `b` is `Σ_{a≠b} π_a ρ_E(−e_a∧e_b)`.
    pub fn connection_composite(&self) -> Matrix<S> {
        let blocks: Vec<Matrix<S>> = (0..self.n).map(|a| self.block(a)).collect();
        let de = self.dim_e();
        let mut m = Matrix::zeros(self.dim_f(), self.n * de);
        for b in 0..self.n {
            for (a, pa) in blocks.iter().enumerate() {
                if a == b {
                    continue;
                }
                let (sign, gen) = self.rep_e.blade_generator(a, b);
                let term = pa.matmul(gen);
                m.add_block(0, b * de, &term, S::from_i64(-(sign as i64)));
            }
        }
        m
    }

    pub fn apply(&self, x: &[S]) -> Vec<S> {
        self.matrix.apply(x)
    }
}

/// Outcome of the weight extraction.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightReport<S> {
    pub symbol: String,
    pub n: usize,
    pub weight: Option<S>,
    /// Squared Frobenius norm of `M − wπ` at the best `w`.
    pub residual: S,
    pub operator: String,
}

impl<S: Scalar> WeightReport<S> {
    pub fn weight_string(&self) -> Option<String> {
        self.weight.map(|w| scalar_string(&w))
    }

    pub fn residual_string(&self) -> String {
        scalar_string(&self.residual)
    }
}

fn scalar_string<S: Scalar>(s: &S) -> String {
    s.parts().re
}

fn weight_label<S: Scalar>(w: &S) -> String {
    if S::is_exact() {
        let p = w.parts();
        let q = crate::scalar::parse_rational(&p.re).expect("real part parses");
        return format_weight(&q);
    }
    let x = w.parts().re;
    x.parse::<f64>().map(|v| format!("{v}")).unwrap_or(x)
}

fn format_weight(q: &Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format_rational(q)
    }
}

/// Extracts `w` with `π∘(Id⊗ρ_E)∘(ι⊗Id) = w·π`, after re-checking equivariance.
///
/// When the composite is not a multiple of `π`, the weight is absent and the
/// residual is strictly positive.
pub fn conformal_weight<S: Scalar>(pi: &SymbolMap<S>) -> Result<WeightReport<S>> {
    let eq = pi.check_equivariance();
    if !eq.is_zero() {
        return Err(Error::NotModuleMap { defect: eq.max_abs });
    }
    let norm = pi.matrix.frobenius_inner(&pi.matrix);
    if norm.is_zero() {
        return Err(Error::ZeroSymbol);
    }
    let m = pi.connection_composite();
    let w = pi.matrix.frobenius_inner(&m).try_div(norm).expect("nonzero norm");
    let r = &m - &pi.matrix.scale(w);
    let residual = r.frobenius_inner(&r);
    let vanishes = if S::is_exact() {
        residual.is_zero()
    } else {
        residual.modulus().sqrt() <= S::tolerance() * (1.0 + norm.modulus().sqrt())
    };
    let (src, dst) = &pi.labels;
    let (weight, operator) = if vanishes {
        let lower = w - S::one();
        (Some(w), format!("{src}[{}] -> {dst}[{}]", weight_label(&w), weight_label(&lower)))
    } else {
        (None, format!("{src}[w] -> {dst}[w-1]"))
    };
    Ok(WeightReport { symbol: pi.name.clone(), n: pi.n, weight, residual, operator })
}

/// Tensor-index helper for W⊗W: `a·n + b`.
fn ww(n: usize, a: usize, b: usize) -> usize {
    a * n + b
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::UnsupportedDimension { n, reason: "symbol needs n >= 2" });
    }
    Ok(())
}

/// Action on F given coordinates `coord: W⊗W → F` and a section `lift`.
fn induced_rep<S: Scalar>(n: usize, coord: &Matrix<S>, lift: &Matrix<S>) -> RepAction<S> {
    let ww_rep = RepAction::<S>::std_w(n).with_vector_factor();
    let generators = ww_rep.generators.iter().map(|g| coord.matmul(&g.matmul(lift))).collect();
    RepAction { n, space_dim: coord.rows(), generators }
}

/// Coordinates and lift of the skew part `Λ²W` of W⊗W.
pub fn skew_projection<S: Scalar>(n: usize) -> (Matrix<S>, Matrix<S>) {
    let ps = pairs(n);
    let half = S::ratio(1, 2);
    let mut coord = Matrix::zeros(ps.len(), n * n);
    let mut lift = Matrix::zeros(n * n, ps.len());
    for (k, &(i, j)) in ps.iter().enumerate() {
        coord.set(k, ww(n, i, j), half);
        coord.set(k, ww(n, j, i), -half);
        lift.set(ww(n, i, j), k, S::one());
        lift.set(ww(n, j, i), k, -S::one());
    }
    (coord, lift)
}

/// Coordinates and lift of the trace-free symmetric part of W⊗W, on the
/// basis `E_ij + E_ji` (i < j) followed by `E_kk − E_nn` (k < n).
pub fn sym0_projection<S: Scalar>(n: usize) -> (Matrix<S>, Matrix<S>) {
    let ps = pairs(n);
    let dim = ps.len() + n - 1;
    let half = S::ratio(1, 2);
    let inv_n = S::ratio(1, n as i64);
    let mut coord = Matrix::zeros(dim, n * n);
    let mut lift = Matrix::zeros(n * n, dim);
    for (k, &(i, j)) in ps.iter().enumerate() {
        coord.set(k, ww(n, i, j), half);
        coord.set(k, ww(n, j, i), half);
        lift.set(ww(n, i, j), k, S::one());
        lift.set(ww(n, j, i), k, S::one());
    }
    for k in 0..n - 1 {
        let row = ps.len() + k;
        for c in 0..n {
            coord.add_to(row, ww(n, c, c), -inv_n);
        }
        coord.add_to(row, ww(n, k, k), S::one());
        lift.set(ww(n, k, k), row, S::one());
        lift.set(ww(n, n - 1, n - 1), row, -S::one());
    }
    (coord, lift)
}

/// Coordinate and lift of the trace part: `T ↦ Σ T_aa`, `1 ↦ g/n`.
pub fn trace_projection<S: Scalar>(n: usize) -> (Matrix<S>, Matrix<S>) {
    let mut coord = Matrix::zeros(1, n * n);
    let mut lift = Matrix::zeros(n * n, 1);
    for a in 0..n {
        coord.set(0, ww(n, a, a), S::one());
        lift.set(ww(n, a, a), 0, S::ratio(1, n as i64));
    }
    (coord, lift)
}

fn projection_symbol<S: Scalar>(name: &str, n: usize, (coord, lift): (Matrix<S>, Matrix<S>)) -> Result<SymbolMap<S>> {
    let rep_f = induced_rep(n, &coord, &lift);
    SymbolMap::new(name, coord, RepAction::std_w(n), rep_f)
}

/// One-forms to two-forms: `ξ⊗ω ↦ ξ_[a ω_b]`.
pub fn symbol_skew<S: Scalar>(n: usize) -> Result<SymbolMap<S>> {
    check_n(n, 2)?;
    projection_symbol("skew", n, skew_projection(n))
}

/// One-forms to trace-free symmetric tensors.
pub fn symbol_sym0<S: Scalar>(n: usize) -> Result<SymbolMap<S>> {
    check_n(n, 2)?;
    projection_symbol("sym0", n, sym0_projection(n))
}

/// One-forms to functions: `ξ⊗ω ↦ ⟨ξ, ω⟩`.
pub fn symbol_trace<S: Scalar>(n: usize) -> Result<SymbolMap<S>> {
    check_n(n, 2)?;
    projection_symbol("trace", n, trace_projection(n))
}

/// `[L_1 | … | L_n]`: the map `v⊗e ↦ v.e` from W⊗Λ•W to Λ•W.
pub fn clifford_matrix<S: Scalar>(n: usize) -> Matrix<S> {
    let ls = basis_left_mul::<S>(n);
    Matrix::hcat(&ls)
}

/// Clifford multiplication as a symbol, with the spin action on both sides.
pub fn epsilon_symbol<S: Scalar>(n: usize) -> Result<SymbolMap<S>> {
    let rep = RepAction::spin(n);
    Ok(SymbolMap::new("clifford", clifford_matrix(n), rep.clone(), rep)?.with_labels("E", "E"))
}

/// Clifford multiplication with the given action on Λ•W on both sides.
pub fn epsilon_symbol_with<S: Scalar>(n: usize, name: &str, rep: RepAction<S>) -> Result<SymbolMap<S>> {
    Ok(SymbolMap::new(name, clifford_matrix(n), rep.clone(), rep)?.with_labels("E", "E"))
}

/// Clifford multiplication rescaled so that `v.v.e = −λ|v|²e`, with the
/// matching spin action `e_i∧e_j ↦ −1/(4λ) (L_i L_j − L_j L_i)`.
pub fn epsilon_symbol_scaled<S: Scalar>(n: usize, lambda: S) -> Result<SymbolMap<S>> {
    let inv = lambda.try_inv().ok_or(Error::ZeroSymbol)?;
    let g = Metric::euclidean(n);
    let ls: Vec<Matrix<S>> = (1..=n)
        .map(|i| {
            let v = Vector::basis(n, i).expect("in range");
            &matrix_of_wedge(&v) - &matrix_of_contract(&v, &g).expect("same dimension").scale(lambda)
        })
        .collect();
    let rep = RepAction::spin_from_left_mul(n, &ls, S::ratio(-1, 4) * inv);
    Ok(SymbolMap::new("clifford-scaled", Matrix::hcat(&ls), rep.clone(), rep)?.with_labels("E", "E"))
}

/// `Γφ`: slot `a` is `ρ(ι(Υ)_a) φ`, flattened as `a·dim + α`.
pub fn gamma_term<S: Scalar>(upsilon: &Vector<S>, phi: &[S], rep: &RepAction<S>) -> Result<Vec<S>> {
    let n = upsilon.dim();
    if n != rep.n {
        return Err(Error::DimensionMismatch { expected: rep.n, found: n });
    }
    if phi.len() != rep.space_dim {
        return Err(Error::DimensionMismatch { expected: rep.space_dim, found: phi.len() });
    }
    let mut out = Vec::with_capacity(n * rep.space_dim);
    for slot in iota(upsilon) {
        out.extend(rep.act(&slot).apply(phi));
    }
    Ok(out)
}
