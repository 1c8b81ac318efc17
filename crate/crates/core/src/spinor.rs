//! Complex spinors: the null splitting ℂW = U ⊕ U*, gamma matrices on Λ•U,
//! and the isomorphism Φ: Λ•ℂW → Λ•U ⊗ Λ•U* intertwining Clifford
//! multiplication with `γ ⊗ Id`.
//!
//! Λ•U and Λ•U* use blade bitmasks over `u_1 … u_m` and the dual blades
//! over `u*_1 … u*_m`. The tensor index of `u_A ⊗ u*_B` is `A·2^m + B`, so
//! an element of Λ•U ⊗ Λ•U* reads as a 2^m × 2^m matrix in row-major order
//! and Φ(1) is the identity.

use crate::error::{Error, Result};
use crate::linalg::{Check, Defect, Matrix};
use crate::multivector::{basis_left_mul, grade_of, matrix_of_contract, matrix_of_wedge, Metric, Vector};
use crate::represent::{pairs, RepAction};
use crate::scalar::{ComplexScalar, Scalar};

/// Largest n accepted by the spinor constructions in exact arithmetic.
pub const EXACT_LIMIT: usize = 6;
/// Largest n accepted in floating point.
pub const FLOAT_LIMIT: usize = 8;

pub fn dimension_limit<S: Scalar>() -> usize {
    if S::is_exact() {
        EXACT_LIMIT
    } else {
        FLOAT_LIMIT
    }
}

fn guard<S: Scalar>(n: usize) -> Result<()> {
    let limit = dimension_limit::<S>();
    if n > limit {
        return Err(Error::ResourceLimit { what: "n", size: n, limit });
    }
    Ok(())
}

/// `u_k = (e_{2k−1} − i e_{2k})/√2`, `u*_k = (e_{2k−1} + i e_{2k})/√2`.
#[derive(Debug, Clone, PartialEq)]
pub struct NullSplitting<S> {
    pub n: usize,
    pub u: Vec<Vector<S>>,
    pub ustar: Vec<Vector<S>>,
}

pub fn make_null_splitting<S: ComplexScalar>(n: usize) -> Result<NullSplitting<S>> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::UnsupportedDimension { n, reason: "null splitting needs even n" });
    }
    let r = S::sqrt2() * S::ratio(1, 2);
    let ri = r * S::i();
    let mut u = Vec::with_capacity(n / 2);
    let mut ustar = Vec::with_capacity(n / 2);
    for k in 0..n / 2 {
        let mut a = vec![S::zero(); n];
        let mut b = vec![S::zero(); n];
        a[2 * k] = r;
        a[2 * k + 1] = -ri;
        b[2 * k] = r;
        b[2 * k + 1] = ri;
        u.push(Vector::new(a));
        ustar.push(Vector::new(b));
    }
    Ok(NullSplitting { n, u, ustar })
}

impl<S: ComplexScalar> NullSplitting<S> {
    pub fn m(&self) -> usize {
        self.n / 2
    }

    /// Complexified bilinear pairing.
    pub fn pairing(&self, a: &Vector<S>, b: &Vector<S>) -> S {
        Metric::euclidean(self.n).inner(a, b)
    }

    /// Coordinates of `v = Σ a_k u_k + Σ b_k u*_k`.
    pub fn decompose(&self, v: &Vector<S>) -> (Vec<S>, Vec<S>) {
        let a = self.ustar.iter().map(|us| self.pairing(v, us)).collect();
        let b = self.u.iter().map(|u| self.pairing(v, u)).collect();
        (a, b)
    }
}

/// Creation operators `u_k∧` on Λ•U.
fn creations<S: Scalar>(m: usize) -> Vec<Matrix<S>> {
    (1..=m).map(|k| matrix_of_wedge(&Vector::basis(m, k).expect("in range"))).collect()
}

/// Annihilation operators: contraction against `u*_k` on Λ•U.
fn annihilations<S: Scalar>(m: usize) -> Vec<Matrix<S>> {
    let g = Metric::euclidean(m);
    (1..=m)
        .map(|k| matrix_of_contract(&Vector::basis(m, k).expect("in range"), &g).expect("same dimension"))
        .collect()
}

/// `γ(v) = √2 (α∧ − β⌟)` on Λ•U for `v = α + β`, α ∈ U, β ∈ U*.
pub fn gamma_matrix<S: ComplexScalar>(v: &Vector<S>, split: &NullSplitting<S>) -> Result<Matrix<S>> {
    if v.dim() != split.n {
        return Err(Error::DimensionMismatch { expected: split.n, found: v.dim() });
    }
    let m = split.m();
    let (a, b) = split.decompose(v);
    let dim = 1 << m;
    let mut g = Matrix::zeros(dim, dim);
    for (k, (c, an)) in creations::<S>(m).iter().zip(annihilations::<S>(m)).enumerate() {
        g.add_block(0, 0, c, a[k]);
        g.add_block(0, 0, &an, -b[k]);
    }
    Ok(g.scale(S::sqrt2()))
}

/// `γ(e_1) … γ(e_n)`.
pub fn basis_gammas<S: ComplexScalar>(split: &NullSplitting<S>) -> Vec<Matrix<S>> {
    (1..=split.n)
        .map(|i| gamma_matrix(&Vector::basis(split.n, i).expect("in range"), split).expect("same dimension"))
        .collect()
}

/// Colon action on Λ•U ⊗ Λ•U*: `γ(v) ⊗ Id`.
pub fn colon_matrix<S: ComplexScalar>(v: &Vector<S>, split: &NullSplitting<S>) -> Result<Matrix<S>> {
    Ok(gamma_matrix(v, split)?.kron(&Matrix::identity(1 << split.m())))
}

/// `v : ω` for ω in Λ•U ⊗ Λ•U*.
pub fn colon_action<S: ComplexScalar>(v: &Vector<S>, omega: &[S], split: &NullSplitting<S>) -> Result<Vec<S>> {
    let c = colon_matrix(v, split)?;
    if omega.len() != c.cols() {
        return Err(Error::DimensionMismatch { expected: c.cols(), found: omega.len() });
    }
    Ok(c.apply(omega))
}

/// `Σ_A u_A ⊗ u*_A`, the identity endomorphism of Λ•U.
pub fn phi_one<S: Scalar>(m: usize) -> Vec<S> {
    let dim = 1 << m;
    let mut v = vec![S::zero(); dim * dim];
    for a in 0..dim {
        v[a * dim + a] = S::one();
    }
    v
}

/// Order in which the generators of a Clifford word are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordOrder {
    /// `e_{i1}.e_{i2}.….e_{ik}.1` with `i1 < … < ik`.
    Increasing,
    /// `e_{ik}.….e_{i1}.1`.
    Decreasing,
}

#[derive(Debug, Clone)]
pub struct PhiMap<S: Scalar> {
    pub n: usize,
    pub split: NullSplitting<S>,
    /// Columns indexed by the blade basis of Λ•ℂW, rows by `A·2^m + B`.
    pub matrix: Matrix<S>,
    pub inverse: Matrix<S>,
}

impl<S: ComplexScalar> PhiMap<S> {
    pub fn apply(&self, e: &[S]) -> Vec<S> {
        self.matrix.apply(e)
    }

    /// Φ of a vector of ℂW.
    pub fn apply_vector(&self, v: &Vector<S>) -> Vec<S> {
        self.apply(v.to_multivector().coeffs())
    }
}

fn word_indices(mask: usize, n: usize, order: WordOrder) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).filter(|b| (mask >> b) & 1 == 1).collect();
    if order == WordOrder::Decreasing {
        idx.reverse();
    }
    idx
}

/// Builds Φ from the words `e_{i1}.….e_{ik}.1` and their colon images on
/// Φ(1), then runs the null-vector consistency checks.
pub fn build_phi_ordered<S: ComplexScalar>(n: usize, order: WordOrder) -> Result<PhiMap<S>> {
    guard::<S>(n)?;
    let split = make_null_splitting::<S>(n)?;
    let m = split.m();
    let dim = 1 << n;
    let ls = basis_left_mul::<S>(n);
    let colons: Vec<Matrix<S>> = (1..=n)
        .map(|i| colon_matrix(&Vector::basis(n, i).expect("in range"), &split).expect("same dimension"))
        .collect();
    let one = phi_one::<S>(m);
    let mut words = Matrix::zeros(dim, dim);
    let mut images = Matrix::zeros(dim, dim);
    for mask in 0..dim {
        let mut w = vec![S::zero(); dim];
        w[0] = S::one();
        let mut y = one.clone();
        // apply right to left
        for &i in word_indices(mask, n, order).iter().rev() {
            w = ls[i].apply(&w);
            y = colons[i].apply(&y);
        }
        words.set_column(mask, &w);
        images.set_column(mask, &y);
    }
    let words_inv = words
        .inverse()
        .ok_or_else(|| Error::Consistency("Clifford words do not form a basis".into()))?;
    let matrix = images.matmul(&words_inv);
    let inverse = matrix
        .inverse()
        .ok_or_else(|| Error::Consistency("Φ is singular".into()))?;
    let phi = PhiMap { n, split, matrix, inverse };
    check_null_consistency(&phi)?;
    Ok(phi)
}

pub fn build_phi<S: ComplexScalar>(n: usize) -> Result<PhiMap<S>> {
    build_phi_ordered(n, WordOrder::Increasing)
}

/// `α:Φ(α) = 0`, `β:Φ(β) = 0` and `α:Φ(β) + β:Φ(α) = −2⟨α,β⟩Φ(1)` on the
/// null basis.
fn check_null_consistency<S: ComplexScalar>(phi: &PhiMap<S>) -> Result<()> {
    let split = &phi.split;
    let one = phi_one::<S>(split.m());
    let act = |v: &Vector<S>, w: &Vector<S>| colon_action(v, &phi.apply_vector(w), split).expect("same dimension");
    let zero = |x: &[S]| x.iter().all(Scalar::is_zero) || (!S::is_exact() && x.iter().all(|c| c.modulus() <= S::tolerance()));
    for (j, a) in split.u.iter().enumerate() {
        if !zero(&act(a, a)) {
            return Err(Error::Consistency(format!("u_{}:Φ(u_{}) ≠ 0", j + 1, j + 1)));
        }
    }
    for (j, b) in split.ustar.iter().enumerate() {
        if !zero(&act(b, b)) {
            return Err(Error::Consistency(format!("u*_{}:Φ(u*_{}) ≠ 0", j + 1, j + 1)));
        }
    }
    for (j, a) in split.u.iter().enumerate() {
        for (k, b) in split.ustar.iter().enumerate() {
            let lhs: Vec<S> = act(a, b).iter().zip(act(b, a)).map(|(x, y)| *x + y).collect();
            let c = S::from_i64(-2) * split.pairing(a, b);
            let diff: Vec<S> = lhs.iter().zip(&one).map(|(x, o)| *x - c * *o).collect();
            if !zero(&diff) {
                return Err(Error::Consistency(format!("u_{}:Φ(u*_{}) + u*_{}:Φ(u_{}) mismatch", j + 1, k + 1, k + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// Spin action transported to Λ•U: `e_i∧e_j ↦ −¼ (γ_i γ_j − γ_j γ_i)`.
pub fn spinor_spin_action<S: ComplexScalar>(gammas: &[Matrix<S>]) -> RepAction<S> {
    RepAction::spin_from_left_mul(gammas.len(), gammas, S::ratio(-1, 4))
}

/// Even-dimensional splitting of Λ•ℂW into `2^{n/2}` copies of the spinor
/// space.
#[derive(Debug, Clone)]
pub struct EvenDecomposition<S: Scalar> {
    pub n: usize,
    pub spinor_dim: usize,
    pub multiplicity: usize,
    pub phi: PhiMap<S>,
    pub gammas: Vec<Matrix<S>>,
    pub checks: Vec<Check>,
}

impl<S: Scalar> EvenDecomposition<S> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn block_decompose_even<S: ComplexScalar>(n: usize) -> Result<EvenDecomposition<S>> {
    let phi = build_phi::<S>(n)?;
    let split = phi.split.clone();
    let m = split.m();
    let sdim = 1usize << m;
    let gammas = basis_gammas(&split);
    let ls = basis_left_mul::<S>(n);
    let id_s = Matrix::<S>::identity(sdim);
    let mut checks = Vec::new();

    let mut cliff = Defect::none(S::tolerance());
    let mut trace = Defect::none(S::tolerance());
    let mut parity = Defect::none(S::tolerance());
    for (a, ga) in gammas.iter().enumerate() {
        for (b, gb) in gammas.iter().enumerate() {
            let mut anti = &ga.matmul(gb) + &gb.matmul(ga);
            if a == b {
                anti = &anti + &Matrix::identity(sdim).scale(S::from_i64(2));
            }
            cliff = cliff.merge(anti.defect());
        }
        trace = trace.merge(Defect::of_slice(&[ga.trace()]));
        let same_parity: Vec<S> = (0..sdim)
            .flat_map(|r| (0..sdim).map(move |c| (r, c)))
            .filter(|&(r, c)| grade_of(r) % 2 == grade_of(c) % 2)
            .map(|(r, c)| ga.get(r, c))
            .collect();
        parity = parity.merge(Defect::of_slice(&same_parity));
    }
    checks.push(Check::defect("gamma Clifford relations", cliff));
    checks.push(Check::defect("gamma matrices are traceless", trace));
    checks.push(Check::defect("gamma exchanges even and odd parts", parity));

    let dim_one = phi.apply(&crate::multivector::Multivector::<S>::one(n).into_coeffs());
    let one_diff: Vec<S> = dim_one.iter().zip(phi_one::<S>(m)).map(|(x, y)| *x - y).collect();
    checks.push(Check::defect("Φ(1) is the identity endomorphism", Defect::of_slice(&one_diff)));

    let mut inter = Defect::none(S::tolerance());
    let mut conj = Defect::none(S::tolerance());
    for (l, g) in ls.iter().zip(&gammas) {
        let colon = g.kron(&id_s);
        inter = inter.merge((&phi.matrix.matmul(l) - &colon.matmul(&phi.matrix)).defect());
        conj = conj.merge((&phi.matrix.matmul(l).matmul(&phi.inverse) - &colon).defect());
    }
    checks.push(Check::defect("Φ(v.e) = v:Φ(e)", inter));
    checks.push(Check::defect("Φ L(v) Φ⁻¹ = γ(v) ⊗ Id", conj));
    let inv = &phi.matrix.matmul(&phi.inverse) - &Matrix::identity(1 << n);
    checks.push(Check::defect("Φ is invertible", inv.defect()));

    let other = build_phi_ordered::<S>(n, WordOrder::Decreasing)?;
    checks.push(Check::defect("Φ is independent of word order", (&phi.matrix - &other.matrix).defect()));

    let sigma = RepAction::<S>::spin(n);
    let sigma_s = spinor_spin_action(&gammas);
    let mut spin = Defect::none(S::tolerance());
    for k in 0..pairs(n).len() {
        let lhs = phi.matrix.matmul(sigma.generator(k)).matmul(&phi.inverse);
        spin = spin.merge((&lhs - &sigma_s.generator(k).kron(&id_s)).defect());
    }
    checks.push(Check::defect("Φ σ(X) Φ⁻¹ = σ_S(X) ⊗ Id", spin));
    checks.push(Check::equal("2^n = spinor dim × multiplicity", 1usize << n, sdim * sdim));

    Ok(EvenDecomposition { n, spinor_dim: sdim, multiplicity: sdim, phi, gammas, checks })
}

/// Odd-dimensional splitting through the central volume element.
#[derive(Debug, Clone)]
pub struct OddDecomposition<S: Scalar> {
    pub n: usize,
    pub spinor_dim: usize,
    /// Total number of spinor copies across both eigenspaces.
    pub multiplicity: usize,
    pub eigenspace_dims: [usize; 2],
    pub volume: Matrix<S>,
    pub checks: Vec<Check>,
}

impl<S: Scalar> OddDecomposition<S> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// `Ω = i^{⌈n/2⌉} L(e_1)…L(e_n)` on Λ•ℂW.
pub fn volume_element<S: ComplexScalar>(n: usize) -> Matrix<S> {
    let ls = basis_left_mul::<S>(n);
    let mut omega = Matrix::identity(1 << n);
    for l in &ls {
        omega = omega.matmul(l);
    }
    let mut phase = S::one();
    for _ in 0..n.div_ceil(2) {
        phase *= S::i();
    }
    omega.scale(phase)
}

fn isqrt(x: usize) -> usize {
    let mut r = (x as f64).sqrt() as usize;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

pub fn decompose_odd<S: ComplexScalar>(n: usize) -> Result<OddDecomposition<S>> {
    if n.is_multiple_of(2) {
        return Err(Error::UnsupportedDimension { n, reason: "volume splitting needs odd n" });
    }
    guard::<S>(n)?;
    let dim = 1usize << n;
    let ls = basis_left_mul::<S>(n);
    let omega = volume_element::<S>(n);
    let id = Matrix::<S>::identity(dim);
    let mut checks = Vec::new();
    checks.push(Check::defect("Ω² = Id", (&omega.matmul(&omega) - &id).defect()));
    let mut central = Defect::none(S::tolerance());
    for l in &ls {
        central = central.merge(omega.commutator(l).defect());
    }
    checks.push(Check::defect("Ω commutes with Clifford multiplication", central));

    let half = S::ratio(1, 2);
    let projectors = [(&id + &omega).scale(half), (&id - &omega).scale(half)];
    let mut eigen = [0usize; 2];
    let mut spinor_dims = [0usize; 2];
    for (s, p) in projectors.iter().enumerate() {
        let basis = p.column_space();
        let r = basis.cols();
        eigen[s] = r;
        // span of all Clifford words restricted to this summand
        let mut rows = Vec::with_capacity(dim);
        for mask in 0..dim {
            let mut op = basis.clone();
            for &i in word_indices(mask, n, WordOrder::Increasing).iter().rev() {
                op = ls[i].matmul(&op);
            }
            let x = basis
                .solve(&op)
                .ok_or_else(|| Error::Consistency("eigenspace is not Clifford-invariant".into()))?;
            rows.push(x.entries().to_vec());
        }
        let span = Matrix::from_rows(&rows).rank();
        let sd = isqrt(span);
        spinor_dims[s] = sd;
        checks.push(Check::equal(&format!("word span on eigenspace {} is a full matrix algebra", s + 1), span, sd * sd));
    }
    checks.push(Check::equal("eigenspace dimensions", eigen[0], eigen[1]));
    let spinor_dim = spinor_dims[0];
    checks.push(Check::equal("both eigenspaces carry the same spinor dimension", spinor_dims[0], spinor_dims[1]));
    checks.push(Check::equal("spinor dimension", spinor_dim, 1usize << ((n - 1) / 2)));
    let multiplicity = if spinor_dim == 0 { 0 } else { dim / spinor_dim };
    checks.push(Check::equal("multiplicity", multiplicity, 1usize << n.div_ceil(2)));

    Ok(OddDecomposition { n, spinor_dim, multiplicity, eigenspace_dims: eigen, volume: omega, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExtIS2;
    use num_complex::Complex64;

    type X = ExtIS2;

    fn x(re: i64) -> X {
        X::from_i64(re)
    }

    #[test]
    fn null_splitting_pairings() {
        let s = make_null_splitting::<X>(2).unwrap();
        assert_eq!(s.pairing(&s.u[0], &s.u[0]), x(0));
        assert_eq!(s.pairing(&s.u[0], &s.ustar[0]), x(1));
        let s4 = make_null_splitting::<X>(4).unwrap();
        let v = s4.u[0].add(&s4.ustar[1]);
        assert_eq!(s4.pairing(&v, &v), x(0));
        assert_eq!(s4.pairing(&s4.ustar[0], &s4.ustar[1]), x(0));
        assert!(make_null_splitting::<X>(3).is_err());
    }

    #[test]
    fn colon_examples() {
        let s = make_null_splitting::<X>(2).unwrap();
        let vac = vec![x(1), x(0), x(0), x(0)];
        // u_1 : 1⊗1 = √2 u_1⊗1, index (A=1)·2 + 0
        let out = colon_action(&s.u[0], &vac, &s).unwrap();
        assert_eq!(out, vec![x(0), x(0), X::sqrt2(), x(0)]);
        // u*_1 annihilates the vacuum of Λ•U
        let vac2 = vec![x(0), x(1), x(0), x(0)];
        assert!(colon_action(&s.ustar[0], &vac2, &s).unwrap().iter().all(Scalar::is_zero));
        let v = s.u[0].add(&s.ustar[0]);
        let om = vec![x(1), x(2), x(-3), X::i()];
        let twice = colon_action(&v, &colon_action(&v, &om, &s).unwrap(), &s).unwrap();
        let expect: Vec<X> = om.iter().map(|c| *c * x(-2)).collect();
        assert_eq!(twice, expect);
    }

    #[test]
    fn gamma_n2() {
        let s = make_null_splitting::<X>(2).unwrap();
        let g = basis_gammas(&s);
        assert_eq!(g[0].rows(), 2);
        let minus = Matrix::identity(2).scale(x(-1));
        assert_eq!(g[0].matmul(&g[0]), minus);
        assert_eq!(g[1].matmul(&g[1]), minus);
        assert!((&g[0].matmul(&g[1]) + &g[1].matmul(&g[0])).is_zero());
    }

    #[test]
    fn phi_n2_values() {
        let phi = build_phi::<X>(2).unwrap();
        let one = phi.apply(&[x(1), x(0), x(0), x(0)]);
        assert_eq!(one, vec![x(1), x(0), x(0), x(1)]);
        // Φ(u_1) = √2 u_1 ⊗ 1
        assert_eq!(phi.apply_vector(&phi.split.u[0]), vec![x(0), x(0), X::sqrt2(), x(0)]);
        // Φ(u*_1) = −√2 · 1 ⊗ u*_1
        assert_eq!(phi.apply_vector(&phi.split.ustar[0]), vec![x(0), -X::sqrt2(), x(0), x(0)]);
    }

    #[test]
    fn even_decomposition_exact() {
        for n in [2, 4] {
            let d = block_decompose_even::<X>(n).unwrap();
            assert!(d.passed(), "{:?}", d.checks);
            assert_eq!(d.multiplicity, 1 << (n / 2));
        }
    }

    #[test]
    fn even_decomposition_float() {
        let d = block_decompose_even::<Complex64>(4).unwrap();
        assert!(d.passed(), "{:?}", d.checks);
    }

    #[test]
    fn odd_decomposition() {
        let d1 = decompose_odd::<X>(1).unwrap();
        assert!(d1.passed(), "{:?}", d1.checks);
        assert_eq!(d1.eigenspace_dims, [1, 1]);
        let d3 = decompose_odd::<X>(3).unwrap();
        assert!(d3.passed(), "{:?}", d3.checks);
        assert_eq!(d3.eigenspace_dims, [4, 4]);
        assert_eq!((d3.spinor_dim, d3.multiplicity), (2, 4));
        assert!(decompose_odd::<X>(4).is_err());
    }

    #[test]
    fn resource_guard() {
        assert!(matches!(build_phi::<X>(8), Err(Error::ResourceLimit { .. })));
    }
}
