//! The graded algebra Λ•ℝⁿ in the blade basis.
//!
//! Blade `e_{i1}∧…∧e_{ik}` (with `i1 < … < ik`, 1-based) is stored at index
//! `Σ 2^(i-1)`. Wedge and interior product are the unweighted ones, so
//! `u∧(v⌟ω) + v⌟(u∧ω) = ⟨u,v⟩ω` holds verbatim and the Clifford action
//! `v.e = v∧e − v⌟e` satisfies `u.v.e + v.u.e = −2⟨u,v⟩e`.

use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Scalar, ScalarParts};

/// Largest dimension the blade-bitmask representation accepts.
pub const MAX_DIM: usize = 16;

#[inline]
pub fn grade_of(mask: usize) -> usize {
    mask.count_ones() as usize
}

/// Sign of `e_A ∧ e_B` relative to `e_{A∪B}`; zero when the blades overlap.
#[inline]
pub fn wedge_sign(a: usize, b: usize) -> i32 {
    if a & b != 0 {
        return 0;
    }
    // count pairs (i in A, j in B) with i > j
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign picked up when `e_i` (0-based bit) is contracted out of blade `a`.
#[inline]
pub fn contract_sign(bit: usize, a: usize) -> i32 {
    if (a >> bit) & 1 == 0 {
        return 0;
    }
    if (a & ((1 << bit) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// 1-based indices of a blade mask, increasing.
pub fn blade_indices(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|b| (mask >> b) & 1 == 1).map(|b| b + 1).collect()
}

pub fn blade_mask(n: usize, indices: &[usize]) -> Result<usize> {
    let mut mask = 0usize;
    for &i in indices {
        if i == 0 || i > n {
            return Err(Error::BladeIndex { index: i, n });
        }
        mask |= 1 << (i - 1);
    }
    Ok(mask)
}

fn check_dim(n: usize) {
    assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
}

fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Multivector<S> {
    n: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> Multivector<S> {
    pub fn zero(n: usize) -> Self {
        check_dim(n);
        Multivector { n, coeffs: vec![S::zero(); 1 << n] }
    }

    pub fn scalar(n: usize, s: S) -> Self {
        let mut m = Self::zero(n);
        m.coeffs[0] = s;
        m
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, S::one())
    }

    /// Unit blade from its bitmask.
    pub fn basis(n: usize, mask: usize) -> Self {
        let mut m = Self::zero(n);
        m.coeffs[mask] = S::one();
        m
    }

    /// Unit blade `e_{i1}∧…∧e_{ik}` from 1-based indices in any order; the
    /// permutation sign is applied, and repeated indices give zero.
    pub fn blade(n: usize, indices: &[usize]) -> Result<Self> {
        let mut acc = Self::one(n);
        for &i in indices.iter().rev() {
            let e = Vector::basis(n, i)?;
            acc = wedge(&e.to_multivector(), &acc)?;
        }
        Ok(acc)
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<S>) -> Result<Self> {
        check_dim(n);
        same_dim(1 << n, coeffs.len())?;
        Ok(Multivector { n, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> S {
        self.coeffs[mask]
    }

    pub fn set_coeff(&mut self, mask: usize, v: S) {
        self.coeffs[mask] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: S) -> Self {
        Multivector { n: self.n, coeffs: self.coeffs.iter().map(|c| *c * s).collect() }
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.modulus().powi(2)).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(Scalar::modulus).fold(0.0, f64::max)
    }

    pub fn grade_project(&self, k: usize) -> Result<Self> {
        grade_project(self, k)
    }

    /// Nonzero `(mask, coefficient)` pairs in index order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, S)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m, *c))
    }

    /// Grade-1 part as a vector, failing if other grades are present.
    pub fn as_vector(&self) -> Result<Vector<S>> {
        if self.terms().any(|(m, _)| grade_of(m) != 1) {
            return Err(Error::GradeOutOfRange { grade: 1, n: self.n });
        }
        Ok(Vector { comps: (0..self.n).map(|i| self.coeffs[1 << i]).collect() })
    }
}

impl<S: Scalar> Add for &Multivector<S> {
    type Output = Multivector<S>;
    fn add(self, o: &Multivector<S>) -> Multivector<S> {
        assert_eq!(self.n, o.n, "add: dimension mismatch");
        Multivector {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| *a + *b).collect(),
        }
    }
}

impl<S: Scalar> Sub for &Multivector<S> {
    type Output = Multivector<S>;
    fn sub(self, o: &Multivector<S>) -> Multivector<S> {
        assert_eq!(self.n, o.n, "sub: dimension mismatch");
        Multivector {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| *a - *b).collect(),
        }
    }
}

impl<S: Scalar> Neg for &Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        Multivector { n: self.n, coeffs: self.coeffs.iter().map(|a| -*a).collect() }
    }
}

/// Element of W = ℝⁿ (or ℂⁿ), i.e. a grade-1 multivector.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<S> {
    comps: Vec<S>,
}

impl<S: Scalar> Vector<S> {
    pub fn new(comps: Vec<S>) -> Self {
        check_dim(comps.len());
        Vector { comps }
    }

    pub fn zero(n: usize) -> Self {
        Vector { comps: vec![S::zero(); n] }
    }

    /// `e_i`, 1-based.
    pub fn basis(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::BladeIndex { index: i, n });
        }
        let mut v = Self::zero(n);
        v.comps[i - 1] = S::one();
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[S] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> S {
        self.comps[i]
    }

    pub fn scale(&self, s: S) -> Self {
        Vector { comps: self.comps.iter().map(|c| *c * s).collect() }
    }

    pub fn add(&self, o: &Vector<S>) -> Self {
        Vector { comps: self.comps.iter().zip(&o.comps).map(|(a, b)| *a + *b).collect() }
    }

    pub fn to_multivector(&self) -> Multivector<S> {
        let mut m = Multivector::zero(self.dim());
        for (i, c) in self.comps.iter().enumerate() {
            m.coeffs[1 << i] = *c;
        }
        m
    }
}

/// Symmetric invertible bilinear form on W.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric<S: Scalar> {
    g: Matrix<S>,
    euclidean: bool,
}

impl<S: Scalar> Metric<S> {
    pub fn euclidean(n: usize) -> Self {
        Metric { g: Matrix::identity(n), euclidean: true }
    }

    pub fn new(g: Matrix<S>) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::DimensionMismatch { expected: g.rows(), found: g.cols() });
        }
        if !(&g - &g.transpose()).is_zero() {
            return Err(Error::MetricNotSymmetric);
        }
        if g.inverse().is_none() {
            return Err(Error::MetricSingular);
        }
        let euclidean = g == Matrix::identity(g.rows());
        Ok(Metric { g, euclidean })
    }

    pub fn dim(&self) -> usize {
        self.g.rows()
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.g
    }

    pub fn inverse(&self) -> Matrix<S> {
        self.g.inverse().expect("metric is invertible by construction")
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> S {
        if self.euclidean {
            if i == j {
                S::one()
            } else {
                S::zero()
            }
        } else {
            self.g.get(i, j)
        }
    }

    /// Bilinear pairing ⟨u, v⟩ (no conjugation).
    pub fn inner(&self, u: &Vector<S>, v: &Vector<S>) -> S {
        let n = self.dim();
        let mut acc = S::zero();
        for i in 0..n {
            for j in 0..n {
                let gij = self.entry(i, j);
                if !gij.is_zero() {
                    acc += u.comps[i] * gij * v.comps[j];
                }
            }
        }
        acc
    }

    /// ⟨v, e_i⟩ for every i.
    fn lowered(&self, v: &Vector<S>) -> Vec<S> {
        if self.euclidean {
            return v.comps.clone();
        }
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut acc = S::zero();
                for j in 0..n {
                    acc += v.comps[j] * self.entry(j, i);
                }
                acc
            })
            .collect()
    }
}

pub fn wedge<S: Scalar>(a: &Multivector<S>, b: &Multivector<S>) -> Result<Multivector<S>> {
    same_dim(a.n, b.n)?;
    let mut out = Multivector::zero(a.n);
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            match wedge_sign(ma, mb) {
                0 => {}
                1 => out.coeffs[ma | mb] += ca * cb,
                _ => out.coeffs[ma | mb] -= ca * cb,
            }
        }
    }
    Ok(out)
}

/// Interior product `v⌟a`, unweighted, using the metric to pair `v` with
/// each basis vector.
pub fn contract<S: Scalar>(v: &Vector<S>, a: &Multivector<S>, g: &Metric<S>) -> Result<Multivector<S>> {
    same_dim(a.n, v.dim())?;
    same_dim(a.n, g.dim())?;
    let low = g.lowered(v);
    let mut out = Multivector::zero(a.n);
    for (ma, ca) in a.terms() {
        for (bit, vb) in low.iter().enumerate() {
            if vb.is_zero() {
                continue;
            }
            match contract_sign(bit, ma) {
                0 => {}
                1 => out.coeffs[ma & !(1 << bit)] += *vb * ca,
                _ => out.coeffs[ma & !(1 << bit)] -= *vb * ca,
            }
        }
    }
    Ok(out)
}

/// Clifford action `v.e = v∧e − v⌟e`.
pub fn clifford_mul_vec<S: Scalar>(v: &Vector<S>, a: &Multivector<S>, g: &Metric<S>) -> Result<Multivector<S>> {
    let w = wedge(&v.to_multivector(), a)?;
    let c = contract(v, a, g)?;
    Ok(&w - &c)
}

/// `vs[0].(vs[1].(… vs[k-1].a))`, applied right to left. An empty word is
/// the identity.
pub fn clifford_word<S: Scalar>(vs: &[Vector<S>], a: &Multivector<S>, g: &Metric<S>) -> Result<Multivector<S>> {
    let mut acc = a.clone();
    for v in vs.iter().rev() {
        acc = clifford_mul_vec(v, &acc, g)?;
    }
    Ok(acc)
}

pub fn grade_project<S: Scalar>(a: &Multivector<S>, k: usize) -> Result<Multivector<S>> {
    if k > a.n {
        return Err(Error::GradeOutOfRange { grade: k, n: a.n });
    }
    let mut out = Multivector::zero(a.n);
    for (m, c) in a.terms() {
        if grade_of(m) == k {
            out.coeffs[m] = c;
        }
    }
    Ok(out)
}

/// Matrix of `e ↦ v.e` in the blade basis (2ⁿ × 2ⁿ).
pub fn matrix_of_left_mul<S: Scalar>(v: &Vector<S>, g: &Metric<S>) -> Result<Matrix<S>> {
    let n = v.dim();
    same_dim(n, g.dim())?;
    let dim = 1 << n;
    let mut m = Matrix::zeros(dim, dim);
    for col in 0..dim {
        let image = clifford_mul_vec(v, &Multivector::basis(n, col), g)?;
        for (row, c) in image.terms() {
            m.set(row, col, c);
        }
    }
    Ok(m)
}

/// Matrix of `e ↦ v∧e` in the blade basis.
pub fn matrix_of_wedge<S: Scalar>(v: &Vector<S>) -> Matrix<S> {
    let n = v.dim();
    let dim = 1 << n;
    let vm = v.to_multivector();
    let mut m = Matrix::zeros(dim, dim);
    for col in 0..dim {
        let image = wedge(&vm, &Multivector::basis(n, col)).expect("same dimension");
        for (row, c) in image.terms() {
            m.set(row, col, c);
        }
    }
    m
}

/// Matrix of `e ↦ v⌟e` in the blade basis.
pub fn matrix_of_contract<S: Scalar>(v: &Vector<S>, g: &Metric<S>) -> Result<Matrix<S>> {
    let n = v.dim();
    let dim = 1 << n;
    let mut m = Matrix::zeros(dim, dim);
    for col in 0..dim {
        let image = contract(v, &Multivector::basis(n, col), g)?;
        for (row, c) in image.terms() {
            m.set(row, col, c);
        }
    }
    Ok(m)
}

/// Left-multiplication matrices of the Euclidean basis `e_1 … e_n`.
pub fn basis_left_mul<S: Scalar>(n: usize) -> Vec<Matrix<S>> {
    let g = Metric::euclidean(n);
    (1..=n)
        .map(|i| matrix_of_left_mul(&Vector::basis(n, i).expect("index in range"), &g).expect("same dimension"))
        .collect()
}

/// One blade entry of the JSON document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BladeEntry {
    pub blade: Vec<usize>,
    #[serde(flatten)]
    pub value: ScalarParts,
}

/// `{"n": int, "coeffs": [{"blade": [...], "re", "im", "s2re", "s2im"}]}`.
///
/// Only nonzero blades are listed, in blade-index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultivectorDoc {
    pub n: usize,
    pub coeffs: Vec<BladeEntry>,
}

impl<S: Scalar> Multivector<S> {
    pub fn to_doc(&self) -> MultivectorDoc {
        MultivectorDoc {
            n: self.n,
            coeffs: self
                .terms()
                .map(|(m, c)| BladeEntry { blade: blade_indices(m), value: c.parts() })
                .collect(),
        }
    }

    pub fn from_doc(doc: &MultivectorDoc) -> Result<Self> {
        if doc.n > MAX_DIM {
            return Err(Error::Document(format!("n = {} exceeds {MAX_DIM}", doc.n)));
        }
        let mut m = Multivector::zero(doc.n);
        for entry in &doc.coeffs {
            let mut sorted = entry.blade.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) || sorted != entry.blade {
                return Err(Error::Document(format!("blade {:?} is not strictly increasing", entry.blade)));
            }
            let mask = blade_mask(doc.n, &entry.blade)?;
            m.coeffs[mask] += S::from_parts(&entry.value)?;
        }
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: MultivectorDoc = serde_json::from_str(s).map_err(|e| Error::Document(e.to_string()))?;
        Self::from_doc(&doc)
    }
}
