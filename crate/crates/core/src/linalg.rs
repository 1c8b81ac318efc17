//! Dense matrices over any [`Scalar`] with exact elimination.
//!
//! Most operators in this crate are monomial or close to it, so products
//! skip zero entries of the left factor; elimination uses first-nonzero
//! pivoting in exact modes (reproducible bases) and largest-modulus
//! pivoting in floating modes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Size of a difference between two operators that should agree.
///
/// `nonzero` counts entries that are not exactly zero; `max_abs` is the
/// largest entry modulus. In exact modes a defect vanishes iff `nonzero`
/// is zero; in floating modes iff `max_abs <= tolerance`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Defect {
    pub max_abs: f64,
    pub nonzero: usize,
    pub tolerance: f64,
}

impl Defect {
    pub fn none(tolerance: f64) -> Self {
        Defect { max_abs: 0.0, nonzero: 0, tolerance }
    }

    pub fn of_slice<S: Scalar>(values: &[S]) -> Self {
        let mut d = Defect::none(S::tolerance());
        for v in values {
            if !v.is_zero() {
                d.nonzero += 1;
                d.max_abs = d.max_abs.max(v.modulus());
            }
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        if self.tolerance == 0.0 {
            self.nonzero == 0
        } else {
            self.max_abs <= self.tolerance
        }
    }

    pub fn merge(self, other: Defect) -> Defect {
        Defect {
            max_abs: self.max_abs.max(other.max_abs),
            nonzero: self.nonzero + other.nonzero,
            tolerance: self.tolerance.max(other.tolerance),
        }
    }
}

/// Outcome of one named verification.
///
/// `source` says where the expected value comes from: `identity` for
/// defects that must vanish, `closed form` for a stated constant, `count`
/// for dimensions and ranks, `oracle` for an independent computation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: String,
    pub expected: String,
    pub source: String,
}

impl Check {
    /// Passes when the defect vanishes.
    pub fn defect(name: &str, d: Defect) -> Self {
        let value = if d.tolerance == 0.0 {
            format!("{} nonzero entries", d.nonzero)
        } else {
            format!("max |defect| = {:e}", d.max_abs)
        };
        let expected = if d.tolerance == 0.0 { "0 nonzero entries".to_string() } else { format!("<= {:e}", d.tolerance) };
        Check { name: name.to_string(), passed: d.is_zero(), value, expected, source: "identity".into() }
    }

    /// Passes when `value == expected`.
    pub fn equal<T: PartialEq + fmt::Display>(name: &str, value: T, expected: T) -> Self {
        Check {
            name: name.to_string(),
            passed: value == expected,
            value: value.to_string(),
            expected: expected.to_string(),
            source: "count".into(),
        }
    }

    pub fn truth(name: &str, ok: bool, value: String, expected: &str) -> Self {
        Check { name: name.to_string(), passed: ok, value, expected: expected.to_string(), source: "closed form".into() }
    }

    pub fn with_source(mut self, source: &str) -> Self {
        self.source = source.to_string();
        self
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref<S: Scalar> {
    pub matrix: Matrix<S>,
    pub pivots: Vec<usize>,
}

/// Kernel basis as matrix columns.
///
/// Each basis column has a 1 in its own free coordinate and 0 in every
/// other free coordinate, so the coordinates of a kernel vector in this
/// basis are its entries at `free`.
#[derive(Debug, Clone)]
pub struct NullSpace<S: Scalar> {
    pub basis: Matrix<S>,
    pub free: Vec<usize>,
    pub pivots: Vec<usize>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.concat() }
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(height: usize, columns: &[Vec<S>]) -> Self {
        let mut m = Self::zeros(height, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), height, "column {j} has wrong height");
            m.set_column(j, col);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> S {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[S]) {
        for (i, v) in col.iter().enumerate() {
            self.set(i, j, *v);
        }
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn scale(&self, s: S) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| *v * s).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn conj_transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Treats `self` as a difference and measures it.
    pub fn defect(&self) -> Defect {
        Defect::of_slice(&self.data)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::modulus).fold(0.0, f64::max)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols, "apply: dimension mismatch");
        let mut out = vec![S::zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (a, x) in self.row(i).iter().zip(v) {
                if !a.is_zero() && !x.is_zero() {
                    *o += *a * *x;
                }
            }
        }
        out
    }

    pub fn matmul(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(
            self.cols, other.rows,
            "matmul: {}x{} times {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o += a * *b;
                    }
                }
            }
        }
        out
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Matrix<S>) -> Matrix<S> {
        &self.matmul(other) - &other.matmul(self)
    }

    pub fn kron(&self, other: &Matrix<S>) -> Matrix<S> {
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Matrix::zeros(self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * r2 + k, j * c2 + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix<S> {
        Matrix::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix<S> {
        Matrix::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix<S> {
        Matrix::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix<S>) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j));
            }
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, b: &Matrix<S>, factor: S) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                let v = b.get(i, j);
                if !v.is_zero() {
                    self.add_to(r0 + i, c0 + j, factor * v);
                }
            }
        }
    }

    pub fn hcat(blocks: &[Matrix<S>]) -> Matrix<S> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut c0 = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hcat: row mismatch");
            out.set_block(0, c0, b);
            c0 += b.cols;
        }
        out
    }

    pub fn vcat(blocks: &[Matrix<S>]) -> Matrix<S> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut r0 = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vcat: column mismatch");
            out.set_block(r0, 0, b);
            r0 += b.rows;
        }
        out
    }

    /// Hermitian Frobenius pairing `Σ conj(self_ij) · other_ij`.
    pub fn frobenius_inner(&self, other: &Matrix<S>) -> S {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut acc = S::zero();
        for (a, b) in self.data.iter().zip(&other.data) {
            if !a.is_zero() && !b.is_zero() {
                acc += a.conj() * *b;
            }
        }
        acc
    }

    pub fn trace(&self) -> S {
        let mut t = S::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    fn pivot_threshold(&self) -> f64 {
        if S::is_exact() {
            0.0
        } else {
            1e-12 * self.max_abs().max(1.0)
        }
    }

    pub fn rref(&self) -> Rref<S> {
        let mut a = self.clone();
        let thresh = self.pivot_threshold();
        let exact = S::is_exact();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..a.cols {
            if prow >= a.rows {
                break;
            }
            let found = if exact {
                (prow..a.rows).find(|&r| !a.get(r, col).is_zero())
            } else {
                (prow..a.rows)
                    .map(|r| (r, a.get(r, col).modulus()))
                    .filter(|&(_, m)| m > thresh)
                    .max_by(|x, y| x.1.total_cmp(&y.1))
                    .map(|(r, _)| r)
            };
            let Some(r) = found else { continue };
            a.swap_rows(r, prow);
            let inv = a.get(prow, col).try_inv().expect("pivot is nonzero");
            for j in 0..a.cols {
                let v = a.get(prow, j);
                a.set(prow, j, v * inv);
            }
            for i in 0..a.rows {
                if i == prow {
                    continue;
                }
                let factor = a.get(i, col);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..a.cols {
                    let p = a.get(prow, j);
                    if !p.is_zero() {
                        let v = a.get(i, j) - factor * p;
                        a.set(i, j, v);
                    }
                }
                if !exact {
                    a.set(i, col, S::zero());
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Rref { matrix: a, pivots }
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn null_space(&self) -> NullSpace<S> {
        let Rref { matrix: r, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Matrix::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, S::one());
            for (row, &pc) in pivots.iter().enumerate() {
                let v = r.get(row, fc);
                if !v.is_zero() {
                    basis.set(pc, k, -v);
                }
            }
        }
        NullSpace { basis, free, pivots }
    }

    /// Columns of `self` at the pivot positions: a basis of the column space.
    pub fn column_space(&self) -> Matrix<S> {
        let pivots = self.rref().pivots;
        self.select_cols(&pivots)
    }

    pub fn inverse(&self) -> Option<Matrix<S>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::hcat(&[self.clone(), Matrix::identity(n)]);
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    /// Solves `self * X = rhs` for a consistent system with `self` of full
    /// column rank. Returns `None` when no exact solution exists.
    pub fn solve(&self, rhs: &Matrix<S>) -> Option<Matrix<S>> {
        assert_eq!(self.rows, rhs.rows, "solve: row mismatch");
        let n = self.cols;
        let aug = Matrix::hcat(&[self.clone(), rhs.clone()]);
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        if pivots.len() > n {
            return None;
        }
        // rows past n must vanish for consistency
        let tail = r.block(n, n, self.rows - n, rhs.cols);
        if !tail.defect().is_zero() {
            return None;
        }
        Some(r.block(0, n, n, rhs.cols))
    }
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, o: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "add: shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| *a + *b).collect(),
        }
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, o: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "sub: shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| *a - *b).collect(),
        }
    }
}

impl<S: Scalar> Neg for &Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -*a).collect(),
        }
    }
}

impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, o: &Matrix<S>) -> Matrix<S> {
        self.matmul(o)
    }
}
