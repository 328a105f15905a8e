//! Dense quaternionic, `ℍᴸ⊗ℂᴿ` and complex matrices, and the symplectic
//! complexification between them.
//!
//! A quaternionic vector `ψ = x + j·y` is translated to the interleaved
//! complex vector `(x₁, y₁, …, xₙ, yₙ)`; the `(l, m)` entry of an operator
//! becomes the 2×2 block at rows `2l..2l+2`, columns `2m..2m+2`.

use std::fmt;
use std::ops::{Add, Deref, DerefMut, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hlcr::{Block, HlcrElement};
use crate::quaternion::Quaternion;

/// Per-entry test used when narrowing an [`HlcrMatrix`] to a [`QuatMatrix`].
pub const NARROWING_TOL: f64 = 1e-12;

/// Ring operations needed by the generic dense matrix.
pub trait Scalar: Copy + PartialEq + fmt::Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {
    fn zero() -> Self;
    fn one() -> Self;
    /// Squared Euclidean modulus of the real coefficient vector.
    fn abs_sqr(&self) -> f64;
    fn is_finite_value(&self) -> bool;
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn abs_sqr(&self) -> f64 {
        self.norm_sqr()
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for Quaternion {
    fn zero() -> Self {
        Quaternion::ZERO
    }
    fn one() -> Self {
        Quaternion::ONE
    }
    fn abs_sqr(&self) -> f64 {
        self.norm_sqr()
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for HlcrElement {
    fn zero() -> Self {
        HlcrElement::ZERO
    }
    fn one() -> Self {
        HlcrElement::ONE
    }
    fn abs_sqr(&self) -> f64 {
        self.q.norm_sqr() + self.p.norm_sqr()
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

/// Entries with a 2×2 complex block image.
pub trait BlockEntry: Scalar {
    fn to_block(&self) -> Block;
}

impl BlockEntry for Quaternion {
    fn to_block(&self) -> Block {
        HlcrElement::from(*self).to_block()
    }
}

impl BlockEntry for HlcrElement {
    fn to_block(&self) -> Block {
        HlcrElement::to_block(self)
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type QuatMatrix = Matrix<Quaternion>;
pub type HlcrMatrix = Matrix<HlcrElement>;
pub type ComplexMatrix = Matrix<Complex64>;
pub type ComplexVector = Vec<Complex64>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::NonSquare { rows: n_rows, cols: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n_rows, cols: n_cols, data })
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = v;
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

    /// Dimension of a square matrix.
    pub fn dim(&self) -> usize {
        self.rows
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn set_column(&mut self, c: usize, values: &[T]) {
        for (r, &v) in values.iter().enumerate() {
            self[(r, c)] = v;
        }
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn matmul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == T::zero() {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] = out[(r, c)] + a * other[(k, c)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(T::zero(), |acc, (&a, &x)| acc + a * x))
            .collect())
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(Scalar::abs_sqr).sum::<f64>().sqrt()
    }

    /// Largest entry modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Matrix<T>) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).abs_sqr().sqrt())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(Scalar::is_finite_value)
    }

    pub fn sub(&self, other: &Matrix<T>) -> Matrix<T> {
        Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)] - other[(r, c)])
    }

    pub fn add(&self, other: &Matrix<T>) -> Matrix<T> {
        Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)] + other[(r, c)])
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn conj_transpose(&self) -> ComplexMatrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn conj(&self) -> ComplexMatrix {
        self.map(|z| z.conj())
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> Complex64 {
        self.diagonal().into_iter().sum()
    }
}

impl QuatMatrix {
    /// Quaternionic conjugate transpose.
    pub fn adjoint(&self) -> QuatMatrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    /// Left multiplication of every entry by the quaternion `s`.
    pub fn scale_left(&self, s: Quaternion) -> QuatMatrix {
        self.map(|q| s * *q)
    }

    /// `M·ψ` for a quaternionic vector.
    pub fn apply(&self, v: &QuatVector) -> Result<QuatVector> {
        self.mul_vec(v).map(QuatVector)
    }

    /// Inverse computed through the complexified matrix.
    pub fn inverse(&self) -> Result<QuatMatrix> {
        self.ensure_square()?;
        let inv = crate::linalg::inverse(&complexify_matrix(self))?;
        Ok(narrow_to_quaternionic_lossy(&dequaternionify_matrix(&inv)?))
    }
}

impl HlcrMatrix {
    /// Adjoint under the complex geometry: conjugate transpose of the
    /// complexified matrix, translated back.
    pub fn adjoint(&self) -> HlcrMatrix {
        let c = complexify_matrix(self).conj_transpose();
        dequaternionify_matrix(&c).expect("complexified dimension is even")
    }

    /// `M·ψ` where each entry acts as `Q·x + P·x·i`.
    pub fn apply(&self, v: &QuatVector) -> Result<QuatVector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok(QuatVector(
            (0..self.rows)
                .map(|r| self.row(r).iter().zip(v.iter()).map(|(e, &x)| e.apply(x)).sum())
                .collect(),
        ))
    }

    pub fn inverse(&self) -> Result<HlcrMatrix> {
        self.ensure_square()?;
        let inv = crate::linalg::inverse(&complexify_matrix(self))?;
        dequaternionify_matrix(&inv)
    }
}

impl From<&QuatMatrix> for HlcrMatrix {
    fn from(m: &QuatMatrix) -> Self {
        m.map(|&q| HlcrElement::from(q))
    }
}

/// Column vector over ℍ, scalars acting from the right.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct QuatVector(pub Vec<Quaternion>);

impl QuatVector {
    pub fn new(entries: Vec<Quaternion>) -> Self {
        QuatVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        QuatVector(vec![Quaternion::ZERO; n])
    }

    /// Right scalar multiplication `ψ·s`.
    pub fn mul_right(&self, s: Quaternion) -> QuatVector {
        QuatVector(self.0.iter().map(|&q| q * s).collect())
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(Quaternion::norm_sqr).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> QuatVector {
        let n = self.norm();
        QuatVector(self.0.iter().map(|&q| q / n).collect())
    }

    pub fn sub(&self, other: &QuatVector) -> QuatVector {
        QuatVector(self.0.iter().zip(&other.0).map(|(&a, &b)| a - b).collect())
    }

    pub fn max_abs_diff(&self, other: &QuatVector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max)
    }
}

impl Deref for QuatVector {
    type Target = Vec<Quaternion>;
    fn deref(&self) -> &Vec<Quaternion> {
        &self.0
    }
}

impl DerefMut for QuatVector {
    fn deref_mut(&mut self) -> &mut Vec<Quaternion> {
        &mut self.0
    }
}

impl From<Vec<Quaternion>> for QuatVector {
    fn from(v: Vec<Quaternion>) -> Self {
        QuatVector(v)
    }
}

/// `(x₁, y₁, …, xₙ, yₙ)` with `ψₗ = xₗ + j·yₗ`.
pub fn complexify_vector(v: &QuatVector) -> ComplexVector {
    v.iter()
        .flat_map(|q| {
            let (x, y) = q.symplectic_split();
            [x, y]
        })
        .collect()
}

/// Inverse of [`complexify_vector`].
pub fn dequaternionify_vector(v: &[Complex64]) -> Result<QuatVector> {
    if !v.len().is_multiple_of(2) {
        return Err(Error::OddDimension(v.len()));
    }
    Ok(QuatVector(v.chunks_exact(2).map(|p| Quaternion::from_symplectic(p[0], p[1])).collect()))
}

/// The `2n×2n` complex counterpart; block `(l, m)` is the image of entry `(l, m)`.
pub fn complexify_matrix<T: BlockEntry>(m: &Matrix<T>) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(2 * m.rows(), 2 * m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let b = m[(r, c)].to_block();
            for (br, row) in b.iter().enumerate() {
                for (bc, &v) in row.iter().enumerate() {
                    out[(2 * r + br, 2 * c + bc)] = v;
                }
            }
        }
    }
    out
}

/// Applies `from_block` to every 2×2 block; exact inverse of
/// [`complexify_matrix`] on `HlcrMatrix`.
pub fn dequaternionify_matrix(c: &ComplexMatrix) -> Result<HlcrMatrix> {
    if !c.rows().is_multiple_of(2) {
        return Err(Error::OddDimension(c.rows()));
    }
    if !c.cols().is_multiple_of(2) {
        return Err(Error::OddDimension(c.cols()));
    }
    Ok(Matrix::from_fn(c.rows() / 2, c.cols() / 2, |r, col| {
        let b = [
            [c[(2 * r, 2 * col)], c[(2 * r, 2 * col + 1)]],
            [c[(2 * r + 1, 2 * col)], c[(2 * r + 1, 2 * col + 1)]],
        ];
        HlcrElement::from_block(&b)
    }))
}

/// Narrows to a quaternionic matrix when every entry passes
/// `|P| ≤ 1e-12·(1 + |Q|)`.
pub fn narrow_to_quaternionic(m: &HlcrMatrix) -> Option<QuatMatrix> {
    if m.iter().all(|e| e.is_left_only(NARROWING_TOL)) {
        Some(m.map(|e| e.q))
    } else {
        None
    }
}

/// Drops the `R_i` parts unconditionally. Only for results known to be
/// quaternionic up to rounding.
pub(crate) fn narrow_to_quaternionic_lossy(m: &HlcrMatrix) -> QuatMatrix {
    m.map(|e| e.q)
}

/// `Σ conj(φₗ)·ψₗ`.
pub fn inner_product(phi: &QuatVector, psi: &QuatVector) -> Result<Quaternion> {
    if phi.len() != psi.len() {
        return Err(Error::DimensionMismatch { expected: phi.len(), found: psi.len() });
    }
    Ok(phi.iter().zip(psi.iter()).map(|(a, &b)| a.conj() * b).sum())
}

/// `(q − i·q·i)/2`, the complex part `a + ib` of `q`.
pub fn complex_projection(q: &Quaternion) -> Complex64 {
    let i = Quaternion::I;
    let p = (*q - i * *q * i) / 2.0;
    Complex64::new(p.a, p.b)
}

/// Matrices with a conjugate transpose.
pub trait Adjoint: Sized {
    fn adjoint_matrix(&self) -> Self;
    fn max_deviation(&self, other: &Self, negate: bool) -> f64;
}

impl Adjoint for QuatMatrix {
    fn adjoint_matrix(&self) -> Self {
        self.adjoint()
    }
    fn max_deviation(&self, other: &Self, negate: bool) -> f64 {
        let other = if negate { other.map(|&q| -q) } else { other.clone() };
        self.max_abs_diff(&other)
    }
}

impl Adjoint for HlcrMatrix {
    fn adjoint_matrix(&self) -> Self {
        self.adjoint()
    }
    fn max_deviation(&self, other: &Self, negate: bool) -> f64 {
        let other = if negate { other.map(|&e| -e) } else { other.clone() };
        self.max_abs_diff(&other)
    }
}

impl Adjoint for ComplexMatrix {
    fn adjoint_matrix(&self) -> Self {
        self.conj_transpose()
    }
    fn max_deviation(&self, other: &Self, negate: bool) -> f64 {
        let other = if negate { other.map(|&z| -z) } else { other.clone() };
        self.max_abs_diff(&other)
    }
}

/// `M = M†` entrywise within `tol`.
pub fn is_hermitian<M: Adjoint>(m: &M, tol: f64) -> bool {
    m.max_deviation(&m.adjoint_matrix(), false) <= tol
}

/// `M = −M†` entrywise within `tol`.
pub fn is_antihermitian<M: Adjoint>(m: &M, tol: f64) -> bool {
    m.max_deviation(&m.adjoint_matrix(), true) <= tol
}
