//! Complex dense helpers: LU with partial pivoting, inverse, determinant and
//! small vector utilities.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrices::{ComplexMatrix, Matrix};

/// `PA = LU` packed in one matrix; `perm[i]` is the source row of row `i`.
#[derive(Clone, Debug)]
pub struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
    swaps: usize,
}

impl Lu {
    /// Factors `a`. Pivots with modulus at most `pivot_floor` are replaced by
    /// `pivot_floor` (keeping their phase) when `pivot_floor > 0`, otherwise
    /// an exactly zero pivot is an error.
    pub fn factor(a: &ComplexMatrix, pivot_floor: f64) -> Result<Lu> {
        let n = a.ensure_square()?;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for k in 0..n {
            let (p, _) = (k..n)
                .map(|r| (r, lu[(r, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if p != k {
                for c in 0..n {
                    let t = lu[(k, c)];
                    lu[(k, c)] = lu[(p, c)];
                    lu[(p, c)] = t;
                }
                perm.swap(k, p);
                swaps += 1;
            }
            let pivot = lu[(k, k)];
            if pivot.norm() <= pivot_floor {
                let phase = if pivot.norm() > 0.0 { pivot / pivot.norm() } else { Complex64::new(1.0, 0.0) };
                lu[(k, k)] = phase * pivot_floor;
            }
            let pivot = lu[(k, k)];
            if pivot.norm() == 0.0 {
                return Err(Error::SingularMatrix);
            }
            for r in k + 1..n {
                let f = lu[(r, k)] / pivot;
                lu[(r, k)] = f;
                if f.norm() == 0.0 {
                    continue;
                }
                for c in k + 1..n {
                    let v = lu[(k, c)];
                    lu[(r, c)] -= f * v;
                }
            }
        }
        Ok(Lu { lu, perm, swaps })
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.rows();
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 0..n {
            for c in 0..r {
                let v = x[c];
                x[r] -= self.lu[(r, c)] * v;
            }
        }
        for r in (0..n).rev() {
            for c in r + 1..n {
                let v = x[c];
                x[r] -= self.lu[(r, c)] * v;
            }
            x[r] /= self.lu[(r, r)];
        }
        x
    }

    pub fn determinant(&self) -> Complex64 {
        let d: Complex64 = self.lu.diagonal().into_iter().product();
        if self.swaps % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// Smallest pivot modulus relative to the largest.
    pub fn pivot_ratio(&self) -> f64 {
        let pivots: Vec<f64> = self.lu.diagonal().iter().map(|z| z.norm()).collect();
        let max = pivots.iter().cloned().fold(0.0, f64::max);
        let min = pivots.iter().cloned().fold(f64::INFINITY, f64::min);
        if max == 0.0 {
            0.0
        } else {
            min / max
        }
    }
}

/// Inverse via LU; fails when a pivot underflows relative to the matrix scale.
pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.ensure_square()?;
    let lu = Lu::factor(a, 0.0)?;
    if lu.pivot_ratio() < f64::EPSILON * n as f64 {
        return Err(Error::SingularMatrix);
    }
    let mut inv = ComplexMatrix::zeros(n, n);
    let mut e = vec![Complex64::new(0.0, 0.0); n];
    for c in 0..n {
        e.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        e[c] = Complex64::new(1.0, 0.0);
        inv.set_column(c, &lu.solve(&e));
    }
    Ok(inv)
}

pub fn determinant(a: &ComplexMatrix) -> Result<Complex64> {
    a.ensure_square()?;
    match Lu::factor(a, 0.0) {
        Ok(lu) => Ok(lu.determinant()),
        Err(Error::SingularMatrix) => Ok(Complex64::new(0.0, 0.0)),
        Err(e) => Err(e),
    }
}

/// Maximum absolute column sum.
pub fn norm_one(a: &ComplexMatrix) -> f64 {
    (0..a.cols())
        .map(|c| (0..a.rows()).map(|r| a[(r, c)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `‖A‖₁·‖A⁻¹‖₁`, infinite when `A` is numerically singular.
pub fn condition_one(a: &ComplexMatrix) -> f64 {
    match inverse(a) {
        Ok(inv) => norm_one(a) * norm_one(&inv),
        Err(_) => f64::INFINITY,
    }
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `Σ conj(a)·b`.
pub fn vec_dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn normalize(v: &mut [Complex64]) {
    let n = vec_norm(v);
    if n > 0.0 {
        v.iter_mut().for_each(|z| *z /= n);
    }
}

/// Removes the components of `v` along each vector of the orthonormal set
/// `basis` (two passes of modified Gram–Schmidt).
pub fn orthogonalize_against(v: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for _ in 0..2 {
        for b in basis {
            let proj = vec_dot(b, v);
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= proj * y);
        }
    }
}

/// Builds an `n×k` matrix from column vectors.
pub fn from_columns(columns: &[Vec<Complex64>]) -> ComplexMatrix {
    let rows = columns.first().map_or(0, Vec::len);
    Matrix::from_fn(rows, columns.len(), |r, c| columns[c][r])
}
