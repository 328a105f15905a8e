#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use qeig::linalg;
use qeig::{ComplexMatrix, HlcrElement, HlcrMatrix, Matrix, QuatMatrix, QuatVector, Quaternion};
use rand::Rng;

pub fn quaternion() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-1.0..1.0f64).prop_map(Quaternion::from)
}

pub fn unit_quaternion() -> impl Strategy<Value = Quaternion> {
    quaternion().prop_filter("non-zero", |q| q.norm() > 1e-3).prop_map(|q| q / q.norm())
}

pub fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

pub fn quat_vector(n: usize) -> impl Strategy<Value = QuatVector> {
    prop::collection::vec(quaternion(), n).prop_map(QuatVector)
}

pub fn quat_matrix(n: usize) -> impl Strategy<Value = QuatMatrix> {
    prop::collection::vec(quaternion(), n * n)
        .prop_map(move |v| Matrix::from_fn(n, n, |r, c| v[r * n + c]))
}

pub fn sized_quat_matrix(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = QuatMatrix> {
    dims.prop_flat_map(quat_matrix)
}

pub fn hlcr_matrix(n: usize) -> impl Strategy<Value = HlcrMatrix> {
    prop::collection::vec((quaternion(), quaternion()), n * n).prop_map(move |v| {
        Matrix::from_fn(n, n, |r, c| {
            let (q, p) = v[r * n + c];
            HlcrElement::new(q, p)
        })
    })
}

pub fn complex_matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(complex(), n * n).prop_map(move |v| Matrix::from_fn(n, n, |r, c| v[r * n + c]))
}

pub fn random_quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    Quaternion::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_quat_matrix<R: Rng>(rng: &mut R, n: usize) -> QuatMatrix {
    Matrix::from_fn(n, n, |_, _| random_quaternion(rng))
}

/// Unitary factor of a complex matrix by Gram–Schmidt on its columns.
pub fn unitary_from(m: &ComplexMatrix) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    for c in 0..m.cols() {
        let mut v = m.column(c);
        linalg::orthogonalize_against(&mut v, &cols);
        linalg::orthogonalize_against(&mut v, &cols);
        linalg::normalize(&mut v);
        cols.push(v);
    }
    linalg::from_columns(&cols)
}

/// Anti-hermitian `(B − B†)/2`.
pub fn antihermitian_part(b: &QuatMatrix) -> QuatMatrix {
    b.sub(&b.adjoint()).map(|q| *q * 0.5)
}

pub fn max_norm(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
