//! The complex eigensolver against the characteristic polynomial oracle.

use num_complex::Complex64;
use qeig::matching::multiset_distance;
use qeig::{charpoly, eig, roots, ComplexMatrix, Matrix};

fn main() -> qeig::Result<()> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let m: ComplexMatrix = Matrix::from_rows(vec![
        vec![c(1.0, 0.0), c(2.0, -1.0), c(0.0, 0.5)],
        vec![c(0.0, 0.0), c(-1.0, 1.0), c(3.0, 0.0)],
        vec![c(1.0, 1.0), c(0.0, 0.0), c(2.0, 0.0)],
    ])?;
    let r = eig(&m, qeig::complex_eig::DEFAULT_EIG_TOL)?;
    let p = charpoly(&m)?;
    let z = roots(&p)?;
    println!("eigenvalues: {:?}", r.eigenvalues);
    println!("charpoly roots: {z:?}");
    println!("distance: {:.2e}", multiset_distance(&r.eigenvalues, &z));
    println!("residuals: {:?}", r.residuals);
    println!("cond_1(V) = {:.3}, defective = {}", r.condition_estimate, r.defective);

    let jordan: ComplexMatrix = Matrix::from_rows(vec![vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]])?;
    println!("Jordan block defective: {}", eig(&jordan, 1e-10)?.defective);
    Ok(())
}
