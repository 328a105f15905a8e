//! Complex-linear (HLCR) matrices: full spectrum, S_C and the block
//! diagonal form.

use num_complex::Complex64;
use qeig::{diagonalize_complexlinear, HlcrElement as E, HlcrMatrix, Matrix, Quaternion as Q};

fn main() -> qeig::Result<()> {
    let m: HlcrMatrix = Matrix::from_rows(vec![
        vec![E::new(Q::J, -Q::I), E::new(Q::ONE, -Q::K)],
        vec![E::new(-Q::ONE, -Q::K), E::new(Q::J, Q::I)],
    ])?;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let order = [c(2.0, 0.0), c(-2.0, 0.0), c(0.0, 2.0), c(0.0, -2.0)];

    let d = diagonalize_complexlinear(&m, Some(&order), qeig::complex_eig::DEFAULT_EIG_TOL)?;
    println!("spectrum: {:?}", d.eigen.spectrum);
    for (k, e) in d.d.diagonal().iter().enumerate() {
        println!("D[{k}] = Q: {:.6}, P: {:.6}", e.q, e.p);
    }
    println!("S_C:");
    for r in 0..d.s_c.rows() {
        for e in d.s_c.row(r) {
            println!("  Q: {:.6}  P: {:.6}", e.q, e.p);
        }
    }
    println!("residual {:.2e}", d.residual);

    let canonical = diagonalize_complexlinear(&m, None, qeig::complex_eig::DEFAULT_EIG_TOL)?;
    println!("canonical order: {:?}", canonical.eigen.spectrum);
    Ok(())
}
