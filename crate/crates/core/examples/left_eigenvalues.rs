//! Left eigenvalues of 2x2 quaternionic matrices, including families of
//! degenerate solutions.

use qeig::left_eig::{compare_left_spectra_similarity, left_right_magnitude_report};
use qeig::{left_eig_2x2, Matrix, QuatMatrix, Quaternion as Q};

fn show(name: &str, m: &QuatMatrix) -> qeig::Result<()> {
    let r = left_eig_2x2(m)?;
    println!("{name}:");
    for s in r.isolated() {
        println!("  q = {:.9}  residual {:.1e}", s.eigenvalue, s.residual);
    }
    for f in &r.families {
        println!("  family: {} ({} samples, |q| = {:?})", f.description, f.samples.len(), f.constant_norm);
    }
    let mags = left_right_magnitude_report(m)?;
    println!("  right |lambda|: {:?}", mags.right_magnitudes);
    println!("  left  |q|:      {:?}", mags.left_magnitudes);
    Ok(())
}

fn main() -> qeig::Result<()> {
    let m: QuatMatrix = Matrix::from_rows(vec![vec![Q::I, Q::J], vec![Q::K, Q::I]])?;
    show("[[i, j], [k, i]]", &m)?;
    let f: QuatMatrix = Matrix::from_rows(vec![vec![Q::ZERO, Q::K], vec![-Q::K, Q::ZERO]])?;
    show("[[0, k], [-k, 0]]", &f)?;

    // Same left eigenvalues as the first matrix, different complex spectrum.
    let s = Q::J * std::f64::consts::FRAC_1_SQRT_2 + Q::K * std::f64::consts::FRAC_1_SQRT_2;
    let n: QuatMatrix = Matrix::from_rows(vec![vec![Q::I + s, Q::ZERO], vec![Q::ZERO, Q::I - s]])?;
    show("diag(i + (j+k)/sqrt2, i - (j+k)/sqrt2)", &n)?;
    let report = compare_left_spectra_similarity(&m, &n)?;
    println!("verdict: {:?}", report.verdict);
    println!("complexified spectrum of the diagonal matrix: {:?}", report.complex_spectrum_n);
    Ok(())
}
