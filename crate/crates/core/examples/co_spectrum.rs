//! Common right eigenbasis of two commuting quaternionic matrices.

use qeig::right_eig::co_spectrum_in_basis;
use qeig::{co_spectrum, Matrix, QuatMatrix, Quaternion as Q};

fn main() -> qeig::Result<()> {
    let m1: QuatMatrix = Matrix::from_rows(vec![vec![Q::I, Q::ZERO], vec![Q::ZERO, Q::I]])?;
    let m2: QuatMatrix = Matrix::from_rows(vec![vec![Q::I * 0.5, Q::ZERO], vec![Q::ZERO, -Q::I * 0.5]])?;
    let cs = co_spectrum(&m1, &m2, qeig::complex_eig::DEFAULT_EIG_TOL)?;
    for flips in [&[][..], &[1], &[0], &[0, 1]] {
        let t = cs.flipped(flips);
        let rows: Vec<String> = t.pairs.iter().map(|(a, b)| format!("({a}, {b})")).collect();
        println!("flip {flips:?}: {}", rows.join("  "));
        assert_eq!(co_spectrum_in_basis(&m1, &m2, &t.basis)?.len(), 2);
    }
    Ok(())
}
