//! Quaternionic diagonalization S_H M S_H^-1 = D and rebasing a diagonal
//! entry by a unit quaternion.

use qeig::quaternion::conjugating_unit;
use qeig::right_eig::rephase_eigenpair;
use qeig::{diagonalize_quaternionic, Matrix, QuatMatrix, Quaternion as Q, RightEigOptions};

fn print(name: &str, m: &QuatMatrix) {
    println!("{name}:");
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|q| format!("[{q:.6}]")).collect();
        println!("  {}", row.join("  "));
    }
}

fn main() -> qeig::Result<()> {
    let m: QuatMatrix = Matrix::from_rows(vec![vec![Q::I, Q::J], vec![Q::K, Q::I]])?;
    let d = diagonalize_quaternionic(&m, &RightEigOptions::default())?;
    print("S_H", &d.s_h);
    print("D", &d.d);
    println!("||S_H M S_H^-1 - D|| = {:.2e}", d.residual);
    println!("cond_1(X) = {:.3}", d.eigen.condition);

    // Any member of the eigenvalue's class is reachable by rephasing.
    let lambda = d.eigen.reduced_spectrum[0];
    let psi = &d.eigen.eigenvectors[0];
    let target = Q::new(lambda.re, 0.0, lambda.im, 0.0);
    let u = conjugating_unit(&target, &Q::from(lambda))?;
    let (psi_u, lambda_u) = rephase_eigenpair(psi, lambda, &u);
    let lhs = m.apply(&psi_u)?;
    let rhs = psi_u.mul_right(lambda_u);
    println!("rephased eigenvalue {lambda_u:.6}, residual {:.2e}", lhs.max_abs_diff(&rhs));
    Ok(())
}
