//! Right spectrum of a quaternionic matrix: reduced spectrum, eigenvectors
//! and conjugate partners.

use qeig::right_eig::{partner_eigenvector, right_residual};
use qeig::matrices::complexify_vector;
use qeig::{right_spectrum_quaternionic, Convention, Matrix, QuatMatrix, Quaternion as Q, RightEigOptions};

fn main() -> qeig::Result<()> {
    let m: QuatMatrix = Matrix::from_rows(vec![vec![Q::I, Q::J], vec![Q::K, Q::I]])?;
    let r = right_spectrum_quaternionic(&m, &RightEigOptions::default())?;

    println!("full spectrum of the complexified matrix:");
    for z in &r.full_spectrum {
        println!("  {:+.12} {:+.12}i", z.re, z.im);
    }
    for (lambda, psi) in r.reduced_spectrum.iter().zip(&r.eigenvectors) {
        println!("lambda = {:.12}  |lambda| = {:.12}  arg = {:.12}", lambda, lambda.norm(), lambda.arg());
        for q in &psi.0 {
            println!("    {q:.6}");
        }
        // psi*j is again an eigenvector, for the conjugate eigenvalue.
        let partner = qeig::matrices::dequaternionify_vector(&partner_eigenvector(&complexify_vector(psi))?)?;
        println!("  residual {:.1e}, partner residual {:.1e}", right_residual(&m, psi, *lambda)?, right_residual(&m, &partner, lambda.conj())?);
    }

    let neg = RightEigOptions { convention: Convention::NegativeImag, ..Default::default() };
    let r = right_spectrum_quaternionic(&m, &neg)?;
    println!("negative-imaginary representatives: {:?}", r.reduced_spectrum);
    Ok(())
}
