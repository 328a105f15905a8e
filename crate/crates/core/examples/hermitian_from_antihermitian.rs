//! A hermitian H with the same eigenvectors as an anti-hermitian A and
//! eigenvalues equal to the moduli of A's.

use qeig::matrices::is_hermitian;
use qeig::{hermitian_from_antihermitian, right_spectrum_quaternionic, Matrix, QuatMatrix, Quaternion as Q, RightEigOptions};

fn main() -> qeig::Result<()> {
    let a: QuatMatrix = Matrix::from_rows(vec![vec![-Q::I, Q::J * 3.0], vec![Q::J * 3.0, Q::I]])?;
    let opts = RightEigOptions::default();
    let h = hermitian_from_antihermitian(&a, &opts)?;
    for r in 0..2 {
        println!("  [{:.9}]  [{:.9}]", h[(r, 0)], h[(r, 1)]);
    }
    println!("hermitian: {}", is_hermitian(&h, 1e-12));
    println!("spectrum of A: {:?}", right_spectrum_quaternionic(&a, &opts)?.reduced_spectrum);
    println!("spectrum of H: {:?}", right_spectrum_quaternionic(&h, &opts)?.reduced_spectrum);
    Ok(())
}
