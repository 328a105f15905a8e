//! Complexification round trip and the homomorphism property.

use qeig::matrices::narrow_to_quaternionic;
use qeig::{complexify_matrix, dequaternionify_matrix, Matrix, QuatMatrix, Quaternion as Q};

fn main() -> qeig::Result<()> {
    let m: QuatMatrix = Matrix::from_rows(vec![vec![Q::I, Q::J], vec![Q::K, Q::I]])?;
    let c = complexify_matrix(&m);
    println!("complexified 4x4:");
    for r in 0..c.rows() {
        let row: Vec<String> = c.row(r).iter().map(|z| format!("{:+.0}{:+.0}i", z.re + 0.0, z.im + 0.0)).collect();
        println!("  {}", row.join(" "));
    }

    let back = dequaternionify_matrix(&c)?;
    let narrowed = narrow_to_quaternionic(&back).expect("left-only entries");
    println!("round trip error: {:e}", narrowed.max_abs_diff(&m));

    let m2 = m.matmul(&m)?;
    let c2 = c.matmul(&c)?;
    println!("homomorphism error: {:e}", complexify_matrix(&m2).max_abs_diff(&c2));
    Ok(())
}
