//! Hamilton products, the symplectic split and eigenclasses.

use num_complex::Complex64;
use qeig::quaternion::{conjugating_unit, same_eigenclass};
use qeig::{HlcrElement, Quaternion as Q};

fn main() -> qeig::Result<()> {
    println!("i*j = {}", Q::I * Q::J);
    println!("j*i = {}", Q::J * Q::I);

    let q = Q::new(1.0, 2.0, -3.0, 0.5);
    let (z, w) = q.symplectic_split();
    println!("{q} = ({z}) + j({w})");
    assert_eq!(Q::from_symplectic(z, w), q);

    // i and k share real part and norm, so some unit u gives u* k u = i.
    let u = conjugating_unit(&Q::I, &Q::K)?;
    println!("same class: {}", same_eigenclass(&Q::I, &Q::K, 1e-12));
    println!("u = {:.6}, u* k u = {:.6}", u.get(), u.conjugate_by(Q::K));

    // Right multiplication by i as an HLCR element.
    let r_i = HlcrElement::R_I;
    let x = Q::new(0.0, 0.0, 1.0, 0.0);
    println!("R_i(j) = {}", r_i.apply(x));
    let d = HlcrElement::from_diagonal(Complex64::new(0.0, 2.0), Complex64::new(0.0, -2.0));
    println!("diag(2i, -2i) as (Q, P) = ({}, {})", d.q, d.p);
    Ok(())
}
