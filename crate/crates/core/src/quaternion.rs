//! Real quaternions `a + ib + jc + kd`, unit quaternions and eigenclass
//! (similarity orbit) computations.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance for [`same_eigenclass`].
pub const DEFAULT_EIGENCLASS_TOL: f64 = 1e-9;

/// Allowed deviation of `|u|` from 1 when building a [`UnitQuaternion`].
pub const UNIT_TOL: f64 = 1e-12;

/// A quaternion `a + ib + jc + kd`.
///
/// Serialized as the 4-element array `[a, b, c, d]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl From<[f64; 4]> for Quaternion {
    fn from(v: [f64; 4]) -> Self {
        Quaternion::new(v[0], v[1], v[2], v[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        [q.a, q.b, q.c, q.d]
    }
}

impl From<f64> for Quaternion {
    fn from(a: f64) -> Self {
        Quaternion::new(a, 0.0, 0.0, 0.0)
    }
}

impl From<Complex64> for Quaternion {
    fn from(z: Complex64) -> Self {
        Quaternion::new(z.re, z.im, 0.0, 0.0)
    }
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Quaternion { a, b, c, d }
    }

    /// Builds `z + j·w` from its symplectic parts.
    ///
    /// With `z = a + ib` and `w = c − id` this is `a + ib + jc + kd`, since
    /// `j·(c − id) = jc + kd`.
    pub fn from_symplectic(z: Complex64, w: Complex64) -> Self {
        Quaternion::new(z.re, z.im, w.re, -w.im)
    }

    /// Splits `q` into complex `(z, w)` with `q = z + j·w`.
    pub fn symplectic_split(&self) -> (Complex64, Complex64) {
        (Complex64::new(self.a, self.b), Complex64::new(self.c, -self.d))
    }

    pub fn re(&self) -> f64 {
        self.a
    }

    /// Coefficients of `(i, j, k)`.
    pub fn imag(&self) -> [f64; 3] {
        [self.b, self.c, self.d]
    }

    pub fn from_parts(re: f64, imag: [f64; 3]) -> Self {
        Quaternion::new(re, imag[0], imag[1], imag[2])
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.a, -self.b, -self.c, -self.d)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `conj(q) / |q|²`.
    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroQuaternion);
        }
        Ok(self.conj() / n2)
    }

    pub fn scale(&self, s: f64) -> Self {
        Quaternion::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    /// Euclidean dot product of the coefficient 4-vectors.
    pub fn dot(&self, other: &Quaternion) -> f64 {
        self.a * other.a + self.b * other.b + self.c * other.c + self.d * other.d
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(&self, other: &Quaternion) -> f64 {
        (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
            .max((self.d - other.d).abs())
    }

    /// The complex number `a + ib`, dropping the `j`, `k` part.
    pub fn complex_part(&self) -> Complex64 {
        Complex64::new(self.a, self.b)
    }

    /// Norm of the `j`, `k` part.
    pub fn jk_norm(&self) -> f64 {
        self.c.hypot(self.d)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.a + r.a, self.b + r.b, self.c + r.c, self.d + r.d)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, r: Quaternion) {
        *self = *self + r;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.a - r.a, self.b - r.b, self.c - r.c, self.d - r.d)
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, r: Quaternion) {
        *self = *self - r;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, r: Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (self.a, self.b, self.c, self.d);
        let (a2, b2, c2, d2) = (r.a, r.b, r.c, r.d);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

/// Right multiplication by a complex scalar.
impl Mul<Complex64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, z: Complex64) -> Quaternion {
        self * Quaternion::from(z)
    }
}

/// Left multiplication by a complex scalar.
impl Mul<Quaternion> for Complex64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        Quaternion::from(self) * q
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.a / s, self.b / s, self.c / s, self.d / s)
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Quaternion>>(iter: I) -> Quaternion {
        iter.fold(Quaternion::ZERO, |acc, q| acc + q)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = f.precision();
        let num = |v: f64| match prec {
            Some(p) => format!("{v:.p$}"),
            None => format!("{v}"),
        };
        write!(f, "{}", num(self.a))?;
        for (v, unit) in [(self.b, "i"), (self.c, "j"), (self.d, "k")] {
            let (sign, mag) = if v.is_sign_negative() { ('-', -v) } else { ('+', v) };
            write!(f, " {sign} {}{unit}", num(mag))?;
        }
        Ok(())
    }
}

/// A quaternion of unit norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitQuaternion(Quaternion);

impl UnitQuaternion {
    pub const ONE: UnitQuaternion = UnitQuaternion(Quaternion::ONE);

    /// Wraps `u`, rejecting it unless `||u| − 1| ≤ 1e-12`.
    pub fn new(u: Quaternion) -> Result<Self> {
        let n = u.norm();
        if (n - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit(n));
        }
        Ok(UnitQuaternion(u))
    }

    pub fn normalize(q: Quaternion) -> Result<Self> {
        let n = q.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroQuaternion);
        }
        Ok(UnitQuaternion(q / n))
    }

    pub fn get(&self) -> Quaternion {
        self.0
    }

    pub fn conj(&self) -> UnitQuaternion {
        UnitQuaternion(self.0.conj())
    }

    /// `ū · p · u`.
    pub fn conjugate_by(&self, p: Quaternion) -> Quaternion {
        self.0.conj() * p * self.0
    }
}

impl From<UnitQuaternion> for Quaternion {
    fn from(u: UnitQuaternion) -> Self {
        u.0
    }
}

/// True when `q` and `p` share real part and norm within `tol`, i.e. lie in
/// the same similarity orbit `{ū p u}`.
pub fn same_eigenclass(q: &Quaternion, p: &Quaternion, tol: f64) -> bool {
    (q.re() - p.re()).abs() <= tol && (q.norm() - p.norm()).abs() <= tol
}

fn dot3(x: [f64; 3], y: [f64; 3]) -> f64 {
    x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

fn cross3(x: [f64; 3], y: [f64; 3]) -> [f64; 3] {
    [
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    ]
}

fn norm3(x: [f64; 3]) -> f64 {
    dot3(x, x).sqrt()
}

/// Finds a unit `u` with `ū · p · u = q`.
///
/// The rotation axis is `q⃗ × p⃗` and the angle is the one between the
/// imaginary parts. When `q⃗ = p⃗` the identity is returned. When `q⃗ = −p⃗`
/// every unit imaginary `u ⊥ q⃗` works; the axis used is the projection of
/// `x̂` (or `ŷ` if `x̂ ∥ q⃗`) onto the plane orthogonal to `q⃗`. If both
/// imaginary parts vanish any `u` works and the identity is returned.
pub fn conjugating_unit(q: &Quaternion, p: &Quaternion) -> Result<UnitQuaternion> {
    if !same_eigenclass(q, p, DEFAULT_EIGENCLASS_TOL) {
        return Err(Error::NotSameEigenclass);
    }
    let qv = q.imag();
    let pv = p.imag();
    let nq = norm3(qv);
    let np = norm3(pv);
    if nq == 0.0 || np == 0.0 {
        return Ok(UnitQuaternion::ONE);
    }
    let axis = cross3(qv, pv);
    let cos_part = nq * np + dot3(qv, pv);
    let degenerate = norm3(axis) <= 1e-12 * nq * np;
    if degenerate && dot3(qv, pv) > 0.0 {
        return Ok(UnitQuaternion::ONE);
    }
    if degenerate {
        let dir = [qv[0] / nq, qv[1] / nq, qv[2] / nq];
        let mut reference = [1.0, 0.0, 0.0];
        if dir[0].abs() > 1.0 - 1e-12 {
            reference = [0.0, 1.0, 0.0];
        }
        let along = dot3(reference, dir);
        let perp = [
            reference[0] - along * dir[0],
            reference[1] - along * dir[1],
            reference[2] - along * dir[2],
        ];
        return UnitQuaternion::normalize(Quaternion::from_parts(0.0, perp));
    }
    // Half-angle form: normalize((|q⃗||p⃗| + q⃗·p⃗) + h⃗·(q⃗ × p⃗)).
    UnitQuaternion::normalize(Quaternion::from_parts(cos_part, axis))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = f64::EPSILON;

    fn q(a: f64, b: f64, c: f64, d: f64) -> Quaternion {
        Quaternion::new(a, b, c, d)
    }

    #[test]
    fn defining_relations() {
        use Quaternion as Q;
        assert_eq!(Q::I * Q::J, Q::K);
        assert_eq!(Q::J * Q::I, -Q::K);
        assert_eq!(Q::J * Q::K, Q::I);
        assert_eq!(Q::K * Q::I, Q::J);
        for u in [Q::I, Q::J, Q::K] {
            assert_eq!(u * u, -Q::ONE);
        }
        assert_eq!(Q::I * Q::J * Q::K, -Q::ONE);
    }

    #[test]
    fn distributive_expansion() {
        // (1+i)(1+j) = 1 + j + i + ij = 1 + i + j + k
        assert_eq!(q(1.0, 1.0, 0.0, 0.0) * q(1.0, 0.0, 1.0, 0.0), q(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Quaternion::ONE.inverse().unwrap(), Quaternion::ONE);
        assert_eq!(Quaternion::I.inverse().unwrap(), -Quaternion::I);
        let x = q(1.0, 1.0, 1.0, 1.0);
        let inv = x.inverse().unwrap();
        assert_eq!(inv, q(0.25, -0.25, -0.25, -0.25));
        assert!((x * inv).max_abs_diff(&Quaternion::ONE) <= 4.0 * EPS * x.norm());
        assert_eq!(Quaternion::ZERO.inverse(), Err(Error::ZeroQuaternion));
    }

    #[test]
    fn symplectic_split_examples() {
        let (z, w) = q(1.0, 2.0, 3.0, 4.0).symplectic_split();
        assert_eq!((z, w), (Complex64::new(1.0, 2.0), Complex64::new(3.0, -4.0)));
        // j·(3 − 4i) = 3j + 4k
        assert_eq!(Quaternion::J * Quaternion::from(w), q(0.0, 0.0, 3.0, 4.0));
        assert_eq!(Quaternion::from_symplectic(z, w), q(1.0, 2.0, 3.0, 4.0));
        assert_eq!(
            Quaternion::I.symplectic_split(),
            (Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0))
        );
        assert_eq!(
            Quaternion::J.symplectic_split(),
            (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
        );
    }

    #[test]
    fn eigenclass_examples() {
        let tol = DEFAULT_EIGENCLASS_TOL;
        assert!(same_eigenclass(&Quaternion::I, &Quaternion::J, tol));
        assert!(same_eigenclass(&q(1.0, 1.0, 0.0, 0.0), &q(1.0, -1.0, 0.0, 0.0), tol));
        assert!(!same_eigenclass(&Quaternion::I, &q(0.0, 2.0, 0.0, 0.0), tol));
    }

    #[test]
    fn conjugating_unit_i_to_j() {
        let u = conjugating_unit(&Quaternion::I, &Quaternion::J).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(u.get().max_abs_diff(&q(s, 0.0, 0.0, s)) < 1e-15);
        // ((1−k)/√2)·j·((1+k)/√2) = i
        assert!(u.conjugate_by(Quaternion::J).max_abs_diff(&Quaternion::I) < 1e-15);
    }

    #[test]
    fn conjugating_unit_trivial_and_antipodal() {
        let u = conjugating_unit(&Quaternion::I, &Quaternion::I).unwrap();
        assert_eq!(u.get(), Quaternion::ONE);
        let u = conjugating_unit(&Quaternion::I, &-Quaternion::I).unwrap();
        assert_eq!(u.get(), Quaternion::J);
        assert_eq!(u.conjugate_by(-Quaternion::I), Quaternion::I);
        // axis from x̂ projection when q⃗ is along k
        let u = conjugating_unit(&Quaternion::K, &-Quaternion::K).unwrap();
        assert_eq!(u.get(), Quaternion::I);
    }

    #[test]
    fn conjugating_unit_errors_and_real_case() {
        assert_eq!(
            conjugating_unit(&Quaternion::I, &q(0.0, 2.0, 0.0, 0.0)),
            Err(Error::NotSameEigenclass)
        );
        let u = conjugating_unit(&q(3.0, 0.0, 0.0, 0.0), &q(3.0, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!(u.get(), Quaternion::ONE);
    }

    #[test]
    fn unit_quaternion_rejects_non_unit() {
        assert!(matches!(UnitQuaternion::new(q(2.0, 0.0, 0.0, 0.0)), Err(Error::NotUnit(_))));
        assert!(UnitQuaternion::new(q(0.6, 0.8, 0.0, 0.0)).is_ok());
    }

    #[test]
    fn serde_array_form() {
        let s = serde_json::to_string(&q(1.0, -2.0, 0.5, 4.0)).unwrap();
        assert_eq!(s, "[1.0,-2.0,0.5,4.0]");
        let back: Quaternion = serde_json::from_str("[1, 2, 3, 4]").unwrap();
        assert_eq!(back, q(1.0, 2.0, 3.0, 4.0));
    }
}
