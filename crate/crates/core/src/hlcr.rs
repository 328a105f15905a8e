//! Left quaternion actions combined with the right action of `i`.
//!
//! An element `a + b⃗·L⃗ + c R_i + d⃗·L⃗ R_i` is stored as the pair
//! `Q = a + h⃗·b⃗`, `P = c + h⃗·d⃗` and acts as `x ↦ Q·x + P·x·i`. Every such
//! element corresponds to exactly one 2×2 complex block, so the algebra is
//! isomorphic to `M₂(ℂ)`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::quaternion::Quaternion;

/// 2×2 complex block `[[α, β], [γ, δ]]`, row-major.
pub type Block = [[Complex64; 2]; 2];

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HlcrElement {
    /// Left-acting part.
    #[serde(rename = "Q")]
    pub q: Quaternion,
    /// Coefficient of `R_i`.
    #[serde(rename = "P")]
    pub p: Quaternion,
}

impl From<Quaternion> for HlcrElement {
    fn from(q: Quaternion) -> Self {
        HlcrElement { q, p: Quaternion::ZERO }
    }
}

impl HlcrElement {
    pub const ZERO: HlcrElement = HlcrElement { q: Quaternion::ZERO, p: Quaternion::ZERO };
    pub const ONE: HlcrElement = HlcrElement { q: Quaternion::ONE, p: Quaternion::ZERO };
    /// The right action of `i`.
    pub const R_I: HlcrElement = HlcrElement { q: Quaternion::ZERO, p: Quaternion::ONE };

    pub const fn new(q: Quaternion, p: Quaternion) -> Self {
        HlcrElement { q, p }
    }

    /// `(λ + λ̄')/2 + ((λ − λ̄')/2i)·R_i`: the element whose block is
    /// `diag(λ, λ')`.
    pub fn from_diagonal(first: Complex64, second: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        HlcrElement::from_block(&[[first, zero], [zero, second]])
    }

    /// `Q·x + P·x·i`.
    pub fn apply(&self, x: Quaternion) -> Quaternion {
        self.q * x + self.p * x * Quaternion::I
    }

    /// Operator product `self ∘ other`, using `R_i² = −1` and `[L, R_i] = 0`.
    pub fn compose(&self, other: &HlcrElement) -> HlcrElement {
        HlcrElement {
            q: self.q * other.q - self.p * other.p,
            p: self.q * other.p + self.p * other.q,
        }
    }

    /// Complex 2×2 block acting on the symplectic pair `(x, y)` of `x + j·y`.
    pub fn to_block(&self) -> Block {
        let (zq, wq) = self.q.symplectic_split();
        let (zp, wp) = self.p.symplectic_split();
        [
            [zq + I * zp, -wq.conj() - I * wp.conj()],
            [wq + I * wp, zq.conj() + I * zp.conj()],
        ]
    }

    /// Exact inverse of [`to_block`](Self::to_block).
    pub fn from_block(b: &Block) -> HlcrElement {
        let [[alpha, beta], [gamma, delta]] = *b;
        let two_i = Complex64::new(0.0, 2.0);
        let zq = (alpha + delta.conj()) / 2.0;
        let zp = (alpha - delta.conj()) / two_i;
        let wq = (gamma - beta.conj()) / 2.0;
        let wp = (gamma + beta.conj()) / two_i;
        HlcrElement {
            q: Quaternion::from_symplectic(zq, wq),
            p: Quaternion::from_symplectic(zp, wp),
        }
    }

    /// True when the `R_i` part is negligible: `|P| ≤ tol·(1 + |Q|)`.
    pub fn is_left_only(&self, tol: f64) -> bool {
        self.p.norm() <= tol * (1.0 + self.q.norm())
    }

    pub fn norm(&self) -> f64 {
        (self.q.norm_sqr() + self.p.norm_sqr()).sqrt()
    }

    pub fn max_abs_diff(&self, other: &HlcrElement) -> f64 {
        self.q.max_abs_diff(&other.q).max(self.p.max_abs_diff(&other.p))
    }

    /// Adjoint with respect to the complex projection of the quaternionic
    /// inner product: conjugate transpose of the block, translated back.
    pub fn adjoint(&self) -> HlcrElement {
        let b = self.to_block();
        HlcrElement::from_block(&[
            [b[0][0].conj(), b[1][0].conj()],
            [b[0][1].conj(), b[1][1].conj()],
        ])
    }

    pub fn is_finite(&self) -> bool {
        self.q.is_finite() && self.p.is_finite()
    }
}

impl Add for HlcrElement {
    type Output = HlcrElement;
    fn add(self, r: HlcrElement) -> HlcrElement {
        HlcrElement { q: self.q + r.q, p: self.p + r.p }
    }
}

impl Sub for HlcrElement {
    type Output = HlcrElement;
    fn sub(self, r: HlcrElement) -> HlcrElement {
        HlcrElement { q: self.q - r.q, p: self.p - r.p }
    }
}

impl Neg for HlcrElement {
    type Output = HlcrElement;
    fn neg(self) -> HlcrElement {
        HlcrElement { q: -self.q, p: -self.p }
    }
}

impl Mul for HlcrElement {
    type Output = HlcrElement;
    fn mul(self, r: HlcrElement) -> HlcrElement {
        self.compose(&r)
    }
}

/// Block product, used to check the homomorphism property.
pub fn block_mul(x: &Block, y: &Block) -> Block {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, v) in row.iter_mut().enumerate() {
            *v = x[r][0] * y[0][c] + x[r][1] * y[1][c];
        }
    }
    out
}

pub fn block_max_abs_diff(x: &Block, y: &Block) -> f64 {
    let mut m: f64 = 0.0;
    for r in 0..2 {
        for c in 0..2 {
            m = m.max((x[r][c] - y[r][c]).norm());
        }
    }
    m
}
