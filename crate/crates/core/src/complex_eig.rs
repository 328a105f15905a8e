//! Dense complex eigensolver and two independent low-order oracles.
//!
//! Eigenvalues come from shifted QR iteration on the Hessenberg form
//! (Wilkinson shifts, deflation on negligible subdiagonals). Eigenvectors come
//! from inverse iteration on the original matrix with the computed shifts;
//! vectors belonging to a cluster of (numerically) equal eigenvalues are kept
//! mutually orthogonal so a semisimple multiple eigenvalue yields a full basis
//! of its eigenspace.
//!
//! [`charpoly`] (Faddeev–LeVerrier) and [`roots`] (Durand–Kerner) do not share
//! any code with [`eig`] and are used to cross-check it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, Lu};
use crate::matrices::ComplexMatrix;

/// Default residual tolerance, relative to `‖M‖_F`.
pub const DEFAULT_EIG_TOL: f64 = 1e-10;

/// QR sweeps allowed per unit of dimension.
pub const SWEEPS_PER_DIM: usize = 100;

/// Largest dimension accepted by [`charpoly`].
pub const MAX_CHARPOLY_DIM: usize = 12;

/// Largest degree accepted by [`roots`].
pub const MAX_ROOTS_DEGREE: usize = 12;

/// Eigenvalues closer than this (relative to `‖M‖_F`) share an eigenspace
/// during inverse iteration.
const CLUSTER_TOL: f64 = 1e-7;

/// Pivot floor for singular shifted systems, relative to `‖M‖_F`.
const PIVOT_FLOOR: f64 = 1e-13;

const INVERSE_ITERATIONS: usize = 6;

#[derive(Clone, Debug)]
pub struct ComplexEigResult {
    pub eigenvalues: Vec<Complex64>,
    /// Unit 2-norm eigenvectors, one column per eigenvalue.
    pub eigenvectors: ComplexMatrix,
    /// `‖M v − λ v‖` per pair.
    pub residuals: Vec<f64>,
    /// Pairs whose residual exceeds `tol·‖M‖_F`.
    pub flagged: Vec<bool>,
    /// Set when the eigenvector matrix condition estimate exceeds `1/tol` or
    /// any pair is flagged.
    pub defective: bool,
    /// `‖V‖₁‖V⁻¹‖₁` of the eigenvector matrix.
    pub condition_estimate: f64,
}

impl ComplexEigResult {
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }
}

/// Householder reduction `U*·M·U = H` with `H` upper Hessenberg and `U`
/// unitary.
pub fn hessenberg_reduce(m: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let n = m.ensure_square()?;
    let mut h = m.clone();
    let mut u = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|r| h[(r, k)]).collect();
        let xnorm = linalg::vec_norm(&x);
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = linalg::vec_norm(&v);
        if vnorm == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|z| *z /= vnorm);
        // H ← P·H with P = I − 2vv*, acting on rows k+1..n.
        for c in 0..n {
            let s: Complex64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * h[(k + 1 + i, c)]).sum();
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i, c)] -= 2.0 * vi * s;
            }
        }
        // H ← H·P and U ← U·P, acting on columns k+1..n.
        for mat in [&mut h, &mut u] {
            for r in 0..n {
                let s: Complex64 = v.iter().enumerate().map(|(i, vi)| mat[(r, k + 1 + i)] * vi).sum();
                for (i, vi) in v.iter().enumerate() {
                    mat[(r, k + 1 + i)] -= 2.0 * s * vi.conj();
                }
            }
        }
        for r in k + 2..n {
            h[(r, k)] = Complex64::new(0.0, 0.0);
        }
    }
    Ok((h, u))
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) / 2.0;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) / 2.0;
    let mu1 = mean + disc;
    let mu2 = mean - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// Eigenvalues of an upper Hessenberg matrix by shifted QR; `h` is destroyed.
fn hessenberg_eigenvalues(h: &mut ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let mut eig = vec![Complex64::new(0.0, 0.0); n];
    if n == 0 {
        return Ok(eig);
    }
    let scale = h.norm();
    let max_iter = SWEEPS_PER_DIM * n;
    let mut total = 0;
    let mut since_deflation = 0;
    let mut hi = n - 1;
    loop {
        if hi == 0 {
            eig[0] = h[(0, 0)];
            break;
        }
        let mut lo = hi;
        while lo > 0 {
            let mut s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if s == 0.0 {
                s = scale;
            }
            if h[(lo, lo - 1)].norm() <= f64::EPSILON * s {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if total >= max_iter {
            return Err(Error::NoConvergence { iterations: total });
        }
        total += 1;
        since_deflation += 1;

        let shift = if since_deflation % 10 == 0 {
            // Exceptional shift to break cycles.
            let sub = h[(hi, hi - 1)].norm() + if hi >= 2 { h[(hi - 1, hi - 2)].norm() } else { 0.0 };
            h[(hi, hi)] + Complex64::new(0.75 * sub, 0.4375 * sub)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        for i in lo..=hi {
            h[(i, i)] -= shift;
        }
        let mut rotations = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let a = h[(k, k)];
            let b = h[(k + 1, k)];
            let r = a.norm().hypot(b.norm());
            let (c, s) = if r == 0.0 {
                (1.0, Complex64::new(0.0, 0.0))
            } else if a.norm() == 0.0 {
                (0.0, b.conj() / b.norm())
            } else {
                let phase = a / a.norm();
                (a.norm() / r, phase * b.conj() / r)
            };
            for j in k..=hi {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = c * x + s * y;
                h[(k + 1, j)] = -s.conj() * x + c * y;
            }
            rotations.push((k, c, s));
        }
        for (k, c, s) in rotations {
            for i in lo..=(k + 2).min(hi) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * s.conj();
                h[(i, k + 1)] = -x * s + y * c;
            }
        }
        for i in lo..=hi {
            h[(i, i)] += shift;
        }
    }
    Ok(eig)
}

/// Deterministic, well-spread start vector for inverse iteration.
fn start_vector(n: usize, seed: usize) -> Vec<Complex64> {
    (0..n)
        .map(|j| {
            let t = 1.0 + 0.7 * j as f64 + 1.3 * seed as f64 + 0.11 * (j * seed) as f64;
            Complex64::new(t.cos() + 0.5, (1.7 * t).sin())
        })
        .collect()
}

fn residual(m: &ComplexMatrix, lambda: Complex64, v: &[Complex64]) -> f64 {
    let mv = m.mul_vec(v).expect("square matrix");
    mv.iter().zip(v).map(|(a, b)| (a - lambda * b).norm_sqr()).sum::<f64>().sqrt()
}

/// Groups indices whose eigenvalues lie within `tol` of each other
/// (single linkage).
pub(crate) fn cluster(values: &[Complex64], tol: f64) -> Vec<Vec<usize>> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for a in 0..n {
        for b in a + 1..n {
            if (values[a] - values[b]).norm() <= tol {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[rb.max(ra)] = rb.min(ra);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of_group: Vec<usize> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_of_group.iter().position(|&x| x == r) {
            Some(g) => groups[g].push(i),
            None => {
                root_of_group.push(r);
                groups.push(vec![i]);
            }
        }
    }
    groups
}

/// Eigenvalues and eigenvectors of a square complex matrix.
///
/// Every pair satisfies `‖Mv − λv‖ ≤ tol·‖M‖_F` or is flagged.
pub fn eig(m: &ComplexMatrix, tol: f64) -> Result<ComplexEigResult> {
    let n = m.ensure_square()?;
    let (mut h, _) = hessenberg_reduce(m)?;
    let eigenvalues = hessenberg_eigenvalues(&mut h)?;

    let norm = m.norm();
    let scale = if norm > 0.0 { norm } else { 1.0 };
    let mut vectors: Vec<Vec<Complex64>> = vec![Vec::new(); n];
    let mut residuals = vec![0.0; n];
    for group in cluster(&eigenvalues, CLUSTER_TOL * scale) {
        let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(group.len());
        for &idx in &group {
            let lambda = eigenvalues[idx];
            let shifted = ComplexMatrix::from_fn(n, n, |r, c| {
                if r == c {
                    m[(r, c)] - lambda
                } else {
                    m[(r, c)]
                }
            });
            let lu = Lu::factor(&shifted, PIVOT_FLOOR * scale)?;
            let mut v = start_vector(n, idx);
            linalg::orthogonalize_against(&mut v, &basis);
            linalg::normalize(&mut v);
            let mut res = f64::INFINITY;
            for it in 0..INVERSE_ITERATIONS {
                let mut next = lu.solve(&v);
                linalg::orthogonalize_against(&mut next, &basis);
                linalg::normalize(&mut next);
                if next.iter().any(|z| !z.is_finite()) || linalg::vec_norm(&next) == 0.0 {
                    break;
                }
                v = next;
                res = residual(m, lambda, &v);
                if it >= 1 && res <= tol * scale * 1e-2 {
                    break;
                }
            }
            if !res.is_finite() {
                res = residual(m, lambda, &v);
            }
            basis.push(v.clone());
            residuals[idx] = res;
            vectors[idx] = v;
        }
    }

    let eigenvectors = linalg::from_columns(&vectors);
    let flagged: Vec<bool> = residuals.iter().map(|&r| r.is_nan() || r > tol * scale).collect();
    let condition_estimate = linalg::condition_one(&eigenvectors);
    let defective = condition_estimate.is_nan() || condition_estimate > 1.0 / tol || flagged.iter().any(|&f| f);
    Ok(ComplexEigResult { eigenvalues, eigenvectors, residuals, flagged, defective, condition_estimate })
}

/// Monic characteristic polynomial `det(λI − M)` by the Faddeev–LeVerrier
/// recurrence. Coefficients are returned highest degree first:
/// `[1, c₁, …, cₙ]` for `λⁿ + c₁λⁿ⁻¹ + … + cₙ`.
pub fn charpoly(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = m.ensure_square()?;
    if n > MAX_CHARPOLY_DIM {
        return Err(Error::DimensionTooLarge { dim: n, max: MAX_CHARPOLY_DIM });
    }
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    let mut mk = ComplexMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{k−1}·I
        let mut next = m.matmul(&mk)?;
        let prev = coeffs[k - 1];
        for i in 0..n {
            next[(i, i)] += prev;
        }
        mk = next;
        let trace = m.matmul(&mk)?.trace();
        coeffs.push(-trace / k as f64);
    }
    Ok(coeffs)
}

/// Evaluates a polynomial given highest degree first (Horner).
pub fn poly_eval(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

fn poly_derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    let deg = coeffs.len().saturating_sub(1);
    coeffs[..deg].iter().enumerate().map(|(i, &c)| c * (deg - i) as f64).collect()
}

/// All roots of a monic polynomial (highest degree first) by Durand–Kerner
/// simultaneous iteration, polished with a few Newton steps.
///
/// Every root satisfies `|p(r)| ≤ 1e-8·max|cᵢ|`, otherwise
/// [`Error::NoConvergence`] is returned.
pub fn roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Ok(Vec::new());
    }
    if deg > MAX_ROOTS_DEGREE {
        return Err(Error::DimensionTooLarge { dim: deg, max: MAX_ROOTS_DEGREE });
    }
    let lead = coeffs[0];
    if lead.norm() == 0.0 {
        return Err(Error::Unsupported("leading coefficient is zero".into()));
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|&c| c / lead).collect();
    let max_coeff = monic.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let radius = 1.0 + monic[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4))
        .collect();

    const MAX_ITER: usize = 5000;
    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut max_step: f64 = 0.0;
        for k in 0..deg {
            let denom: Complex64 = (0..deg)
                .filter(|&j| j != k)
                .map(|j| z[k] - z[j])
                .product();
            if denom.norm() == 0.0 {
                z[k] += Complex64::new(1e-10 * radius, 1e-10 * radius);
                max_step = f64::INFINITY;
                continue;
            }
            let step = poly_eval(&monic, z[k]) / denom;
            z[k] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
        }
        if max_step <= 1e-15 {
            converged = true;
            break;
        }
    }
    let deriv = poly_derivative(&monic);
    for r in z.iter_mut() {
        for _ in 0..3 {
            let d = poly_eval(&deriv, *r);
            let p = poly_eval(&monic, *r);
            if d.norm() == 0.0 {
                break;
            }
            let next = *r - p / d;
            if poly_eval(&monic, next).norm() < p.norm() {
                *r = next;
            } else {
                break;
            }
        }
    }
    let ok = z.iter().all(|&r| poly_eval(&monic, r).norm() <= 1e-8 * max_coeff.max(1e-300));
    if !ok && !converged {
        return Err(Error::NoConvergence { iterations: MAX_ITER });
    }
    if !ok {
        return Err(Error::NoConvergence { iterations: MAX_ITER });
    }
    Ok(z)
}
