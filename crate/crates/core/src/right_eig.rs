//! Right eigenvalue problems `Mψ = ψλ` with complex `λ`.
//!
//! Quaternionic-linear matrices are complexified, whose spectrum is closed
//! under conjugation; one representative per conjugate pair forms the reduced
//! spectrum. Complex-linear matrices (entries with an `R_i` part) keep the
//! full spectrum of their complex counterpart.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex_eig::{self, ComplexEigResult, DEFAULT_EIG_TOL};
use crate::error::{Error, Result};
use crate::hlcr::HlcrElement;
use crate::linalg;
use crate::matching::hungarian;
use crate::matrices::{
    complexify_matrix, complexify_vector, dequaternionify_matrix, dequaternionify_vector, inner_product,
    is_antihermitian, ComplexMatrix, HlcrMatrix, Matrix, QuatMatrix, QuatVector,
};
use crate::quaternion::{Quaternion, UnitQuaternion};

pub const DEFAULT_PAIR_TOL: f64 = 1e-8;

/// Bound on `‖Mψ − ψλ‖ / (‖M‖‖ψ‖)` for returned eigenpairs.
pub const RESIDUAL_GATE: f64 = 1e-9;

/// Bound on `‖S·M·S⁻¹ − D‖ / ‖M‖` for diagonalizers.
pub const DIAGONALIZER_GATE: f64 = 1e-8;

/// Minimum component outside the span of earlier choices for a vector to
/// count as ℍ-independent.
const INDEPENDENCE_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    #[default]
    PositiveImag,
    NegativeImag,
}

impl Convention {
    fn prefers(self, z: Complex64) -> bool {
        match self {
            Convention::PositiveImag => z.im >= 0.0,
            Convention::NegativeImag => z.im <= 0.0,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RightEigOptions {
    pub eig_tol: f64,
    pub pair_tol: f64,
    pub convention: Convention,
}

impl Default for RightEigOptions {
    fn default() -> Self {
        RightEigOptions { eig_tol: DEFAULT_EIG_TOL, pair_tol: DEFAULT_PAIR_TOL, convention: Convention::default() }
    }
}

#[derive(Clone, Debug)]
pub struct RightEigResult {
    /// One eigenvalue per conjugate pair, selected by the convention.
    pub reduced_spectrum: Vec<Complex64>,
    /// The `2n` complexified eigenvalues, listed pair by pair.
    pub full_spectrum: Vec<Complex64>,
    /// Unit eigenvectors, phase-fixed, one per reduced eigenvalue.
    pub eigenvectors: Vec<QuatVector>,
    /// `‖Mψ − ψλ‖` per reduced eigenpair.
    pub residuals: Vec<f64>,
    /// Inverse of the eigenvector matrix, when diagonalizable.
    pub diagonalizer: Option<QuatMatrix>,
    pub diagonalizable: bool,
    /// 1-norm condition estimate of the complexified eigenvector matrix.
    pub condition: f64,
}

#[derive(Clone, Debug)]
pub struct ClinEigResult {
    /// All `2n` eigenvalues in canonical or requested order.
    pub spectrum: Vec<Complex64>,
    pub eigenvectors: Vec<QuatVector>,
    pub residuals: Vec<f64>,
    pub diagonalizer: Option<HlcrMatrix>,
    /// Diagonal with entries built from consecutive spectrum pairs.
    pub diagonal: HlcrMatrix,
    pub condition: f64,
}

/// `(x, y) ↦ (−ȳ, x̄)` per block: the complex image of `ψ·j`.
pub fn partner_eigenvector(phi: &[Complex64]) -> Result<Vec<Complex64>> {
    if !phi.len().is_multiple_of(2) {
        return Err(Error::OddDimension(phi.len()));
    }
    Ok(phi.chunks_exact(2).flat_map(|p| [-p[1].conj(), p[0].conj()]).collect())
}

fn spectrum_scale(eigs: &[Complex64]) -> f64 {
    eigs.iter().map(|z| z.norm()).fold(1.0, f64::max)
}

/// Pairs each eigenvalue with its conjugate. Returned index pairs put the
/// member with positive imaginary part first; real eigenvalues pair with each
/// other.
pub fn pair_spectrum(eigs: &[Complex64], tol: f64) -> Result<Vec<(usize, usize)>> {
    let thr = tol * spectrum_scale(eigs);
    let mut real: Vec<usize> = (0..eigs.len()).filter(|&k| eigs[k].im.abs() <= thr).collect();
    let upper: Vec<usize> = (0..eigs.len()).filter(|&k| eigs[k].im > thr).collect();
    let lower: Vec<usize> = (0..eigs.len()).filter(|&k| eigs[k].im < -thr).collect();

    let mut pairs = Vec::with_capacity(eigs.len() / 2);
    real.sort_by(|&a, &b| eigs[a].re.total_cmp(&eigs[b].re));
    if !real.len().is_multiple_of(2) {
        return Err(Error::UnpairedEigenvalue(eigs[*real.last().expect("odd length")]));
    }
    for ch in real.chunks_exact(2) {
        if (eigs[ch[0]] - eigs[ch[1]]).norm() > thr {
            return Err(Error::UnpairedEigenvalue(eigs[ch[0]]));
        }
        pairs.push((ch[0].min(ch[1]), ch[0].max(ch[1])));
    }

    if upper.len() != lower.len() {
        let k = if upper.len() > lower.len() { upper[0] } else { lower[0] };
        return Err(Error::UnpairedEigenvalue(eigs[k]));
    }
    let cost = |u: usize, l: usize| (eigs[u] - eigs[l].conj()).norm();
    let mut used = vec![false; lower.len()];
    let mut greedy = Vec::with_capacity(upper.len());
    for &u in &upper {
        let best = (0..lower.len())
            .filter(|&j| !used[j])
            .min_by(|&a, &b| cost(u, lower[a]).total_cmp(&cost(u, lower[b])));
        match best {
            Some(j) if cost(u, lower[j]) <= thr => {
                used[j] = true;
                greedy.push((u, lower[j]));
            }
            _ => break,
        }
    }
    if greedy.len() == upper.len() {
        pairs.extend(greedy);
    } else {
        let matrix: Vec<Vec<f64>> = upper.iter().map(|&u| lower.iter().map(|&l| cost(u, l)).collect()).collect();
        let assign = hungarian(&matrix);
        for (a, &b) in assign.iter().enumerate() {
            if matrix[a][b] > thr {
                return Err(Error::UnpairedEigenvalue(eigs[upper[a]]));
            }
            pairs.push((upper[a], lower[b]));
        }
    }
    pairs.sort_by_key(|p| p.0.min(p.1));
    Ok(pairs)
}

/// Always succeeds: the `n` eigenvalues with largest imaginary part are
/// matched to the rest by minimum total conjugate distance.
fn pair_spectrum_loose(eigs: &[Complex64]) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..eigs.len()).collect();
    order.sort_by(|&a, &b| eigs[b].im.total_cmp(&eigs[a].im));
    let half = eigs.len() / 2;
    let (upper, lower) = order.split_at(half);
    let matrix: Vec<Vec<f64>> =
        upper.iter().map(|&u| lower.iter().map(|&l| (eigs[u] - eigs[l].conj()).norm()).collect()).collect();
    let mut pairs: Vec<(usize, usize)> =
        hungarian(&matrix).iter().enumerate().map(|(a, &b)| (upper[a], lower[b])).collect();
    pairs.sort_by_key(|p| p.0.min(p.1));
    pairs
}

/// Orthonormal basis of a complex span closed under `partner_eigenvector`.
struct QuaternionicSpan {
    basis: Vec<Vec<Complex64>>,
}

impl QuaternionicSpan {
    fn new() -> Self {
        QuaternionicSpan { basis: Vec::new() }
    }

    /// Norm of the component of the unit vector `v` outside the span.
    fn outside(&self, v: &[Complex64]) -> f64 {
        let mut w = v.to_vec();
        linalg::orthogonalize_against(&mut w, &self.basis);
        linalg::vec_norm(&w) / linalg::vec_norm(v).max(f64::MIN_POSITIVE)
    }

    fn push(&mut self, v: &[Complex64]) {
        let partner = partner_eigenvector(v).expect("even length");
        for mut w in [v.to_vec(), partner] {
            linalg::orthogonalize_against(&mut w, &self.basis);
            if linalg::vec_norm(&w) > INDEPENDENCE_TOL * linalg::vec_norm(v) {
                linalg::normalize(&mut w);
                self.basis.push(w);
            }
        }
    }
}

/// Right-multiplies by a complex phase so the first significant component
/// has a real positive `z` part (or `w` part when `z` vanishes), then
/// normalizes.
pub fn fix_phase(psi: &QuatVector) -> QuatVector {
    let norm = psi.norm();
    if norm == 0.0 {
        return psi.clone();
    }
    let thr = 1e-8 * norm;
    let mut out = psi.clone();
    if let Some(q) = psi.iter().find(|q| q.norm() > thr) {
        let (z, w) = q.symplectic_split();
        let pivot = if z.norm() > thr { z } else { w };
        let phase = pivot.conj() / pivot.norm();
        out = psi.mul_right(Quaternion::from(phase));
    }
    out.normalized()
}

/// `‖Mψ − ψλ‖` for a quaternionic matrix and complex `λ`.
pub fn right_residual(m: &QuatMatrix, psi: &QuatVector, lambda: Complex64) -> Result<f64> {
    let mpsi = m.apply(psi)?;
    Ok(mpsi.sub(&psi.mul_right(Quaternion::from(lambda))).norm())
}

/// `‖Mψ − ψλ‖` for a complex-linear matrix.
pub fn clin_residual(m: &HlcrMatrix, psi: &QuatVector, lambda: Complex64) -> Result<f64> {
    let mpsi = m.apply(psi)?;
    Ok(mpsi.sub(&psi.mul_right(Quaternion::from(lambda))).norm())
}

fn complex_residual(c: &ComplexMatrix, v: &[Complex64], lambda: Complex64) -> f64 {
    let cv = c.mul_vec(v).expect("square");
    cv.iter().zip(v).map(|(a, b)| (a - lambda * b).norm_sqr()).sum::<f64>().sqrt()
}

/// Reduced right spectrum of a quaternionic matrix.
pub fn right_spectrum_quaternionic(m: &QuatMatrix, opts: &RightEigOptions) -> Result<RightEigResult> {
    let n = m.ensure_square()?;
    let c = complexify_matrix(m);
    let eig = complex_eig::eig(&c, opts.eig_tol)?;
    let (pairs, strict) = match pair_spectrum(&eig.eigenvalues, opts.pair_tol) {
        Ok(p) => (p, true),
        Err(_) if eig.defective => (pair_spectrum_loose(&eig.eigenvalues), false),
        Err(e) => return Err(e),
    };
    select_representatives(m, &c, &eig, &pairs, strict, opts, n)
}

fn select_representatives(
    m: &QuatMatrix,
    c: &ComplexMatrix,
    eig: &ComplexEigResult,
    pairs: &[(usize, usize)],
    strict: bool,
    opts: &RightEigOptions,
    n: usize,
) -> Result<RightEigResult> {
    let eigs = &eig.eigenvalues;
    let scale = spectrum_scale(eigs);
    let thr = opts.pair_tol * scale;
    let m_norm = m.norm();
    let gate = RESIDUAL_GATE * m_norm.max(f64::MIN_POSITIVE);

    let mut span = QuaternionicSpan::new();
    let mut reduced = Vec::with_capacity(n);
    let mut full = Vec::with_capacity(2 * n);
    let mut vectors = Vec::with_capacity(n);
    let mut residuals = Vec::with_capacity(n);
    let mut independent = true;

    for &(a, b) in pairs {
        let (la, lb) = (eigs[a], eigs[b]);
        let is_real = la.im.abs() <= thr && lb.im.abs() <= thr;
        let (rep, other) = if is_real || opts.convention.prefers(la) { (a, b) } else { (b, a) };
        let lambda = if is_real {
            Complex64::new((la.re + lb.re) / 2.0, 0.0)
        } else {
            (eigs[rep] + eigs[other].conj()) / 2.0
        };
        full.push(eigs[rep]);
        full.push(eigs[other]);

        // Candidates: eigenvectors for λ and partners of eigenvectors for λ̄.
        let mut candidates: Vec<Vec<Complex64>> = Vec::new();
        for k in 0..eigs.len() {
            if (eigs[k] - lambda).norm() <= thr.max((eigs[rep] - lambda).norm() * 2.0) {
                candidates.push(eig.eigenvector(k));
            }
            if (eigs[k].conj() - lambda).norm() <= thr.max((eigs[other].conj() - lambda).norm() * 2.0) {
                candidates.push(partner_eigenvector(&eig.eigenvector(k))?);
            }
        }
        let score = |v: &Vec<Complex64>| {
            let fit = if complex_residual(c, v, lambda) <= gate { 1.0 } else { 1e-3 };
            span.outside(v) * fit
        };
        let best = candidates
            .iter()
            .max_by(|x, y| score(x).total_cmp(&score(y)))
            .cloned()
            .unwrap_or_else(|| eig.eigenvector(rep));
        if span.outside(&best) <= INDEPENDENCE_TOL {
            independent = false;
        }
        span.push(&best);

        let psi = fix_phase(&dequaternionify_vector(&best)?);
        residuals.push(right_residual(m, &psi, lambda)?);
        reduced.push(lambda);
        vectors.push(psi);
    }

    let x = quat_columns(&vectors, n);
    let condition = linalg::condition_one(&complexify_matrix(&x));
    let residuals_ok = residuals.iter().all(|&r| r <= gate);
    let diagonalizable = strict && independent && residuals_ok && condition <= 1.0 / opts.eig_tol;
    let diagonalizer = if diagonalizable { x.inverse().ok() } else { None };
    Ok(RightEigResult {
        reduced_spectrum: reduced,
        full_spectrum: full,
        eigenvectors: vectors,
        residuals,
        diagonalizable: diagonalizable && diagonalizer.is_some(),
        diagonalizer,
        condition,
    })
}

/// Matrix whose columns are the given vectors.
pub fn quat_columns(vectors: &[QuatVector], rows: usize) -> QuatMatrix {
    Matrix::from_fn(rows, vectors.len(), |r, c| vectors[c][r])
}

/// `(ψ·u, ū·λ·u)`: another member of the same eigenray.
pub fn rephase_eigenpair(psi: &QuatVector, lambda: Complex64, u: &UnitQuaternion) -> (QuatVector, Quaternion) {
    (psi.mul_right(u.get()), u.conjugate_by(Quaternion::from(lambda)))
}

#[derive(Clone, Debug)]
pub struct QuatDiagonalization {
    /// `S_H` with `S_H·M·S_H⁻¹ = D`.
    pub s_h: QuatMatrix,
    pub d: QuatMatrix,
    /// `‖S_H·M·S_H⁻¹ − D‖_F`.
    pub residual: f64,
    pub eigen: RightEigResult,
}

pub fn diagonalize_quaternionic(m: &QuatMatrix, opts: &RightEigOptions) -> Result<QuatDiagonalization> {
    let n = m.ensure_square()?;
    let eigen = right_spectrum_quaternionic(m, opts)?;
    if !eigen.diagonalizable {
        return Err(Error::NotDiagonalizable { condition: eigen.condition });
    }
    let s_h = eigen.diagonalizer.clone().ok_or(Error::SingularEigenvectorMatrix)?;
    let x = quat_columns(&eigen.eigenvectors, n);
    let d = QuatMatrix::from_diagonal(&eigen.reduced_spectrum.iter().map(|&l| Quaternion::from(l)).collect::<Vec<_>>());
    let residual = s_h.matmul(m)?.matmul(&x)?.sub(&d).norm();
    if residual > DIAGONALIZER_GATE * m.norm().max(1.0) {
        return Err(Error::NotDiagonalizable { condition: eigen.condition });
    }
    Ok(QuatDiagonalization { s_h, d, residual, eigen })
}

/// Sorts by descending real part, then descending imaginary part, on a grid
/// of `1e-9·scale` so rounding noise does not reorder ties.
fn canonical_order(eigs: &[Complex64]) -> Vec<usize> {
    let grid = 1e-9 * spectrum_scale(eigs);
    let key = |z: Complex64| ((z.re / grid).round(), (z.im / grid).round());
    let mut order: Vec<usize> = (0..eigs.len()).collect();
    order.sort_by(|&a, &b| {
        let (ka, kb) = (key(eigs[a]), key(eigs[b]));
        kb.0.total_cmp(&ka.0).then(kb.1.total_cmp(&ka.1))
    });
    order
}

/// Reorders to match `requested` by optimal assignment.
fn requested_order(eigs: &[Complex64], requested: &[Complex64]) -> Result<Vec<usize>> {
    if requested.len() != eigs.len() {
        return Err(Error::SpectrumOrderMismatch);
    }
    let cost: Vec<Vec<f64>> = requested.iter().map(|r| eigs.iter().map(|e| (r - e).norm()).collect()).collect();
    let assign = hungarian(&cost);
    let thr = DEFAULT_PAIR_TOL * spectrum_scale(eigs);
    if assign.iter().enumerate().any(|(r, &c)| cost[r][c] > thr) {
        return Err(Error::SpectrumOrderMismatch);
    }
    Ok(assign)
}

/// Full right spectrum of a complex-linear matrix. `order`, when given,
/// fixes the order of the returned spectrum (and hence the pairing used for
/// the diagonal form); otherwise a canonical order is used.
pub fn right_spectrum_complexlinear(
    m: &HlcrMatrix,
    order: Option<&[Complex64]>,
    eig_tol: f64,
) -> Result<ClinEigResult> {
    let n = m.ensure_square()?;
    let c = complexify_matrix(m);
    let eig = complex_eig::eig(&c, eig_tol)?;
    let idx = match order {
        Some(req) => requested_order(&eig.eigenvalues, req)?,
        None => canonical_order(&eig.eigenvalues),
    };
    let spectrum: Vec<Complex64> = idx.iter().map(|&k| eig.eigenvalues[k]).collect();
    let columns: Vec<Vec<Complex64>> = idx.iter().map(|&k| eig.eigenvector(k)).collect();

    let mut eigenvectors = Vec::with_capacity(2 * n);
    let mut residuals = Vec::with_capacity(2 * n);
    for (v, &lambda) in columns.iter().zip(&spectrum) {
        let psi = fix_phase(&dequaternionify_vector(v)?);
        residuals.push(clin_residual(m, &psi, lambda)?);
        eigenvectors.push(psi);
    }
    let xc = linalg::from_columns(&eigenvectors.iter().map(complexify_vector).collect::<Vec<_>>());
    let condition = linalg::condition_one(&xc);
    let gate = RESIDUAL_GATE * m.norm().max(f64::MIN_POSITIVE);
    let ok = residuals.iter().all(|&r| r <= gate) && condition <= 1.0 / eig_tol;
    let diagonalizer = if ok { linalg::inverse(&xc).ok().map(|inv| dequaternionify_matrix(&inv)).transpose()? } else { None };
    let diagonal = HlcrMatrix::from_diagonal(
        &spectrum.chunks_exact(2).map(|p| HlcrElement::from_diagonal(p[0], p[1])).collect::<Vec<_>>(),
    );
    Ok(ClinEigResult { spectrum, eigenvectors, residuals, diagonalizer, diagonal, condition })
}

#[derive(Clone, Debug)]
pub struct ClinDiagonalization {
    /// `S_C` with `S_C·M·S_C⁻¹ = D`.
    pub s_c: HlcrMatrix,
    pub s_c_inverse: HlcrMatrix,
    pub d: HlcrMatrix,
    pub residual: f64,
    pub eigen: ClinEigResult,
}

pub fn diagonalize_complexlinear(
    m: &HlcrMatrix,
    order: Option<&[Complex64]>,
    eig_tol: f64,
) -> Result<ClinDiagonalization> {
    let eigen = right_spectrum_complexlinear(m, order, eig_tol)?;
    let s_c = eigen.diagonalizer.clone().ok_or(Error::NotDiagonalizable { condition: eigen.condition })?;
    let xc = linalg::from_columns(&eigen.eigenvectors.iter().map(complexify_vector).collect::<Vec<_>>());
    let s_c_inverse = dequaternionify_matrix(&xc)?;
    let d = eigen.diagonal.clone();
    let residual = s_c.matmul(m)?.matmul(&s_c_inverse)?.sub(&d).norm();
    if residual > DIAGONALIZER_GATE * m.norm().max(1.0) {
        return Err(Error::NotDiagonalizable { condition: eigen.condition });
    }
    Ok(ClinDiagonalization { s_c, s_c_inverse, d, residual, eigen })
}

/// `H = Σ vₗ·|λₗ|·vₗ†` built from an orthonormalized right eigenbasis of the
/// anti-hermitian `A`.
pub fn hermitian_from_antihermitian(a: &QuatMatrix, opts: &RightEigOptions) -> Result<QuatMatrix> {
    let n = a.ensure_square()?;
    let scale = a.norm().max(1.0);
    if !is_antihermitian(a, 1e-9 * scale) {
        return Err(Error::NotAntiHermitian);
    }
    let eigen = right_spectrum_quaternionic(a, opts)?;
    for &l in &eigen.reduced_spectrum {
        if l.re.abs() > 1e-9 * scale {
            return Err(Error::NotImaginary(l));
        }
    }
    if !eigen.diagonalizable {
        return Err(Error::NotDiagonalizable { condition: eigen.condition });
    }
    let basis = quaternionic_gram_schmidt(&eigen.eigenvectors)?;
    let mut h = QuatMatrix::zeros(n, n);
    for (v, l) in basis.iter().zip(&eigen.reduced_spectrum) {
        let mag = l.norm();
        for r in 0..n {
            for c in 0..n {
                h[(r, c)] += v[r] * mag * v[c].conj();
            }
        }
    }
    Ok(h)
}

/// `v ← v − Σ u⟨u|v⟩`, normalized, over ℍ with scalars on the right.
pub fn quaternionic_gram_schmidt(vectors: &[QuatVector]) -> Result<Vec<QuatVector>> {
    let mut out: Vec<QuatVector> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &out {
                let proj = inner_product(u, &w)?;
                w = w.sub(&u.mul_right(proj));
            }
        }
        if w.norm() <= INDEPENDENCE_TOL * v.norm() {
            return Err(Error::SingularEigenvectorMatrix);
        }
        out.push(w.normalized());
    }
    Ok(out)
}

/// Common right eigenbasis of two commuting quaternionic matrices with the
/// eigenvalue of each operator on each basis vector.
#[derive(Clone, Debug)]
pub struct CoSpectrum {
    pub basis: Vec<QuatVector>,
    /// `(λ⁽¹⁾, λ⁽²⁾)` per basis vector.
    pub pairs: Vec<(Complex64, Complex64)>,
}

impl CoSpectrum {
    /// Replaces basis vector `l` by `ψₗ·j`, which conjugates both of its
    /// eigenvalues.
    pub fn flip(&mut self, l: usize) {
        self.basis[l] = self.basis[l].mul_right(Quaternion::J);
        let (a, b) = self.pairs[l];
        self.pairs[l] = (a.conj(), b.conj());
    }

    /// Copy with the listed vectors flipped.
    pub fn flipped(&self, which: &[usize]) -> CoSpectrum {
        let mut out = self.clone();
        for &l in which {
            out.flip(l);
        }
        out
    }
}

fn imag_class(z: Complex64, thr: f64) -> u8 {
    if z.im > thr {
        0
    } else if z.im >= -thr {
        1
    } else {
        2
    }
}

fn check_commuting(m1: &QuatMatrix, m2: &QuatMatrix) -> Result<()> {
    let comm = m1.matmul(m2)?.sub(&m2.matmul(m1)?).norm();
    if comm > 1e-9 * (m1.norm() * m2.norm()).max(1.0) {
        return Err(Error::NotCommuting(comm));
    }
    Ok(())
}

/// Diagonalizes the complexified `M1`, then the restriction of the
/// complexified `M2` to each eigenspace. One vector per quaternionic ray is
/// kept, preferring positive imaginary parts for `M1`, then for `M2`.
pub fn co_spectrum(m1: &QuatMatrix, m2: &QuatMatrix, eig_tol: f64) -> Result<CoSpectrum> {
    let n = m1.ensure_square()?;
    if m2.ensure_square()? != n {
        return Err(Error::DimensionMismatch { expected: n, found: m2.rows() });
    }
    check_commuting(m1, m2)?;
    let c1 = complexify_matrix(m1);
    let c2 = complexify_matrix(m2);
    let e1 = complex_eig::eig(&c1, eig_tol)?;
    if e1.defective {
        return Err(Error::NotSimultaneouslyDiagonalizable);
    }
    let s1 = spectrum_scale(&e1.eigenvalues);
    let m2_scale = m2.norm().max(1.0);

    // (eigenvector, μ1, μ2) for all 2n common eigenvectors.
    let mut common: Vec<(Vec<Complex64>, Complex64, Complex64)> = Vec::with_capacity(2 * n);
    for group in complex_eig::cluster(&e1.eigenvalues, 1e-7 * s1) {
        let mu1 = group.iter().map(|&k| e1.eigenvalues[k]).sum::<Complex64>() / group.len() as f64;
        let mut v: Vec<Vec<Complex64>> = Vec::with_capacity(group.len());
        for &k in &group {
            let mut w = e1.eigenvector(k);
            linalg::orthogonalize_against(&mut w, &v);
            if linalg::vec_norm(&w) <= INDEPENDENCE_TOL {
                return Err(Error::NotSimultaneouslyDiagonalizable);
            }
            linalg::normalize(&mut w);
            v.push(w);
        }
        let vm = linalg::from_columns(&v);
        let c2v = c2.matmul(&vm)?;
        let b = vm.conj_transpose().matmul(&c2v)?;
        let off = c2v.sub(&vm.matmul(&b)?).norm();
        if off > 1e-8 * m2_scale {
            return Err(Error::NotSimultaneouslyDiagonalizable);
        }
        let eb = complex_eig::eig(&b, eig_tol)?;
        if eb.defective {
            return Err(Error::NotSimultaneouslyDiagonalizable);
        }
        for k in 0..group.len() {
            let y = eb.eigenvector(k);
            let mut phi = vm.mul_vec(&y)?;
            linalg::normalize(&mut phi);
            common.push((phi, mu1, eb.eigenvalues[k]));
        }
    }

    let thr = DEFAULT_PAIR_TOL * s1.max(spectrum_scale(&common.iter().map(|c| c.2).collect::<Vec<_>>()));
    common.sort_by_key(|(_, a, b)| (imag_class(*a, thr), imag_class(*b, thr)));
    let mut span = QuaternionicSpan::new();
    let mut chosen: Vec<(QuatVector, Complex64, Complex64)> = Vec::with_capacity(n);
    for (phi, mu1, mu2) in &common {
        if chosen.len() == n {
            break;
        }
        if span.outside(phi) > INDEPENDENCE_TOL {
            span.push(phi);
            chosen.push((fix_phase(&dequaternionify_vector(phi)?), *mu1, *mu2));
        }
    }
    if chosen.len() != n {
        return Err(Error::NotSimultaneouslyDiagonalizable);
    }
    let lead = |v: &QuatVector| v.iter().position(|q| q.norm() > 1e-8).unwrap_or(v.len());
    chosen.sort_by_key(|(v, _, _)| lead(v));
    Ok(CoSpectrum {
        basis: chosen.iter().map(|c| c.0.clone()).collect(),
        pairs: chosen.iter().map(|c| (c.1, c.2)).collect(),
    })
}

/// Eigenvalue pairs of two commuting matrices on a given basis. Each vector
/// must be a right eigenvector of both with complex eigenvalue.
pub fn co_spectrum_in_basis(
    m1: &QuatMatrix,
    m2: &QuatMatrix,
    basis: &[QuatVector],
) -> Result<Vec<(Complex64, Complex64)>> {
    check_commuting(m1, m2)?;
    let mut out = Vec::with_capacity(basis.len());
    for (l, psi) in basis.iter().enumerate() {
        let mut pair = [Complex64::new(0.0, 0.0); 2];
        for (slot, m) in pair.iter_mut().zip([m1, m2]) {
            let mpsi = m.apply(psi)?;
            let q = inner_product(psi, &mpsi)? / psi.norm_sqr_checked(l)?;
            let tol = 1e-8 * m.norm().max(1.0);
            if q.jk_norm() > tol {
                return Err(Error::NotCommonEigenvector(l));
            }
            let lambda = q.complex_part();
            if right_residual(m, psi, lambda)? > tol * psi.norm() {
                return Err(Error::NotCommonEigenvector(l));
            }
            *slot = lambda;
        }
        out.push((pair[0], pair[1]));
    }
    Ok(out)
}

trait NormSqrChecked {
    fn norm_sqr_checked(&self, index: usize) -> Result<f64>;
}

impl NormSqrChecked for QuatVector {
    fn norm_sqr_checked(&self, index: usize) -> Result<f64> {
        let n = self.norm();
        if n == 0.0 {
            Err(Error::NotCommonEigenvector(index))
        } else {
            Ok(n * n)
        }
    }
}
