//! Left eigenvalue equations `Mψ = q̃ψ` for 2×2 quaternionic matrices.
//!
//! With `ψ₁ = 1` the first row gives `q̃ = M₁₁ + M₁₂ψ₂`, and the second row
//! becomes the unilateral quadratic
//!
//! ```text
//! M₁₂·ψ₂² + (M₁₁ − M₂₂)·ψ₂ − M₂₁ = 0
//! ```
//!
//! which is solved as a system of four real equations by Gauss–Newton steps
//! from a fixed grid of seeds. Roots where the Jacobian loses rank are
//! explored along the null directions and reported as a family. The
//! `ψ₁ = 0` branch exists only when `M₁₂ = 0` and gives `q̃ = M₂₂`.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex_eig;
use crate::error::{Error, Result};
use crate::matching::{hungarian, multiset_distance, real_multiset_distance};
use crate::matrices::{complexify_matrix, QuatMatrix, QuatVector};
use crate::quaternion::Quaternion;
use crate::right_eig::{right_spectrum_quaternionic, RightEigOptions};

pub const SEED_COUNT: usize = 64;

/// A degenerate root with a basis of its Jacobian null space.
type DegenerateRoot = (Quaternion, Vec<Vector4<f64>>);

const GRID_STEPS: usize = 5;
const MAX_NEWTON: usize = 100;
const DIVERGENCE: f64 = 1e6;
const DEDUP_TOL: f64 = 1e-6;
/// Singular values below `NULLITY_TOL·scale` count towards the nullity.
const NULLITY_TOL: f64 = 1e-6;
/// Minimum number of distinct members for a degenerate root to be reported
/// as a family.
pub const MIN_FAMILY_SAMPLES: usize = 8;
const FAMILY_SAMPLES: usize = 16;
/// Accepted left eigenpairs satisfy `‖Mψ − q̃ψ‖ ≤ 1e-8·‖M‖‖ψ‖`.
pub const LEFT_RESIDUAL_GATE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeftSolution {
    pub eigenvalue: Quaternion,
    pub eigenvector: Vec<Quaternion>,
    /// `‖Mψ − q̃ψ‖ / (‖M‖‖ψ‖)`.
    pub residual: f64,
    /// Member of a continuous family of solutions.
    pub family: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeftFamily {
    pub description: String,
    /// Dimension of the Jacobian null space at the members.
    pub nullity: usize,
    pub samples: Vec<LeftSolution>,
    /// `|q̃|` when it is the same for every sample.
    pub constant_norm: Option<f64>,
    /// `Re q̃` when it is the same for every sample.
    pub constant_real: Option<f64>,
    /// Components (`"1"`, `"i"`, `"j"`, `"k"`) of `q̃` that vanish on every sample.
    pub vanishing_components: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeftEigResult {
    /// Isolated solutions first, then family samples.
    pub solutions: Vec<LeftSolution>,
    pub families: Vec<LeftFamily>,
}

impl LeftEigResult {
    pub fn isolated(&self) -> impl Iterator<Item = &LeftSolution> {
        self.solutions.iter().filter(|s| !s.family)
    }
}

/// `‖Mψ − q̃ψ‖ / (‖M‖‖ψ‖)`.
pub fn verify_left_pair(m: &QuatMatrix, q: Quaternion, psi: &QuatVector) -> Result<f64> {
    let mpsi = m.apply(psi)?;
    let diff: f64 = mpsi.iter().zip(psi.iter()).map(|(a, &b)| (*a - q * b).norm_sqr()).sum::<f64>().sqrt();
    let denom = m.norm() * psi.norm();
    Ok(if denom > 0.0 { diff / denom } else { diff })
}

fn to_vec4(q: Quaternion) -> Vector4<f64> {
    Vector4::new(q.a, q.b, q.c, q.d)
}

fn from_vec4(v: &Vector4<f64>) -> Quaternion {
    Quaternion::new(v[0], v[1], v[2], v[3])
}

/// The eliminated quadratic and its real Jacobian.
struct Quadratic {
    lead: Quaternion,
    linear: Quaternion,
    constant: Quaternion,
    scale: f64,
}

impl Quadratic {
    fn value(&self, x: Quaternion) -> Quaternion {
        self.lead * x * x + self.linear * x - self.constant
    }

    fn jacobian(&self, x: Quaternion) -> Matrix4<f64> {
        let mut j = Matrix4::zeros();
        for (col, e) in [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K].into_iter().enumerate() {
            let d = self.lead * (x * e + e * x) + self.linear * e;
            j.set_column(col, &to_vec4(d));
        }
        j
    }

    /// Minimum-norm Gauss–Newton iteration; `None` on divergence or stall.
    fn newton(&self, start: Quaternion) -> Option<Quaternion> {
        let mut x = start;
        let tol = 1e-14 * self.scale * self.scale;
        for _ in 0..MAX_NEWTON {
            let f = self.value(x);
            if f.norm() <= tol {
                return Some(x);
            }
            let svd = self.jacobian(x).svd(true, true);
            let smax = svd.singular_values.max();
            if smax == 0.0 {
                return None;
            }
            let step = svd.solve(&to_vec4(f), 1e-12 * smax).ok()?;
            x -= from_vec4(&step);
            if !x.is_finite() || x.norm() > DIVERGENCE {
                return None;
            }
            if step.norm() <= 1e-16 * (1.0 + x.norm()) {
                break;
            }
        }
        (self.value(x).norm() <= 1e-12 * self.scale * self.scale).then_some(x)
    }

    /// Right singular vectors spanning the numerical null space.
    fn null_space(&self, x: Quaternion) -> Vec<Vector4<f64>> {
        let svd = self.jacobian(x).svd(false, true);
        let v_t = svd.v_t.expect("requested");
        (0..4)
            .filter(|&k| svd.singular_values[k] < NULLITY_TOL * self.scale)
            .map(|k| v_t.row(k).transpose())
            .collect()
    }
}

/// Deterministic seeds: an evenly strided subset of `{−r, −r/2, 0, r/2, r}⁴`.
fn seeds(r: f64) -> Vec<Quaternion> {
    let total = GRID_STEPS.pow(4);
    let value = |d: usize| -r + r * d as f64 / 2.0;
    (0..SEED_COUNT)
        .map(|k| {
            let mut t = k * total / SEED_COUNT;
            let mut c = [0.0; 4];
            for slot in c.iter_mut() {
                *slot = value(t % GRID_STEPS);
                t /= GRID_STEPS;
            }
            Quaternion::new(c[0], c[1], c[2], c[3])
        })
        .collect()
}

fn component_names() -> [&'static str; 4] {
    ["1", "i", "j", "k"]
}

fn describe(samples: &[LeftSolution], nullity: usize) -> (String, Option<f64>, Option<f64>, Vec<String>) {
    let qs: Vec<Quaternion> = samples.iter().map(|s| s.eigenvalue).collect();
    let spread = |f: &dyn Fn(&Quaternion) -> f64| {
        let vals: Vec<f64> = qs.iter().map(f).collect();
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        ((hi - lo) <= 1e-8 * (1.0 + hi.abs())).then(|| (hi + lo) / 2.0)
    };
    let constant_norm = spread(&|q| q.norm());
    let constant_real = spread(&|q| q.a);
    let comps = |q: &Quaternion| [q.a, q.b, q.c, q.d];
    let vanishing: Vec<String> = (0..4)
        .filter(|&k| qs.iter().all(|q| comps(q)[k].abs() <= 1e-8))
        .map(|k| component_names()[k].to_string())
        .collect();
    let mut text = format!("{nullity}-parameter family of left eigenvalues");
    if let Some(n) = constant_norm {
        text.push_str(&format!("; |q| = {n:.12}"));
    }
    if let Some(re) = constant_real {
        text.push_str(&format!("; Re q = {re:.12}"));
    }
    if !vanishing.is_empty() {
        text.push_str(&format!("; zero components: {}", vanishing.join(",")));
    }
    (text, constant_norm, constant_real, vanishing)
}

fn solution(m: &QuatMatrix, q: Quaternion, psi: Vec<Quaternion>, family: bool) -> Result<LeftSolution> {
    let residual = verify_left_pair(m, q, &QuatVector(psi.clone()))?;
    Ok(LeftSolution { eigenvalue: q, eigenvector: psi, residual, family })
}

fn lex_key(q: &Quaternion) -> [i64; 4] {
    [q.a, q.b, q.c, q.d].map(|v| (v * 1e8).round() as i64)
}

/// All left eigenpairs of a 2×2 quaternionic matrix reachable from the seed
/// grid, plus the `ψ₁ = 0` branch.
pub fn left_eig_2x2(m: &QuatMatrix) -> Result<LeftEigResult> {
    let n = m.ensure_square()?;
    if n != 2 {
        return Err(Error::NotTwoByTwo(n));
    }
    let (m11, m12, m21, m22) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let scale = 1.0 + m.norm();
    let quad = Quadratic { lead: m12, linear: m11 - m22, constant: m21, scale };
    let gate = LEFT_RESIDUAL_GATE;

    let mut isolated: Vec<Quaternion> = Vec::new();
    let mut degenerate: Vec<(Quaternion, Vec<Vector4<f64>>)> = Vec::new();
    for seed in seeds(scale) {
        let Some(x) = quad.newton(seed) else { continue };
        let null = quad.null_space(x);
        if null.is_empty() {
            if isolated.iter().all(|y| (*y - x).norm() > DEDUP_TOL) {
                isolated.push(x);
            }
        } else {
            degenerate.push((x, null));
        }
    }

    let mut solutions = Vec::new();
    let mut families = Vec::new();

    // Degenerate roots with the same nullity are treated as one family.
    let mut by_nullity: Vec<(usize, Vec<DegenerateRoot>)> = Vec::new();
    for (x, null) in degenerate {
        match by_nullity.iter_mut().find(|(k, _)| *k == null.len()) {
            Some((_, group)) => group.push((x, null)),
            None => by_nullity.push((null.len(), vec![(x, null)])),
        }
    }
    by_nullity.sort_by_key(|(k, _)| *k);
    for (nullity, group) in by_nullity {
        let mut members: Vec<Quaternion> = Vec::new();
        let step = 0.5 * scale;
        'outer: for (x0, null) in &group {
            for s in 0..FAMILY_SAMPLES {
                if members.len() >= FAMILY_SAMPLES {
                    break 'outer;
                }
                let mut dir = Vector4::zeros();
                for (t, v) in null.iter().enumerate() {
                    let angle = 0.9 * s as f64 + 1.7 * t as f64;
                    dir += v * angle.cos();
                }
                let start = if s == 0 { *x0 } else { *x0 + from_vec4(&(dir * step)) };
                let Some(y) = quad.newton(start) else { continue };
                if quad.null_space(y).len() != nullity {
                    continue;
                }
                if members.iter().all(|z| (*z - y).norm() > 1e-3) {
                    members.push(y);
                }
            }
        }
        let samples: Vec<LeftSolution> = members
            .iter()
            .map(|&x| solution(m, m11 + m12 * x, vec![Quaternion::ONE, x], true))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|s| s.residual <= gate)
            .collect();
        if samples.len() >= MIN_FAMILY_SAMPLES {
            let (description, constant_norm, constant_real, vanishing_components) = describe(&samples, nullity);
            families.push(LeftFamily {
                description,
                nullity,
                samples,
                constant_norm,
                constant_real,
                vanishing_components,
            });
        } else {
            for y in members {
                if isolated.iter().all(|z| (*z - y).norm() > DEDUP_TOL) {
                    isolated.push(y);
                }
            }
        }
    }

    let mut iso: Vec<LeftSolution> = Vec::new();
    for x in isolated {
        let s = solution(m, m11 + m12 * x, vec![Quaternion::ONE, x], false)?;
        if s.residual <= gate {
            iso.push(s);
        }
    }
    if m12.norm() <= 1e-12 * scale {
        let s = solution(m, m22, vec![Quaternion::ZERO, Quaternion::ONE], false)?;
        if s.residual <= gate {
            iso.push(s);
        }
    }
    iso.sort_by_key(|s| lex_key(&s.eigenvalue));
    solutions.extend(iso);
    for f in &families {
        solutions.extend(f.samples.iter().cloned());
    }
    if solutions.is_empty() {
        return Err(Error::NoRootsFound);
    }
    Ok(LeftEigResult { solutions, families })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MagnitudeReport {
    /// `|λ|` over the reduced right spectrum, ascending.
    pub right_magnitudes: Vec<f64>,
    /// `|q̃|` over isolated left solutions, plus one entry per family with a
    /// constant norm; ascending.
    pub left_magnitudes: Vec<f64>,
    pub equal: bool,
}

pub fn left_right_magnitude_report(m: &QuatMatrix) -> Result<MagnitudeReport> {
    let right = right_spectrum_quaternionic(m, &RightEigOptions::default())?;
    let left = left_eig_2x2(m)?;
    let mut right_magnitudes: Vec<f64> = right.reduced_spectrum.iter().map(|z| z.norm()).collect();
    let mut left_magnitudes: Vec<f64> = left.isolated().map(|s| s.eigenvalue.norm()).collect();
    left_magnitudes.extend(left.families.iter().filter_map(|f| f.constant_norm));
    right_magnitudes.sort_by(f64::total_cmp);
    left_magnitudes.sort_by(f64::total_cmp);
    let equal = real_multiset_distance(&right_magnitudes, &left_magnitudes) <= 1e-8;
    Ok(MagnitudeReport { right_magnitudes, left_magnitudes, equal })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SimilarityVerdict {
    /// Left spectra and complexified spectra both agree; similarity is not
    /// excluded.
    SameLeftSpectrumSameComplexSpectrum,
    /// Left spectra agree but the matrices cannot be similar.
    SameLeftSpectrumNotSimilar,
    DifferentLeftSpectrumSameComplexSpectrum,
    DifferentLeftSpectrumNotSimilar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimilarityReport {
    pub left_spectra_agree: bool,
    pub complex_spectra_agree: bool,
    pub complex_spectrum_m: Vec<Complex64>,
    pub complex_spectrum_n: Vec<Complex64>,
    pub verdict: SimilarityVerdict,
}

/// Compares isolated left spectra up to eigenclass, and complexified spectra
/// (a necessary condition for similarity).
pub fn compare_left_spectra_similarity(m: &QuatMatrix, n: &QuatMatrix) -> Result<SimilarityReport> {
    let lm = left_eig_2x2(m)?;
    let ln = left_eig_2x2(n)?;
    let classes = |r: &LeftEigResult| -> Vec<(f64, f64)> {
        r.isolated().map(|s| (s.eigenvalue.re(), s.eigenvalue.norm())).collect()
    };
    let (cm, cn) = (classes(&lm), classes(&ln));
    let isolated_agree = cm.len() == cn.len() && {
        let cost: Vec<Vec<f64>> = cm
            .iter()
            .map(|a| cn.iter().map(|b| (a.0 - b.0).abs().max((a.1 - b.1).abs())).collect())
            .collect();
        hungarian(&cost).iter().enumerate().all(|(r, &c)| cost[r][c] <= 1e-8)
    };
    let family_norms = |r: &LeftEigResult| -> Vec<f64> { r.families.iter().filter_map(|f| f.constant_norm).collect() };
    let families_agree = lm.families.len() == ln.families.len()
        && real_multiset_distance(&family_norms(&lm), &family_norms(&ln)) <= 1e-8;
    let left_spectra_agree = isolated_agree && families_agree;

    let tol = complex_eig::DEFAULT_EIG_TOL;
    let sm = complex_eig::eig(&complexify_matrix(m), tol)?.eigenvalues;
    let sn = complex_eig::eig(&complexify_matrix(n), tol)?.eigenvalues;
    let scale = sm.iter().chain(&sn).map(|z| z.norm()).fold(1.0, f64::max);
    let complex_spectra_agree = multiset_distance(&sm, &sn) <= 1e-8 * scale;
    let verdict = match (left_spectra_agree, complex_spectra_agree) {
        (true, true) => SimilarityVerdict::SameLeftSpectrumSameComplexSpectrum,
        (true, false) => SimilarityVerdict::SameLeftSpectrumNotSimilar,
        (false, true) => SimilarityVerdict::DifferentLeftSpectrumSameComplexSpectrum,
        (false, false) => SimilarityVerdict::DifferentLeftSpectrumNotSimilar,
    };
    Ok(SimilarityReport {
        left_spectra_agree,
        complex_spectra_agree,
        complex_spectrum_m: sm,
        complex_spectrum_n: sn,
        verdict,
    })
}
