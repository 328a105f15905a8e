//! Command front-end: matrix documents in, deterministic JSON (or text) out.
//!
//! A matrix document is a JSON object
//!
//! ```json
//! {"kind": "quaternion", "n": 2, "entries": [[[0,1,0,0], [0,0,1,0]], [[0,0,0,1], [0,1,0,0]]]}
//! ```
//!
//! with `kind` one of `quaternion` (entries `[a, b, c, d]`), `complex`
//! (entries `[re, im]`) or `hlcr` (entries `{"Q": [a, b, c, d], "P": [a, b, c, d]}`).
//!
//! Exit codes: 0 on success, 1 on numerical failure, 2 on rejected input.


use num_complex::Complex64;
use serde::Deserialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::complex_eig::{self, DEFAULT_EIG_TOL};
use crate::error::{Error, Result};
use crate::hlcr::HlcrElement;
use crate::left_eig::{self, LeftSolution};
use crate::matching::multiset_distance;
use crate::matrices::{
    complexify_matrix, dequaternionify_matrix, is_antihermitian, is_hermitian, ComplexMatrix,
    HlcrMatrix, Matrix, QuatMatrix,
};
use crate::quaternion::Quaternion;
use crate::right_eig::{self, Convention, RightEigOptions, DEFAULT_PAIR_TOL, RESIDUAL_GATE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    /// Complexify a quaternionic or complex-linear matrix (or translate a complex one back).
    Translate,
    /// Right eigenvalues.
    Eig,
    /// Right diagonalization.
    Diag,
    /// Left eigenvalues of a 2×2 quaternionic matrix.
    LeftEig,
    /// Compare left spectra and similarity of two 2×2 matrices.
    CompareLeft,
    /// Common eigenbasis of two commuting matrices.
    CoSpec,
    /// Hermitian matrix with the moduli of an anti-hermitian matrix's eigenvalues.
    HermFromAntiherm,
    /// Structural self-checks on the input.
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Translate => "translate",
            Command::Eig => "eig",
            Command::Diag => "diag",
            Command::LeftEig => "left-eig",
            Command::CompareLeft => "compare-left",
            Command::CoSpec => "co-spec",
            Command::HermFromAntiherm => "herm-from-antiherm",
            Command::Verify => "verify",
        }
    }

    /// Number of matrix documents the command consumes.
    pub fn inputs(self) -> usize {
        match self {
            Command::CompareLeft | Command::CoSpec => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug)]
pub struct CliConfig {
    pub command: Command,
    pub tol: f64,
    pub convention: Convention,
    pub format: OutputFormat,
    pub polar: bool,
    /// `eig`: run the plain complex eigensolver on the complexified matrix.
    pub complex: bool,
    /// `diag` on complex-linear input: requested spectrum order.
    pub order: Option<Vec<Complex64>>,
}

impl CliConfig {
    pub fn new(command: Command) -> Self {
        CliConfig {
            command,
            tol: DEFAULT_EIG_TOL,
            convention: Convention::default(),
            format: OutputFormat::Json,
            polar: false,
            complex: false,
            order: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub output: String,
}

#[derive(Clone, Debug)]
pub enum InputMatrix {
    Quaternion(QuatMatrix),
    Hlcr(HlcrMatrix),
    Complex(ComplexMatrix),
}

impl InputMatrix {
    fn kind(&self) -> &'static str {
        match self {
            InputMatrix::Quaternion(_) => "quaternion",
            InputMatrix::Hlcr(_) => "hlcr",
            InputMatrix::Complex(_) => "complex",
        }
    }

    fn complexified(&self) -> ComplexMatrix {
        match self {
            InputMatrix::Quaternion(m) => complexify_matrix(m),
            InputMatrix::Hlcr(m) => complexify_matrix(m),
            InputMatrix::Complex(m) => m.clone(),
        }
    }
}

/// Failures of the front-end itself, on top of library errors.
#[derive(Debug)]
enum CliError {
    Malformed(String),
    InvalidOption(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn reason(&self) -> &'static str {
        match self {
            CliError::Malformed(_) => "malformed-input",
            CliError::InvalidOption(_) => "invalid-option",
            CliError::Lib(e) => e.reason(),
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Malformed(m) | CliError::InvalidOption(m) => m.clone(),
            CliError::Lib(e) => e.to_string(),
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) | CliError::InvalidOption(_) => 2,
            CliError::Lib(e) => match e {
                Error::NonSquare { .. }
                | Error::DimensionMismatch { .. }
                | Error::OddDimension(_)
                | Error::NotTwoByTwo(_)
                | Error::NotAntiHermitian
                | Error::NotCommuting(_)
                | Error::DimensionTooLarge { .. }
                | Error::Unsupported(_) => 2,
                _ => 1,
            },
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Deserialize)]
struct Document {
    kind: String,
    n: usize,
    entries: Vec<Vec<Value>>,
}

fn numbers(v: &Value, len: usize, at: &str) -> CliResult<Vec<f64>> {
    let arr = v.as_array().ok_or_else(|| CliError::Malformed(format!("{at}: expected an array of {len} numbers")))?;
    if arr.len() != len {
        return Err(CliError::Malformed(format!("{at}: expected {len} numbers, found {}", arr.len())));
    }
    arr.iter()
        .map(|x| x.as_f64().ok_or_else(|| CliError::Malformed(format!("{at}: entry is not a number"))))
        .collect()
}

fn quaternion_entry(v: &Value, at: &str) -> CliResult<Quaternion> {
    let c = numbers(v, 4, at)?;
    Ok(Quaternion::new(c[0], c[1], c[2], c[3]))
}

fn hlcr_entry(v: &Value, at: &str) -> CliResult<HlcrElement> {
    let obj = v.as_object().ok_or_else(|| CliError::Malformed(format!("{at}: expected {{\"Q\": …, \"P\": …}}")))?;
    let part = |key: &str| match obj.get(key) {
        Some(x) => quaternion_entry(x, &format!("{at}.{key}")),
        None => Ok(Quaternion::ZERO),
    };
    Ok(HlcrElement::new(part("Q")?, part("P")?))
}

/// Parses a matrix document.
pub fn parse_document(text: &str) -> std::result::Result<InputMatrix, (String, &'static str)> {
    parse(text).map_err(|e| (e.message(), e.reason()))
}

fn parse(text: &str) -> CliResult<InputMatrix> {
    let doc: Document = serde_json::from_str(text).map_err(|e| CliError::Malformed(e.to_string()))?;
    let rows = doc.entries.len();
    if let Some(bad) = doc.entries.iter().find(|r| r.len() != doc.n) {
        return Err(Error::NonSquare { rows, cols: bad.len() }.into());
    }
    if rows != doc.n {
        return Err(Error::NonSquare { rows, cols: doc.n }.into());
    }
    fn build<T: crate::matrices::Scalar>(
        doc: &Document,
        f: impl Fn(&Value, &str) -> CliResult<T>,
    ) -> CliResult<Matrix<T>> {
        let rows = doc
            .entries
            .iter()
            .enumerate()
            .map(|(r, row)| row.iter().enumerate().map(|(c, v)| f(v, &format!("entries[{r}][{c}]"))).collect())
            .collect::<CliResult<Vec<Vec<T>>>>()?;
        if rows.is_empty() {
            return Ok(Matrix::zeros(0, 0));
        }
        Ok(Matrix::from_rows(rows)?)
    }
    match doc.kind.as_str() {
        "quaternion" => Ok(InputMatrix::Quaternion(build(&doc, quaternion_entry)?)),
        "hlcr" => Ok(InputMatrix::Hlcr(build(&doc, hlcr_entry)?)),
        "complex" => Ok(InputMatrix::Complex(build(&doc, |v, at| {
            let c = numbers(v, 2, at)?;
            Ok(Complex64::new(c[0], c[1]))
        })?)),
        other => Err(CliError::Malformed(format!("unknown kind {other:?}"))),
    }
}

fn c_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn polar_json(z: Complex64) -> Value {
    json!([z.norm(), z.arg()])
}

fn q_json(q: Quaternion) -> Value {
    json!([q.a, q.b, q.c, q.d])
}

fn h_json(e: HlcrElement) -> Value {
    json!({"Q": q_json(e.q), "P": q_json(e.p)})
}

fn qvec_json(v: &[Quaternion]) -> Value {
    Value::Array(v.iter().map(|&q| q_json(q)).collect())
}

fn matrix_json<T: crate::matrices::Scalar>(m: &Matrix<T>, f: impl Fn(T) -> Value) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(|&x| f(x)).collect())).collect())
}

fn document_json(m: &InputMatrix) -> Value {
    let (n, entries) = match m {
        InputMatrix::Quaternion(x) => (x.rows(), matrix_json(x, q_json)),
        InputMatrix::Hlcr(x) => (x.rows(), matrix_json(x, h_json)),
        InputMatrix::Complex(x) => (x.rows(), matrix_json(x, c_json)),
    };
    json!({"kind": m.kind(), "n": n, "entries": entries})
}

fn reals(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| json!(x)).collect())
}

fn put_spectrum(out: &mut Map<String, Value>, key: &str, values: &[Complex64], polar: bool) {
    out.insert(key.into(), Value::Array(values.iter().map(|&z| c_json(z)).collect()));
    if polar {
        out.insert(format!("{key}_polar"), Value::Array(values.iter().map(|&z| polar_json(z)).collect()));
    }
}

fn left_solution_json(s: &LeftSolution) -> Value {
    json!({
        "eigenvalue": q_json(s.eigenvalue),
        "eigenvector": qvec_json(&s.eigenvector),
        "residual": s.residual,
        "family": s.family,
    })
}

fn require_quaternion<'a>(m: &'a InputMatrix, what: &str) -> CliResult<&'a QuatMatrix> {
    match m {
        InputMatrix::Quaternion(q) => Ok(q),
        other => Err(Error::Unsupported(format!("{what} needs a quaternion matrix, got {}", other.kind())).into()),
    }
}

fn as_hlcr(m: &InputMatrix) -> CliResult<HlcrMatrix> {
    Ok(match m {
        InputMatrix::Quaternion(q) => HlcrMatrix::from(q),
        InputMatrix::Hlcr(h) => h.clone(),
        InputMatrix::Complex(c) => dequaternionify_matrix(c)?,
    })
}

fn opts(config: &CliConfig) -> RightEigOptions {
    RightEigOptions { eig_tol: config.tol, pair_tol: DEFAULT_PAIR_TOL, convention: config.convention }
}

fn cmd_translate(m: &InputMatrix) -> CliResult<Map<String, Value>> {
    let translated = match m {
        InputMatrix::Complex(c) => InputMatrix::Hlcr(dequaternionify_matrix(c)?),
        other => InputMatrix::Complex(other.complexified()),
    };
    let mut out = Map::new();
    out.insert("matrix".into(), document_json(&translated));
    Ok(out)
}

fn cmd_complex_eig(c: &ComplexMatrix, config: &CliConfig) -> CliResult<Map<String, Value>> {
    let r = complex_eig::eig(c, config.tol)?;
    let mut out = Map::new();
    put_spectrum(&mut out, "eigenvalues", &r.eigenvalues, config.polar);
    out.insert(
        "eigenvectors".into(),
        Value::Array((0..r.eigenvalues.len()).map(|k| Value::Array(r.eigenvector(k).into_iter().map(c_json).collect())).collect()),
    );
    out.insert("residuals".into(), reals(&r.residuals));
    out.insert("flagged".into(), json!(r.flagged));
    out.insert("defective".into(), json!(r.defective));
    out.insert("condition_estimate".into(), json!(r.condition_estimate));
    Ok(out)
}

fn cmd_eig(m: &InputMatrix, config: &CliConfig) -> CliResult<Map<String, Value>> {
    if config.complex {
        return cmd_complex_eig(&m.complexified(), config);
    }
    match m {
        InputMatrix::Quaternion(q) => {
            let r = right_eig::right_spectrum_quaternionic(q, &opts(config))?;
            let mut out = Map::new();
            put_spectrum(&mut out, "reduced_spectrum", &r.reduced_spectrum, config.polar);
            put_spectrum(&mut out, "full_spectrum", &r.full_spectrum, config.polar);
            out.insert("eigenvectors".into(), Value::Array(r.eigenvectors.iter().map(|v| qvec_json(v)).collect()));
            out.insert("residuals".into(), reals(&r.residuals));
            out.insert("diagonalizable".into(), json!(r.diagonalizable));
            out.insert("condition".into(), json!(r.condition));
            Ok(out)
        }
        InputMatrix::Hlcr(h) => {
            let r = right_eig::right_spectrum_complexlinear(h, None, config.tol)?;
            let mut out = Map::new();
            put_spectrum(&mut out, "spectrum", &r.spectrum, config.polar);
            out.insert("eigenvectors".into(), Value::Array(r.eigenvectors.iter().map(|v| qvec_json(v)).collect()));
            out.insert("residuals".into(), reals(&r.residuals));
            out.insert("diagonal".into(), matrix_json(&r.diagonal, h_json));
            out.insert("condition".into(), json!(r.condition));
            Ok(out)
        }
        InputMatrix::Complex(c) => cmd_complex_eig(c, config),
    }
}

fn cmd_diag(m: &InputMatrix, config: &CliConfig) -> CliResult<Map<String, Value>> {
    let mut out = Map::new();
    match m {
        InputMatrix::Quaternion(q) => {
            let d = right_eig::diagonalize_quaternionic(q, &opts(config))?;
            out.insert("s_h".into(), matrix_json(&d.s_h, q_json));
            out.insert("d".into(), matrix_json(&d.d, q_json));
            out.insert("residual".into(), json!(d.residual));
            put_spectrum(&mut out, "reduced_spectrum", &d.eigen.reduced_spectrum, config.polar);
            out.insert("eigenvector_residuals".into(), reals(&d.eigen.residuals));
        }
        other => {
            let h = as_hlcr(other)?;
            let d = right_eig::diagonalize_complexlinear(&h, config.order.as_deref(), config.tol)?;
            out.insert("s_c".into(), matrix_json(&d.s_c, h_json));
            out.insert("d".into(), matrix_json(&d.d, h_json));
            out.insert("residual".into(), json!(d.residual));
            put_spectrum(&mut out, "spectrum", &d.eigen.spectrum, config.polar);
            out.insert("eigenvector_residuals".into(), reals(&d.eigen.residuals));
        }
    }
    Ok(out)
}

fn cmd_left_eig(m: &InputMatrix) -> CliResult<Map<String, Value>> {
    let q = require_quaternion(m, "left-eig")?;
    let r = left_eig::left_eig_2x2(q)?;
    let mut out = Map::new();
    out.insert("solutions".into(), Value::Array(r.solutions.iter().map(left_solution_json).collect()));
    out.insert(
        "families".into(),
        Value::Array(
            r.families
                .iter()
                .map(|f| {
                    json!({
                        "description": f.description,
                        "nullity": f.nullity,
                        "sample_count": f.samples.len(),
                        "constant_norm": f.constant_norm,
                        "constant_real": f.constant_real,
                        "vanishing_components": f.vanishing_components,
                    })
                })
                .collect(),
        ),
    );
    let rep = left_eig::left_right_magnitude_report(q)?;
    out.insert(
        "magnitudes".into(),
        json!({"right": reals(&rep.right_magnitudes), "left": reals(&rep.left_magnitudes), "equal": rep.equal}),
    );
    Ok(out)
}

fn cmd_compare_left(a: &InputMatrix, b: &InputMatrix, config: &CliConfig) -> CliResult<Map<String, Value>> {
    let m = require_quaternion(a, "compare-left")?;
    let n = require_quaternion(b, "compare-left")?;
    let r = left_eig::compare_left_spectra_similarity(m, n)?;
    let mut out = Map::new();
    out.insert("left_spectra_agree".into(), json!(r.left_spectra_agree));
    out.insert("complex_spectra_agree".into(), json!(r.complex_spectra_agree));
    put_spectrum(&mut out, "complex_spectrum_first", &r.complex_spectrum_m, config.polar);
    put_spectrum(&mut out, "complex_spectrum_second", &r.complex_spectrum_n, config.polar);
    out.insert("verdict".into(), serde_json::to_value(r.verdict).expect("enum serializes"));
    Ok(out)
}

fn cmd_co_spec(a: &InputMatrix, b: &InputMatrix, config: &CliConfig) -> CliResult<Map<String, Value>> {
    let m1 = require_quaternion(a, "co-spec")?;
    let m2 = require_quaternion(b, "co-spec")?;
    let r = right_eig::co_spectrum(m1, m2, config.tol)?;
    let mut out = Map::new();
    out.insert("basis".into(), Value::Array(r.basis.iter().map(|v| qvec_json(v)).collect()));
    let first: Vec<Complex64> = r.pairs.iter().map(|p| p.0).collect();
    let second: Vec<Complex64> = r.pairs.iter().map(|p| p.1).collect();
    put_spectrum(&mut out, "eigenvalues_first", &first, config.polar);
    put_spectrum(&mut out, "eigenvalues_second", &second, config.polar);
    let residuals = |m: &QuatMatrix, ls: &[Complex64]| -> Result<Vec<f64>> {
        r.basis.iter().zip(ls).map(|(v, &l)| right_eig::right_residual(m, v, l)).collect()
    };
    out.insert("residuals_first".into(), reals(&residuals(m1, &first)?));
    out.insert("residuals_second".into(), reals(&residuals(m2, &second)?));
    Ok(out)
}

fn cmd_herm(m: &InputMatrix, config: &CliConfig) -> CliResult<Map<String, Value>> {
    let a = require_quaternion(m, "herm-from-antiherm")?;
    let h = right_eig::hermitian_from_antihermitian(a, &opts(config))?;
    let spec = right_eig::right_spectrum_quaternionic(a, &opts(config))?;
    let mut out = Map::new();
    out.insert("hermitian".into(), matrix_json(&h, q_json));
    put_spectrum(&mut out, "antihermitian_spectrum", &spec.reduced_spectrum, config.polar);
    out.insert("eigenvector_residuals".into(), reals(&spec.residuals));
    out.insert("hermitian_deviation".into(), json!(h.max_abs_diff(&h.adjoint())));
    Ok(out)
}

/// Each check: (name, measured value, bound).
fn verify_checks(m: &InputMatrix, config: &CliConfig) -> CliResult<Vec<(String, f64, f64)>> {
    let eps = f64::EPSILON;
    let mut checks = Vec::new();
    match m {
        InputMatrix::Quaternion(q) => {
            let n = q.rows();
            let c = complexify_matrix(q);
            let hom = complexify_matrix(&q.matmul(q)?).max_abs_diff(&c.matmul(&c)?);
            checks.push(("homomorphism".into(), hom, 16.0 * eps * (q.norm() * q.norm()).max(1.0)));
            let round = dequaternionify_matrix(&c)?.max_abs_diff(&HlcrMatrix::from(q));
            checks.push(("round_trip".into(), round, 0.0));
            // S̄·C̄·S̄⁻¹ = C with S̄ = 1ₙ ⊗ [[0, −1], [1, 0]].
            let sym = ComplexMatrix::from_fn(2 * n, 2 * n, |r, col| {
                let (br, bc) = (r / 2 * 2, col / 2 * 2);
                let (lr, lc) = (1 - (r - br), 1 - (col - bc));
                let sign = if (r - br) == (col - bc) { 1.0 } else { -1.0 };
                c[(br + lr, bc + lc)].conj() * sign
            });
            checks.push(("block_symmetry".into(), sym.max_abs_diff(&c), 0.0));
            let r = complex_eig::eig(&c, config.tol)?;
            let conj: Vec<Complex64> = r.eigenvalues.iter().map(|z| z.conj()).collect();
            let scale = r.eigenvalues.iter().map(|z| z.norm()).fold(1.0, f64::max);
            checks.push(("conjugate_closure".into(), multiset_distance(&r.eigenvalues, &conj), DEFAULT_PAIR_TOL * scale));
            let mut partner_res: f64 = 0.0;
            let right = right_eig::right_spectrum_quaternionic(q, &opts(config))?;
            for (psi, &l) in right.eigenvectors.iter().zip(&right.reduced_spectrum) {
                let pj = psi.mul_right(Quaternion::J);
                partner_res = partner_res.max(right_eig::right_residual(q, &pj, l.conj())?);
            }
            checks.push(("partner_residual".into(), partner_res, RESIDUAL_GATE * q.norm().max(1.0)));
            let max_res = right.residuals.iter().cloned().fold(0.0, f64::max);
            checks.push(("eigenpair_residual".into(), max_res, RESIDUAL_GATE * q.norm().max(1.0)));
        }
        InputMatrix::Hlcr(h) => {
            let c = complexify_matrix(h);
            let hom = complexify_matrix(&h.matmul(h)?).max_abs_diff(&c.matmul(&c)?);
            checks.push(("homomorphism".into(), hom, 16.0 * eps * (h.norm() * h.norm()).max(1.0)));
            checks.push(("round_trip".into(), dequaternionify_matrix(&c)?.max_abs_diff(h), 0.0));
            let r = right_eig::right_spectrum_complexlinear(h, None, config.tol)?;
            let max_res = r.residuals.iter().cloned().fold(0.0, f64::max);
            checks.push(("eigenpair_residual".into(), max_res, RESIDUAL_GATE * h.norm().max(1.0)));
        }
        InputMatrix::Complex(c) => {
            let back = complexify_matrix(&dequaternionify_matrix(c)?);
            checks.push(("round_trip".into(), back.max_abs_diff(c), 4.0 * eps * c.norm().max(1.0)));
            let r = complex_eig::eig(c, config.tol)?;
            let max_res = r.residuals.iter().cloned().fold(0.0, f64::max);
            checks.push(("eigenpair_residual".into(), max_res, config.tol * c.norm().max(1.0)));
        }
    }
    Ok(checks)
}

fn cmd_verify(m: &InputMatrix, config: &CliConfig) -> CliResult<(Map<String, Value>, bool)> {
    let checks = verify_checks(m, config)?;
    let mut all = true;
    let mut table = Map::new();
    for (name, value, bound) in checks {
        let passed = value <= bound;
        all &= passed;
        table.insert(name, json!({"value": value, "bound": bound, "passed": passed}));
    }
    let mut out = Map::new();
    out.insert("checks".into(), Value::Object(table));
    out.insert("all_passed".into(), json!(all));
    if let InputMatrix::Quaternion(q) = m {
        out.insert(
            "properties".into(),
            json!({"hermitian": is_hermitian(q, 1e-9), "antihermitian": is_antihermitian(q, 1e-9)}),
        );
    }
    Ok((out, all))
}

fn hash(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn dispatch(config: &CliConfig, inputs: &[InputMatrix]) -> CliResult<(Map<String, Value>, bool)> {
    let ok = |m: CliResult<Map<String, Value>>| m.map(|m| (m, true));
    match config.command {
        Command::Translate => ok(cmd_translate(&inputs[0])),
        Command::Eig => ok(cmd_eig(&inputs[0], config)),
        Command::Diag => ok(cmd_diag(&inputs[0], config)),
        Command::LeftEig => ok(cmd_left_eig(&inputs[0])),
        Command::CompareLeft => ok(cmd_compare_left(&inputs[0], &inputs[1], config)),
        Command::CoSpec => ok(cmd_co_spec(&inputs[0], &inputs[1], config)),
        Command::HermFromAntiherm => ok(cmd_herm(&inputs[0], config)),
        Command::Verify => cmd_verify(&inputs[0], config),
    }
}

fn header(config: &CliConfig, texts: &[String]) -> Map<String, Value> {
    let mut out = Map::new();
    out.insert("command".into(), json!(config.command.name()));
    out.insert("input_sha256".into(), Value::Array(texts.iter().map(|t| json!(hash(t))).collect()));
    out.insert(
        "tolerances".into(),
        json!({"eig": config.tol, "pair": DEFAULT_PAIR_TOL, "residual_gate": RESIDUAL_GATE}),
    );
    out.insert("convention".into(), serde_json::to_value(config.convention).expect("enum serializes"));
    out
}

/// Runs one command on the given document texts.
pub fn run(config: &CliConfig, texts: &[String]) -> Outcome {
    let mut doc = header(config, texts);
    let result = (|| -> CliResult<(Map<String, Value>, bool)> {
        if !(config.tol > 0.0 && config.tol.is_finite()) {
            return Err(CliError::InvalidOption(format!("tolerance must be positive, got {}", config.tol)));
        }
        let want = config.command.inputs();
        if texts.len() != want {
            return Err(CliError::InvalidOption(format!(
                "{} takes {want} input document(s), got {}",
                config.command.name(),
                texts.len()
            )));
        }
        let inputs = texts.iter().map(|t| parse(t)).collect::<CliResult<Vec<_>>>()?;
        dispatch(config, &inputs)
    })();
    let exit_code = match result {
        Ok((body, passed)) => {
            doc.insert("status".into(), json!(if passed { "ok" } else { "failed" }));
            doc.extend(body);
            if passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            doc.insert("status".into(), json!("error"));
            doc.insert("reason".into(), json!(e.reason()));
            doc.insert("message".into(), json!(e.message()));
            e.exit_code()
        }
    };
    let value = Value::Object(doc);
    let output = match config.format {
        OutputFormat::Json => to_json(&value),
        OutputFormat::Text => to_text(&value),
    };
    Outcome { exit_code, output }
}

fn json_number(n: &serde_json::Number) -> String {
    match n.as_f64() {
        Some(x) if !n.is_i64() && !n.is_u64() => format!("{x:.16e}"),
        _ => n.to_string(),
    }
}

fn json_inline(v: &Value) -> String {
    match v {
        Value::Number(n) => json_number(n),
        Value::Array(a) => format!("[{}]", a.iter().map(json_inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

/// Arrays of scalars and arrays of such arrays stay on one line.
fn fits_inline(v: &Value, depth: usize) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(a) => depth < 2 && a.iter().all(|x| fits_inline(x, depth + 1)),
        _ => true,
    }
}

fn write_json(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_json(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() && !fits_inline(v, 0) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad);
                write_json(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        other => out.push_str(&json_inline(other)),
    }
}

/// Deterministic JSON: sorted keys, floats as `{:.16e}` (17 significant
/// digits), short numeric arrays inline.
pub fn to_json(value: &Value) -> String {
    let mut out = String::new();
    write_json(value, 0, &mut out);
    out.push('\n');
    out
}

fn text_scalar(v: &Value) -> String {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if !n.is_i64() && !n.is_u64() => format!("{x:.10e}"),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(text_scalar).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => to_json(v).trim_end().to_string(),
        other => other.to_string(),
    }
}

fn text_lines(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                text_lines(&key, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.as_array().is_some_and(|a| a.iter().any(|y| y.is_array() || y.is_object()))) => {
            for (i, x) in items.iter().enumerate() {
                text_lines(&format!("{prefix}[{i}]"), x, out);
            }
        }
        other => out.push(format!("{prefix}: {}", text_scalar(other))),
    }
}

/// One `key: value` line per leaf, keys in sorted order.
pub fn to_text(value: &Value) -> String {
    let mut lines = Vec::new();
    text_lines("", value, &mut lines);
    lines.join("\n") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{"kind":"quaternion","n":2,"entries":[[[0,1,0,0],[0,0,1,0]],[[0,0,0,1],[0,1,0,0]]]}"#;

    fn run1(cmd: Command, text: &str) -> (i32, Value) {
        let out = run(&CliConfig::new(cmd), &[text.to_string()]);
        (out.exit_code, serde_json::from_str(&out.output).unwrap())
    }

    #[test]
    fn eig_on_sample() {
        let (code, v) = run1(Command::Eig, SAMPLE);
        assert_eq!(code, 0);
        assert_eq!(v["status"], "ok");
        assert_eq!(v["reduced_spectrum"].as_array().unwrap().len(), 2);
        assert_eq!(v["full_spectrum"].as_array().unwrap().len(), 4);
        assert_eq!(v["convention"], "positive-imag");
    }

    #[test]
    fn translate_is_complexify() {
        let (code, v) = run1(Command::Translate, SAMPLE);
        assert_eq!(code, 0);
        let InputMatrix::Quaternion(q) = parse(SAMPLE).unwrap() else { panic!() };
        let c = complexify_matrix(&q);
        let doc = serde_json::to_string(&v["matrix"]).unwrap();
        let InputMatrix::Complex(back) = parse(&doc).unwrap() else { panic!() };
        assert_eq!(back, c);
    }

    #[test]
    fn non_square_input() {
        let row: Vec<[f64; 4]> = vec![[1.0, 0.0, 0.0, 0.0]; 5];
        let doc = json!({"kind": "quaternion", "n": 3, "entries": [row.clone(), row.clone(), row]}).to_string();
        let (code, v) = run1(Command::Eig, &doc);
        assert_eq!(code, 2);
        assert_eq!(v["reason"], "non-square");
        assert_eq!(v["status"], "error");
    }

    #[test]
    fn malformed_json() {
        let (code, v) = run1(Command::Eig, "{not json");
        assert_eq!(code, 2);
        assert_eq!(v["reason"], "malformed-input");
    }

    #[test]
    fn defective_diag_exit_one() {
        let doc = r#"{"kind":"quaternion","n":2,"entries":[[[0,1,0,0],[1,0,0,0]],[[0,0,0,0],[0,1,0,0]]]}"#;
        let (code, v) = run1(Command::Diag, doc);
        assert_eq!(code, 1);
        assert_eq!(v["reason"], "not-diagonalizable");
    }

    #[test]
    fn floats_have_seventeen_digits() {
        let s = to_json(&json!({"x": 0.1, "b": [1.5]}));
        assert!(s.contains("1.0000000000000001e-1"));
        assert!(s.find("\"b\"").unwrap() < s.find("\"x\"").unwrap());
    }

    #[test]
    fn output_is_deterministic() {
        let a = run(&CliConfig::new(Command::LeftEig), &[SAMPLE.to_string()]);
        let b = run(&CliConfig::new(Command::LeftEig), &[SAMPLE.to_string()]);
        assert_eq!(a, b);
    }

    #[test]
    fn verify_passes_on_sample() {
        let (code, v) = run1(Command::Verify, SAMPLE);
        assert_eq!(code, 0, "{v}");
        assert_eq!(v["all_passed"], true);
    }

    #[test]
    fn text_format() {
        let mut cfg = CliConfig::new(Command::Eig);
        cfg.format = OutputFormat::Text;
        let out = run(&cfg, &[SAMPLE.to_string()]);
        assert!(out.output.lines().any(|l| l.starts_with("reduced_spectrum: ")));
    }
}
