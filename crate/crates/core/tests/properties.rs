mod common;

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use qeig::complex_eig::DEFAULT_EIG_TOL;
use qeig::hlcr::{block_max_abs_diff, block_mul};
use qeig::left_eig::{compare_left_spectra_similarity, left_eig_2x2, verify_left_pair};
use qeig::matching::{multiset_distance, real_multiset_distance};
use qeig::matrices::{
    complex_projection, complexify_vector, dequaternionify_vector, inner_product, is_antihermitian, is_hermitian,
    narrow_to_quaternionic,
};
use qeig::quaternion::{conjugating_unit, same_eigenclass};
use qeig::right_eig::{
    diagonalize_complexlinear, partner_eigenvector, quat_columns, rephase_eigenpair, right_residual,
};
use qeig::{
    charpoly, complexify_matrix, dequaternionify_matrix, diagonalize_quaternionic, eig, hermitian_from_antihermitian,
    right_spectrum_quaternionic, roots, ComplexMatrix, Convention, HlcrElement, Matrix, QuatMatrix, QuatVector,
    Quaternion as Q, RightEigOptions, UnitQuaternion,
};

const EPS: f64 = f64::EPSILON;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn eigenclass_preserved_by_unit_conjugation(q in quaternion(), u in unit_quaternion()) {
        let u = UnitQuaternion::new(u).unwrap();
        prop_assert!(same_eigenclass(&q, &u.conjugate_by(q), 1e-12));
    }

    #[test]
    fn conjugating_unit_round_trip(p in quaternion(), u in unit_quaternion()) {
        let q = UnitQuaternion::new(u).unwrap().conjugate_by(p);
        let w = conjugating_unit(&q, &p).unwrap();
        prop_assert!(w.conjugate_by(p).max_abs_diff(&q) <= 1e-10);
    }

    #[test]
    fn norm_is_multiplicative(p in quaternion(), q in quaternion()) {
        let lhs = (p * q).norm();
        let rhs = p.norm() * q.norm();
        prop_assert!((lhs - rhs).abs() <= 8.0 * EPS * rhs.max(f64::MIN_POSITIVE));
    }

    #[test]
    fn conjugation_reverses_products(p in quaternion(), q in quaternion()) {
        prop_assert!((p * q).conj().max_abs_diff(&(q.conj() * p.conj())) <= 4.0 * EPS * 4.0);
    }

    #[test]
    fn block_map_is_homomorphism(q1 in quaternion(), p1 in quaternion(), q2 in quaternion(), p2 in quaternion()) {
        let (e1, e2) = (HlcrElement::new(q1, p1), HlcrElement::new(q2, p2));
        let lhs = e1.compose(&e2).to_block();
        let rhs = block_mul(&e1.to_block(), &e2.to_block());
        prop_assert!(block_max_abs_diff(&lhs, &rhs) <= 8.0 * EPS * 4.0);
    }

    #[test]
    fn block_correspondence_is_bijective(q in quaternion(), p in quaternion(), b in prop::array::uniform4(complex())) {
        let e = HlcrElement::new(q, p);
        prop_assert!(HlcrElement::from_block(&e.to_block()).max_abs_diff(&e) <= 4.0 * EPS);
        let block = [[b[0], b[1]], [b[2], b[3]]];
        prop_assert!(block_max_abs_diff(&HlcrElement::from_block(&block).to_block(), &block) <= 4.0 * EPS);
    }

    #[test]
    fn left_only_blocks_have_symplectic_symmetry(q in quaternion()) {
        // S·B̄·S⁻¹ = B with S = [[0,−1],[1,0]].
        let b = HlcrElement::from(q).to_block();
        let sbs = [[b[1][1].conj(), -b[1][0].conj()], [-b[0][1].conj(), b[0][0].conj()]];
        prop_assert!(block_max_abs_diff(&sbs, &b) == 0.0);
    }

    #[test]
    fn vector_round_trip(v in (1usize..8).prop_flat_map(quat_vector)) {
        prop_assert_eq!(dequaternionify_vector(&complexify_vector(&v)).unwrap(), v);
    }

    #[test]
    fn right_i_is_antihermitian_in_complex_geometry(phi in quat_vector(3), psi in quat_vector(3)) {
        let lhs = complex_projection(&inner_product(&phi, &psi.mul_right(Q::I)).unwrap());
        let rhs = complex_projection(&inner_product(&phi.mul_right(Q::I), &psi).unwrap());
        prop_assert!((lhs + rhs).norm() <= 8.0 * EPS * 16.0);
    }
}

proptest! {
    #![proptest_config(config(500))]

    #[test]
    fn complexification_is_homomorphism(
        (a, b) in (1usize..=8).prop_flat_map(|n| (quat_matrix(n), quat_matrix(n)))
    ) {
        let lhs = complexify_matrix(&a.matmul(&b).unwrap());
        let rhs = complexify_matrix(&a).matmul(&complexify_matrix(&b)).unwrap();
        prop_assert!(max_norm(&lhs.sub(&rhs)) <= 16.0 * EPS * a.norm() * b.norm());
    }

    #[test]
    fn complexified_blocks_are_symplectic(m in sized_quat_matrix(1..=8)) {
        // C[2l+1][2m+1] = conj(C[2l][2m]) and C[2l+1][2m] = −conj(C[2l][2m+1]).
        let c = complexify_matrix(&m);
        let n = m.rows();
        for l in 0..n {
            for k in 0..n {
                let (r, s) = (2 * l, 2 * k);
                prop_assert_eq!(c[(r + 1, s + 1)], c[(r, s)].conj());
                prop_assert_eq!(c[(r + 1, s)], -c[(r, s + 1)].conj());
            }
        }
    }

    #[test]
    fn matrix_round_trip(m in sized_quat_matrix(1..=8)) {
        let back = narrow_to_quaternionic(&dequaternionify_matrix(&complexify_matrix(&m)).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&m) == 0.0);
    }
}

fn unitary_similarity_distance(m: &ComplexMatrix, u: &ComplexMatrix) -> f64 {
    let u = unitary_from(u);
    let sim = u.conj_transpose().matmul(m).unwrap().matmul(&u).unwrap();
    let a = eig(m, DEFAULT_EIG_TOL).unwrap().eigenvalues;
    let b = eig(&sim, DEFAULT_EIG_TOL).unwrap().eigenvalues;
    multiset_distance(&a, &b)
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn eig_agrees_with_charpoly_roots(m in (1usize..=10).prop_flat_map(complex_matrix)) {
        let e = eig(&m, DEFAULT_EIG_TOL).unwrap().eigenvalues;
        let r = roots(&charpoly(&m).unwrap()).unwrap();
        prop_assert!(multiset_distance(&e, &r) <= 1e-6, "distance {}", multiset_distance(&e, &r));
    }

    #[test]
    fn eig_is_similarity_invariant((m, u) in (1usize..=8).prop_flat_map(|n| (complex_matrix(n), complex_matrix(n)))) {
        prop_assert!(unitary_similarity_distance(&m, &u) <= 1e-8);
    }

    #[test]
    fn eig_residuals_are_small(m in (1usize..=8).prop_flat_map(complex_matrix)) {
        let r = eig(&m, DEFAULT_EIG_TOL).unwrap();
        prop_assert_eq!(r.eigenvalues.len(), m.rows());
        prop_assert!(r.residuals.iter().all(|&x| x <= 1e-9 * m.norm()));
    }

    #[test]
    fn quaternionic_charpoly_is_real(m in sized_quat_matrix(1..=6)) {
        let c = complexify_matrix(&m);
        let p = charpoly(&c).unwrap();
        let d = c.rows() as i32;
        let bound = 1e-10 * m.norm().max(1.0).powi(d);
        prop_assert!(p.iter().all(|z| z.im.abs() <= bound));
    }

    #[test]
    fn complexified_spectrum_is_conjugate_closed(m in sized_quat_matrix(1..=8)) {
        let e = eig(&complexify_matrix(&m), DEFAULT_EIG_TOL).unwrap().eigenvalues;
        let conj: Vec<Complex64> = e.iter().map(|z| z.conj()).collect();
        prop_assert!(multiset_distance(&e, &conj) <= 1e-8);
    }

    #[test]
    fn partner_vectors_are_eigenvectors(m in sized_quat_matrix(1..=8)) {
        let c = complexify_matrix(&m);
        let r = eig(&c, DEFAULT_EIG_TOL).unwrap();
        for (k, &lambda) in r.eigenvalues.iter().enumerate() {
            let phi = r.eigenvector(k);
            let res = |v: &[Complex64], l: Complex64| {
                let cv = c.mul_vec(v).unwrap();
                cv.iter().zip(v).map(|(a, b)| (a - b * l).norm_sqr()).sum::<f64>().sqrt()
            };
            let partner = partner_eigenvector(&phi).unwrap();
            // Rounding of the two matrix-vector products differs in summation order.
            let rounding = 8.0 * EPS * c.norm() * qeig::linalg::vec_norm(&phi);
            prop_assert!(res(&partner, lambda.conj()) <= res(&phi, lambda) * (1.0 + 4.0 * EPS) + rounding);
        }
    }

    #[test]
    fn right_eigenpairs_and_j_partners(m in sized_quat_matrix(1..=8)) {
        let r = right_spectrum_quaternionic(&m, &RightEigOptions::default()).unwrap();
        prop_assert_eq!(r.reduced_spectrum.len(), m.rows());
        prop_assert_eq!(r.full_spectrum.len(), 2 * m.rows());
        for (psi, &lambda) in r.eigenvectors.iter().zip(&r.reduced_spectrum) {
            let bound = 1e-9 * m.norm() * psi.norm();
            prop_assert!(right_residual(&m, psi, lambda).unwrap() <= bound);
            prop_assert!(right_residual(&m, &psi.mul_right(Q::J), lambda.conj()).unwrap() <= bound);
            let in_full = r.full_spectrum.iter().any(|z| (z - lambda).norm() <= 1e-8);
            let conj_in_full = r.full_spectrum.iter().any(|z| (z - lambda.conj()).norm() <= 1e-8);
            prop_assert!(in_full && conj_in_full);
        }
    }

    #[test]
    fn separated_eigenvectors_are_independent(m in quat_matrix(2)) {
        let r = right_spectrum_quaternionic(&m, &RightEigOptions::default()).unwrap();
        let (l1, l2) = (r.reduced_spectrum[0], r.reduced_spectrum[1]);
        prop_assume!((l1 - l2).norm() > 1e-6 && (l1 - l2.conj()).norm() > 1e-6);
        let x = complexify_matrix(&quat_columns(&r.eigenvectors, 2));
        prop_assert!(qeig::linalg::condition_one(&x) < 1e12);
    }

    #[test]
    fn convention_switch_conjugates_representatives(m in sized_quat_matrix(1..=6)) {
        let pos = right_spectrum_quaternionic(&m, &RightEigOptions::default()).unwrap();
        let opts = RightEigOptions { convention: Convention::NegativeImag, ..Default::default() };
        let neg = right_spectrum_quaternionic(&m, &opts).unwrap();
        let conj: Vec<Complex64> = pos.reduced_spectrum.iter().map(|z| z.conj()).collect();
        prop_assert!(multiset_distance(&neg.reduced_spectrum, &conj) <= 1e-8);
        prop_assert!(multiset_distance(&neg.full_spectrum, &pos.full_spectrum) <= 1e-8);
    }

    #[test]
    fn rephasing_preserves_residual(m in sized_quat_matrix(1..=6), u in unit_quaternion()) {
        let r = right_spectrum_quaternionic(&m, &RightEigOptions::default()).unwrap();
        let u = UnitQuaternion::new(u).unwrap();
        for (psi, &lambda) in r.eigenvectors.iter().zip(&r.reduced_spectrum) {
            let (pu, lu) = rephase_eigenpair(psi, lambda, &u);
            let res = m.apply(&pu).unwrap().sub(&pu.mul_right(lu)).norm();
            prop_assert!(res <= 1e-9 * m.norm().max(1.0));
        }
    }

    #[test]
    fn diagonalizer_recovers_constructed_spectrum(
        (s, d) in (1usize..=8).prop_flat_map(|n| (quat_matrix(n), prop::collection::vec(complex(), n)))
    ) {
        let s = s.add(&QuatMatrix::identity(s.rows()).map(|q| *q * 2.0));
        let s_inv = s.inverse().unwrap();
        let diag = QuatMatrix::from_diagonal(&d.iter().map(|&z| Q::from(z)).collect::<Vec<_>>());
        let m = s_inv.matmul(&diag).unwrap().matmul(&s).unwrap();
        let cond = qeig::linalg::condition_one(&complexify_matrix(&s));
        prop_assume!(cond < 1e4);
        match diagonalize_quaternionic(&m, &RightEigOptions::default()) {
            Ok(dz) => {
                prop_assert!(dz.residual <= 1e-8 * m.norm().max(1.0));
                let got: Vec<Complex64> = dz.eigen.full_spectrum.clone();
                let want: Vec<Complex64> = d.iter().flat_map(|&z| [z, z.conj()]).collect();
                prop_assert!(multiset_distance(&got, &want) <= 1e-6);
            }
            // Near-coincident eigenvalues may legitimately look defective.
            Err(e) => {
                let close = d.iter().enumerate().any(|(a, x)| {
                    d.iter().skip(a + 1).any(|y| (x - y).norm() < 1e-3 || (x - y.conj()).norm() < 1e-3)
                }) || d.iter().any(|z| z.im.abs() < 1e-3);
                prop_assert!(close, "unexpected failure {e:?}");
            }
        }
    }

    #[test]
    fn complexlinear_diagonalizer_residual(m in (1usize..=4).prop_flat_map(hlcr_matrix)) {
        let d = diagonalize_complexlinear(&m, None, DEFAULT_EIG_TOL).unwrap();
        prop_assert!(d.residual <= 1e-8 * m.norm());
    }

    #[test]
    fn hermitian_from_random_antihermitian(b in quat_matrix(3)) {
        let a = antihermitian_part(&b);
        let opts = RightEigOptions::default();
        let h = hermitian_from_antihermitian(&a, &opts).unwrap();
        prop_assert!(is_hermitian(&h, 1e-9));
        let sa: Vec<f64> = right_spectrum_quaternionic(&a, &opts).unwrap().reduced_spectrum.iter().map(|z| z.norm()).collect();
        let sh: Vec<f64> = right_spectrum_quaternionic(&h, &opts).unwrap().reduced_spectrum.iter().map(|z| z.re).collect();
        prop_assert!(real_multiset_distance(&sa, &sh) <= 1e-8);
    }

    #[test]
    fn left_solutions_of_antihermitian_are_pure(b in quat_matrix(2)) {
        let a = antihermitian_part(&b);
        prop_assert!(is_antihermitian(&a, 1e-12));
        let r = left_eig_2x2(&a).unwrap();
        for s in r.solutions.iter().chain(r.families.iter().flat_map(|f| &f.samples)) {
            prop_assert!(s.eigenvalue.re().abs() <= 1e-8);
        }
    }

    #[test]
    fn left_solutions_satisfy_both_equations(m in quat_matrix(2)) {
        let r = left_eig_2x2(&m).unwrap();
        prop_assert!(!r.solutions.is_empty());
        for s in r.solutions.iter().chain(r.families.iter().flat_map(|f| &f.samples)) {
            let psi = QuatVector(s.eigenvector.clone());
            prop_assert!(verify_left_pair(&m, s.eigenvalue, &psi).unwrap() <= 1e-8);
        }
    }

    #[test]
    fn left_solver_is_deterministic(m in quat_matrix(2)) {
        prop_assert_eq!(left_eig_2x2(&m).unwrap(), left_eig_2x2(&m).unwrap());
    }

    #[test]
    fn unit_diagonal_similarity_keeps_complex_spectrum(m in quat_matrix(2), u1 in unit_quaternion(), u2 in unit_quaternion()) {
        let u: QuatMatrix = Matrix::from_diagonal(&[u1, u2]);
        let n = u.adjoint().matmul(&m).unwrap().matmul(&u).unwrap();
        let rep = compare_left_spectra_similarity(&m, &n).unwrap();
        prop_assert!(rep.complex_spectra_agree);
    }
}

#[test]
fn hermitian_left_eigenvalues_need_not_be_real() {
    let m: QuatMatrix = Matrix::from_rows(vec![vec![Q::ZERO, Q::K], vec![-Q::K, Q::ZERO]]).unwrap();
    let r = left_eig_2x2(&m).unwrap();
    let all = r.solutions.iter().chain(r.families.iter().flat_map(|f| &f.samples));
    assert!(all.into_iter().any(|s| (s.eigenvalue - s.eigenvalue.conj()).norm() > 0.5));
}

#[test]
fn right_i_has_no_quaternionic_hermiticity() {
    // ⟨φ|ψ·i⟩ = ⟨φ|ψ⟩·i and ⟨φ·i|ψ⟩ = −i·⟨φ|ψ⟩.
    let one = QuatVector(vec![Q::ONE]);
    let ip = inner_product(&one, &one).unwrap();
    assert!((ip * Q::I).max_abs_diff(&(-(Q::I * ip))) > 1.0);
    let ip = inner_product(&one, &QuatVector(vec![Q::J])).unwrap();
    assert!((ip * Q::I).max_abs_diff(&(Q::I * ip)) > 1.0);
}

#[test]
fn defective_and_diagonalizable_instances() {
    let opts = RightEigOptions::default();
    let jordan: QuatMatrix = Matrix::from_rows(vec![vec![Q::I, Q::ONE], vec![Q::ZERO, Q::I]]).unwrap();
    let r = right_spectrum_quaternionic(&jordan, &opts).unwrap();
    assert!(!r.diagonalizable);
    assert!(diagonalize_quaternionic(&jordan, &opts).is_err());
    let fine: QuatMatrix = Matrix::from_rows(vec![vec![Q::I, Q::ONE], vec![Q::ZERO, Q::I * 2.0]]).unwrap();
    assert!(right_spectrum_quaternionic(&fine, &opts).unwrap().diagonalizable);
    assert!(diagonalize_quaternionic(&fine, &opts).is_ok());
}
