//! Frozen expected values checked against independent reference routines.

mod common;

use approx::assert_abs_diff_eq;
use common::*;
use pptcost::linalg::{hermitian_eig, kron, min_eigenvalue, operator_abs, operator_leq, trace_norm};
use pptcost::measures::{self, construct_g, max_entangled, PptCondition};
use pptcost::werner::{self, closed_forms, WernerParams};

// log2((d+2)/d), evaluated at 30 digits
const LN_SIGMA_A: [(usize, f64); 5] = [
    (2, 1.0),
    (3, 0.736965594166206166),
    (4, 0.584962500721156181),
    (5, 0.485426827170241760),
    (6, 0.415037499278843819),
];

#[test]
fn sigma_a_pt_spectrum_matches_jacobi() {
    for d in 2..=6 {
        let oracle = jacobi_eigenvalues(&sigma_a_pt_explicit(d));
        let pt = werner::antisymmetric_state(d).unwrap().partial_transpose();
        let ours = hermitian_eig(&pt).unwrap().eigenvalues;
        for (a, b) in ours.iter().zip(&oracle) {
            assert_abs_diff_eq!(*a, *b, epsilon = 1e-13);
        }
    }
    // d = 3: eight eigenvalues 1/6 and one −1/3
    let oracle = jacobi_eigenvalues(&sigma_a_pt_explicit(3));
    assert_abs_diff_eq!(oracle[0], -1.0 / 3.0, epsilon = 1e-14);
    for x in &oracle[1..] {
        assert_abs_diff_eq!(*x, 1.0 / 6.0, epsilon = 1e-14);
    }
}

#[test]
fn sigma_a_d3_scalars() {
    let pt = werner::antisymmetric_state(3).unwrap().partial_transpose();
    assert_abs_diff_eq!(min_eigenvalue(&pt).unwrap(), -1.0 / 3.0, epsilon = 1e-14);
    assert!(!pptcost::linalg::is_psd(&pt).unwrap());
    assert_abs_diff_eq!(trace_norm(&pt).unwrap(), 5.0 / 3.0, epsilon = 1e-14);
}

#[test]
fn bell_pt_spectrum_and_abs() {
    let phi = max_entangled(2).unwrap();
    let pt = phi.partial_transpose();
    let oracle = hermitian_eigenvalues_oracle(&pt);
    assert_eq!(oracle.len(), 4);
    assert_abs_diff_eq!(oracle[0], -0.5, epsilon = 1e-14);
    let abs = operator_abs(&pt).unwrap();
    assert!(max_abs(&(abs - pptcost::linalg::identity(4).scale(0.5))) < 1e-14);
    for k in 2..=4 {
        let pt = max_entangled(k).unwrap().partial_transpose();
        assert_abs_diff_eq!(trace_norm(&pt).unwrap(), k as f64, epsilon = 1e-12);
    }
}

#[test]
fn werner_explicit_matches_library() {
    for d in 2..=4 {
        for p in [0.0, 0.25, 0.5, 0.9, 1.0] {
            let ours = werner::werner_state(WernerParams::new(d, p).unwrap()).unwrap();
            assert!(max_abs(&(ours.data() - werner_explicit(d, p))) < 1e-15);
        }
    }
}

#[test]
fn sigma_a_log_negativity_frozen() {
    for (d, expected) in LN_SIGMA_A {
        let oracle: f64 = jacobi_eigenvalues(&sigma_a_pt_explicit(d)).iter().map(|x| x.abs()).sum();
        assert_abs_diff_eq!(oracle.log2(), expected, epsilon = 1e-13);
        let ln = measures::log_negativity(&werner::antisymmetric_state(d).unwrap()).unwrap();
        assert_abs_diff_eq!(ln, expected, epsilon = 1e-12);
    }
}

#[test]
fn werner_closed_forms_against_oracle_spectrum() {
    for d in 2..=5 {
        for i in 0..=10 {
            let p = i as f64 / 10.0;
            let w = WernerParams::new(d, p).unwrap();
            let cf = closed_forms(w);
            let oracle = hermitian_eigenvalues_oracle(&pptcost::linalg::partial_transpose(
                &werner_explicit(d, p),
                pptcost::Dims::new(d, d).unwrap(),
                pptcost::Subsystem::B,
            ).unwrap());
            let tn: f64 = oracle.iter().map(|x| x.abs()).sum();
            assert_abs_diff_eq!(cf.trace_norm_pt, tn, epsilon = 1e-13);
            for (a, b) in cf.pt_spectrum(d).iter().zip(&oracle) {
                assert_abs_diff_eq!(*a, *b, epsilon = 1e-13);
            }
        }
    }
}

#[test]
fn kron_trace_norm_square() {
    // tr|(ρ^Γ)^{⊗2}| = (tr|ρ^Γ|)² for the d = 2 singlet
    let pt = werner::antisymmetric_state(2).unwrap().partial_transpose();
    let oracle: f64 = hermitian_eigenvalues_oracle(&kron(&pt, &pt)).iter().map(|x| x.abs()).sum();
    assert_abs_diff_eq!(oracle, 4.0, epsilon = 1e-12);
    assert_abs_diff_eq!(trace_norm(&kron(&pt, &pt)).unwrap(), 4.0, epsilon = 1e-12);
}

#[test]
fn sigma_a_below_scaled_g() {
    // σ_a^Γ ≤ (Z + 1)·G^Γ for the d = 3 Werner G
    let rho = werner::antisymmetric_state(3).unwrap();
    let g = construct_g(&rho, 1).unwrap();
    let z = measures::z_value(&rho).unwrap();
    let g_pt = g.partial_transpose();
    assert!(operator_leq(&rho.partial_transpose(), &g_pt.scale(z + 1.0), 1e-12).unwrap());
}

#[test]
fn map_verification_instances() {
    let v = measures::theorem_map_verify(&werner::antisymmetric_state(3).unwrap(), 1, PptCondition::Exact).unwrap();
    assert!(v.all_pass());
    let v = measures::theorem_map_verify(&max_entangled(2).unwrap(), 2, PptCondition::Exact).unwrap();
    assert!(v.all_pass(), "{v:?}");
    assert_eq!(v.k, 5.0);
    assert_abs_diff_eq!(v.z_pow_n, 4.0, epsilon = 1e-12);
}

#[test]
fn werner_d3_p1_choi() {
    let rho = werner::antisymmetric_state(3).unwrap();
    let v = measures::verify_map_choi(&rho, 1, 3).unwrap();
    assert!(v.all_pass(), "{v:?}");
    assert_eq!(v.choi_dim, 81);
}
