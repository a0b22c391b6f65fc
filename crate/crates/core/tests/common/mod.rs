//! Test-only reference routines, independent of the library's eigensolver.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use pptcost::CMatrix;

/// Cyclic Jacobi eigenvalues of a real symmetric matrix, ascending.
pub fn jacobi_eigenvalues(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Eigenvalues of a complex Hermitian matrix via the real embedding
/// `[[Re, −Im], [Im, Re]]`, whose spectrum is each eigenvalue twice.
pub fn hermitian_eigenvalues_oracle(m: &CMatrix) -> Vec<f64> {
    let n = m.nrows();
    let mut big = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            big[i][j] = z.re;
            big[i + n][j + n] = z.re;
            big[i][j + n] = -z.im;
            big[i + n][j] = z.im;
        }
    }
    jacobi_eigenvalues(&big).into_iter().step_by(2).collect()
}

/// `(1 − dΦ)/(d(d−1))`: the partial transpose of the antisymmetric Werner
/// state, written directly from `Φ = |ψ⁺⟩⟨ψ⁺|`.
pub fn sigma_a_pt_explicit(d: usize) -> Vec<Vec<f64>> {
    let n = d * d;
    let norm = (d * (d - 1)) as f64;
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        m[i][i] = 1.0 / norm;
    }
    for i in 0..d {
        for j in 0..d {
            // dΦ has entries 1 at (ii, jj)
            m[i * d + i][j * d + j] -= 1.0 / norm;
        }
    }
    m
}

/// Werner state written entrywise from `|ij⟩ ↦ |ji⟩`.
pub fn werner_explicit(d: usize, p: f64) -> CMatrix {
    let n = d * d;
    let (df, a, s) = (d as f64, p, 1.0 - p);
    let ca = a / (df * (df - 1.0));
    let cs = s / (df * (df + 1.0));
    DMatrix::from_fn(n, n, |r, c| {
        let id = if r == c { 1.0 } else { 0.0 };
        let (i, j) = (r / d, r % d);
        let flip = if c == j * d + i { 1.0 } else { 0.0 };
        Complex64::new(ca * (id - flip) + cs * (id + flip), 0.0)
    })
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
pub fn random_unitary(n: usize, seed: u64) -> CMatrix {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let g = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(rand_distr::StandardNormal);
        let im: f64 = rng.sample(rand_distr::StandardNormal);
        Complex64::new(re, im)
    });
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = DMatrix::from_diagonal(&r.diagonal().map(|z| if z.norm() > 0.0 { z / z.norm() } else { Complex64::new(1.0, 0.0) }));
    q * phases
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
