//! Gaussian states at the level of covariance matrices.
//!
//! Conventions: quadratures are mode-ordered `(x₁, p₁, x₂, p₂, …)`, the
//! symplectic form is `Σ = ⊕ [[0, 1], [−1, 0]]`, the vacuum has covariance
//! matrix `1`, and a real symmetric `Γ` is a physical covariance matrix iff
//! `Γ + iΣ ≥ 0`. The modes of subsystem A come first, then those of B.
//! Partial transposition is the mirror reflection `P` that flips the sign of
//! every momentum of subsystem B.
//!
//! The binegativity of a Gaussian state is again (proportional to) a Gaussian
//! operator. Writing the Williamson form of the transposed covariance matrix
//! as `S PΓP Sᵀ = diag(x₁, x₁, …, x_n, x_n)`, its covariance matrix is
//!
//! ```text
//! Γ_bi = P S⁻¹ (diag(x) + diag(p)) S⁻ᵀ P,   p_i = 0 (x_i ≥ 1),  1/x_i − x_i (x_i < 1).
//! ```
//!
//! and it always satisfies the uncertainty relation, so Gaussian states have
//! positive binegativity.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::linalg::{hermitian_eig, CMatrix};

pub type RMatrix = DMatrix<f64>;

/// Validity tolerance on `λ_min(Γ + iΣ)`.
pub const UNCERTAINTY_TOL: f64 = 1e-9;
/// Symplectic eigenvalues within this distance below 1 count as 1.
pub const BOUNDARY_TOL: f64 = 1e-9;
const MAX_CONDITION: f64 = 1e12;

/// A physical covariance matrix with a mode bipartition `(n_A, n_B)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    data: RMatrix,
    modes: (usize, usize),
}

impl CovarianceMatrix {
    pub fn new(data: RMatrix, modes: (usize, usize)) -> Result<Self> {
        let cov = Self::symmetrized(data, modes)?;
        let margin = uncertainty_margin(&cov.data)?;
        if margin < -UNCERTAINTY_TOL {
            return Err(invalid(format!(
                "uncertainty principle: λ_min(Γ + iΣ) = {margin:.3e} < -{UNCERTAINTY_TOL:e}"
            )));
        }
        Ok(cov)
    }

    /// Shape and symmetry checks only; no physicality test.
    fn symmetrized(data: RMatrix, modes: (usize, usize)) -> Result<Self> {
        let (na, nb) = modes;
        if na == 0 || nb == 0 {
            return Err(invalid(format!("both subsystems need at least one mode, got ({na}, {nb})")));
        }
        let n = 2 * (na + nb);
        if data.shape() != (n, n) {
            return Err(invalid(format!(
                "dimension: covariance matrix is {:?}, modes ({na}, {nb}) need {n}x{n}",
                data.shape()
            )));
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(invalid("covariance matrix has non-finite entries"));
        }
        let scale = data.amax().max(1.0);
        let asym = (&data - data.transpose()).amax();
        if asym > 1e-12 * scale {
            return Err(invalid(format!("symmetry: max |Γ - Γᵀ| = {asym:.3e}")));
        }
        let data = (&data + data.transpose()).scale(0.5);
        Ok(CovarianceMatrix { data, modes })
    }

    pub fn data(&self) -> &RMatrix {
        &self.data
    }

    pub fn modes(&self) -> (usize, usize) {
        self.modes
    }

    pub fn num_modes(&self) -> usize {
        self.modes.0 + self.modes.1
    }

    /// `λ_min(Γ + iΣ)`; non-negative for physical states.
    pub fn uncertainty_margin(&self) -> Result<f64> {
        uncertainty_margin(&self.data)
    }

    /// Vacuum on every mode.
    pub fn vacuum(n_a: usize, n_b: usize) -> Result<Self> {
        let n = 2 * (n_a + n_b);
        Self::new(RMatrix::identity(n, n), (n_a, n_b))
    }

    /// Direct sum of two bipartite states, ordered `A₁ A₂ | B₁ B₂`.
    pub fn direct_sum(&self, other: &CovarianceMatrix) -> Result<Self> {
        let (a1, b1) = self.modes;
        let (a2, b2) = other.modes;
        let n1 = a1 + b1;
        let total = n1 + a2 + b2;
        let mut blocks = RMatrix::zeros(2 * total, 2 * total);
        blocks.view_mut((0, 0), (2 * n1, 2 * n1)).copy_from(&self.data);
        blocks
            .view_mut((2 * n1, 2 * n1), (2 * (a2 + b2), 2 * (a2 + b2)))
            .copy_from(&other.data);
        // mode order in `blocks` is A1 B1 A2 B2
        let order: Vec<usize> = (0..a1)
            .chain(n1..n1 + a2)
            .chain(a1..n1)
            .chain(n1 + a2..total)
            .collect();
        let idx: Vec<usize> = order.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
        let data = RMatrix::from_fn(2 * total, 2 * total, |i, j| blocks[(idx[i], idx[j])]);
        Self::new(data, (a1 + a2, b1 + b2))
    }
}

/// `Σ = ⊕ⁿ [[0, 1], [−1, 0]]`.
pub fn symplectic_form(n: usize) -> RMatrix {
    let mut s = RMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        s[(2 * k, 2 * k + 1)] = 1.0;
        s[(2 * k + 1, 2 * k)] = -1.0;
    }
    s
}

/// Mirror reflection `P = diag(1, 1, …, 1, −1, …, 1, −1)`: identity on A,
/// momentum sign flip on every mode of B.
pub fn mirror_reflection(n_a: usize, n_b: usize) -> Result<RMatrix> {
    if n_a == 0 || n_b == 0 {
        return Err(invalid(format!("mirror reflection needs modes on both sides, got ({n_a}, {n_b})")));
    }
    let n = n_a + n_b;
    let diag = (0..2 * n).map(|i| if i >= 2 * n_a && i % 2 == 1 { -1.0 } else { 1.0 });
    Ok(RMatrix::from_diagonal(&nalgebra::DVector::from_iterator(2 * n, diag)))
}

/// Covariance matrix of `ρ^Γ`, namely `PΓP`. It need not be physical.
pub fn pt_covariance(g: &CovarianceMatrix) -> RMatrix {
    let (na, nb) = g.modes;
    let p = mirror_reflection(na, nb).expect("validated modes");
    &p * &g.data * &p
}

/// `λ_min(M + iΣ)` for a real symmetric `2n × 2n` matrix.
pub fn uncertainty_margin(m: &RMatrix) -> Result<f64> {
    if m.nrows() != m.ncols() || !m.nrows().is_multiple_of(2) {
        return Err(invalid(format!("expected an even square matrix, got {:?}", m.shape())));
    }
    let sigma = symplectic_form(m.nrows() / 2);
    let h = CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| Complex64::new(m[(i, j)], sigma[(i, j)]));
    Ok(hermitian_eig(&h)?.min())
}

struct SymmetricRoots {
    sqrt: RMatrix,
    inv_sqrt: RMatrix,
}

fn symmetric_roots(m: &RMatrix) -> Result<SymmetricRoots> {
    if m.nrows() != m.ncols() || !m.nrows().is_multiple_of(2) || m.nrows() == 0 {
        return Err(invalid(format!("expected a non-empty even square matrix, got {:?}", m.shape())));
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(invalid("matrix has non-finite entries"));
    }
    let scale = m.amax();
    if (m - m.transpose()).amax() > 1e-10 * scale {
        return Err(invalid("matrix is not symmetric"));
    }
    let eig = SymmetricEigen::new((m + m.transpose()).scale(0.5));
    let lmin = eig.eigenvalues.min();
    let lmax = eig.eigenvalues.max();
    if !(lmin > 0.0) {
        return Err(invalid(format!("matrix is not positive definite (λ_min = {lmin:.3e})")));
    }
    if lmax / lmin > MAX_CONDITION {
        return Err(Error::NumericalFailure(format!(
            "condition number {:.3e} exceeds {MAX_CONDITION:e}",
            lmax / lmin
        )));
    }
    let v = &eig.eigenvectors;
    let build = |f: fn(f64) -> f64| {
        let d = RMatrix::from_diagonal(&eig.eigenvalues.map(f));
        let r = v * d * v.transpose();
        (&r + r.transpose()).scale(0.5)
    };
    Ok(SymmetricRoots { sqrt: build(f64::sqrt), inv_sqrt: build(|x| 1.0 / x.sqrt()) })
}

/// Positive eigenvalues of the Hermitian matrix `i·AΣA`-type form, ascending,
/// together with their eigenvectors.
fn positive_half(antisym: &RMatrix) -> Result<(Vec<f64>, Vec<nalgebra::DVector<Complex64>>)> {
    let n = antisym.nrows() / 2;
    let h = antisym.map(|x| Complex64::new(0.0, x));
    let spec = hermitian_eig(&h)?;
    // ascending order: the n positive eigenvalues sit in the upper half
    let vals = (n..2 * n).map(|j| spec.eigenvalues[j]).collect();
    let vecs = (n..2 * n).map(|j| spec.eigenvectors.column(j).into_owned()).collect();
    Ok((vals, vecs))
}

/// Symplectic eigenvalues of a real symmetric positive-definite matrix,
/// ascending.
///
/// These are the moduli of the eigenvalues of `ΣM`, obtained here from the
/// similar Hermitian matrix `i·M^{1/2} Σ M^{1/2}`.
pub fn symplectic_eigenvalues(m: &RMatrix) -> Result<Vec<f64>> {
    let roots = symmetric_roots(m)?;
    let sigma = symplectic_form(m.nrows() / 2);
    let form = &roots.sqrt * sigma * &roots.sqrt;
    Ok(positive_half(&form)?.0)
}

/// `S M Sᵀ = diag(x₁, x₁, …, x_n, x_n)` with `S` symplectic and `x` ascending.
#[derive(Debug, Clone)]
pub struct WilliamsonDecomposition {
    pub s: RMatrix,
    pub values: Vec<f64>,
}

impl WilliamsonDecomposition {
    pub fn diagonal(&self) -> RMatrix {
        diag_pairs(&self.values)
    }

    pub fn s_inverse(&self) -> RMatrix {
        // S⁻¹ = −Σ Sᵀ Σ for symplectic S
        let sigma = symplectic_form(self.values.len());
        -(&sigma * self.s.transpose() * &sigma)
    }

    /// `S⁻¹ D S⁻ᵀ`, the decomposed matrix.
    pub fn reconstruct(&self) -> RMatrix {
        let inv = self.s_inverse();
        &inv * self.diagonal() * inv.transpose()
    }
}

fn diag_pairs(values: &[f64]) -> RMatrix {
    RMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        2 * values.len(),
        values.iter().flat_map(|&x| [x, x]),
    ))
}

/// Williamson normal form of a real symmetric positive-definite matrix.
///
/// With `A = M^{-1/2} Σ M^{-1/2}`, each positive eigenvalue `a` of the
/// Hermitian `iA` with eigenvector `u + iv` gives an orthonormal pair
/// `√2 (v, u)` on which `A` acts as `a·[[0, 1], [−1, 0]]`, and `x = 1/a`.
/// Stacking these into an orthogonal `O`, the matrix
/// `S = (M^{-1/2} O diag(√x))ᵀ` is symplectic and diagonalizes `M`.
pub fn williamson(m: &RMatrix) -> Result<WilliamsonDecomposition> {
    let roots = symmetric_roots(m)?;
    let n = m.nrows() / 2;
    let sigma = symplectic_form(n);
    let a = &roots.inv_sqrt * &sigma * &roots.inv_sqrt;
    let (inv_values, vecs) = positive_half(&a)?;
    // largest a first, so x = 1/a ascends
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| inv_values[j].total_cmp(&inv_values[i]));
    let mut o = RMatrix::zeros(2 * n, 2 * n);
    let mut values = Vec::with_capacity(n);
    for (k, &j) in order.iter().enumerate() {
        let w = &vecs[j];
        let sqrt2 = std::f64::consts::SQRT_2;
        o.set_column(2 * k, &w.map(|z| sqrt2 * z.im));
        o.set_column(2 * k + 1, &w.map(|z| sqrt2 * z.re));
        values.push(1.0 / inv_values[j]);
    }
    let lambda = RMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        2 * n,
        values.iter().flat_map(|&x| [x.sqrt(), x.sqrt()]),
    ));
    let s = (&roots.inv_sqrt * &o * lambda).transpose();

    let scale = m.amax();
    let sympl_err = (&s * &sigma * s.transpose() - &sigma).amax();
    let diag_err = (&s * m * s.transpose() - diag_pairs(&values)).amax();
    let vmax = values.iter().copied().fold(0.0, f64::max);
    if sympl_err > 1e-9 * scale.max(1.0) || diag_err > 1e-8 * vmax.max(1.0) {
        return Err(Error::NumericalFailure(format!(
            "Williamson post-conditions failed: symplectic error {sympl_err:.3e}, diagonal error {diag_err:.3e}"
        )));
    }
    Ok(WilliamsonDecomposition { s, values })
}

/// Covariance matrix of the normalized binegativity.
#[derive(Debug, Clone)]
pub struct BinegativityCovariance {
    pub covariance: CovarianceMatrix,
    /// Symplectic eigenvalues `x_i` of `PΓP`, ascending.
    pub pt_symplectic_values: Vec<f64>,
    /// Correction `p_i` for the mode with value `x_i`.
    pub corrections: Vec<f64>,
    /// `λ_min(Γ_bi + iΣ)`; Gaussian binegativity is positive iff this is `≥ 0`.
    pub uncertainty_margin: f64,
}

impl BinegativityCovariance {
    pub fn is_positive(&self, tol: f64) -> bool {
        self.uncertainty_margin >= -tol
    }
}

fn correction(x: f64) -> f64 {
    if x >= 1.0 - BOUNDARY_TOL {
        0.0
    } else {
        1.0 / x - x
    }
}

pub fn binegativity_covariance(g: &CovarianceMatrix) -> Result<BinegativityCovariance> {
    let (na, nb) = g.modes;
    let p_mat = mirror_reflection(na, nb)?;
    let pt = pt_covariance(g);
    let w = williamson(&pt)?;
    let corrections: Vec<f64> = w.values.iter().map(|&x| correction(x)).collect();
    let inv = w.s_inverse();
    let shifted = w.diagonal() + diag_pairs(&corrections);
    let bi = &p_mat * &inv * shifted * inv.transpose() * &p_mat;
    let covariance = CovarianceMatrix::symmetrized((&bi + bi.transpose()).scale(0.5), g.modes)?;
    let margin = covariance.uncertainty_margin()?;
    Ok(BinegativityCovariance {
        covariance,
        pt_symplectic_values: w.values,
        corrections,
        uncertainty_margin: margin,
    })
}

/// `LN = Σ_i max(0, −log2 x̃_i)` over the symplectic eigenvalues of `PΓP`.
pub fn gaussian_log_negativity(g: &CovarianceMatrix) -> Result<f64> {
    let values = symplectic_eigenvalues(&pt_covariance(g))?;
    Ok(values.iter().map(|x| (-x.log2()).max(0.0)).sum())
}

/// Two-mode squeezed vacuum with squeezing `r`: diagonal blocks
/// `cosh(2r)·1`, off-diagonal blocks `sinh(2r)·diag(1, −1)`.
pub fn two_mode_squeezed(r: f64) -> Result<CovarianceMatrix> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(invalid(format!("squeezing must be finite and non-negative, got {r}")));
    }
    let (c, s) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    #[rustfmt::skip]
    let data = RMatrix::from_row_slice(4, 4, &[
        c, 0.0, s, 0.0,
        0.0, c, 0.0, -s,
        s, 0.0, c, 0.0,
        0.0, -s, 0.0, c,
    ]);
    CovarianceMatrix::new(data, (1, 1))
}

/// `exp(ΣH)` for a symmetric `H` with `N(0, strength²)` entries.
pub fn random_symplectic<R: Rng + ?Sized>(n: usize, strength: f64, rng: &mut R) -> RMatrix {
    let dim = 2 * n;
    let mut h = RMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let x: f64 = rng.sample(StandardNormal);
            h[(i, j)] = strength * x;
            h[(j, i)] = strength * x;
        }
    }
    (symplectic_form(n) * h).exp()
}

/// Random physical covariance matrix `Sᵀ D S`, where `S` is a random
/// symplectic matrix and `D = diag(x₁, x₁, …)` with thermal values
/// `x_i = 1 + strength·|N(0,1)|`. Reproducible per seed.
pub fn random_covariance(n_a: usize, n_b: usize, seed: u64, strength: f64) -> Result<CovarianceMatrix> {
    if !(strength >= 0.0 && strength.is_finite()) {
        return Err(invalid(format!("strength must be finite and non-negative, got {strength}")));
    }
    let n = n_a + n_b;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = random_symplectic(n, strength, &mut rng);
    let thermal: Vec<f64> = (0..n)
        .map(|_| 1.0 + strength * rng.sample::<f64, _>(StandardNormal).abs())
        .collect();
    let g = s.transpose() * diag_pairs(&thermal) * &s;
    CovarianceMatrix::new((&g + g.transpose()).scale(0.5), (n_a, n_b))
}

/// Symplectic spectra, log-negativity and binegativity summary of one covariance matrix.
#[derive(Debug, Clone, Serialize)]
pub struct GaussianReport {
    pub modes: [usize; 2],
    pub symplectic_eigenvalues: Vec<f64>,
    pub pt_symplectic_eigenvalues: Vec<f64>,
    pub log_negativity: f64,
    pub corrections: Vec<f64>,
    pub binegativity_uncertainty_margin: f64,
    pub binegativity_positive: bool,
}

pub fn gaussian_report(g: &CovarianceMatrix) -> Result<GaussianReport> {
    let bi = binegativity_covariance(g)?;
    Ok(GaussianReport {
        modes: [g.modes.0, g.modes.1],
        symplectic_eigenvalues: symplectic_eigenvalues(&g.data)?,
        pt_symplectic_eigenvalues: bi.pt_symplectic_values.clone(),
        log_negativity: gaussian_log_negativity(g)?,
        corrections: bi.corrections.clone(),
        binegativity_uncertainty_margin: bi.uncertainty_margin,
        binegativity_positive: bi.is_positive(1e-8),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn symplectic_form_properties() {
        let s1 = symplectic_form(1);
        assert_eq!(s1, RMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]));
        let s3 = symplectic_form(3);
        assert_eq!(&s3 * &s3, -RMatrix::identity(6, 6));
        assert_eq!(s3.transpose(), -&s3);
        assert_abs_diff_eq!(s3.determinant(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn mirror_reflection_pattern() {
        let p = mirror_reflection(1, 1).unwrap();
        assert_eq!(p.diagonal().as_slice(), &[1.0, 1.0, 1.0, -1.0]);
        assert_eq!(&p * &p, RMatrix::identity(4, 4));
        let p = mirror_reflection(2, 1).unwrap();
        assert_eq!(p.diagonal().as_slice(), &[1.0, 1.0, 1.0, 1.0, 1.0, -1.0]);
        let sigma = symplectic_form(3);
        assert_ne!(&p * &sigma * &p, sigma);
        assert!(mirror_reflection(0, 1).is_err());
    }

    #[test]
    fn vacuum_and_product_are_unchanged_by_pt() {
        let vac = CovarianceMatrix::vacuum(1, 1).unwrap();
        assert_eq!(&pt_covariance(&vac), vac.data());
        assert_eq!(gaussian_log_negativity(&vac).unwrap(), 0.0);
        let bi = binegativity_covariance(&vac).unwrap();
        assert!((bi.covariance.data() - vac.data()).amax() < 1e-12);
        assert_eq!(bi.corrections, vec![0.0, 0.0]);
    }

    #[test]
    fn scaled_identity_symplectic_values() {
        let v = symplectic_eigenvalues(&RMatrix::identity(4, 4).scale(2.5)).unwrap();
        for x in v {
            assert_abs_diff_eq!(x, 2.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn tms_spectrum() {
        let tms = two_mode_squeezed(1.0).unwrap();
        let v = symplectic_eigenvalues(tms.data()).unwrap();
        assert_abs_diff_eq!(v[0], 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(v[1], 1.0, epsilon = 1e-10);
        let vpt = symplectic_eigenvalues(&pt_covariance(&tms)).unwrap();
        assert_abs_diff_eq!(vpt[0], (-2.0f64).exp(), epsilon = 1e-10);
        assert_abs_diff_eq!(vpt[1], 2.0f64.exp(), epsilon = 1e-9);
        assert_eq!(two_mode_squeezed(0.0).unwrap().data(), &RMatrix::identity(4, 4));
        assert!(two_mode_squeezed(-1.0).is_err());
    }

    #[test]
    fn tms_binegativity_corrections() {
        let bi = binegativity_covariance(&two_mode_squeezed(1.0).unwrap()).unwrap();
        let e2 = 2.0f64.exp();
        assert_abs_diff_eq!(bi.corrections[0], e2 - 1.0 / e2, epsilon = 1e-9);
        assert_eq!(bi.corrections[1], 0.0);
        assert!(bi.is_positive(1e-8));
    }

    #[test]
    fn williamson_of_diagonal_input() {
        let m = RMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![3.0, 3.0, 1.5, 1.5]));
        let w = williamson(&m).unwrap();
        assert_abs_diff_eq!(w.values[0], 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(w.values[1], 3.0, epsilon = 1e-12);
        // S is orthogonal here
        assert!((&w.s * w.s.transpose() - RMatrix::identity(4, 4)).amax() < 1e-12);
    }

    #[test]
    fn williamson_rejects_bad_input() {
        assert!(williamson(&RMatrix::identity(3, 3)).is_err());
        let mut m = RMatrix::identity(2, 2);
        m[(0, 0)] = -1.0;
        assert!(matches!(williamson(&m), Err(Error::InvalidArgument(_))));
        let m = RMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1e13, 1.0]));
        assert!(matches!(williamson(&m), Err(Error::NumericalFailure(_))));
    }

    #[test]
    fn covariance_validation() {
        let mut m = RMatrix::identity(4, 4);
        m.scale_mut(0.5);
        let err = CovarianceMatrix::new(m, (1, 1)).unwrap_err();
        assert!(err.to_string().contains("uncertainty"));
        let err = CovarianceMatrix::new(RMatrix::identity(4, 4), (1, 2)).unwrap_err();
        assert!(err.to_string().contains("dimension"));
        let mut m = RMatrix::identity(4, 4);
        m[(0, 1)] = 0.1;
        assert!(CovarianceMatrix::new(m, (1, 1)).unwrap_err().to_string().contains("symmetry"));
    }

    #[test]
    fn random_covariance_is_reproducible() {
        let a = random_covariance(1, 2, 7, 0.6).unwrap();
        let b = random_covariance(1, 2, 7, 0.6).unwrap();
        assert_eq!(a, b);
        let c = random_covariance(1, 2, 8, 0.6).unwrap();
        assert_ne!(a, c);
        let pure = random_covariance(2, 1, 3, 0.0).unwrap();
        assert_eq!(pure.data(), &RMatrix::identity(6, 6));
    }

    #[test]
    fn direct_sum_orders_a_before_b() {
        let t1 = two_mode_squeezed(0.5).unwrap();
        let t2 = two_mode_squeezed(1.0).unwrap();
        let sum = t1.direct_sum(&t2).unwrap();
        assert_eq!(sum.modes(), (2, 2));
        // A-modes of t1 and t2 occupy quadratures 0..4
        assert_abs_diff_eq!(sum.data()[(0, 0)], (1.0f64).cosh(), epsilon = 1e-15);
        assert_abs_diff_eq!(sum.data()[(2, 2)], (2.0f64).cosh(), epsilon = 1e-15);
        assert_abs_diff_eq!(sum.data()[(0, 4)], (1.0f64).sinh(), epsilon = 1e-15);
    }
}
