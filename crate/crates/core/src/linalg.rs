//! Dense complex matrix kernel.
//!
//! Everything here works on [`CMatrix`] (a dynamically sized matrix of
//! `Complex64`). Bipartite operators act on `C^{d_A} ⊗ C^{d_B}` with the
//! usual Kronecker ordering: the composite index of `|i_A i_B⟩` is
//! `i_A * d_B + i_B`.
//!
//! Hermitian inputs are symmetrized as `(M + M†)/2` before decomposition;
//! the asymmetry that was removed must stay below `1e-8 · ‖M‖_max`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{invalid, Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Allowed asymmetry `‖M − M†‖_max / ‖M‖_max` before a matrix is rejected as non-Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-8;
/// Relative PSD tolerance: `M ≥ 0` when `λ_min ≥ −PSD_REL_TOL · ‖M‖_max`.
pub const PSD_REL_TOL: f64 = 1e-10;

/// Largest operator dimension the dense routines will build.
pub const MAX_DENSE_DIM: usize = 2048;

/// Which tensor factor a partial transpose acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Subsystem {
    A,
    #[default]
    B,
}

/// Local dimensions `(d_A, d_B)` of a bipartite system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub a: usize,
    pub b: usize,
}

impl Dims {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(invalid(format!("subsystem dimensions must be positive, got ({a}, {b})")));
        }
        Ok(Dims { a, b })
    }

    pub fn total(&self) -> usize {
        self.a * self.b
    }
}

/// A validated bipartite density matrix.
///
/// Construction checks Hermiticity, unit trace and positivity within the
/// crate tolerances. The stored matrix is the symmetrized input.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    data: CMatrix,
    dims: Dims,
}

impl DensityMatrix {
    pub fn new(data: CMatrix, dims: Dims) -> Result<Self> {
        let n = dims.total();
        if data.nrows() != n || data.ncols() != n {
            return Err(invalid(format!(
                "dimension: matrix is {}x{} but d_A*d_B = {n}",
                data.nrows(),
                data.ncols()
            )));
        }
        let scale = max_abs(&data);
        let asym = max_abs(&(&data - data.adjoint()));
        if asym > 1e-12 * scale.max(f64::MIN_POSITIVE) && asym > 1e-14 {
            return Err(invalid(format!("hermiticity: max |ρ - ρ†| = {asym:.3e}")));
        }
        let data = hermitian_part(&data);
        let tr = data.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(invalid(format!("unit trace: tr ρ = {tr}")));
        }
        let lmin = min_eigenvalue(&data)?;
        if lmin < -1e-10 {
            return Err(invalid(format!("positivity: minimum eigenvalue {lmin:.3e}")));
        }
        Ok(DensityMatrix { data, dims })
    }

    /// Normalizes a PSD operator to unit trace and validates the result.
    pub fn from_unnormalized(data: CMatrix, dims: Dims) -> Result<Self> {
        let tr = data.trace().re;
        if !(tr > 0.0) {
            return Err(invalid(format!("unit trace: cannot normalize operator with trace {tr}")));
        }
        Self::new(data.unscale(tr), dims)
    }

    /// Projector onto a normalized copy of `psi`.
    pub fn from_pure(psi: &DVector<Complex64>, dims: Dims) -> Result<Self> {
        let norm = psi.norm();
        if norm == 0.0 {
            return Err(invalid("pure state vector is zero"));
        }
        let v = psi.unscale(norm);
        Self::new(&v * v.adjoint(), dims)
    }

    pub fn data(&self) -> &CMatrix {
        &self.data
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    /// Total Hilbert-space dimension `d_A · d_B`.
    pub fn dim(&self) -> usize {
        self.dims.total()
    }

    pub fn into_inner(self) -> CMatrix {
        self.data
    }

    /// `ρ^Γ` with the transpose on subsystem B.
    pub fn partial_transpose(&self) -> CMatrix {
        partial_transpose_unchecked(&self.data, self.dims, Subsystem::B)
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianSpectrum {
    pub eigenvalues: DVector<f64>,
    /// Unitary matrix whose columns are the eigenvectors.
    pub eigenvectors: CMatrix,
}

impl HermitianSpectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `V f(Λ) V†`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for (j, &lam) in self.eigenvalues.iter().enumerate() {
            let s = f(lam);
            scaled.column_mut(j).scale_mut(s);
        }
        hermitian_part(&(scaled * v.adjoint()))
    }
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `(M + M†) / 2`.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Promotes a real matrix to a complex one.
pub fn complexify(m: &DMatrix<f64>) -> CMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

fn check_square(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(invalid(format!("matrix must be square, got {}x{}", m.nrows(), m.ncols())));
    }
    Ok(())
}

fn check_hermitian(m: &CMatrix) -> Result<CMatrix> {
    check_square(m)?;
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(invalid("matrix has non-finite entries"));
    }
    let scale = max_abs(m);
    let asym = max_abs(&(m - m.adjoint()));
    if asym > HERMITICITY_TOL * scale {
        return Err(invalid(format!(
            "matrix is not Hermitian: asymmetry {asym:.3e} exceeds {HERMITICITY_TOL:e}·‖M‖_max"
        )));
    }
    Ok(hermitian_part(m))
}

/// Partial transpose on one factor of a `d_A × d_B` operator.
///
/// This is a pure entry permutation, so applying it twice returns the input
/// bit for bit.
pub fn partial_transpose(m: &CMatrix, dims: Dims, subsystem: Subsystem) -> Result<CMatrix> {
    let n = dims.total();
    if m.nrows() != n || m.ncols() != n {
        return Err(invalid(format!(
            "partial transpose: matrix is {}x{}, expected {n}x{n} for dims ({}, {})",
            m.nrows(),
            m.ncols(),
            dims.a,
            dims.b
        )));
    }
    Ok(partial_transpose_unchecked(m, dims, subsystem))
}

fn partial_transpose_unchecked(m: &CMatrix, dims: Dims, subsystem: Subsystem) -> CMatrix {
    let (da, db) = (dims.a, dims.b);
    let n = da * db;
    CMatrix::from_fn(n, n, |row, col| {
        let (ia, ib) = (row / db, row % db);
        let (ja, jb) = (col / db, col % db);
        match subsystem {
            Subsystem::B => m[(ia * db + jb, ja * db + ib)],
            Subsystem::A => m[(ja * db + ib, ia * db + jb)],
        }
    })
}

/// Partial transpose of a multipartite operator on every factor `k` with `mask[k]` set.
pub fn partial_transpose_multi(m: &CMatrix, dims: &[usize], mask: &[bool]) -> Result<CMatrix> {
    if dims.len() != mask.len() {
        return Err(invalid("partial transpose: dims and mask lengths differ"));
    }
    let n: usize = dims.iter().product();
    if m.nrows() != n || m.ncols() != n {
        return Err(invalid(format!(
            "partial transpose: matrix is {}x{}, factor dims multiply to {n}",
            m.nrows(),
            m.ncols()
        )));
    }
    let mut digits_r = vec![0usize; dims.len()];
    let mut digits_c = vec![0usize; dims.len()];
    Ok(CMatrix::from_fn(n, n, |row, col| {
        split_index(row, dims, &mut digits_r);
        split_index(col, dims, &mut digits_c);
        for k in 0..dims.len() {
            if mask[k] {
                std::mem::swap(&mut digits_r[k], &mut digits_c[k]);
            }
        }
        m[(join_index(&digits_r, dims), join_index(&digits_c, dims))]
    }))
}

/// Reorders tensor factors: factor `k` of the output is factor `perm[k]` of the input.
pub fn permute_subsystems(m: &CMatrix, dims: &[usize], perm: &[usize]) -> Result<CMatrix> {
    let mut seen = vec![false; dims.len()];
    if perm.len() != dims.len() || perm.iter().any(|&p| p >= dims.len() || std::mem::replace(&mut seen[p], true)) {
        return Err(invalid("permute_subsystems: perm is not a permutation of the factors"));
    }
    let n: usize = dims.iter().product();
    if m.nrows() != n || m.ncols() != n {
        return Err(invalid("permute_subsystems: matrix size does not match dims"));
    }
    let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    // source index of every output basis vector
    let mut digits_out = vec![0usize; dims.len()];
    let mut digits_in = vec![0usize; dims.len()];
    let source: Vec<usize> = (0..n)
        .map(|i| {
            split_index(i, &out_dims, &mut digits_out);
            for (k, &p) in perm.iter().enumerate() {
                digits_in[p] = digits_out[k];
            }
            join_index(&digits_in, dims)
        })
        .collect();
    Ok(CMatrix::from_fn(n, n, |r, c| m[(source[r], source[c])]))
}

fn split_index(mut idx: usize, dims: &[usize], out: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
}

fn join_index(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&d, &n)| acc * n + d)
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues come back sorted ascending. Each eigenvector is rescaled by a
/// phase so that its first entry of magnitude above `1e-10` is real and
/// positive, which makes the output deterministic up to rotations inside
/// degenerate eigenspaces.
pub fn hermitian_eig(m: &CMatrix) -> Result<HermitianSpectrum> {
    let h = check_hermitian(m)?;
    let n = h.nrows();
    if n == 0 {
        return Ok(HermitianSpectrum {
            eigenvalues: DVector::zeros(0),
            eigenvectors: CMatrix::zeros(0, 0),
        });
    }
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let eigenvalues = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut eigenvectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let col = eig.eigenvectors.column(src);
        let phase = col
            .iter()
            .find(|z| z.norm() > 1e-10)
            .map(|z| z.conj() / z.norm())
            .unwrap_or(Complex64::new(1.0, 0.0));
        eigenvectors.set_column(dst, &(col * phase));
    }
    Ok(HermitianSpectrum { eigenvalues, eigenvectors })
}

/// Sum of absolute eigenvalues (the trace norm of a Hermitian matrix).
pub fn trace_norm(m: &CMatrix) -> Result<f64> {
    Ok(hermitian_eig(m)?.eigenvalues.iter().map(|x| x.abs()).sum())
}

/// `|M| = V|Λ|V†`.
pub fn operator_abs(m: &CMatrix) -> Result<CMatrix> {
    Ok(hermitian_eig(m)?.map(f64::abs))
}

pub fn min_eigenvalue(m: &CMatrix) -> Result<f64> {
    Ok(hermitian_eig(m)?.min())
}

/// Default PSD tolerance for `m`: `1e-10 · ‖m‖_max`.
pub fn psd_tolerance(m: &CMatrix) -> f64 {
    PSD_REL_TOL * max_abs(m)
}

/// `M ≥ 0` with the default scale-relative tolerance.
pub fn is_psd(m: &CMatrix) -> Result<bool> {
    is_psd_with_tol(m, psd_tolerance(m))
}

pub fn is_psd_with_tol(m: &CMatrix, tol: f64) -> Result<bool> {
    Ok(min_eigenvalue(m)? >= -tol)
}

/// Smallest eigenvalue of `y − x`; non-negative exactly when `x ≤ y`.
pub fn operator_leq_margin(x: &CMatrix, y: &CMatrix) -> Result<f64> {
    if x.shape() != y.shape() {
        return Err(invalid(format!(
            "operator inequality: shapes {:?} and {:?} differ",
            x.shape(),
            y.shape()
        )));
    }
    min_eigenvalue(&(y - x))
}

/// Löwner order test `x ≤ y`, i.e. `λ_min(y − x) ≥ −tol`.
pub fn operator_leq(x: &CMatrix, y: &CMatrix, tol: f64) -> Result<bool> {
    Ok(operator_leq_margin(x, y)? >= -tol)
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Guards dense constructions against sizes that would not fit in memory.
pub(crate) fn check_dense_dim(n: usize, what: &str) -> Result<()> {
    if n > MAX_DENSE_DIM {
        return Err(Error::ResourceLimit(format!(
            "{what}: dimension {n} exceeds the dense limit {MAX_DENSE_DIM}"
        )));
    }
    Ok(())
}
