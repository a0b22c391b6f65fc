//! JSON file formats for states and covariance matrices.

use std::path::Path;

use pptcost::gaussian::{CovarianceMatrix, RMatrix};
use pptcost::linalg::CMatrix;
use pptcost::num_complex::Complex64;
use pptcost::{DensityMatrix, Dims};
use serde::{Deserialize, Serialize};

use crate::{CliError, SCHEMA_VERSION};

/// A density matrix as explicit row-major real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub dims: [usize; 2],
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

/// A covariance matrix in `(x₁, p₁, …)` ordering, subsystem A modes first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovFile {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub modes: [usize; 2],
    pub data: Vec<Vec<f64>>,
}

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

fn square(rows: &[Vec<f64>], n: usize, what: &str) -> Result<(), CliError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Input(format!("dimension: '{what}' must be a {n}x{n} array")));
    }
    Ok(())
}

impl StateFile {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        let m = rho.data();
        let rows = |f: fn(&Complex64) -> f64| {
            (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect()).collect()
        };
        StateFile {
            schema_version: SCHEMA_VERSION,
            dims: [rho.dims().a, rho.dims().b],
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    pub fn to_state(&self) -> Result<DensityMatrix, CliError> {
        let dims = Dims::new(self.dims[0], self.dims[1])?;
        let n = dims.total();
        square(&self.re, n, "re")?;
        square(&self.im, n, "im")?;
        let m = CMatrix::from_fn(n, n, |i, j| Complex64::new(self.re[i][j], self.im[i][j]));
        Ok(DensityMatrix::new(m, dims)?)
    }
}

impl CovFile {
    pub fn from_covariance(g: &CovarianceMatrix) -> Self {
        let m = g.data();
        CovFile {
            schema_version: SCHEMA_VERSION,
            modes: [g.modes().0, g.modes().1],
            data: (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect(),
        }
    }

    pub fn to_covariance(&self) -> Result<CovarianceMatrix, CliError> {
        let n = 2 * (self.modes[0] + self.modes[1]);
        square(&self.data, n, "data")?;
        let m = RMatrix::from_fn(n, n, |i, j| self.data[i][j]);
        Ok(CovarianceMatrix::new(m, (self.modes[0], self.modes[1]))?)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("cannot parse {}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    std::fs::write(path, text + "\n").map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

pub fn read_state(path: &Path) -> Result<DensityMatrix, CliError> {
    read_json::<StateFile>(path)?.to_state()
}

pub fn read_covariance(path: &Path) -> Result<CovarianceMatrix, CliError> {
    read_json::<CovFile>(path)?.to_covariance()
}
