//! Werner states on `C^d ⊗ C^d`.
//!
//! The family is parameterized by the weight `p` of the antisymmetric part:
//!
//! ```text
//! ρ(p) = p (1 − F)/(d(d−1)) + (1 − p)(1 + F)/(d(d+1))
//!      = p σ_a + (1 − p) σ_s
//!      = q·1 + r·Φ(d)^Γ,
//! q = p/(d(d−1)) + (1−p)/(d(d+1)),   r = (1−p)/(d+1) − p/(d−1).
//! ```
//!
//! `ρ^Γ = q(1 − Φ(d)) + (q + r)Φ(d)` has eigenvalue `q` with multiplicity
//! `d² − 1` and `q + r = (1 − 2p)/d` once, so
//! `tr|ρ^Γ| = (d − 1 + 2p + |1 − 2p|)/d`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::linalg::{identity, CMatrix, DensityMatrix, Dims};
use crate::measures::{self, BOUND_TOL};

/// Validated Werner parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WernerParams {
    d: usize,
    p: f64,
}

impl WernerParams {
    pub fn new(d: usize, p: f64) -> Result<Self> {
        if d < 2 {
            return Err(invalid(format!("Werner state needs d >= 2, got {d}")));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(invalid(format!("Werner weight p must lie in [0, 1], got {p}")));
        }
        Ok(WernerParams { d, p })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WernerClosedForms {
    pub q: f64,
    pub r: f64,
    pub trace_norm_pt: f64,
    pub log_negativity: f64,
}

impl WernerClosedForms {
    /// Eigenvalues of `ρ^Γ`, ascending, with multiplicities expanded.
    pub fn pt_spectrum(&self, d: usize) -> Vec<f64> {
        let mut ev = vec![self.q; d * d - 1];
        ev.push(self.q + self.r);
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// Flip (swap) operator `F|ij⟩ = |ji⟩` on `C^d ⊗ C^d`.
pub fn flip_operator(d: usize) -> Result<CMatrix> {
    if d == 0 {
        return Err(invalid("flip operator: d must be at least 1"));
    }
    let n = d * d;
    let mut f = CMatrix::zeros(n, n);
    for i in 0..d {
        for j in 0..d {
            f[(j * d + i, i * d + j)] = 1.0.into();
        }
    }
    Ok(f)
}

pub fn werner_state(w: WernerParams) -> Result<DensityMatrix> {
    let d = w.d as f64;
    let f = flip_operator(w.d)?;
    let id = identity(w.d * w.d);
    let anti = (&id - &f).scale(w.p / (d * (d - 1.0)));
    let sym = (&id + &f).scale((1.0 - w.p) / (d * (d + 1.0)));
    DensityMatrix::new(anti + sym, Dims::new(w.d, w.d)?)
}

/// `ρ = weight·σ_a + (1 − weight)·σ_s`; the same family as [`werner_state`]
/// with `p = weight`.
pub fn werner_from_mixture(d: usize, weight: f64) -> Result<DensityMatrix> {
    WernerParams::new(d, weight)?;
    let sa = antisymmetric_state(d)?;
    let ss = symmetric_state(d)?;
    let mix = sa.data().scale(weight) + ss.data().scale(1.0 - weight);
    DensityMatrix::new(mix, Dims::new(d, d)?)
}

/// `σ_a = (1 − F)/(d(d−1))`.
pub fn antisymmetric_state(d: usize) -> Result<DensityMatrix> {
    werner_state(WernerParams::new(d, 1.0)?)
}

/// `σ_s = (1 + F)/(d(d+1))`.
pub fn symmetric_state(d: usize) -> Result<DensityMatrix> {
    werner_state(WernerParams::new(d, 0.0)?)
}

pub fn closed_forms(w: WernerParams) -> WernerClosedForms {
    let (d, p) = (w.d as f64, w.p);
    let q = p / (d * (d - 1.0)) + (1.0 - p) / (d * (d + 1.0));
    let r = (1.0 - p) / (d + 1.0) - p / (d - 1.0);
    let trace_norm_pt = (d - 1.0 + 2.0 * p + (1.0 - 2.0 * p).abs()) / d;
    WernerClosedForms { q, r, trace_norm_pt, log_negativity: trace_norm_pt.log2() }
}

/// `|ρ^Γ|^Γ = q(1 − F/d) + |q + r|·F/d`.
pub fn binegativity_closed(w: WernerParams) -> Result<CMatrix> {
    let cf = closed_forms(w);
    let d = w.d as f64;
    let f = flip_operator(w.d)?;
    let id = identity(w.d * w.d);
    Ok((id - f.unscale(d)).scale(cf.q) + f.scale((cf.q + cf.r).abs() / d))
}

/// Cost of the straight-line protocol that prepares `σ_a` with probability
/// `2p − 1` and the PPT state `(σ_a + σ_s)/2` otherwise:
/// `(2p − 1)·log2((d + 2)/d)` for `p ≥ 1/2`, zero below.
pub fn mixing_protocol_cost(w: WernerParams) -> f64 {
    if w.p <= 0.5 {
        return 0.0;
    }
    let d = w.d as f64;
    (2.0 * w.p - 1.0) * ((d + 2.0) / d).log2()
}

/// One row of the Werner cost scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub p: f64,
    pub exact_cost: f64,
    pub mixing_cost: f64,
    pub is_ppt: bool,
}

/// `points` uniformly spaced weights in `[0, 1]`, endpoints included.
pub fn uniform_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points).map(|i| i as f64 / (points - 1) as f64).collect(),
    }
}

/// Exact and mixing-protocol costs along the Werner family.
///
/// The exact cost is the closed-form log-negativity; every grid point is
/// also run through the numeric bound computation and must agree with it
/// (and have coinciding bounds) to within `1e-9`.
pub fn figure1_scan(d: usize, grid: &[f64]) -> Result<Vec<ScanRow>> {
    let params = grid
        .iter()
        .map(|&p| WernerParams::new(d, p))
        .collect::<Result<Vec<_>>>()?;
    params
        .par_iter()
        .map(|&w| {
            let cf = closed_forms(w);
            let exact = cf.log_negativity.max(0.0);
            let report = measures::eppt_bounds(&werner_state(w)?)?;
            if !report.bounds_coincide
                || (report.eppt_lower - exact).abs() > BOUND_TOL
                || (report.eppt_upper - exact).abs() > BOUND_TOL
            {
                return Err(Error::NumericalFailure(format!(
                    "Werner d={d} p={}: closed form {exact} vs numeric bounds ({}, {})",
                    w.p, report.eppt_lower, report.eppt_upper
                )));
            }
            Ok(ScanRow { p: w.p, exact_cost: exact, mixing_cost: mixing_protocol_cost(w), is_ppt: report.is_ppt })
        })
        .collect()
}
