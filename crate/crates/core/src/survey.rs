//! Randomized survey of binegativity positivity.
//!
//! Sample `k` of a survey with seed `s` is drawn from a ChaCha8 generator
//! seeded with `s` on stream `k`, so any sample can be regenerated on its
//! own and the result does not depend on thread scheduling.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::linalg::{hermitian_eig, CMatrix, DensityMatrix, Dims};
use crate::measures::binegativity;

/// Random-state ensemble; serialized by its name (`hilbert-schmidt`, `haar-pure`, `rank-limited:K`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ensemble {
    /// `GG†/tr(GG†)` with `G` a square complex Ginibre matrix.
    HilbertSchmidt,
    /// Normalized complex Gaussian vector.
    HaarPure,
    /// `GG†/tr(GG†)` with `G` of shape `d × k`.
    RankLimited(usize),
}

impl std::str::FromStr for Ensemble {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hilbert-schmidt" | "hs" => Ok(Ensemble::HilbertSchmidt),
            "haar-pure" | "pure" => Ok(Ensemble::HaarPure),
            _ => match s.strip_prefix("rank-limited:").or_else(|| s.strip_prefix("rank:")) {
                Some(k) => {
                    let k: usize = k.parse().map_err(|_| invalid(format!("bad rank in ensemble '{s}'")))?;
                    if k == 0 {
                        return Err(invalid("rank-limited ensemble needs rank >= 1"));
                    }
                    Ok(Ensemble::RankLimited(k))
                }
                None => Err(invalid(format!(
                    "unknown ensemble '{s}' (expected hilbert-schmidt, haar-pure or rank-limited:K)"
                ))),
            },
        }
    }
}

impl Serialize for Ensemble {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Ensemble {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = <std::borrow::Cow<'de, str>>::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl std::fmt::Display for Ensemble {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ensemble::HilbertSchmidt => write!(f, "hilbert-schmidt"),
            Ensemble::HaarPure => write!(f, "haar-pure"),
            Ensemble::RankLimited(k) => write!(f, "rank-limited:{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurveyConfig {
    pub d_a: usize,
    pub d_b: usize,
    pub ensemble: Ensemble,
    pub samples: usize,
    pub seed: u64,
    /// Relative positivity threshold, scaled by the trace norm of the binegativity.
    pub tolerance: f64,
}

impl SurveyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(invalid("survey needs at least one sample"));
        }
        for d in [self.d_a, self.d_b] {
            if !(2..=8).contains(&d) {
                return Err(invalid(format!("survey dimensions must lie in 2..=8, got {d}")));
            }
        }
        if !(self.tolerance >= 0.0 && self.tolerance.is_finite()) {
            return Err(invalid("tolerance must be finite and non-negative"));
        }
        Ok(())
    }
}

/// A sample whose binegativity has a negative eigenvalue beyond tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurveyFailure {
    pub offset: u64,
    pub min_eigenvalue: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurveyResult {
    pub total: usize,
    pub positive_count: usize,
    pub positive_fraction: f64,
    pub min_binegativity_eigenvalue_overall: f64,
    pub npt_count: usize,
    pub failures: Vec<SurveyFailure>,
}

/// Generator for sample `offset` of a survey seeded with `seed`.
pub fn sample_rng(seed: u64, offset: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(offset);
    rng
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    // column-major fill keeps the draw order fixed
    DMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

pub fn random_density_matrix<R: Rng + ?Sized>(
    d_a: usize,
    d_b: usize,
    ensemble: Ensemble,
    rng: &mut R,
) -> Result<DensityMatrix> {
    let dims = Dims::new(d_a, d_b)?;
    let n = dims.total();
    match ensemble {
        Ensemble::HaarPure => {
            let psi = DVector::from_fn(n, |_, _| complex_gaussian(rng));
            DensityMatrix::from_pure(&psi, dims)
        }
        Ensemble::HilbertSchmidt | Ensemble::RankLimited(_) => {
            let k = match ensemble {
                Ensemble::RankLimited(k) => k,
                _ => n,
            };
            if k == 0 {
                return Err(invalid("rank-limited ensemble needs rank >= 1"));
            }
            let g = ginibre(n, k, rng);
            DensityMatrix::from_unnormalized(&g * g.adjoint(), dims)
        }
    }
}

/// Smallest binegativity eigenvalue and its trace norm for one sample.
fn sample_stats(cfg: &SurveyConfig, offset: u64) -> Result<(f64, f64, bool)> {
    let mut rng = sample_rng(cfg.seed, offset);
    let rho = random_density_matrix(cfg.d_a, cfg.d_b, cfg.ensemble, &mut rng)?;
    let spectrum = hermitian_eig(&binegativity(&rho)?)?;
    let norm: f64 = spectrum.eigenvalues.iter().map(|x| x.abs()).sum();
    let npt = !crate::linalg::is_psd(&rho.partial_transpose())?;
    Ok((spectrum.min(), norm, npt))
}

/// Regenerates sample `offset` and returns its smallest binegativity eigenvalue.
pub fn replay_sample(cfg: &SurveyConfig, offset: u64) -> Result<f64> {
    Ok(sample_stats(cfg, offset)?.0)
}

pub fn run_survey(cfg: &SurveyConfig) -> Result<SurveyResult> {
    cfg.validate()?;
    let stats = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|offset| sample_stats(cfg, offset).map(|s| (offset, s)))
        .collect::<Result<Vec<_>>>()?;
    let mut failures = Vec::new();
    let mut npt_count = 0;
    let mut overall = f64::INFINITY;
    for (offset, (lmin, norm, npt)) in stats {
        overall = overall.min(lmin);
        npt_count += usize::from(npt);
        if lmin < -cfg.tolerance * norm {
            failures.push(SurveyFailure { offset, min_eigenvalue: lmin });
        }
    }
    let positive_count = cfg.samples - failures.len();
    Ok(SurveyResult {
        total: cfg.samples,
        positive_count,
        positive_fraction: positive_count as f64 / cfg.samples as f64,
        min_binegativity_eigenvalue_overall: overall,
        npt_count,
        failures,
    })
}
