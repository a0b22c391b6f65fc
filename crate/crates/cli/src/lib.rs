//! Command implementations behind the `pptcost` binary.
//!
//! Every command returns its stdout payload as a `String` so it can be
//! exercised without spawning a process. Errors carry the process exit code.

pub mod files;

use std::path::{Path, PathBuf};

use pptcost::gaussian::{self, GaussianReport};
use pptcost::measures::{self, ChoiVerification, MapVerification, MeasureReport, PptCondition};
use pptcost::survey::{self, Ensemble, SurveyConfig, SurveyResult};
use pptcost::werner::{self, ScanRow, WernerParams};
use pptcost::DensityMatrix;
use serde::Serialize;
use thiserror::Error;

use files::{CovFile, StateFile};

pub const SCHEMA_VERSION: u32 = 1;
pub const CSV_HEADER: &str = "p,exact_cost,mixing_cost,is_ppt";
pub const DEFAULT_MAX_DIM: usize = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Resource(String),
    /// The command ran but some check it performs did not hold.
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
            CliError::Resource(_) => 5,
        }
    }
}

impl From<pptcost::Error> for CliError {
    fn from(e: pptcost::Error) -> Self {
        match e {
            pptcost::Error::InvalidArgument(m) => CliError::Input(m),
            pptcost::Error::NumericalFailure(m) => CliError::Numerical(m),
            pptcost::Error::ResourceLimit(m) => CliError::Resource(m),
        }
    }
}

/// Attaches `schema_version` to a JSON payload.
#[derive(Serialize)]
struct Versioned<'a, T: Serialize> {
    schema_version: u32,
    #[serde(flatten)]
    body: &'a T,
}

pub fn to_json<T: Serialize>(body: &T) -> String {
    serde_json::to_string_pretty(&Versioned { schema_version: SCHEMA_VERSION, body }).expect("serializable")
}

/// Formats like C's `%.{digits}g`: fixed notation for moderate exponents,
/// scientific otherwise, trailing zeros removed.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        return format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

pub fn cmd_measures(input: &Path, format: OutputFormat) -> Result<String, CliError> {
    let rho = files::read_state(input)?;
    let report = measures::eppt_bounds(&rho)?;
    Ok(match format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Text => measures_text(&report),
    })
}

fn measures_text(r: &MeasureReport) -> String {
    let rows = [
        ("dims", format!("{}x{}", r.dims[0], r.dims[1])),
        ("trace_norm_pt", format_sig(r.trace_norm_pt, 12)),
        ("negativity", format_sig(r.negativity, 12)),
        ("log_negativity", format_sig(r.log_negativity, 12)),
        ("alpha", format_sig(r.alpha, 12)),
        ("z_value", format_sig(r.z_value, 12)),
        ("eppt_lower", format_sig(r.eppt_lower, 12)),
        ("eppt_upper", format_sig(r.eppt_upper, 12)),
        ("is_ppt", r.is_ppt.to_string()),
        ("bounds_coincide", r.bounds_coincide.to_string()),
    ];
    rows.iter().map(|(k, v)| format!("{k:<16} {v}\n")).collect()
}

/// CSV text of the Werner cost scan with the frozen column order.
pub fn werner_scan_csv(d: usize, points: usize) -> Result<String, CliError> {
    if points < 2 {
        return Err(CliError::Input(format!("--points must be at least 2, got {points}")));
    }
    let rows = werner::figure1_scan(d, &werner::uniform_grid(points))?;
    Ok(render_scan(&rows))
}

pub fn render_scan(rows: &[ScanRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            format_sig(r.p, 12),
            format_sig(r.exact_cost, 12),
            format_sig(r.mixing_cost, 12),
            r.is_ppt
        ));
    }
    out
}

/// Writes the scan to `out` when given, otherwise returns it for stdout.
pub fn cmd_werner_scan(d: usize, points: usize, out: Option<&Path>) -> Result<String, CliError> {
    let csv = werner_scan_csv(d, points)?;
    match out {
        Some(path) => {
            std::fs::write(path, &csv).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(csv),
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyMapReport {
    pub dims: [usize; 2],
    pub theorem: MapVerification,
    pub choi: ChoiVerification,
    pub all_pass: bool,
}

pub fn verify_map(rho: &DensityMatrix, n: usize, condition: PptCondition, max_dim: usize) -> Result<VerifyMapReport, CliError> {
    if n == 0 {
        return Err(CliError::Input("--n must be at least 1".into()));
    }
    let f_dim = (rho.dim() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if f_dim > max_dim as u128 {
        return Err(CliError::Resource(format!(
            "dim(ρ)^n = {f_dim} exceeds the resource bound {max_dim} (raise --max-dim)"
        )));
    }
    let theorem = measures::theorem_map_verify(rho, n, condition)?;
    let choi = measures::verify_map_choi(rho, n, theorem.k as usize)?;
    // the asymptotic K only certifies the operator sandwich, not exact PPT-preservation
    let all_pass = theorem.all_pass()
        && match condition {
            PptCondition::Exact => choi.all_pass(),
            PptCondition::Asymptotic => choi.completely_positive && choi.trace_preserving && choi.target_error <= 1e-10,
        };
    Ok(VerifyMapReport { dims: [rho.dims().a, rho.dims().b], theorem, choi, all_pass })
}

/// JSON verification record; fails with exit code 1 when any check fails.
pub fn cmd_verify_map(input: &Path, n: usize, condition: PptCondition, max_dim: usize) -> Result<String, CliError> {
    let rho = files::read_state(input)?;
    let report = verify_map(&rho, n, condition, max_dim)?;
    let json = to_json(&report);
    if report.all_pass {
        Ok(json)
    } else {
        Err(CliError::CheckFailed(json))
    }
}

pub fn cmd_gaussian(input: &Path, binegativity_check: bool) -> Result<String, CliError> {
    let g = files::read_covariance(input)?;
    let report: GaussianReport = gaussian::gaussian_report(&g)?;
    let json = to_json(&report);
    if binegativity_check && !report.binegativity_positive {
        return Err(CliError::CheckFailed(json));
    }
    Ok(json)
}

/// Parses `AxB` into `(A, B)`.
pub fn parse_dims(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Input(format!("dims must look like 3x3, got '{s}'"));
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

#[derive(Serialize)]
struct SurveyOutput<'a> {
    config: &'a SurveyConfig,
    result: &'a SurveyResult,
}

pub fn cmd_survey(dims: (usize, usize), ensemble: Ensemble, samples: usize, seed: u64, tolerance: f64) -> Result<String, CliError> {
    let config = SurveyConfig { d_a: dims.0, d_b: dims.1, ensemble, samples, seed, tolerance };
    let result = survey::run_survey(&config)?;
    Ok(to_json(&SurveyOutput { config: &config, result: &result }))
}

/// Canonical test states, written as `<name>.json` under `dir`.
pub fn fixture_set() -> Result<Vec<(String, Fixture)>, CliError> {
    let mut out = Vec::new();
    out.push(("singlet".to_string(), Fixture::State(werner::antisymmetric_state(2)?)));
    for k in 2..=4 {
        out.push((format!("phi_{k}"), Fixture::State(measures::max_entangled(k)?)));
    }
    for d in 2..=6 {
        out.push((format!("sigma_a_d{d}"), Fixture::State(werner::antisymmetric_state(d)?)));
    }
    for d in [2, 3] {
        for i in 0..=4 {
            let p = i as f64 / 4.0;
            let w = WernerParams::new(d, p)?;
            out.push((format!("werner_d{d}_p{:03}", (p * 100.0).round() as u32), Fixture::State(werner::werner_state(w)?)));
        }
    }
    let mixed = DensityMatrix::new(pptcost::linalg::identity(4).scale(0.25), pptcost::Dims::new(2, 2)?)?;
    out.push(("separable_2x2".to_string(), Fixture::State(mixed)));
    for (name, r) in [("tms_r050", 0.5), ("tms_r100", 1.0), ("tms_r200", 2.0)] {
        out.push((name.to_string(), Fixture::Covariance(gaussian::two_mode_squeezed(r)?)));
    }
    out.push(("vacuum".to_string(), Fixture::Covariance(gaussian::CovarianceMatrix::vacuum(1, 1)?)));
    Ok(out)
}

pub enum Fixture {
    State(DensityMatrix),
    Covariance(gaussian::CovarianceMatrix),
}

pub fn cmd_fixtures(dir: &Path) -> Result<String, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let mut written: Vec<PathBuf> = Vec::new();
    for (name, fixture) in fixture_set()? {
        let path = dir.join(format!("{name}.json"));
        match &fixture {
            Fixture::State(rho) => files::write_json(&path, &StateFile::from_state(rho))?,
            Fixture::Covariance(g) => files::write_json(&path, &CovFile::from_covariance(g))?,
        }
        written.push(path);
    }
    Ok(written.iter().map(|p| format!("{}\n", p.display())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig_formatting() {
        assert_eq!(format_sig(0.0, 12), "0");
        assert_eq!(format_sig(1.0, 12), "1");
        assert_eq!(format_sig(0.5, 12), "0.5");
        assert_eq!(format_sig((5.0f64 / 3.0).log2(), 12), "0.736965594166");
        assert_eq!(format_sig(0.01, 12), "0.01");
        assert_eq!(format_sig(1.5e-7, 12), "1.5e-07");
        assert_eq!(format_sig(-2.25, 12), "-2.25");
        assert_eq!(format_sig(123456789012345.0, 12), "1.23456789012e+14");
    }

    #[test]
    fn dims_parsing() {
        assert_eq!(parse_dims("3x3").unwrap(), (3, 3));
        assert_eq!(parse_dims("2X4").unwrap(), (2, 4));
        assert!(parse_dims("3").is_err());
        assert!(parse_dims("ax3").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(pptcost::Error::InvalidArgument(String::new())).exit_code(), 2);
        assert_eq!(CliError::from(pptcost::Error::NumericalFailure(String::new())).exit_code(), 3);
        assert_eq!(CliError::Io(String::new()).exit_code(), 4);
        assert_eq!(CliError::from(pptcost::Error::ResourceLimit(String::new())).exit_code(), 5);
    }

    #[test]
    fn scan_rows_for_d3() {
        let csv = werner_scan_csv(3, 5).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "0,0,0,true");
        assert_eq!(lines[3], "0.5,0,0,true");
        assert_eq!(lines[5], "1,0.736965594166,0.736965594166,false");
    }
}
