use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pptcost::measures::PptCondition;
use pptcost::survey::Ensemble;
use pptcost_cli::{CliError, OutputFormat, DEFAULT_MAX_DIM};

#[derive(Parser)]
#[command(name = "pptcost", version, about = "PPT entanglement cost bounds for bipartite states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Negativity, binegativity correction and the cost bounds of a state file.
    Measures {
        input: PathBuf,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
    },
    /// Exact and mixing-protocol costs across the Werner family, as CSV.
    WernerScan {
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Builds the upper-bound preparation map for ρ^{⊗n} and checks it.
    VerifyMap {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Check the exact PPT condition (default).
        #[arg(long, conflicts_with = "asymptotic")]
        exact: bool,
        /// Check the large-K form -K G^Γ <= F^Γ <= K G^Γ instead.
        #[arg(long)]
        asymptotic: bool,
        /// Largest allowed dimension of ρ^{⊗n}.
        #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
        max_dim: usize,
    },
    /// Symplectic spectrum, log-negativity and binegativity check of a covariance file.
    Gaussian {
        input: PathBuf,
        /// Exit with status 1 if the binegativity covariance violates the uncertainty relation.
        #[arg(long)]
        binegativity_check: bool,
    },
    /// Randomized binegativity positivity survey.
    Survey {
        #[arg(long, default_value = "3x3")]
        dims: String,
        #[arg(long, default_value = "hilbert-schmidt")]
        ensemble: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
    /// Writes the canonical test states to a directory.
    Fixtures {
        #[arg(long, default_value = "fixtures")]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Measures { input, text, .. } => {
            let format = if text { OutputFormat::Text } else { OutputFormat::Json };
            pptcost_cli::cmd_measures(&input, format)
        }
        Command::WernerScan { d, points, out } => pptcost_cli::cmd_werner_scan(d, points, out.as_deref()),
        Command::VerifyMap { input, n, asymptotic, max_dim, .. } => {
            let condition = if asymptotic { PptCondition::Asymptotic } else { PptCondition::Exact };
            pptcost_cli::cmd_verify_map(&input, n, condition, max_dim)
        }
        Command::Gaussian { input, binegativity_check } => pptcost_cli::cmd_gaussian(&input, binegativity_check),
        Command::Survey { dims, ensemble, samples, seed, tolerance } => {
            let dims = pptcost_cli::parse_dims(&dims)?;
            let ensemble: Ensemble = ensemble.parse()?;
            pptcost_cli::cmd_survey(dims, ensemble, samples, seed, tolerance)
        }
        Command::Fixtures { out } => pptcost_cli::cmd_fixtures(&out),
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("PPTCOST_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .map_err(|_| CliError::Input(format!("PPTCOST_THREADS must be an integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Input(format!("cannot configure thread pool: {e}")))
}

fn emit(out: &str) {
    let mut stdout = std::io::stdout().lock();
    let mut text = out.to_string();
    if !text.is_empty() && !text.ends_with('\n') {
        text.push('\n');
    }
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(cli));
    match result {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(CliError::CheckFailed(out)) => {
            emit(&out);
            eprintln!("error: one or more checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
