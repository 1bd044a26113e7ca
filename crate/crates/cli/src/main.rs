use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use spectral_torsion::clifford::{grading, supertrace, trace, Multivector};
use spectral_torsion::scalar::{rational_to_f64, GaussianRational};
use spectral_torsion::sphere::{moment, vol_numeric, XiMonomial};
use spectral_torsion::torsion::{finals_match, spectral_torsion, verify_suite, ManifoldSpec};

use spectral_torsion_cli::config::JobConfig;
use spectral_torsion_cli::output::{render_table, JobOutput, VerifyRun};
use spectral_torsion_cli::CliError;

const SEED_VAR: &str = "SPECTRAL_TORSION_SEED";
const DEFAULT_SEED: u64 = 0x5EED_2024;

#[derive(Parser)]
#[command(
    name = "spectral-torsion",
    version,
    about = "Exact spectral torsion densities for Connes-type Dirac operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one job configuration and print the report as JSON.
    Compute { config: PathBuf },
    /// Run the identity suite in each dimension.
    Verify {
        #[arg(required = true)]
        dims: Vec<usize>,
        /// Emit JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Trace and supertrace of a product of generators.
    Trace {
        #[arg(long)]
        dim: usize,
        /// Factors such as `e1`, `e3`, `gamma`.
        word: Vec<String>,
    },
    /// Integral of a monomial over the unit sphere.
    Moments {
        #[arg(long)]
        dim: usize,
        /// Exponents `a1,..,an`.
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<u32>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute { config } => cmd_compute(&config),
        Command::Verify { dims, json } => cmd_verify(&dims, json),
        Command::Trace { dim, word } => cmd_trace(dim, &word),
        Command::Moments { dim, alpha } => cmd_moments(dim, &alpha),
    };
    match result {
        Ok((text, code)) => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: writing output: {e}");
                    ExitCode::FAILURE
                }
                _ => ExitCode::from(code),
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn cmd_compute(path: &PathBuf) -> Result<(String, u8), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
    let job = JobConfig::parse(&text)?;
    let report = spectral_torsion(&job.case, &job.u, &job.v, &job.w, &job.spec)
        .map_err(|e| CliError::internal(e.to_string()))?;
    Ok((format!("{}\n", JobOutput::new(&job, &report).to_json()), 0))
}

fn seed_from_env() -> Result<u64, CliError> {
    match std::env::var(SEED_VAR) {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| CliError::invalid(format!("{SEED_VAR}={text:?} is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn cmd_verify(dims: &[usize], json: bool) -> Result<(String, u8), CliError> {
    let specs = dims
        .iter()
        .map(|&d| ManifoldSpec::closed(d).map_err(|e| CliError::invalid(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let seed = seed_from_env()?;
    let runs: Vec<VerifyRun> = std::thread::scope(|scope| {
        let handles: Vec<_> = specs
            .iter()
            .map(|spec| {
                scope.spawn(move || {
                    let rows = verify_suite(spec, seed);
                    VerifyRun {
                        dim: spec.dim(),
                        seed,
                        finals_match: finals_match(&rows),
                        rows: rows.iter().map(Into::into).collect(),
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let text = if json {
        format!("{}\n", serde_json::to_string_pretty(&runs).expect("serializable"))
    } else {
        runs.iter().map(render_table).collect::<Vec<_>>().join("\n")
    };
    Ok((text, if runs.iter().all(|r| r.finals_match) { 0 } else { 1 }))
}

fn cmd_trace(dim: usize, word: &[String]) -> Result<(String, u8), CliError> {
    if !(2..=ManifoldSpec::MAX_DIM).contains(&dim) || dim % 2 == 1 {
        return Err(CliError::invalid(format!(
            "--dim {dim}: need an even dimension between 2 and {}",
            ManifoldSpec::MAX_DIM
        )));
    }
    let mut product = Multivector::<GaussianRational>::one(dim);
    for token in word {
        let factor = if token == "gamma" {
            grading(dim).map_err(|e| CliError::invalid(e.to_string()))?
        } else {
            let index = token
                .strip_prefix('e')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|i| (1..=dim).contains(i))
                .ok_or_else(|| CliError::invalid(format!("bad factor {token:?}: expected e1..e{dim} or gamma")))?;
            Multivector::generator(dim, index)
        };
        product = &product * &factor;
    }
    let str_value = supertrace(&product).map_err(|e| CliError::invalid(e.to_string()))?;
    Ok((format!("trace: {}\nsupertrace: {str_value}\n", trace(&product)), 0))
}

fn cmd_moments(dim: usize, alpha: &[u32]) -> Result<(String, u8), CliError> {
    if alpha.len() != dim {
        return Err(CliError::invalid(format!("--alpha has {} exponents, --dim is {dim}", alpha.len())));
    }
    let value = moment(dim, &XiMonomial::new(alpha.to_vec())).map_err(|e| CliError::invalid(e.to_string()))?;
    let numeric = value.as_single_term().map_or(0.0, |(c, _)| rational_to_f64(&c.re) * vol_numeric(dim as u32 - 1));
    Ok((format!("moment: {value}\nnumeric: {numeric}\n"), 0))
}
