use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rmt_tw::ensembles::dump::write_samples;
use rmt_tw::ensembles::sample_batch;
use rmt_tw::{Field, SampleConfig, SamplePath, TwKind, Variant};
use rmt_tw_cli::{
    cmd_pca_test, cmd_table, cmd_tw, cmd_verify, load_law, parse_dims, CliError, CliResult,
    ExperimentConfig, Suite, TwMode, CACHE_ENV, DEFAULT_REPS,
};

#[derive(Parser)]
#[command(
    name = "rmt-tw",
    version,
    about = "Tracy–Widom laws and Wishart largest-eigenvalue experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Original,
    Adjusted,
    PlusHalf,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Real,
    Complex,
}

#[derive(Clone, Copy, ValueEnum)]
enum LawArg {
    Tw1,
    Tw2,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Cdf,
    Quantile,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Cphi,
    Convergence,
    Kernels,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathArg {
    Dense,
    Tridiagonal,
}

#[derive(Subcommand)]
enum Command {
    /// Empirical CDF of the standardized largest eigenvalue at the reference quantiles.
    Table {
        /// Comma-separated `NxP` pairs.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_REPS)]
        reps: u64,
        #[arg(long, value_enum, default_value = "adjusted")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "real")]
        field: FieldArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// CSV destination; a `.json` sidecar is written next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tracy–Widom CDF or quantile.
    Tw {
        #[arg(value_enum)]
        law: LawArg,
        #[arg(value_enum)]
        mode: ModeArg,
        #[arg(allow_negative_numbers = true)]
        value: f64,
    },
    /// Largest-eigenvalue test of a data matrix (CSV, rows = observations).
    PcaTest {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "adjusted")]
        variant: VariantArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write raw top-k eigenvalue draws as CSV.
    SampleDump {
        #[arg(long)]
        dims: String,
        #[arg(long, default_value_t = 1000)]
        reps: u64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum, default_value = "real")]
        field: FieldArg,
        /// Defaults to tridiagonal for real data and dense for complex.
        #[arg(long, value_enum)]
        path: Option<PathArg>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Original => Variant::Original,
            VariantArg::Adjusted => Variant::Adjusted,
            VariantArg::PlusHalf => Variant::PlusHalf,
        }
    }
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::Real => Field::Real,
            FieldArg::Complex => Field::Complex,
        }
    }
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn run(cli: Cli) -> CliResult<()> {
    let cache = cache_dir();
    match cli.command {
        Command::Table {
            dims,
            reps,
            variant,
            field,
            seed,
            workers,
            out,
        } => {
            let dims = dims
                .iter()
                .map(|d| parse_dims(d))
                .collect::<CliResult<Vec<_>>>()?;
            let config = ExperimentConfig {
                reps,
                variant: variant.into(),
                field: field.into(),
                seed,
                workers,
                ..ExperimentConfig::new(dims)
            };
            config.validate()?;
            let law = load_law(config.law(), cache.as_deref())?;
            let table = cmd_table(&config, &law)?;
            emit(out.as_deref(), &table.to_csv())?;
            if let Some(path) = &out {
                std::fs::write(path.with_extension("json"), to_json(&table.sidecar()))?;
            }
            for c in table.columns.iter().filter(|c| c.error.is_some()) {
                eprintln!(
                    "warning: column {}x{} failed: {}",
                    c.n,
                    c.p,
                    c.error.as_deref().unwrap_or("")
                );
            }
        }
        Command::Tw { law, mode, value } => {
            let which = match law {
                LawArg::Tw1 => TwKind::Tw1,
                LawArg::Tw2 => TwKind::Tw2,
            };
            let mode = match mode {
                ModeArg::Cdf => TwMode::Cdf,
                ModeArg::Quantile => TwMode::Quantile,
            };
            let v = cmd_tw(&load_law(which, cache.as_deref())?, mode, value)?;
            println!("{v:.6}");
        }
        Command::PcaTest {
            input,
            variant,
            out,
        } => {
            let law = load_law(TwKind::Tw1, cache.as_deref())?;
            let report = cmd_pca_test(&input, variant.into(), &law)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            emit(out.as_deref(), &to_json(&report))?;
        }
        Command::Verify { suite, out } => {
            let suite = match suite {
                SuiteArg::Identities => Suite::Identities,
                SuiteArg::Cphi => Suite::Cphi,
                SuiteArg::Convergence => Suite::Convergence,
                SuiteArg::Kernels => Suite::Kernels,
            };
            let outcome = cmd_verify(suite)?;
            emit(out.as_deref(), &to_json(&outcome))?;
            if !outcome.passed {
                return Err(CliError::Verification(outcome.failing.join(", ")));
            }
        }
        Command::SampleDump {
            dims,
            reps,
            k,
            field,
            path,
            seed,
            workers,
            out,
        } => {
            let (n, p) = parse_dims(&dims)?;
            let field: Field = field.into();
            let path = match (path, field) {
                (Some(PathArg::Dense), _) | (None, Field::Complex) => SamplePath::Dense,
                (Some(PathArg::Tridiagonal), _) | (None, Field::Real) => SamplePath::Tridiagonal,
            };
            let config = SampleConfig::new(n, p, k, field, path)?;
            let draws = sample_batch(&config, seed, reps, workers.max(1))?;
            match out {
                Some(file) => write_samples(BufWriter::new(File::create(file)?), &draws)?,
                None => write_samples(io::stdout().lock(), &draws)?,
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
