use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ecomu3_core::grpcoh::ResolutionCache;
use ecomu3_core::pipeline::{resolve_cache_dir, Pipeline, PipelineReport};
use ecomu3_core::specseq::FibrationConfig;

#[derive(Parser, Debug)]
#[command(name = "ecomu3", version, about = "Cohomology of E_com U(3) and its building blocks")]
struct Cli {
    /// Prime for mod-p and p-local computations.
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Largest cohomological degree, where the command takes one.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Resolution cache directory; ECOMU3_CACHE_DIR takes precedence.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smith normal form of an integer matrix, given as JSON rows or a file holding them.
    Snf { matrix: String },
    /// Cohomology of a finite group with coefficients in a catalog module.
    Grpcoh {
        group: String,
        module: String,
        #[arg(value_name = "MAX_DEGREE")]
        top: Option<usize>,
    },
    /// Coinvariant algebra of the symmetric group.
    Flag {
        #[arg(default_value_t = 3)]
        n: usize,
    },
    /// Serre spectral sequence of a fibration over BΣ3, from a config file or a bundled name.
    Serre { config: String },
    /// Mod-p cohomology ring of U(3)/T(2).
    U3t2,
    /// Higher limits of a poset diagram; the bundled E_com U(3) diagram when no file is given.
    Holim {
        diagram: Option<PathBuf>,
        #[arg(long)]
        robustness: bool,
    },
    /// Mod-p cohomology of E_com U(3).
    EcomU3,
    /// The rational invariant ring.
    RationalRing,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn supported(p: u64) -> Result<u64> {
    if p == 2 || p == 3 {
        Ok(p)
    } else {
        bail!("prime {p} is not supported here; use 2 or 3")
    }
}

fn run(cli: &Cli) -> Result<PipelineReport> {
    let cache = ResolutionCache::new(resolve_cache_dir(cli.cache_dir.clone(), cli.no_cache));
    let pipe = Pipeline::new(cache);
    let report = match &cli.command {
        Command::Snf { matrix } => {
            let text = if matrix.trim_start().starts_with('[') { matrix.clone() } else { read(Path::new(matrix))? };
            pipe.snf(&text)?
        }
        Command::Grpcoh { group, module, top } => {
            let max = top.or(cli.max_degree).unwrap_or(12);
            pipe.group_cohomology(group, module, max, cli.prime)?
        }
        Command::Flag { n } => pipe.flag(*n, cli.max_degree.unwrap_or(12))?,
        Command::Serre { config } => {
            let path = Path::new(config);
            let text = if path.exists() {
                read(path)?
            } else {
                let cfg = FibrationConfig::bundled(config)?;
                serde_json::to_string_pretty(&cfg)?
            };
            pipe.serre(&text, cli.prime)?
        }
        Command::U3t2 => pipe.u3t2(cli.prime.unwrap_or(2))?,
        Command::Holim { diagram, robustness } => {
            let p = supported(cli.prime.unwrap_or(2))?;
            let text = diagram.as_deref().map(read).transpose()?;
            pipe.holim(text.as_deref(), p, *robustness)?
        }
        Command::EcomU3 => pipe.ecom_u3(supported(cli.prime.unwrap_or(2))?)?,
        Command::RationalRing => pipe.rational_ring()?,
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => println!("{}", report.to_text()),
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                for v in report.failures() {
                    eprintln!("validation failed: {} (expected {}, got {})", v.name, v.expected, v.actual);
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
