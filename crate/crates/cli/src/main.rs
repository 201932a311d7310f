use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use edgecone::topology::{EdgeConeTopology, Number};
use edgecone_cli::{run, CliError, Format, JobConfig, JobKind, Report};

#[derive(Parser)]
#[command(name = "edgecone", version, about = "Edge-cone curvature integrals and topological checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Override the quadrature relative tolerance.
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    /// Override the quadrature evaluation budget.
    #[arg(long, global = true)]
    max_evals: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a job described by a TOML config file.
    Run { config: PathBuf },
    /// Curvature totals of the ADE instantons.
    Table {
        #[arg(long)]
        k_max: Option<u32>,
    },
    /// Check Σ csc²(kπ/p) = (p² − 1)/3.
    CscSum {
        #[arg(long)]
        p: u64,
    },
    /// Edge-cone Hitchin–Thorpe inequalities for (M, Σ, β).
    HtCheck {
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        #[arg(long, allow_hyphen_values = true)]
        tau: i64,
        #[arg(long, allow_hyphen_values = true)]
        chi_sigma: i64,
        #[arg(long, allow_hyphen_values = true)]
        sigma_sq: i64,
        /// Cone angle parameter: `p/q`, an integer or a decimal.
        #[arg(long)]
        beta: Number,
        #[arg(long)]
        totally_real: bool,
    },
}

fn config_for(command: Command) -> Result<JobConfig, CliError> {
    Ok(match command {
        Command::Run { config } => JobConfig::load(&config)?,
        Command::Table { k_max } => JobConfig { k_max, ..JobConfig::new(JobKind::Table) },
        Command::CscSum { p } => JobConfig { p: Some(p), ..JobConfig::new(JobKind::CscSum) },
        Command::HtCheck { chi, tau, chi_sigma, sigma_sq, beta, totally_real } => {
            let topology = EdgeConeTopology { totally_real, ..EdgeConeTopology::new(chi, tau, chi_sigma, sigma_sq, beta) };
            JobConfig { topology: Some(topology), ..JobConfig::new(JobKind::HtCheck) }
        }
    })
}

fn write(report: &Report, config: &JobConfig) -> Result<(), CliError> {
    let text = match config.output.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv().map_err(|e| CliError::Output(e.to_string()))?,
    };
    match &config.output.path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Output(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<bool, CliError> {
    let mut config = config_for(cli.command)?;
    let c = cli.common;
    config.quadrature.rel_tol = c.rel_tol.or(config.quadrature.rel_tol);
    config.quadrature.max_evals = c.max_evals.or(config.quadrature.max_evals);
    config.output.path = c.out.or(config.output.path);
    config.output.format = c.format.unwrap_or(config.output.format);
    let report = run(&config)?;
    write(&report, &config)?;
    if !report.pass {
        eprintln!("edgecone: {} row(s) outside tolerance", report.rows.iter().filter(|r| r.pass() == Some(false)).count());
    }
    Ok(report.pass)
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("edgecone: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
