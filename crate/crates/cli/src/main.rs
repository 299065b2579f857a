use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use eiwe_cli::config::{parse_methods, parse_value_list, ConfigError, OutputFormat, PartialConfig};
use eiwe_cli::show_law::{law_table, write_table};
use eiwe_cli::sweep::run_sweep;
use eiwe_cli::validate::{run_checks, summary_json, Grid, Harness};
use eiwe_core::thermo::WorkMethod;

const EXIT_CONFIG: u8 = 1;
const EXIT_FAILURE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "eiwe",
    version,
    about = "Work extraction from measured two-mode Gaussian environments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the extracted work over a parameter grid.
    Sweep(SweepArgs),
    /// Run the built-in consistency checks.
    Validate {
        #[arg(long, value_enum, default_value = "full")]
        grid: Grid,
        /// Also write a JSON summary here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate W / n_bar against xi(r) and the log-negativity.
    ShowLaw {
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 2.0)]
        r_max: f64,
        #[arg(long, default_value_t = 9)]
        steps: usize,
    },
}

#[derive(clap::Args)]
struct SweepArgs {
    /// Inverse temperatures: `1,2,5` or `start:stop:count`.
    #[arg(long, value_parser = values)]
    beta: Option<Values>,
    /// Squeezing parameters, same syntax as `--beta`.
    #[arg(long, value_parser = values)]
    r: Option<Values>,
    /// Measurement strengths, same syntax as `--beta`.
    #[arg(long, value_parser = values)]
    lambda: Option<Values>,
    /// Comma-separated methods.
    #[arg(long, value_parser = methods)]
    methods: Option<Methods>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// JSON config file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Print the resolved config to standard error.
    #[arg(long)]
    echo_config: bool,
}

#[derive(Clone)]
struct Values(Vec<f64>);

#[derive(Clone)]
struct Methods(Vec<WorkMethod>);

fn values(s: &str) -> Result<Values, ConfigError> {
    parse_value_list(s).map(Values)
}

fn methods(s: &str) -> Result<Methods, ConfigError> {
    parse_methods(s).map(Methods)
}

fn sweep(args: SweepArgs) -> ExitCode {
    let base = match &args.config {
        Some(path) => match PartialConfig::from_file(path) {
            Ok(c) => c,
            Err(e) => return config_error(e),
        },
        None => PartialConfig::default(),
    };
    let flags = PartialConfig {
        beta_values: args.beta.map(|v| v.0),
        r_values: args.r.map(|v| v.0),
        lambda_values: args.lambda.map(|v| v.0),
        methods: args.methods.map(|m| m.0),
        output_path: args.out,
        format: args.format,
    };
    let cfg = match base.overlay(flags).resolve() {
        Ok(c) => c,
        Err(e) => return config_error(e),
    };
    if args.echo_config {
        eprintln!("{}", cfg.to_json());
    }
    match run_sweep(&cfg) {
        Ok(report) => {
            let failed: Vec<_> = report.failures().collect();
            for row in &failed {
                if let Err(e) = &row.outcome {
                    eprintln!(
                        "error: beta {} r {} lambda {} {}: {e}",
                        row.beta, row.r, row.lambda, row.method
                    );
                }
            }
            if failed.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILURE)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

fn config_error(e: ConfigError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_CONFIG)
}

fn validate(grid: Grid, out: Option<PathBuf>) -> ExitCode {
    let h = Harness::new(grid);
    let results = run_checks(&h);
    let mut stdout = io::stdout().lock();
    for r in &results {
        let _ = writeln!(stdout, "{}", r.line());
    }
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&summary_json(&h, &results)).expect("plain data");
        if let Err(e) = std::fs::write(&path, text + "\n") {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(EXIT_FAILURE);
        }
    }
    if results.iter().all(|r| r.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    }
}

fn show_law(beta: f64, r_max: f64, steps: usize) -> ExitCode {
    match law_table(beta, r_max, steps) {
        Ok(rows) => match write_table(beta, &rows, io::stdout().lock()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_FAILURE)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Sweep(args) => sweep(args),
        Command::Validate { grid, out } => validate(grid, out),
        Command::ShowLaw { beta, r_max, steps } => show_law(beta, r_max, steps),
    }
}
