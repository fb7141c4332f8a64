use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rmi_core::omega::{self, DEFAULT_BUDGET};
use rmi_core::report::{compare, parse_measures};
use rmi_core::{Base, Error, Labeling, Margins, OmegaMethod, OmegaOptions, ReportOptions};

#[derive(Debug, Parser)]
#[command(name = "rmi", version, about = "Compare partitions with reduced mutual information")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compare two label files, one label per line
    Compare {
        file_r: PathBuf,
        file_s: PathBuf,
        #[arg(long, value_enum, default_value_t = BaseArg::Bits)]
        base: BaseArg,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        omega: MethodArg,
        /// Comma separated measure names, or "all"
        #[arg(long, default_value = "all")]
        measures: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// State budget for the exact table counter
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Count contingency tables with the given row and column sums
    #[command(alias = "count")]
    CountTables {
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        rows: Vec<i64>,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        cols: Vec<i64>,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BaseArg {
    Bits,
    Nats,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Exact,
    Bbk,
    De,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Pretty,
}

impl From<BaseArg> for Base {
    fn from(b: BaseArg) -> Self {
        match b {
            BaseArg::Bits => Base::Bits,
            BaseArg::Nats => Base::Nats,
        }
    }
}

impl From<MethodArg> for OmegaMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => OmegaMethod::Auto,
            MethodArg::Exact => OmegaMethod::Exact,
            MethodArg::Bbk => OmegaMethod::Bbk,
            MethodArg::De => OmegaMethod::DiaconisEfron,
        }
    }
}

/// Failure with its exit code: 1 for usage, 2 for data.
enum Failure {
    Usage(String),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match cli.command {
        Command::Compare {
            file_r,
            file_s,
            base,
            omega,
            measures,
            format,
            budget,
        } => run_compare(file_r, file_s, base, omega, &measures, format, budget),
        Command::CountTables {
            rows,
            cols,
            method,
            budget,
            format,
        } => run_count(&rows, &cols, method, budget, format),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &PathBuf) -> Result<Labeling, Failure> {
    Labeling::from_path(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn run_compare(
    file_r: PathBuf,
    file_s: PathBuf,
    base: BaseArg,
    method: MethodArg,
    measures: &str,
    format: Format,
    budget: u64,
) -> Result<String, Failure> {
    let measures = parse_measures(measures).map_err(Failure::Usage)?;
    let options = ReportOptions {
        base: base.into(),
        omega: OmegaOptions::new(method.into()).with_budget(budget),
        measures,
    };
    let r = load(&file_r)?;
    let s = load(&file_s)?;
    let report = compare(&r, &s, &options)?;
    Ok(match format {
        Format::Json => json(&report),
        Format::Tsv => {
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            report.to_tsv()
        }
        Format::Pretty => report.to_pretty(),
    })
}

#[derive(Serialize)]
struct CountReport {
    rows: Vec<u64>,
    cols: Vec<u64>,
    method: OmegaMethod,
    log_omega_nats: f64,
    log_omega_bits: f64,
    exact: Option<String>,
}

fn positive(name: &str, values: &[i64]) -> Result<Vec<u64>, Failure> {
    values
        .iter()
        .map(|&v| {
            u64::try_from(v)
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| Failure::Usage(format!("--{name} entries must be positive, got {v}")))
        })
        .collect()
}

fn run_count(rows: &[i64], cols: &[i64], method: MethodArg, budget: u64, format: Format) -> Result<String, Failure> {
    let rows = positive("rows", rows)?;
    let cols = positive("cols", cols)?;
    let margins = Margins::new(rows.clone(), cols.clone()).map_err(|e| Failure::Usage(e.to_string()))?;
    let count = omega::count(&margins, OmegaOptions::new(method.into()).with_budget(budget))?;
    let report = CountReport {
        rows,
        cols,
        method: count.method,
        log_omega_nats: count.log_value,
        log_omega_bits: count.log_value * Base::Bits.factor(),
        exact: count.exact_value.map(|v| v.to_string()),
    };
    let exact = report.exact.clone().unwrap_or_default();
    Ok(match format {
        Format::Json => json(&report),
        Format::Tsv => format!(
            "log_omega_nats\tlog_omega_bits\tmethod\texact\n{}\t{}\t{}\t{exact}\n",
            report.log_omega_nats, report.log_omega_bits, report.method
        ),
        Format::Pretty => {
            let mut out = String::new();
            let _ = writeln!(out, "ln Ω      {:.6} nats", report.log_omega_nats);
            let _ = writeln!(out, "log2 Ω    {:.6} bits", report.log_omega_bits);
            if !exact.is_empty() {
                let _ = writeln!(out, "Ω         {exact}");
            }
            let _ = writeln!(out, "method    {}", report.method);
            out
        }
    })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("reports serialize");
    out.push('\n');
    out
}
