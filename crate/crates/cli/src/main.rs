//! `minmod-lab`: exact minimum-modulus experiments from the command line.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage error or unknown
//! operator spec, 3 point budget exceeded, 4 I/O error or malformed
//! matrix file.

mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use minmod_core::constructions::{paper_operator, paper_perturbation};
use minmod_core::exactnum::parse_scalar;
use minmod_core::harness::{
    convergence_study, minimizing_family, non_attainment_profile, rank_one_search,
    weak_null_test, witness_family, HarnessError, SearchConfig, StudyConfig,
};
use minmod_core::minmod::{
    branch_and_bound_min, brute_force_min, min_modulus_sup, perturbation_gain, OracleError,
};
use minmod_core::regression::{run_paper_check, Fault, PaperCheckConfig};
use minmod_core::report::{write_text, Destination, EscapeProfile, Format, Table, ToTable};
use minmod_core::{Rational, Vector};

use crate::spec::{OperatorSpec, SpecError};

#[derive(Debug, Parser)]
#[command(name = "minmod-lab", version, about = "Exact minimum modulus of operators on finite sup-norm sections")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Add 12-place decimal columns next to exact ones.
    #[arg(long, global = true)]
    approx: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum OutputFormat {
    Text,
    Csv,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum OracleMethod {
    /// Exhaustive facet grid.
    Grid,
    /// Lipschitz branch and bound with the same certificate.
    Bnb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum InjectFault {
    /// Replace 2^(1-j) by 2^(-j) in the functional.
    CorruptF,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Family {
    /// The vectors x^(N) = (1, 1/2, ..., 1/2).
    Minimizing,
    /// Exact minimizers of the counterexample operator.
    Witness,
    /// The basis vectors e_N.
    Basis,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the fixed regression over the counterexample.
    PaperCheck {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, value_enum)]
        inject_fault: Option<InjectFault>,
    },
    /// Exact minimum modulus of one operator.
    Minmod { spec: String, n: usize },
    /// m_N of the counterexample operator over a range of sections.
    Converge { n_min: usize, n_max: usize },
    /// Certified grid bracket for the minimum modulus.
    Oracle {
        spec: String,
        n: usize,
        /// Grid resolution, a positive rational.
        #[arg(long, default_value = "1/50")]
        h: String,
        #[arg(long, default_value_t = 10_000_000)]
        point_budget: u64,
        #[arg(long, value_enum, default_value_t = OracleMethod::Grid)]
        method: OracleMethod,
    },
    /// m(T), m(T+K) and the gain for the counterexample pair.
    Perturb { n: usize },
    /// Rank-one coordinate search for a perturbation raising m(T).
    Search {
        n: usize,
        /// Norm budget for K, a non-negative rational.
        #[arg(long, default_value = "1")]
        budget: String,
        #[arg(long, default_value_t = 200)]
        iterations: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Witness tail statistics per N.
    Profile { n_min: usize, n_max: usize },
    /// Coordinatewise weak-null diagnostic on a family of unit vectors.
    WeakNull {
        #[arg(value_enum)]
        family: Family,
        n_min: usize,
        n_max: usize,
        #[arg(long, default_value = "0")]
        threshold: String,
    },
}

/// The effective configuration, echoed into every report header.
#[derive(Debug, Default, Serialize)]
struct RunConfig {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    operator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_min: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    point_budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<OracleMethod>,
    #[serde(skip_serializing_if = "Option::is_none")]
    budget: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inject_fault: Option<InjectFault>,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<Family>,
    #[serde(skip_serializing_if = "Option::is_none")]
    threshold: Option<String>,
    format: Option<OutputFormat>,
    out: Option<String>,
    approx: bool,
}

#[derive(Debug)]
enum CliError {
    Check(String),
    Usage(String),
    Budget(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Check(m) | CliError::Usage(m) | CliError::Budget(m) | CliError::Io(m) => m,
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Usage(m) => CliError::Usage(m),
            SpecError::Input(m) => CliError::Io(m),
        }
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            OracleError::NonPositiveResolution => CliError::Usage(e.to_string()),
        }
    }
}

fn rational_arg(name: &str, text: &str) -> Result<Rational, CliError> {
    parse_scalar(text).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

fn section(n: usize) -> Result<usize, CliError> {
    if n == 0 {
        Err(CliError::Usage("N must be at least 1".into()))
    } else {
        Ok(n)
    }
}

/// Builds the report for one command, plus whether its checks passed.
fn execute(command: &Command, config: &mut RunConfig) -> Result<(Table, bool), CliError> {
    match command {
        Command::PaperCheck { n_max, inject_fault } => {
            config.command = "paper-check";
            config.n_max = Some(*n_max);
            config.inject_fault = *inject_fault;
            if *n_max < 2 {
                return Err(CliError::Usage("--n-max must be at least 2".into()));
            }
            let report = run_paper_check::<Rational>(&PaperCheckConfig {
                n_max: *n_max,
                fault: inject_fault.map(|InjectFault::CorruptF| Fault::CorruptFunctional),
            });
            Ok((report.to_table(), report.passed()))
        }
        Command::Minmod { spec, n } => {
            config.command = "minmod";
            config.operator = Some(spec.clone());
            config.n = Some(*n);
            let t = OperatorSpec::parse(spec)?.build(section(*n)?)?;
            Ok((min_modulus_sup(&t).to_table(), true))
        }
        Command::Converge { n_min, n_max } => {
            config.command = "converge";
            config.n_min = Some(*n_min);
            config.n_max = Some(*n_max);
            let report = convergence_study::<Rational>(*n_min, *n_max, &StudyConfig::default())?;
            let passed = report.all_checks_pass();
            Ok((report.to_table(), passed))
        }
        Command::Oracle {
            spec,
            n,
            h,
            point_budget,
            method,
        } => {
            config.command = "oracle";
            config.operator = Some(spec.clone());
            config.n = Some(*n);
            config.h = Some(h.clone());
            config.point_budget = Some(*point_budget);
            config.method = Some(*method);
            let t = OperatorSpec::parse(spec)?.build(section(*n)?)?;
            let h = rational_arg("h", h)?;
            let result = match method {
                OracleMethod::Grid => brute_force_min(&t, &h, *point_budget)?,
                OracleMethod::Bnb => branch_and_bound_min(&t, &h, *point_budget)?,
            };
            let engine = min_modulus_sup(&t).value;
            let inside = result.contains(&engine);
            let table = result
                .to_table()
                .with_summary("engine_value", engine.to_string())
                .with_summary("engine_inside", inside);
            Ok((table, inside))
        }
        Command::Perturb { n } => {
            config.command = "perturb";
            config.n = Some(*n);
            let n = section(*n)?;
            let t = paper_operator::<Rational>(n);
            let k = paper_perturbation::<Rational>(n);
            let gain = perturbation_gain(&t, &k).expect("matching dimensions");
            let table = gain.to_table().with_summary("k_norm", k.op_norm_sup().to_string());
            Ok((table, true))
        }
        Command::Search {
            n,
            budget,
            iterations,
            seed,
        } => {
            config.command = "search";
            config.n = Some(*n);
            config.budget = Some(budget.clone());
            config.iterations = Some(*iterations);
            config.seed = Some(*seed);
            let t = paper_operator::<Rational>(section(*n)?);
            let search = SearchConfig {
                iterations: *iterations,
                seed: *seed,
                ..SearchConfig::default()
            };
            let outcome = rank_one_search(&t, &rational_arg("budget", budget)?, &search)?;
            Ok((outcome.to_table(), true))
        }
        Command::Profile { n_min, n_max } => {
            config.command = "profile";
            config.n_min = Some(*n_min);
            config.n_max = Some(*n_max);
            let rows = non_attainment_profile::<Rational>(*n_min, *n_max, &StudyConfig::default())?;
            let passed = rows.iter().all(|r| r.matches_prediction());
            Ok((EscapeProfile(rows).to_table(), passed))
        }
        Command::WeakNull {
            family,
            n_min,
            n_max,
            threshold,
        } => {
            config.command = "weak-null";
            config.family = Some(*family);
            config.n_min = Some(*n_min);
            config.n_max = Some(*n_max);
            config.threshold = Some(threshold.clone());
            if *n_min < 1 || n_min > n_max {
                return Err(CliError::Usage(format!(
                    "invalid section range {n_min}..={n_max}"
                )));
            }
            let members: Vec<Vector> = match family {
                Family::Minimizing => minimizing_family(*n_min, *n_max),
                Family::Witness => witness_family(*n_min, *n_max),
                Family::Basis => (*n_min..=*n_max)
                    .map(|n| Vector::basis(n, n).expect("n >= 1"))
                    .collect(),
            };
            let verdict = weak_null_test(&members, &rational_arg("threshold", threshold)?)?;
            Ok((verdict.to_table(), true))
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let mut config = RunConfig {
        format: Some(cli.format),
        out: cli.out.as_ref().map(|p| p.display().to_string()),
        approx: cli.approx,
        ..RunConfig::default()
    };
    let (table, passed) = execute(&cli.command, &mut config)?;
    let config = serde_json::to_value(&config).unwrap_or(Value::Null);
    let text = table
        .render(&config, cli.format.into(), cli.approx)
        .map_err(|e| CliError::Io(e.to_string()))?;
    let destination = cli
        .out
        .clone()
        .map_or(Destination::Stdout, Destination::File);
    write_text(&text, &destination).map_err(|e| CliError::Io(e.to_string()))?;
    if passed {
        Ok(())
    } else {
        let failed = table
            .summary
            .get("failed_checks")
            .map_or_else(|| "see report".to_string(), Value::to_string);
        Err(CliError::Check(format!("checks failed: {failed}")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("minmod-lab: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
