use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cspk::classify::classify_language;
use cspk::cone::Exactness;
use cspk::config::Limits;
use cspk::io::report::{CaptureReport, ConeReport, OracleReport};
use cspk::io::{self, ReportBody, ReportFormat};
use cspk::oracle;
use cspk::relation::{BooleanRelation, ConstraintLanguage};
use cspk::sparsify::sparsify_instance;
use cspk::Error;

#[derive(Parser)]
#[command(name = "cspk", version, about = "Sparsification and kernel bounds for Boolean constraint languages")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    /// Assignment budget for the brute-force oracle (overrides CSPK_ORACLE_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Largest source arity explored by cone-definition searches.
    #[arg(long, global = true)]
    cone_arity: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a constraint language.
    Classify {
        #[arg(long)]
        language: PathBuf,
    },
    /// Sparsify an instance, writing the kept constraints.
    Sparsify {
        #[arg(long)]
        language: PathBuf,
        #[arg(long)]
        instance: PathBuf,
        /// Kernel instance file (standard output when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Kernel report file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Balancedness certificate or witness and capturing polynomials for one relation.
    Capture {
        #[arg(long)]
        language: PathBuf,
        #[arg(long)]
        relation: String,
    },
    /// Search cone-definitions of a target relation from each language relation.
    Cone {
        #[arg(long)]
        language: PathBuf,
        /// `or1`, `or2`, ... or a relation name from the language.
        #[arg(long)]
        target: String,
    },
    /// Brute-force satisfiability, and equivalence with a kernel if given.
    Oracle {
        #[arg(long)]
        language: PathBuf,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        kernel: Option<PathBuf>,
    },
}

/// Failures reading input files exit with 2, whatever the underlying cause.
enum Failure {
    Input(Error),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

fn input<T>(r: cspk::Result<T>, path: &Path) -> Result<T, Failure> {
    r.map_err(|e| match e {
        Error::Io(io) => Failure::Run(Error::Io(std::io::Error::new(io.kind(), format!("{}: {io}", path.display())))),
        other => Failure::Input(other),
    })
}

fn target_relation(name: &str, lang: &ConstraintLanguage) -> Result<BooleanRelation, Failure> {
    if let Some(rel) = lang.get(name) {
        return Ok(rel.clone());
    }
    let lower = name.to_ascii_lowercase();
    if let Some(k) = lower.strip_prefix("or").and_then(|k| k.parse::<usize>().ok()) {
        return Ok(BooleanRelation::k_or(k)?);
    }
    Err(Error::UnknownRelation(name.to_string()).into())
}

fn emit(body: &ReportBody, format: ReportFormat, path: Option<&Path>) -> Result<(), Failure> {
    let text = io::render(body, format);
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Run(e.into())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Returns whether some search or budget was capped.
fn run(cli: Cli) -> Result<bool, Failure> {
    let mut limits = Limits::from_env()?;
    if let Some(b) = cli.budget {
        limits.equivalence_budget = b;
        limits.satisfiability_budget = b;
    }
    if let Some(c) = cli.cone_arity {
        limits.cone_source_arity = c;
    }
    let format = match cli.format {
        Format::Json => ReportFormat::Json,
        Format::Text => ReportFormat::Text,
    };
    let load_language = |p: &Path| input(io::load_language(p, limits.max_arity), p);
    match cli.command {
        Command::Classify { language } => {
            let lang = load_language(&language)?;
            let report = classify_language(&lang, &limits);
            let capped = report.or_arity_exactness == Exactness::LowerBound;
            emit(&ReportBody::Classification(report), format, None)?;
            Ok(capped)
        }
        Command::Sparsify {
            language,
            instance,
            out,
            report,
        } => {
            let lang = load_language(&language)?;
            let inst = input(io::load_instance(&instance, &lang), &instance)?;
            let (kernel, kernel_report) = sparsify_instance(&lang, &inst)?;
            match out {
                Some(p) => io::save_instance(&kernel, &p)?,
                None => print!("{}", io::write_instance(&kernel)),
            }
            if let Some(p) = report {
                emit(&ReportBody::Kernel(kernel_report), format, Some(&p))?;
            }
            Ok(false)
        }
        Command::Capture { language, relation } => {
            let lang = load_language(&language)?;
            let rel = lang
                .get(&relation)
                .ok_or_else(|| Error::UnknownRelation(relation.clone()))?;
            emit(&ReportBody::Capture(CaptureReport::new(rel)?), format, None)?;
            Ok(false)
        }
        Command::Cone { language, target } => {
            let lang = load_language(&language)?;
            let t = target_relation(&target, &lang)?;
            let sources: Vec<BooleanRelation> = lang
                .relations()
                .iter()
                .filter(|r| r.name() != target)
                .cloned()
                .collect();
            let report = ConeReport::new(&t, &sources, &limits);
            let capped = report.any_capped();
            emit(&ReportBody::Cone(report), format, None)?;
            Ok(capped)
        }
        Command::Oracle {
            language,
            instance,
            kernel,
        } => {
            let lang = load_language(&language)?;
            let inst = input(io::load_instance(&instance, &lang), &instance)?;
            let kernel = match kernel {
                Some(p) => Some(input(io::load_instance(&p, &lang), &p)?),
                None => None,
            };
            let satisfiability = oracle::brute_force_satisfiable(&lang, &inst, &limits)?;
            let (kernel_satisfiability, equivalence) = match &kernel {
                Some(k) => (
                    Some(oracle::brute_force_satisfiable(&lang, k, &limits)?),
                    Some(oracle::check_equivalence(&lang, &inst, k, &limits)?),
                ),
                None => (None, None),
            };
            let report = OracleReport {
                satisfiability,
                kernel_satisfiability,
                equivalence,
            };
            emit(&ReportBody::Oracle(report), format, None)?;
            Ok(false)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(3),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) => ExitCode::from(2),
                Error::BudgetExceeded { .. } | Error::Capped(_) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}
