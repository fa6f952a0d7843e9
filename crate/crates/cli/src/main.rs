//! pcaut: structure reports, non-inner automorphism certificates and
//! certificate verification for p-groups given by pc presentations.
//!
//! JSON reports go to standard output, human-readable progress to standard
//! error. Exit status: 0 success, 1 verification failure, 2 input error,
//! 3 cannot certify.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use serde::Serialize;

use pcaut::berkovich::{certify, CertifyConfig, Method, NonInnerCertificate};
use pcaut::oracle::{verify_certificate, DEFAULT_ORACLE_BOUND};
use pcaut::structure::{analyze, is_thin, ThinMethod, DEFAULT_LATTICE_BOUND};
use pcaut::{Error, Group};

/// Above this order the exhaustive oracle is allowed but slow.
const ORACLE_WARN_ORDER: usize = 729;

#[derive(Parser)]
#[command(
    name = "pcaut",
    version,
    about = "Non-inner automorphisms of order p for finite p-groups given by pc presentations",
    after_help = "EXAMPLES:\n\
                  \n  pcaut analyze corpus/m243.pc\
                  \n  pcaut find-noninner corpus/m243.pc -o m243.json\
                  \n  pcaut verify corpus/m243.pc m243.json\
                  \n  pcaut thin-check corpus/e27.pc --method coverty\
                  \n  pcaut corpus corpus/"
)]
struct Cli {
    /// Largest group order handed to the exhaustive automorphism oracle
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_BOUND)]
    oracle_bound: usize,
    /// Seed for the randomized spot checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Series, centre, Frattini subgroup, thinness and standing assumptions
    Analyze { file: PathBuf },
    /// Certificate of a non-inner automorphism of order p
    FindNoninner {
        file: PathBuf,
        /// Write the certificate here instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-check a certificate against a presentation (exit 0 iff valid)
    Verify { group_file: PathBuf, cert_file: PathBuf },
    /// Thinness by maximum antichain (exact) or by the covering test (coverty)
    ThinCheck {
        file: PathBuf,
        #[arg(long, value_parser = ["exact", "coverty"], default_value = "exact")]
        method: String,
    },
    /// Analyze, certify and verify every `.pc` file in a directory
    Corpus { dir: PathBuf },
}

/// A failed command together with its exit status.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn input(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: 2,
            error: error.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CannotCertify(_) => 3,
            Error::Internal(_) | Error::Derivation(_) | Error::Ineligible(_) => 1,
            _ => 2,
        };
        Self {
            code,
            error: e.into(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = CertifyConfig {
        oracle_bound: cli.oracle_bound,
        lattice_bound: DEFAULT_LATTICE_BOUND,
        seed: cli.seed,
    };
    let result = match &cli.command {
        Command::Analyze { file } => cmd_analyze(file),
        Command::FindNoninner { file, output } => cmd_find_noninner(file, output.as_deref(), &config),
        Command::Verify { group_file, cert_file } => cmd_verify(group_file, cert_file),
        Command::ThinCheck { file, method } => cmd_thin_check(file, method),
        Command::Corpus { dir } => cmd_corpus(dir, &config),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

/// Pretty JSON with sorted keys.
fn to_json(value: &impl Serialize) -> String {
    let value = serde_json::to_value(value).expect("reports serialize");
    serde_json::to_string_pretty(&value).expect("reports serialize")
}

fn load_group(path: &Path) -> Result<Group, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::input)?;
    Group::parse(&text).map_err(|e| Failure::input(anyhow!(e).context(format!("loading {}", path.display()))))
}

fn cmd_analyze(file: &Path) -> CmdResult {
    let g = load_group(file)?;
    let report = analyze(&g, DEFAULT_LATTICE_BOUND)?;
    eprintln!(
        "{}: order {}, class {}, thin {}, construction eligible {}",
        report.name, report.order, report.class, report.thin_coverty.is_thin, report.construction_eligible
    );
    println!("{}", to_json(&report));
    Ok(0)
}

fn warn_oracle(g: &Group, config: &CertifyConfig) {
    if g.order() > ORACLE_WARN_ORDER && g.order() <= config.oracle_bound {
        eprintln!(
            "warning: exhaustive search on a group of order {} may take a long time",
            g.order()
        );
    }
}

fn cmd_find_noninner(file: &Path, output: Option<&Path>, config: &CertifyConfig) -> CmdResult {
    let g = load_group(file)?;
    warn_oracle(&g, config);
    let cert = certify(&g, config)?;
    let json = cert.to_json();
    match output {
        Some(path) => fs::write(path, format!("{json}\n"))
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::input)?,
        None => println!("{json}"),
    }
    let method = match cert.method {
        Method::Pipeline => "pipeline",
        Method::Oracle => "oracle",
    };
    eprintln!(
        "{}: {} certificate, {}",
        g.name(),
        method,
        if cert.is_valid() { "valid" } else { "INVALID" }
    );
    Ok(if cert.is_valid() { 0 } else { 1 })
}

fn load_certificate(path: &Path) -> Result<NonInnerCertificate, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::input)?;
    NonInnerCertificate::from_json(&text).map_err(Failure::from)
}

fn cmd_verify(group_file: &Path, cert_file: &Path) -> CmdResult {
    let g = load_group(group_file)?;
    let cert = load_certificate(cert_file)?;
    let report = verify_certificate(&g, &cert)?;
    for o in &report.outcomes {
        eprintln!(
            "{:<15} claimed {:<5} recomputed {:<5} {}",
            o.check,
            o.claimed,
            o.recomputed,
            if o.passed() { "ok" } else { "FAIL" }
        );
    }
    eprintln!("{}: certificate {}", g.name(), if report.valid { "valid" } else { "INVALID" });
    println!("{}", to_json(&report));
    Ok(if report.valid { 0 } else { 1 })
}

fn cmd_thin_check(file: &Path, method: &str) -> CmdResult {
    let g = load_group(file)?;
    let method: ThinMethod = method.parse()?;
    let report = is_thin(&g, method, DEFAULT_LATTICE_BOUND)?;
    eprintln!("{}: thin {}", g.name(), report.is_thin);
    println!("{}", to_json(&report));
    Ok(0)
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum RowStatus {
    Verified,
    VerificationFailed,
    CannotCertify,
    Error,
}

#[derive(Serialize)]
struct CorpusRow {
    file: String,
    group: Option<String>,
    order: Option<usize>,
    class: Option<usize>,
    thin: Option<bool>,
    method: Option<Method>,
    status: RowStatus,
    message: Option<String>,
}

#[derive(Serialize)]
struct CorpusSummary {
    rows: Vec<CorpusRow>,
    certified: usize,
    verified: usize,
    errors: usize,
    all_verified: bool,
}

fn corpus_row(path: &Path, config: &CertifyConfig) -> CorpusRow {
    let mut row = CorpusRow {
        file: path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default(),
        group: None,
        order: None,
        class: None,
        thin: None,
        method: None,
        status: RowStatus::Error,
        message: None,
    };
    let outcome = (|| -> Result<RowStatus, Failure> {
        let g = load_group(path)?;
        row.group = Some(g.name().to_string());
        row.order = Some(g.order());
        let report = analyze(&g, DEFAULT_LATTICE_BOUND)?;
        row.class = Some(report.class);
        row.thin = Some(report.thin_coverty.is_thin);
        warn_oracle(&g, config);
        let cert = certify(&g, config)?;
        row.method = Some(cert.method);
        let cert = NonInnerCertificate::from_json(&cert.to_json())?;
        let verdict = verify_certificate(&g, &cert)?;
        Ok(if verdict.valid {
            RowStatus::Verified
        } else {
            RowStatus::VerificationFailed
        })
    })();
    match outcome {
        Ok(status) => row.status = status,
        Err(f) => {
            row.status = if f.code == 3 {
                RowStatus::CannotCertify
            } else {
                RowStatus::Error
            };
            row.message = Some(format!("{:#}", f.error));
        }
    }
    row
}

fn cmd_corpus(dir: &Path, config: &CertifyConfig) -> CmdResult {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))
        .map_err(Failure::input)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "pc"))
        .collect();
    files.sort();
    let rows: Vec<CorpusRow> = files
        .iter()
        .map(|path| {
            let row = corpus_row(path, config);
            eprintln!(
                "{:<12} {:<8} {}",
                row.file,
                row.group.as_deref().unwrap_or("-"),
                serde_json::to_value(&row.status).expect("status serializes").as_str().unwrap_or("")
            );
            row
        })
        .collect();
    let certified = rows
        .iter()
        .filter(|r| matches!(r.status, RowStatus::Verified | RowStatus::VerificationFailed))
        .count();
    let verified = rows.iter().filter(|r| matches!(r.status, RowStatus::Verified)).count();
    let errors = rows.iter().filter(|r| matches!(r.status, RowStatus::Error)).count();
    let summary = CorpusSummary {
        all_verified: certified == verified,
        rows,
        certified,
        verified,
        errors,
    };
    println!("{}", to_json(&summary));
    Ok(if summary.all_verified { 0 } else { 1 })
}
