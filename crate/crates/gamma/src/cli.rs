//! Command-line surface: word evaluation, endomorphism checking,
//! twisted-class certificates, the finite oracle, and abelian Reidemeister
//! numbers, with table or JSON output.
//!
//! Exit codes are a stable contract: 0 success, 1 mathematical failure
//! (failed relators, rejected candidate, oracle mismatch), 2 word parse
//! error, 3 I/O or schema error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::algebra::IntMatrix;
use crate::finite_model::FiniteModel;
use crate::group::GroupSpec;
use crate::morphism::{Endomorphism, MorphismError};
use crate::twisted::{certify_r_infinite, reidemeister_abelian, TwistedError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SCHEMA: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "gamma",
    version,
    about = "Exact computation in the solvable groups Gamma(S) = Z[1/N] \u{22ca} Z^k"
)]
pub struct Cli {
    /// Exponent set S as a comma list of pairwise coprime integers >= 2
    #[arg(long, value_delimiter = ',', required = true)]
    set: Vec<u32>,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Seed for the randomized re-verification sampling of `certify --verify`
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Print progress details to stderr
    #[arg(short, long, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a word in a, t1, ..., tk to its normal form (q, v)
    Eval {
        /// Whitespace-separated letters, each with an optional ^<int>
        word: String,
    },
    /// Validate an endomorphism file and report automorphism candidacy
    EndoCheck {
        /// JSON file: {"r": "1/2", "images": [{"q": "3", "w": [1,0]}, ...]}
        file: PathBuf,
    },
    /// Emit a twisted-conjugacy certificate for an automorphism
    Certify {
        file: PathBuf,
        /// Number of witnesses to include
        #[arg(long)]
        count: usize,
        /// Write the certificate here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-check the certificate, including seeded random sampling
        #[arg(long)]
        verify: bool,
    },
    /// Run the finite congruence oracle against an endomorphism
    Oracle {
        /// Model file: {"S": [2], "m": 5, "d": [4]}
        #[arg(long)]
        model: PathBuf,
        /// Endomorphism file, same format as endo-check
        #[arg(long)]
        endo: PathBuf,
        /// Enumerate twisted classes
        #[arg(long)]
        enumerate: bool,
        /// Check the induced class maps between kernel, model, and quotient
        #[arg(long)]
        exactness: bool,
        /// Compare the class count against the fiber sum
        #[arg(long)]
        sum_formula: bool,
    },
    /// Reidemeister number of an integer matrix acting on Z^k
    Abelian {
        /// Inline JSON, e.g. "[[0,1],[1,0]]"
        matrix: String,
    },
}

enum CliError {
    Schema(String),
    Math(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => EXIT_SCHEMA,
            CliError::Math(_) => EXIT_MATH,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Schema(m) | CliError::Math(m) => m,
        }
    }
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = err.print();
            return code;
        }
    };
    let spec = match GroupSpec::new(cli.set.clone()) {
        Ok(spec) => spec,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_SCHEMA;
        }
    };
    if cli.verbose > 0 {
        eprintln!(
            "gamma: S = {:?}, N = {}, primes {:?}",
            spec.exponents(),
            spec.modulus(),
            spec.prime_factors()
        );
    }
    let result = match &cli.command {
        Command::Eval { word } => cmd_eval(&spec, word, cli.format),
        Command::EndoCheck { file } => cmd_endo_check(&spec, file, cli.format),
        Command::Certify {
            file,
            count,
            out,
            verify,
        } => cmd_certify(&spec, file, *count, out.as_deref(), *verify, cli.seed, cli.format),
        Command::Oracle {
            model,
            endo,
            enumerate,
            exactness,
            sum_formula,
        } => cmd_oracle(
            &spec,
            model,
            endo,
            OracleChecks {
                enumerate: *enumerate,
                exactness: *exactness,
                sum_formula: *sum_formula,
            },
            cli.format,
        ),
        Command::Abelian { matrix } => cmd_abelian(matrix, cli.format),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.exit_code()
        }
    }
}

fn cmd_eval(spec: &GroupSpec, word_text: &str, format: Format) -> Result<i32, CliError> {
    let word = match spec.parse_word(word_text) {
        Ok(word) => word,
        Err(err) => {
            eprintln!("error: {err}");
            eprintln!("{word_text}");
            eprintln!("{}^", " ".repeat(err.position));
            return Ok(EXIT_PARSE);
        }
    };
    let value = spec.evaluate(&word);
    match format {
        Format::Json => println!("{}", serde_json::to_value(&value).expect("element json")),
        Format::Table => {
            println!("q = {}", value.q());
            println!("v = {:?}", value.height());
        }
    }
    Ok(EXIT_OK)
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|err| CliError::Schema(format!("cannot read {}: {err}", path.display())))
}

fn load_endo(spec: &GroupSpec, path: &Path) -> Result<Endomorphism, CliError> {
    let text = read_file(path)?;
    Endomorphism::from_json(spec, &text).map_err(|err| match err {
        MorphismError::Format(_)
        | MorphismError::Ring(_)
        | MorphismError::WrongImageCount { .. }
        | MorphismError::WrongHeightLength { .. } => {
            CliError::Schema(format!("{}: {err}", path.display()))
        }
        other => CliError::Math(format!("{}: {other}", path.display())),
    })
}

fn cmd_endo_check(spec: &GroupSpec, path: &Path, format: Format) -> Result<i32, CliError> {
    let mut endo = load_endo(spec, path)?;
    let validation = endo.validate();
    let candidate = if validation.all_passed() {
        Some(
            endo.is_automorphism_candidate()
                .expect("validated endomorphism"),
        )
    } else {
        None
    };
    match format {
        Format::Json => {
            let json = serde_json::json!({
                "validation": {
                    "all_passed": validation.all_passed(),
                    "relators": validation.checks,
                },
                "candidate": candidate,
            });
            println!("{json}");
        }
        Format::Table => {
            for check in &validation.checks {
                if check.passed {
                    println!("{:<32} pass", check.relator);
                } else {
                    println!(
                        "{:<32} FAIL  lhs = {}, rhs = {}, discrepancy = {}",
                        check.relator, check.lhs, check.rhs, check.discrepancy
                    );
                }
            }
            match &candidate {
                None => println!("candidate: not evaluated (relators failed)"),
                Some(report) => {
                    println!(
                        "candidate: scalar unit = {}, matrix unimodular = {} -> {}",
                        report.scalar_is_unit,
                        report.matrix_unimodular,
                        if report.passed() { "PASS" } else { "FAIL" }
                    );
                    if let Some(inverse) = &report.inverse {
                        println!(
                            "inverse: {} (verified: {})",
                            inverse.to_json(),
                            report.inverse_verified
                        );
                    }
                }
            }
        }
    }
    Ok(if validation.all_passed() {
        EXIT_OK
    } else {
        EXIT_MATH
    })
}

fn cmd_certify(
    spec: &GroupSpec,
    path: &Path,
    count: usize,
    out: Option<&Path>,
    verify: bool,
    seed: u64,
    format: Format,
) -> Result<i32, CliError> {
    let bytes = fs::read(path)
        .map_err(|err| CliError::Schema(format!("cannot read {}: {err}", path.display())))?;
    let text = String::from_utf8_lossy(&bytes);
    let mut endo = Endomorphism::from_json(spec, &text).map_err(|err| match err {
        MorphismError::Format(_) | MorphismError::Ring(_) => {
            CliError::Schema(format!("{}: {err}", path.display()))
        }
        other => CliError::Math(format!("{}: {other}", path.display())),
    })?;
    let validation = endo.validate();
    if !validation.all_passed() {
        for failure in validation.failures() {
            eprintln!("relator failed: {}", failure.relator);
        }
        return Err(CliError::Math("endomorphism fails its relators".into()));
    }
    let mut cert = certify_r_infinite(&endo, count).map_err(|err| match err {
        TwistedError::NotCandidate(reason) => {
            CliError::Math(format!("not an automorphism candidate: {reason}"))
        }
        other => CliError::Math(other.to_string()),
    })?;
    cert.set_source_hash(hex::encode(Sha256::digest(&bytes)));
    let mut json = cert.to_json();
    let mut verified_ok = true;
    if verify {
        let entries = cert
            .verify_with_samples(seed, 64)
            .map_err(|err| CliError::Math(err.to_string()))?;
        verified_ok = entries.iter().all(|e| e.passed);
        json["verification"] =
            serde_json::to_value(&entries).expect("transcript entries serialize");
    }
    let rendered = serde_json::to_string_pretty(&json).expect("certificate serializes");
    match out {
        Some(out_path) => {
            fs::write(out_path, rendered).map_err(|err| {
                CliError::Schema(format!("cannot write {}: {err}", out_path.display()))
            })?;
            if format == Format::Table {
                println!(
                    "certificate: {} witnesses, invariants distinct, written to {}",
                    count,
                    out_path.display()
                );
            }
        }
        None => println!("{rendered}"),
    }
    Ok(if verified_ok { EXIT_OK } else { EXIT_MATH })
}

struct OracleChecks {
    enumerate: bool,
    exactness: bool,
    sum_formula: bool,
}

fn cmd_oracle(
    spec: &GroupSpec,
    model_path: &Path,
    endo_path: &Path,
    mut checks: OracleChecks,
    format: Format,
) -> Result<i32, CliError> {
    if !(checks.enumerate || checks.exactness || checks.sum_formula) {
        checks = OracleChecks {
            enumerate: true,
            exactness: true,
            sum_formula: true,
        };
    }
    let model_text = read_file(model_path)?;
    let model = FiniteModel::from_json(&model_text)
        .map_err(|err| CliError::Schema(format!("{}: {err}", model_path.display())))?;
    if model.spec() != spec {
        return Err(CliError::Schema(format!(
            "model exponent set {:?} does not match --set {:?}",
            model.spec().exponents(),
            spec.exponents()
        )));
    }
    let mut endo = load_endo(spec, endo_path)?;
    if !endo.validate().all_passed() {
        return Err(CliError::Math("endomorphism fails its relators".into()));
    }
    let fe = model
        .reduce_endo(&endo)
        .map_err(|err| CliError::Math(err.to_string()))?;

    let mut json = serde_json::Map::new();
    let mut failed = false;
    if checks.enumerate {
        let classes = model.enumerate_twisted_classes(&fe);
        if format == Format::Table {
            println!("twisted classes: {}", classes.count());
            for (rep, size) in classes.representatives().iter().zip(classes.sizes()) {
                println!("  representative (x = {}, v = {:?}), size {}", rep.x, rep.v, size);
            }
        }
        json.insert("enumerate".into(), classes.to_json());
    }
    if checks.exactness {
        let report = model.check_exact_sequence(&fe);
        if format == Format::Table {
            println!(
                "exact sequence: kernel {}, model {}, quotient {}; p-hat onto = {}, exact = {}",
                report.kernel_classes,
                report.middle_classes,
                report.quotient_classes,
                report.p_hat_onto,
                report.exact_at_middle
            );
        }
        failed |= !report.passed();
        json.insert(
            "exact_sequence".into(),
            serde_json::to_value(&report).expect("report serializes"),
        );
    }
    if checks.sum_formula {
        let report = model.check_sum_formula(&fe);
        if format == Format::Table {
            println!(
                "sum formula: classes {} vs corrected fiber sum {} (raw {}), agrees = {}",
                report.lhs, report.rhs_corrected, report.rhs_raw, report.agrees
            );
        }
        failed |= !report.passed();
        json.insert(
            "sum_formula".into(),
            serde_json::to_value(&report).expect("report serializes"),
        );
    }
    if format == Format::Json {
        println!("{}", serde_json::Value::Object(json));
    }
    Ok(if failed { EXIT_MATH } else { EXIT_OK })
}

fn cmd_abelian(matrix_text: &str, format: Format) -> Result<i32, CliError> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(matrix_text)
        .map_err(|err| CliError::Schema(format!("bad matrix: {err}")))?;
    let matrix = IntMatrix::from_i64_rows(&rows)
        .map_err(|err| CliError::Schema(format!("bad matrix: {err}")))?;
    let count = reidemeister_abelian(&matrix);
    match format {
        Format::Json => println!("{}", serde_json::json!({ "reidemeister": count })),
        Format::Table => println!("{count}"),
    }
    Ok(EXIT_OK)
}
