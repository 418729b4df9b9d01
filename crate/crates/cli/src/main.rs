//! Command-line front end. Every run prints exactly one JSON report to
//! stdout and exits with a code naming the failure class:
//!
//!   0  success (for `check`: every suite passed)
//!   2  an axiom or certification failure in the input
//!   3  a violated precondition or an unsupported request
//!   4  an internal cross-check caught disagreeing answers
//!   5  unreadable or unparseable input (also CLI usage errors)

mod commands;
mod doc;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hopflim_core::Error;

#[derive(Parser)]
#[command(
    name = "hopflim",
    version,
    about = "Exact limits of coalgebras, bialgebras and Hopf algebras",
    disable_help_subcommand = true
)]
struct Cli {
    /// Include wall-clock timings in the report (off by default so reports
    /// are byte-stable).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every axiom suite a document declares; report each violation.
    Check {
        /// Document to validate.
        file: PathBuf,
    },
    /// Compute the equalizer of two parallel morphisms from a document.
    Equalize {
        file: PathBuf,
        /// Name of the first morphism.
        #[arg(long)]
        f: String,
        /// Name of the second morphism.
        #[arg(long)]
        g: String,
        /// direct, descent, or both (runs both and cross-checks).
        #[arg(long, default_value = "both")]
        method: String,
        /// coalg, bialg, or hopf; defaults to the deepest level the pair
        /// supports.
        #[arg(long)]
        level: Option<String>,
    },
    /// Compute a finite product of named objects.
    Product {
        file: PathBuf,
        /// Comma-separated object names (repetition is allowed).
        #[arg(long, value_delimiter = ',', required = true)]
        objects: Vec<String>,
        /// coalg, bialg, or hopf; defaults to the deepest level every
        /// factor carries.
        #[arg(long)]
        level: Option<String>,
        /// Product in the category of conilpotent coalgebras (exactly two
        /// factors, needs --degree).
        #[arg(long)]
        conilpotent: bool,
        /// Truncation degree for the conilpotent construction.
        #[arg(long, requires = "conilpotent")]
        degree: Option<usize>,
    },
    /// Compute the limit of a named diagram.
    Limit {
        file: PathBuf,
        /// Name of the diagram inside the document.
        #[arg(long)]
        diagram: String,
    },
    /// Lift a linear map into a truncated cofree coalgebra.
    Lift {
        file: PathBuf,
        /// Coaugmented source object.
        #[arg(long)]
        object: String,
        /// Morphism whose matrix is the linear map to lift.
        #[arg(long)]
        phi: String,
        /// Truncation degree of the cofree target.
        #[arg(long)]
        degree: usize,
    },
    /// Find the largest subcoalgebra on which a candidate antipode works.
    AntipodeCore {
        file: PathBuf,
        /// Bialgebra to probe.
        #[arg(long)]
        object: String,
        /// Endomorphism to test as an antipode.
        #[arg(long)]
        s: String,
    },
    /// Write a ready-made document: cyclic, klein, s3, product,
    /// sweedler-h4, taft, divided-powers, or comatrix.
    Make {
        recipe: String,
        /// Group order for the cyclic recipe.
        #[arg(long)]
        order: Option<usize>,
        /// Comma-separated cyclic orders for the product recipe.
        #[arg(long, value_delimiter = ',')]
        orders: Vec<usize>,
        /// Size parameter for taft, divided-powers, and comatrix.
        #[arg(long)]
        n: Option<usize>,
        /// Ground field: Q or F<p> with p prime.
        #[arg(long, default_value = "Q")]
        field: String,
        /// Output path for the document.
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Re-run a differential-testing campaign, e.g. "equalizer:seed=7,count=50"
    /// or "subcoalgebra".
    Oracle {
        spec: String,
    },
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))
}

fn run(cmd: &Cmd) -> Result<Value, Error> {
    match cmd {
        Cmd::Check { file } => commands::cmd_check(&read(file)?),
        Cmd::Equalize { file, f, g, method, level } => {
            commands::cmd_equalize(&read(file)?, f, g, method, level.as_deref())
        }
        Cmd::Product { file, objects, level, conilpotent, degree } => {
            commands::cmd_product(&read(file)?, objects, level.as_deref(), *conilpotent, *degree)
        }
        Cmd::Limit { file, diagram } => commands::cmd_limit(&read(file)?, diagram),
        Cmd::Lift { file, object, phi, degree } => {
            commands::cmd_lift(&read(file)?, object, phi, *degree)
        }
        Cmd::AntipodeCore { file, object, s } => {
            commands::cmd_antipode_core(&read(file)?, object, s)
        }
        Cmd::Make { recipe, order, orders, n, field, out } => {
            let params = commands::MakeParams {
                order: *order,
                orders: orders.clone(),
                n: *n,
                field: field.clone(),
            };
            let (dto, mut report) = commands::cmd_make(recipe, &params)?;
            fs::write(out, doc::render_document(&dto))
                .map_err(|e| Error::Malformed(format!("cannot write {}: {e}", out.display())))?;
            report["written"] = json!(out.display().to_string());
            Ok(report)
        }
        Cmd::Oracle { spec } => commands::cmd_oracle(spec),
    }
}

/// Failure class an error belongs to, as (report status, exit code).
fn classify(e: &Error) -> (&'static str, u8) {
    match e {
        Error::Malformed(_) | Error::FieldMismatch { .. } => ("parse-error", 5),
        Error::Axiom { .. } => ("axiom-violation", 2),
        Error::Precondition(_) => ("precondition-violation", 3),
        Error::Unsupported(_) => ("unsupported-fragment", 3),
        Error::Inconsistency(_) => ("inconsistency", 4),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                // Usage errors share the parse-failure exit code; 2 would
                // collide with the axiom-violation class.
                _ => 5,
            };
            e.print().expect("cannot write diagnostics");
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    match run(&cli.cmd) {
        Ok(mut report) => {
            let code = if report["status"] == "fail" { 2 } else { 0 };
            if cli.timings {
                report["timings"] =
                    json!({ "total_ms": start.elapsed().as_secs_f64() * 1000.0 });
            }
            println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            ExitCode::from(code)
        }
        Err(e) => {
            let (status, code) = classify(&e);
            let report = json!({ "status": status, "error": e.to_string() });
            println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            ExitCode::from(code)
        }
    }
}
