mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use extsym::freeword::{DEFAULT_BEAM, DEFAULT_DEPTH};
use serde_json::json;

/// Extended symmetric unions: Alexander polynomials and epimorphism checks.
#[derive(Debug, Parser)]
#[command(name = "extsym", version)]
pub struct Cli {
    /// Relator insertions allowed when certifying a word trivial.
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH)]
    pub depth: usize,
    /// Words kept per level of the triviality search.
    #[arg(long, global = true, default_value_t = DEFAULT_BEAM)]
    pub beam: usize,
    /// Catalog file to use instead of the bundled one.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Alexander polynomial of a closure expression, e.g. `extsym(3_1D, T(-7/4))`.
    Alex {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        expr: Vec<String>,
    },
    /// Build N(rot(T) + (D + D*)) and run the full verification suite.
    #[command(name = "verify-thm1")]
    VerifyThm1 {
        /// Partial-knot tangle: a catalog name or tangle expression.
        d: String,
        /// The tangle T.
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        t: Vec<String>,
    },
    /// Rebuild and verify the ten Montesinos examples.
    Table1,
    /// Random non-fibered examples over a fibered two-bridge partial knot.
    Family {
        khat: String,
        count: usize,
        #[arg(allow_hyphen_values = true)]
        seed: u64,
    },
    /// Load and self-verify the catalog.
    #[command(name = "catalog-check")]
    CatalogCheck,
}

/// A failure reported as a JSON object.
#[derive(Debug)]
pub struct CliError {
    pub kind: String,
    pub message: String,
    pub location: Option<(usize, usize)>,
    pub exit: u8,
}

impl From<extsym::Error> for CliError {
    fn from(e: extsym::Error) -> Self {
        let location = match &e {
            extsym::Error::Syntax { line, column, .. } => Some((*line, *column)),
            _ => None,
        };
        let kind = e.kind();
        let usage = matches!(
            kind,
            "syntax_error" | "semantic_error" | "not_found" | "bad_tangle_pattern" | "invalid_fraction" | "no_even_expansion" | "not_a_knot" | "io" | "malformed"
        );
        CliError { kind: kind.to_string(), message: e.to_string(), location, exit: if usage { 2 } else { 1 } }
    }
}

impl CliError {
    fn to_json(&self) -> serde_json::Value {
        let mut err = json!({ "kind": self.kind, "message": self.message });
        if let Some((line, column)) = self.location {
            err["line"] = json!(line);
            err["column"] = json!(column);
        }
        json!({ "error": err })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let err = CliError { kind: "usage".into(), message: e.to_string().trim().to_string(), location: None, exit: 2 };
            eprintln!("{}", err.to_json());
            return ExitCode::from(2);
        }
    };
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            if cli.json {
                println!("{}", err.to_json());
            } else {
                eprintln!("{}", err.to_json());
            }
            ExitCode::from(err.exit)
        }
    }
}
