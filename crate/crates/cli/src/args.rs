use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "cdiff", version, about = "c-differential uniformity over GF(p^n)")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "CDIFF_THREADS")]
    pub threads: Option<usize>,
    /// Largest field order to process.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// `--d` or `--table`, never both.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct FunctionArg {
    /// Exponent of the power map x^d.
    #[arg(long)]
    pub d: Option<u64>,
    /// Lookup table file: one canonical index per line.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print p, n, q, the modulus and the chosen generator.
    FieldInfo {
        #[arg(long)]
        field: String,
    },
    /// c-differential uniformity for each selected c.
    Uniformity {
        #[arg(long)]
        field: String,
        #[command(flatten)]
        function: FunctionArg,
        /// `all`, `-1`, a canonical index, `all-except:...` or `cond:...`.
        #[arg(long, default_value = "all", allow_hyphen_values = true)]
        c: String,
    },
    /// Full spectrum report for one c.
    Spectrum {
        #[arg(long)]
        field: String,
        #[command(flatten)]
        function: FunctionArg,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// The full c-DDT as a CSV matrix.
    Ddt {
        #[arg(long)]
        field: String,
        #[command(flatten)]
        function: FunctionArg,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Check predictions against computation, from a grid file or one rule.
    Verify {
        /// TOML grid file; the shipped desk grid when neither this nor
        /// `--rule` is given.
        #[arg(long, conflicts_with = "rule")]
        grid: Option<PathBuf>,
        #[arg(long, requires = "field")]
        rule: Option<String>,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long, default_value = "all", allow_hyphen_values = true)]
        c: String,
        /// Replace the rule's claim, e.g. `<=1`, `=3`, `PcN`.
        #[arg(long, allow_hyphen_values = true)]
        expect: Option<String>,
    },
    /// Power maps with uniformity at most `u-max`.
    Search {
        #[arg(long)]
        field: String,
        #[arg(long)]
        u_max: u32,
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        c: String,
        /// Try every exponent instead of one per cyclotomic class.
        #[arg(long)]
        no_dedupe: bool,
    },
    /// The exponent (p^n+1)/(p+1), its inverse, and its uniformity at c = -1.
    Conjecture {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
    },
    /// The registered prediction rules as JSON.
    Rules,
}

/// The options shared by the compute commands, in serialisable form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliConfig {
    pub field: Option<String>,
    pub d: Option<u64>,
    pub c: Option<String>,
    pub format: Format,
    pub threads: Option<usize>,
    pub budget: Option<u64>,
    pub out: Option<PathBuf>,
}

impl CliConfig {
    pub fn new(cli: &Cli) -> Self {
        let (field, d, c) = match &cli.command {
            Command::FieldInfo { field } => (Some(field.clone()), None, None),
            Command::Uniformity { field, function, c }
            | Command::Spectrum { field, function, c }
            | Command::Ddt { field, function, c } => (Some(field.clone()), function.d, Some(c.clone())),
            Command::Verify { field, d, c, .. } => (field.clone(), *d, Some(c.clone())),
            Command::Search { field, c, .. } => (Some(field.clone()), None, Some(c.clone())),
            Command::Conjecture { p, n } => (Some(format!("{p}^{n}")), None, Some("-1".into())),
            Command::Rules => (None, None, None),
        };
        let default_format = match cli.command {
            Command::Ddt { .. } => Format::Csv,
            Command::Spectrum { .. } | Command::Verify { .. } | Command::Rules => Format::Json,
            _ => Format::Text,
        };
        CliConfig {
            field,
            d,
            c,
            format: cli.global.format.unwrap_or(default_format),
            threads: cli.global.threads,
            budget: cli.global.budget,
            out: cli.global.out.clone(),
        }
    }
}
