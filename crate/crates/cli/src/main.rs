//! `demkit`: JSON in, JSON out.
//!
//! Exit codes: 0 on success, 1 on a domain error, 2 on malformed input. Errors
//! are printed to stdout as `{"error": {"code", "message", "context"}}`.

mod commands;
mod json;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

use json::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "demkit", version, about = "Symplectic forms over Z/p^k, Magnus expansions and Demushkin relators")]
pub struct Cli {
    /// Prime for commands that need one; a document's `ring` takes precedence.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Exponent of the ring Z/p^k, or the working precision for `relator normalize`.
    #[arg(long, global = true)]
    pub k: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on enumerated objects for brute-force commands.
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Inline input document, instead of a file or stdin.
    #[arg(long = "input-json", global = true)]
    pub input_json: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Input document; stdin when neither this nor --input-json is given.
    pub input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Alternating forms given by Gram matrices.
    Form {
        #[command(subcommand)]
        cmd: FormCmd,
    },
    /// One-relator presentations.
    Relator {
        #[command(subcommand)]
        cmd: RelatorCmd,
    },
    Demushkin {
        #[command(subcommand)]
        cmd: DemushkinCmd,
    },
    /// Intersection-rank bounds.
    Howson {
        #[command(subcommand)]
        cmd: HowsonCmd,
    },
    Retraction {
        #[command(subcommand)]
        cmd: RetractionCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum FormCmd {
    /// Validate a form and report nondegeneracy.
    Check(Input),
    /// Congruence normal form `PᵀGP` = block diagonal.
    NormalForm(Input),
    /// Symplectic basis whose b-vectors span a given isotropic subspace.
    CompleteIsotropic(Input),
    /// Lift a symplectic basis over F_p to Z/p^k.
    Lift(Input),
    /// Maximal isotropic dimension by two independent enumerations.
    IsotropicMax(Input),
    /// Random congruence `PᵀGP` from --seed.
    Scramble(Input),
}

#[derive(Subcommand, Debug)]
pub enum RelatorCmd {
    /// Linear and quadratic Magnus coefficients.
    Expand(Input),
    /// q-invariant, relator pairing and Demushkin candidacy.
    Analyze(Input),
    /// Generator change bringing the relator to normal shape.
    Normalize(Input),
    /// The word `x1^γ [x1,y1] x2^δ [x2,y2] ⋯ [xt,yt]`.
    Build {
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        gamma: BigInt,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        delta: BigInt,
    },
}

#[derive(Subcommand, Debug)]
pub enum DemushkinCmd {
    /// Rank of an open subgroup of given index.
    Rank {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        index: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum HowsonCmd {
    Bound {
        #[arg(long = "dA")]
        d_a: u64,
        #[arg(long = "dB")]
        d_b: u64,
    },
    Depth {
        #[arg(long = "dA")]
        d_a: u64,
        #[arg(long = "dB")]
        d_b: u64,
    },
    Schreier {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        index: u64,
    },
    Hn {
        #[arg(long)]
        d1: u64,
        #[arg(long)]
        d2: u64,
    },
    Open {
        #[arg(long = "dA")]
        d_a: u64,
        #[arg(long = "dB")]
        d_b: u64,
    },
    Trace {
        #[arg(long = "dG")]
        d_g: u64,
        #[arg(long = "dA")]
        d_a: u64,
        #[arg(long = "dB")]
        d_b: u64,
        #[arg(long = "joint-index")]
        joint_index: BigUint,
    },
}

#[derive(Subcommand, Debug)]
pub enum RetractionCmd {
    /// Explicit map killing the x-generators.
    Witness(Input),
}

impl Command {
    fn name(&self) -> String {
        let (group, sub) = match self {
            Command::Form { cmd } => ("form", format!("{cmd:?}")),
            Command::Relator { cmd } => ("relator", format!("{cmd:?}")),
            Command::Demushkin { cmd } => ("demushkin", format!("{cmd:?}")),
            Command::Howson { cmd } => ("howson", format!("{cmd:?}")),
            Command::Retraction { cmd } => ("retraction", format!("{cmd:?}")),
        };
        let head: String = sub.chars().take_while(|c| c.is_alphanumeric()).collect();
        let mut kebab = String::new();
        for (i, c) in head.chars().enumerate() {
            if c.is_uppercase() && i > 0 {
                kebab.push('-');
            }
            kebab.push(c.to_ascii_lowercase());
        }
        format!("{group} {kebab}")
    }
}

fn read_document(cli: &Cli, input: &Input) -> CliResult<Value> {
    let text = match (&cli.input_json, &input.input) {
        (Some(_), Some(_)) => return Err(json::malformed("give either a file or --input-json, not both")),
        (Some(s), None) => s.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Malformed { code: "InputUnreadable", message: format!("{}: {e}", path.display()) })?,
        (None, None) => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Malformed { code: "InputUnreadable", message: e.to_string() })?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| CliError::Malformed { code: "MalformedJson", message: e.to_string() })
}

fn render(value: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("serializable")
    } else {
        serde_json::to_string(value).expect("serializable")
    }
}

/// Writes one document to stdout; a closed pipe is not an error worth a panic.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            e.exit()
        }
        Err(e) => {
            let message = e.render().to_string();
            let err = json!({"error": {"code": "UsageError", "message": message.trim_end(), "context": {}}});
            emit(&render(&err, false));
            return ExitCode::from(2);
        }
    };
    let command = cli.command.name();
    match commands::run(&cli, &|input| read_document(&cli, input)) {
        Ok(value) => {
            emit(&render(&value, cli.pretty));
            ExitCode::SUCCESS
        }
        Err(err) => {
            let (status, code, message) = match err {
                CliError::Malformed { code, message } => (2, code.to_owned(), message),
                CliError::Domain(e) => (1, e.code().to_owned(), e.to_string()),
            };
            let err = json!({"error": {"code": code, "message": message, "context": {"command": command}}});
            emit(&render(&err, cli.pretty));
            ExitCode::from(status)
        }
    }
}
