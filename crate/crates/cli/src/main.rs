//! `catcohom`: command-line front end.
//!
//! Every subcommand writes one JSON document to stdout (or `--out`). Exit status is 0 on
//! success, 1 when a computed verdict fails and 2 on any input or usage error, in which
//! case the document is `{"error": <kind>, "message": <text>}`.

mod commands;
mod corpus;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use catcohom::Error;

#[derive(Parser, Debug)]
#[command(name = "catcohom", version, about = "Baues-Wirsching (co)homology of finite categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Indent the JSON report.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Worker threads; 1 runs everything on the calling thread.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Morphism bound for loaded categories and built comma categories.
    #[arg(long, global = true)]
    pub size_guard: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct Coefficients {
    /// Category file; optional when the coefficient file carries its own category.
    #[arg(long)]
    pub cat: Option<PathBuf>,
    #[arg(long, conflicts_with_all = ["module", "bimodule"])]
    pub natsys: Option<PathBuf>,
    #[arg(long, conflicts_with = "bimodule")]
    pub module: Option<PathBuf>,
    #[arg(long)]
    pub bimodule: Option<PathBuf>,
    /// Z, Q, Fp:<p> or F<p>. Without a coefficient file, trivial coefficients over this ring.
    #[arg(long)]
    pub ring: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct Range {
    #[arg(long, default_value_t = 3)]
    pub max_degree: usize,
    /// Build complexes only to the top degree, which is then an upper bound.
    #[arg(long)]
    pub truncated: bool,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub normalized: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Cohomology,
    Homology,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate a category, functor, coefficient or action file, and check that
    /// it survives a serialize/parse round trip.
    Validate {
        file: PathBuf,
        /// Category for coefficient files without their own.
        #[arg(long)]
        cat: Option<PathBuf>,
    },
    /// H^n_BW(C, D).
    Cohomology {
        #[command(flatten)]
        coeff: Coefficients,
        #[command(flatten)]
        range: Range,
    },
    /// H_n^BW(C, D).
    Homology {
        #[command(flatten)]
        coeff: Coefficients,
        #[command(flatten)]
        range: Range,
    },
    /// lim^n of a module.
    Limit {
        #[command(flatten)]
        coeff: Coefficients,
        #[command(flatten)]
        range: Range,
    },
    /// colim_n of a module.
    Colimit {
        #[command(flatten)]
        coeff: Coefficients,
        #[command(flatten)]
        range: Range,
    },
    /// Hochschild-Mitchell (co)homology of a bimodule (ℤC when none is given).
    Hochschild {
        #[command(flatten)]
        coeff: Coefficients,
        #[command(flatten)]
        range: Range,
        #[arg(long, value_enum, default_value_t = ModeArg::Cohomology)]
        mode: ModeArg,
    },
    /// E2 page of the spectral sequence of a functor, checked against the abutment.
    E2 {
        #[arg(long)]
        functor: PathBuf,
        #[arg(long)]
        natsys: Option<PathBuf>,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_total: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Cohomology)]
        mode: ModeArg,
        /// Compute the abutment from a complex built only to the top degree.
        #[arg(long)]
        truncated: bool,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        normalized: bool,
    },
    /// Cartan-Leray page H^p(G, H^q(C, D)) of a group action.
    CartanLeray {
        #[arg(long)]
        action: PathBuf,
        /// Coefficients on the Grothendieck construction; trivial when absent.
        #[arg(long)]
        natsys: Option<PathBuf>,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_total: usize,
    },
    /// Compare H^q(b/u, D_b) with H^q(E_b, D) along j_b for every object b.
    Locality {
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        natsys: Option<PathBuf>,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// The projection functor of the Grothendieck construction, as a functor file.
    Grothendieck {
        #[arg(long)]
        action: PathBuf,
    },
    /// Emit a bundled example as JSON files (into --out as a directory, or as one document).
    Example {
        name: String,
        /// Seed for `random`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// The result of a subcommand: a JSON document and whether its verdict passed.
pub struct Outcome {
    pub json: serde_json::Value,
    pub passed: bool,
}

impl Outcome {
    pub fn ok<T: Serialize>(value: &T) -> Result<Self, Error> {
        Ok(Outcome { json: to_value(value)?, passed: true })
    }
}

pub fn to_value<T: Serialize>(value: &T) -> Result<serde_json::Value, Error> {
    serde_json::to_value(value).map_err(|e| Error::InvalidArgument(e.to_string()))
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    message: String,
}

fn render(value: &serde_json::Value, pretty: bool) -> String {
    let mut s = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) }
        .expect("serializable");
    s.push('\n');
    s
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string()))
        }
    }
}

fn fail(kind: &str, message: String) -> ExitCode {
    let v = to_value(&ErrorReport { error: kind, message }).expect("serializable");
    print!("{}", render(&v, false));
    ExitCode::from(2)
}

fn configure_jobs(jobs: Option<usize>) -> Result<(), Error> {
    match jobs {
        None => Ok(()),
        Some(0) => Err(Error::InvalidArgument("--jobs must be at least 1".into())),
        Some(1) => {
            catcohom::par::set_sequential(true);
            Ok(())
        }
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidArgument(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return fail("Usage", e.to_string().trim().to_string());
        }
    };
    if let Err(e) = configure_jobs(cli.global.jobs) {
        return fail(e.kind(), e.to_string());
    }
    let result = if let Command::Example { name, seed } = &cli.command {
        corpus::run(name, *seed, cli.global.out.as_deref(), cli.global.pretty)
    } else {
        commands::run(&cli.command, &cli.global)
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => return fail(e.kind(), e.to_string()),
    };
    let out = if matches!(cli.command, Command::Example { .. }) { None } else { cli.global.out.as_ref() };
    if let Err(e) = emit(&render(&outcome.json, cli.global.pretty), out) {
        return fail(e.kind(), e.to_string());
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
