//! Command-line surface: argument parsing and the process entry point.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::{ContextKind, ContextValue, ErrorKind};
use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::{run_command, Command, Format};
use crate::error::{Error, Result};
use crate::hochschild::SIZE_LIMIT_ENV;
use crate::workspace::{fixture_workspace, parse_workspace, Workspace};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeedArg {
    None,
}

#[derive(Debug, Parser)]
#[command(name = "ooclab", version, about = "Exact cohomology of O-operators and their morphisms")]
struct Args {
    /// Workspace document; the built-in fixture catalog when omitted.
    #[arg(long, global = true)]
    workspace: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: FormatArg,
    /// Highest cochain degree; overrides the workspace setting.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Enumeration is deterministic; only `none` is accepted.
    #[arg(long, global = true, value_enum)]
    seed: Option<SeedArg>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Run every validator, or the one for a named object.
    Validate {
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        all: bool,
    },
    /// Star algebra and induced bimodule of operators.
    Star {
        #[arg(long)]
        operator: Option<String>,
    },
    /// Cohomology of operators.
    Cohomology {
        #[arg(long)]
        operator: Option<String>,
    },
    /// Mapping-cylinder cohomology of morphisms.
    Cylinder {
        #[arg(long)]
        morphism: Option<String>,
    },
    /// Compare cylinder cohomology with the cohomology of the bang operator.
    Cct {
        #[arg(long)]
        morphism: Option<String>,
    },
    /// r-matrix equivalence scans and checks of workspace r-matrices.
    Rmatrix {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        rmatrix: Option<String>,
    },
    /// Rota-Baxter bang construction against the generic route.
    RbBang {
        #[arg(long)]
        morphism: Option<String>,
    },
    /// Built-in fixture catalog.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
}

#[derive(Debug, Subcommand)]
enum FixturesAction {
    List,
    /// Print the fixture and its dependencies as a workspace document.
    Emit { name: String },
}

/// A parsed command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub workspace: Option<PathBuf>,
    pub format: Format,
    pub command: Command,
}

/// Parses arguments (including the program name). Unknown subcommands map
/// to [`Error::UnknownCommand`]; other usage errors are returned by clap.
pub fn parse_args<I, T>(args: I) -> std::result::Result<Invocation, ParseFailure>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let parsed = Args::try_parse_from(&args).map_err(|e| match e.kind() {
        ErrorKind::InvalidSubcommand => {
            let name = match e.get(ContextKind::InvalidSubcommand) {
                Some(ContextValue::String(s)) => s.clone(),
                _ => String::new(),
            };
            ParseFailure::Command(Error::UnknownCommand(name))
        }
        _ => ParseFailure::Usage(e),
    })?;
    let d = parsed.max_degree;
    let command = match parsed.command {
        Sub::Validate { name, .. } => Command::Validate { name },
        Sub::Star { operator } => Command::Star { operator },
        Sub::Cohomology { operator } => Command::Cohomology { operator, max_degree: d },
        Sub::Cylinder { morphism } => Command::Cylinder { morphism, max_degree: d },
        Sub::Cct { morphism } => Command::Cct { morphism, max_degree: d },
        Sub::Rmatrix { algebra, rmatrix } => Command::Rmatrix { algebra, rmatrix },
        Sub::RbBang { morphism } => Command::RbBang { morphism, max_degree: d },
        Sub::Fixtures { action: FixturesAction::List } => Command::FixturesList,
        Sub::Fixtures { action: FixturesAction::Emit { name } } => Command::FixturesEmit { name },
    };
    let format = match parsed.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    Ok(Invocation {
        workspace: parsed.workspace,
        format,
        command,
    })
}

#[derive(Debug)]
pub enum ParseFailure {
    Usage(clap::Error),
    Command(Error),
}

fn load(path: &Option<PathBuf>) -> Result<Workspace> {
    match path {
        Some(p) => parse_workspace(p),
        None => fixture_workspace("all"),
    }
}

/// Runs an invocation, returning the rendered output and whether every
/// asserted check passed.
pub fn execute(inv: &Invocation) -> Result<(String, bool)> {
    let ws = load(&inv.workspace)?;
    let outcome = run_command(&ws, &inv.command)?;
    Ok((outcome.render(inv.format), outcome.passed()))
}

/// Process entry point: 0 when every asserted check passes, 1 when a check
/// fails or a command errors, 2 on usage errors.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let inv = match parse_args(args) {
        Ok(inv) => inv,
        Err(ParseFailure::Usage(e)) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
        Err(ParseFailure::Command(e)) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    // A workspace size limit applies unless the environment already sets one.
    if std::env::var_os(SIZE_LIMIT_ENV).is_none() {
        if let Some(path) = &inv.workspace {
            if let Ok(Some(limit)) = parse_workspace(path).map(|ws| ws.settings.size_limit) {
                std::env::set_var(SIZE_LIMIT_ENV, limit.to_string());
            }
        }
    }
    match execute(&inv) {
        Ok((text, passed)) => {
            print!("{text}");
            if passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
