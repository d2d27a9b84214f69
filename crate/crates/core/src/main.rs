use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pastedef::cli::{execute, parse_window, CliError, Command, Flags};
use pastedef::exactlinalg::Field;

/// Deformations of k-linear categories, functors, natural transformations
/// and pasting diagrams, computed exactly.
///
/// PROJECT is a project file, or `bundled:<name>` for a bundled example
/// (k1, dual, a2, interchange, loop, square, square_broken).
#[derive(Parser)]
#[command(name = "pastedef", version)]
struct Args {
    #[command(subcommand)]
    command: Cmd,

    /// Ground field: `q` or `fp:<p>`; overrides the project's field.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<Field>,

    /// Largest Hochschild degree assembled.
    #[arg(long, global = true)]
    max_degree: Option<usize>,

    /// Degree window `lo:hi` of assembled complexes.
    #[arg(long, global = true, value_parser = parse_window_arg, allow_hyphen_values = true)]
    window: Option<(i64, i64)>,

    /// Write the project with new deformations and a `results` table here.
    #[arg(long, global = true)]
    emit: Option<PathBuf>,

    /// Include differential matrices in the report.
    #[arg(long, global = true)]
    matrices: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check every declared structure and deformation.
    Validate { project: String },
    /// Compose a pasting scheme (`scheme` or `diagram/scheme`) along every sequentialization.
    Compose { project: String, scheme: String },
    /// Cohomology of a deformation complex; a pair subject is written `F,G`.
    Cohomology {
        project: String,
        subject: String,
        /// category, functor, pair, nat, identity3 or diagram
        kind: String,
        /// `n`, `lo:hi` or `a,b,…`
        #[arg(allow_hyphen_values = true)]
        degrees: String,
    },
    /// First-order deformations up to equivalence.
    Classify { project: String, subject: String, kind: Option<String> },
    /// The obstruction to extending a deformation to the given order.
    Obstruct { project: String, deformation: String, order: usize },
    /// Extend a deformation order by order.
    Extend { project: String, deformation: String, to_order: usize },
    /// Decide first-order equivalence of two deformations.
    Equiv { project: String, first: String, second: String },
    /// An equivalent deformation with undeformed identities.
    NormalizeUnits { project: String, deformation: String },
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: pastedef::exactlinalg::LinalgError| e.to_string())
}

fn parse_window_arg(s: &str) -> Result<(i64, i64), String> {
    parse_window(s).map_err(|e: CliError| e.to_string())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (project, cmd) = match args.command {
        Cmd::Validate { project } => (project, Command::Validate),
        Cmd::Compose { project, scheme } => (project, Command::Compose { scheme }),
        Cmd::Cohomology { project, subject, kind, degrees } => (project, Command::Cohomology { subject, kind, degrees }),
        Cmd::Classify { project, subject, kind } => (project, Command::Classify { subject, kind }),
        Cmd::Obstruct { project, deformation, order } => (project, Command::Obstruct { deformation, order }),
        Cmd::Extend { project, deformation, to_order } => (project, Command::Extend { deformation, order: to_order }),
        Cmd::Equiv { project, first, second } => (project, Command::Equiv { first, second }),
        Cmd::NormalizeUnits { project, deformation } => (project, Command::NormalizeUnits { deformation }),
    };
    let flags = Flags { field: args.field, max_degree: args.max_degree, window: args.window, emit: args.emit, matrices: args.matrices };
    let code = execute(&project, &cmd, &flags, &mut std::io::stdout().lock());
    ExitCode::from(code as u8)
}
