//! Command-line front end over project files.
//!
//! Exit codes: 0 on success, 1 when a structure fails validation or a
//! computation gives a negative answer (obstructed, not equivalent), 2 on
//! parse and usage errors.

mod bundled;
mod commands;
pub mod project;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::defcomplex::ComplexOptions;
use crate::exactlinalg::Field;

pub use bundled::{bundled_names, bundled_project};
pub use commands::run;
pub use project::{AnyDeformation, DeformationSpec, Project, ProjectFile};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot read {0}")]
    Io(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(_) => 1,
            _ => 2,
        }
    }
}

macro_rules! compute_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Compute(e.to_string())
            }
        }
    )*};
}
compute_from!(
    crate::deform::DeformError,
    crate::defcomplex::DefcomplexError,
    crate::computad::ComputadError,
    crate::hochschild::HochschildError,
    crate::lincat::LincatError,
    crate::exactlinalg::LinalgError
);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Compose { scheme: String },
    Cohomology { subject: String, kind: String, degrees: String },
    Classify { subject: String, kind: Option<String> },
    Obstruct { deformation: String, order: usize },
    Extend { deformation: String, order: usize },
    Equiv { first: String, second: String },
    NormalizeUnits { deformation: String },
}

impl Command {
    pub fn echo(&self) -> String {
        match self {
            Command::Validate => "validate".into(),
            Command::Compose { scheme } => format!("compose {scheme}"),
            Command::Cohomology { subject, kind, degrees } => format!("cohomology {subject} {kind} {degrees}"),
            Command::Classify { subject, kind: Some(k) } => format!("classify {subject} {k}"),
            Command::Classify { subject, kind: None } => format!("classify {subject}"),
            Command::Obstruct { deformation, order } => format!("obstruct {deformation} {order}"),
            Command::Extend { deformation, order } => format!("extend {deformation} {order}"),
            Command::Equiv { first, second } => format!("equiv {first} {second}"),
            Command::NormalizeUnits { deformation } => format!("normalize-units {deformation}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub field: Option<Field>,
    pub max_degree: Option<usize>,
    pub window: Option<(i64, i64)>,
    pub emit: Option<PathBuf>,
    pub matrices: bool,
}

impl Flags {
    /// Flags override the project's settings.
    pub fn complex_options(&self, project: &Project) -> ComplexOptions {
        let s = &project.file.settings;
        ComplexOptions {
            window: self.window.or(s.window),
            max_degree: self.max_degree.or(s.max_degree).unwrap_or(ComplexOptions::default().max_degree),
        }
    }
}

/// Parses `lo:hi`.
pub fn parse_window(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Usage(format!("window `{s}` is not of the form lo:hi"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let (lo, hi) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
}

/// What a command produced.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub command: String,
    pub status: Status,
    pub findings: Vec<String>,
    /// Machine-readable results, in insertion order.
    pub results: Vec<(String, toml::Value)>,
    /// Human-readable detail lines.
    pub details: Vec<String>,
    pub matrices: Option<String>,
    /// Deformations produced by the command, ready to append to the project.
    pub deformations: Vec<DeformationSpec>,
}

impl Outcome {
    pub fn new(command: String) -> Outcome {
        Outcome {
            command,
            status: Status::Ok,
            findings: Vec::new(),
            results: Vec::new(),
            details: Vec::new(),
            matrices: None,
            deformations: Vec::new(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Failed => 1,
        }
    }

    pub fn result(&mut self, key: &str, v: impl Into<toml::Value>) {
        self.results.push((key.to_string(), v.into()));
    }

    pub fn get(&self, key: &str) -> Option<&toml::Value> {
        self.results.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn fail(&mut self, finding: impl Into<String>) {
        self.status = Status::Failed;
        self.findings.push(finding.into());
    }

    /// The human-readable report.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "status: {}", if self.status == Status::Ok { "ok" } else { "failed" });
        if !self.findings.is_empty() {
            let _ = writeln!(out, "findings:");
            for f in &self.findings {
                let _ = writeln!(out, "  - {f}");
            }
        }
        if !self.results.is_empty() {
            let _ = writeln!(out, "results:");
            for (k, v) in &self.results {
                let _ = writeln!(out, "  {k} = {v}");
            }
        }
        for d in &self.details {
            let _ = writeln!(out, "{d}");
        }
        if let Some(m) = &self.matrices {
            out.push_str(m);
        }
        out
    }

    /// The project with the produced deformations appended and a `results`
    /// table, as TOML.
    pub fn emit(&self, project: &Project) -> Result<String, CliError> {
        let mut file = project.file.clone();
        file.deformations.extend(self.deformations.iter().cloned());
        let mut results = toml::Table::new();
        results.insert("command".into(), self.command.clone().into());
        results.insert("status".into(), (if self.status == Status::Ok { "ok" } else { "failed" }).into());
        if !self.findings.is_empty() {
            results.insert("findings".into(), self.findings.clone().into());
        }
        for (k, v) in &self.results {
            results.insert(k.clone(), v.clone());
        }
        file.results = results;
        toml::to_string(&file).map_err(|e| CliError::Compute(format!("serialization failed: {e}")))
    }
}

/// Reads a project from a path, or from a bundled example written as
/// `bundled:<name>`.
pub fn load_project(path: &str, field: Option<Field>) -> Result<Project, CliError> {
    let text = match path.strip_prefix("bundled:") {
        Some(name) => bundled_project(name)
            .ok_or_else(|| CliError::Usage(format!("no bundled project `{name}` (have {})", bundled_names().join(", "))))?
            .to_string(),
        None => std::fs::read_to_string(Path::new(path)).map_err(|e| CliError::Io(format!("{path}: {e}")))?,
    };
    Project::parse(&text, field)
}

/// Loads, runs, prints and optionally emits; returns the exit code.
pub fn execute(path: &str, cmd: &Command, flags: &Flags, out: &mut impl std::io::Write) -> i32 {
    let result = load_project(path, flags.field).and_then(|p| {
        let o = run(cmd, &p, flags)?;
        if let Some(target) = &flags.emit {
            let text = o.emit(&p)?;
            std::fs::write(target, text).map_err(|e| CliError::Io(format!("{}: {e}", target.display())))?;
        }
        Ok(o)
    });
    match result {
        Ok(o) => {
            let _ = write!(out, "{}", o.render());
            o.exit_code()
        }
        Err(e) => {
            let _ = writeln!(out, "command: {}\nstatus: error\n{e}", cmd.echo());
            e.exit_code()
        }
    }
}
