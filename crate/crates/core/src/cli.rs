//! Command-line front end.
//!
//! ```text
//! pfms validate  model.pfm [--strict]
//! pfms decompose model.pfm [-o DIR] [--format dot,json,tables] [--strict]
//! pfms render    model.pfm [-o DIR]
//! pfms report    model.pfm [--strict]
//! ```
//!
//! Exit codes: 0 on success, 1 on parse, validation, engine or I/O errors,
//! 2 on usage errors. Nothing is written unless the whole run succeeds.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dsl::{parse_with_diagnostics, ParseDiagnostic};
use crate::engine::{build_similarity, decompose, DecompositionResult};
use crate::export::{emit_json, emit_report, render_architecture_dot, render_diagram_dot};
use crate::model::{Model, Severity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Format {
    Dot,
    Json,
    Tables,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
enum CommandArg {
    /// Parse and validate a model, printing diagnostics.
    Validate(Common),
    /// Decompose a model and write the architecture files.
    Decompose(Common),
    /// Write one DOT file per problem diagram.
    Render(Common),
    /// Print the report tables to standard output.
    Report(Common),
}

#[derive(Clone, Debug, PartialEq, Eq, Args)]
struct Common {
    /// Path to the `.pfm` model.
    input: PathBuf,
    /// Directory for generated files.
    #[arg(short = 'o', long = "output-dir", default_value = ".")]
    output_dir: PathBuf,
    /// Outputs to produce (comma separated). Defaults to all.
    #[arg(long, value_enum, value_delimiter = ',')]
    format: Vec<Format>,
    /// Treat warnings as errors.
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Parser)]
#[command(
    name = "pfms",
    version,
    about = "Problem-frames microservice decomposition"
)]
struct Cli {
    #[command(subcommand)]
    command: CommandArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Decompose,
    Render,
    Report,
}

/// A fully parsed invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliConfig {
    pub command: Command,
    pub input_path: PathBuf,
    pub output_dir: PathBuf,
    /// Sorted and deduplicated; never empty.
    pub formats: Vec<Format>,
    pub strict: bool,
}

impl CliConfig {
    pub fn new(command: Command, input_path: impl Into<PathBuf>) -> Self {
        Self {
            command,
            input_path: input_path.into(),
            output_dir: PathBuf::from("."),
            formats: vec![Format::Dot, Format::Json, Format::Tables],
            strict: false,
        }
    }

    pub fn wants(&self, format: Format) -> bool {
        self.formats.contains(&format)
    }
}

impl From<Cli> for CliConfig {
    fn from(cli: Cli) -> Self {
        let (command, c) = match cli.command {
            CommandArg::Validate(c) => (Command::Validate, c),
            CommandArg::Decompose(c) => (Command::Decompose, c),
            CommandArg::Render(c) => (Command::Render, c),
            CommandArg::Report(c) => (Command::Report, c),
        };
        let mut formats = c.format;
        formats.sort();
        formats.dedup();
        if formats.is_empty() {
            formats = vec![Format::Dot, Format::Json, Format::Tables];
        }
        CliConfig {
            command,
            input_path: c.input,
            output_dir: c.output_dir,
            formats,
            strict: c.strict,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parses `args` (program name first) and runs the command.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&CliConfig::from(cli), out, err),
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            }
        }
    }
}

pub fn run(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(config, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Reported) => EXIT_FAILURE,
        Err(Failure::Message(msg)) => {
            let _ = writeln!(err, "{}: error: {msg}", config.input_path.display());
            EXIT_FAILURE
        }
    }
}

enum Failure {
    /// Diagnostics were already printed.
    Reported,
    Message(String),
}

fn execute(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let path = &config.input_path;
    let source = fs::read_to_string(path)
        .map_err(|e| Failure::Message(format!("cannot read input: {e}")))?;
    let model = load(path, &source, config.strict, err)?;

    match config.command {
        Command::Validate => {
            let _ = writeln!(
                out,
                "{}: ok ({} diagrams)",
                path.display(),
                model.diagrams.len()
            );
            Ok(())
        }
        Command::Render => {
            let files: Vec<(String, String)> = model
                .diagrams
                .iter()
                .map(|d| (format!("{}.dot", d.id), render_diagram_dot(d)))
                .collect();
            write_all_or_nothing(&config.output_dir, &files).map_err(Failure::Message)?;
            report_written(out, &config.output_dir, &files);
            Ok(())
        }
        Command::Report => {
            let result = run_engine(&model, config.strict, path, err)?;
            let sim = build_similarity(&model).map_err(|e| Failure::Message(e.to_string()))?;
            let _ = write!(out, "{}", emit_report(&model, &sim, &result).to_text());
            Ok(())
        }
        Command::Decompose => {
            let result = run_engine(&model, config.strict, path, err)?;
            let mut files = Vec::new();
            if config.wants(Format::Dot) {
                files.push((
                    "architecture.dot".to_owned(),
                    render_architecture_dot(&result),
                ));
                for ms in &result.microservices {
                    files.push((format!("{}.dot", ms.id), render_diagram_dot(&ms.merged)));
                }
            }
            if config.wants(Format::Json) {
                files.push(("result.json".to_owned(), emit_json(&result)));
            }
            if config.wants(Format::Tables) {
                let sim = build_similarity(&model).map_err(|e| Failure::Message(e.to_string()))?;
                files.push((
                    "report.txt".to_owned(),
                    emit_report(&model, &sim, &result).to_text(),
                ));
            }
            write_all_or_nothing(&config.output_dir, &files).map_err(Failure::Message)?;
            report_written(out, &config.output_dir, &files);
            Ok(())
        }
    }
}

fn load(path: &Path, source: &str, strict: bool, err: &mut dyn Write) -> Result<Model, Failure> {
    let parsed = parse_with_diagnostics(source);
    for d in &parsed.diagnostics {
        print_diagnostic(err, path, d, strict);
    }
    let warned = parsed.diagnostics.iter().any(|d| !d.is_error());
    match parsed.model {
        Some(_) if strict && warned => Err(Failure::Reported),
        Some(model) => Ok(model),
        None => Err(Failure::Reported),
    }
}

fn print_diagnostic(err: &mut dyn Write, path: &Path, d: &ParseDiagnostic, strict: bool) {
    let severity = if strict { Severity::Error } else { d.severity };
    let _ = write!(
        err,
        "{}:{}: {severity}: {}",
        path.display(),
        d.span,
        d.message
    );
    if let Some(exp) = &d.expected {
        let _ = write!(err, " (expected {exp})");
    }
    let _ = writeln!(err);
}

fn run_engine(
    model: &Model,
    strict: bool,
    path: &Path,
    err: &mut dyn Write,
) -> Result<DecompositionResult, Failure> {
    let result = decompose(model).map_err(|e| Failure::Message(e.to_string()))?;
    let mut warned = false;
    for w in result.warnings() {
        warned = true;
        let severity = if strict { "error" } else { "warning" };
        let _ = writeln!(err, "{}: {severity}: {}", path.display(), w.message);
    }
    if strict && warned {
        return Err(Failure::Reported);
    }
    Ok(result)
}

fn report_written(out: &mut dyn Write, dir: &Path, files: &[(String, String)]) {
    for (name, _) in files {
        let _ = writeln!(out, "wrote {}", dir.join(name).display());
    }
}

/// Writes every file to a temporary name first, then renames them into place.
/// On any failure the temporaries and already renamed files are removed.
fn write_all_or_nothing(dir: &Path, files: &[(String, String)]) -> Result<(), String> {
    fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    let temp_name = |name: &str| dir.join(format!(".{name}.pfms-tmp"));

    let mut staged: Vec<PathBuf> = Vec::new();
    for (name, content) in files {
        let tmp = temp_name(name);
        if let Err(e) = fs::write(&tmp, content) {
            let _ = fs::remove_file(&tmp);
            for p in &staged {
                let _ = fs::remove_file(p);
            }
            return Err(format!("cannot write {}: {e}", dir.join(name).display()));
        }
        staged.push(tmp);
    }

    let mut placed: Vec<PathBuf> = Vec::new();
    for ((name, _), tmp) in files.iter().zip(&staged) {
        let target = dir.join(name);
        if let Err(e) = fs::rename(tmp, &target) {
            for p in staged.iter().chain(&placed) {
                let _ = fs::remove_file(p);
            }
            return Err(format!("cannot write {}: {e}", target.display()));
        }
        placed.push(target);
    }
    Ok(())
}
