//! `testme`: scaffold, check, analyze and compile Test-me! exams.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use tempfile::NamedTempFile;
use testme_core::biology::biology_model;
use testme_core::codec::{decode_model, parse_model, serialize_model, CodecError};
use testme_core::compiler::{emit_html, RunnerAssets};
use testme_core::conformance::corpus_json;
use testme_core::editor::noise::write_csv;
use testme_core::editor::{analyze_noise, Document, HostProfile, TemplateDef};
use testme_core::{format_diagnostic, validate_test, OriginRegistry};

#[derive(Parser)]
#[command(name = "testme", version, about = "Author, check and compile Test-me! exams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a new sentence file from a template.
    New {
        path: PathBuf,
        /// Class name of the new test.
        #[arg(long)]
        name: String,
        #[arg(long, default_value = "test")]
        package: String,
        /// Template file with a `<template>.manifest.json` beside it.
        #[arg(long)]
        template: Option<PathBuf>,
        /// Extra placeholder value, as KEY=VALUE.
        #[arg(long = "set", value_parser = parse_assignment)]
        set: Vec<(String, String)>,
        /// Replace an existing file.
        #[arg(long)]
        force: bool,
    },
    /// Validate a `.testme.json` model.
    Check { model: PathBuf },
    /// Compile a model into a self-contained HTML page.
    Build {
        model: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Measure the syntactic noise of a sentence file.
    Analyze {
        file: PathBuf,
        /// Built-in profile name (java, ruby) or a profile JSON file.
        #[arg(long)]
        profile: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Serve the language server protocol on stdin/stdout.
    ServeLsp,
    /// Write the Biology sample model and its page.
    Demo {
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Write the scoring conformance corpus.
    Corpus {
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
}

/// A flag value that names nothing usable; reported like other usage errors.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn parse_assignment(s: &str) -> Result<(String, String), String> {
    match s.split_once('=') {
        Some((k, v)) if !k.is_empty() => Ok((k.to_owned(), v.to_owned())),
        _ => Err(format!("expected KEY=VALUE, got '{s}'")),
    }
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).with_context(|| format!("cannot write in {}", dir.display()))?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_profile(spec: &str) -> Result<HostProfile> {
    let path = Path::new(spec);
    if path.is_file() {
        return HostProfile::from_json(&read(path)?).with_context(|| format!("invalid profile {spec}"));
    }
    HostProfile::builtin(spec).map_err(|e| UsageError(e.to_string()).into())
}

fn new_file(
    path: &Path,
    name: String,
    package: String,
    template: Option<&Path>,
    set: Vec<(String, String)>,
    force: bool,
) -> Result<()> {
    if path.exists() && !force {
        bail!("{} already exists (use --force to replace it)", path.display());
    }
    let template = match template {
        Some(t) => TemplateDef::load(t)?,
        None => TemplateDef::testme_java(),
    };
    let mut values = BTreeMap::new();
    if template.required().contains("NAME") {
        values.insert("NAME".to_owned(), name);
    }
    if template.required().contains("PACKAGE") {
        values.insert("PACKAGE".to_owned(), package);
    }
    values.extend(set);
    let text = template.instantiate(&values)?;
    write_atomic(path, text.as_bytes())
}

/// Prints every diagnostic; true when any is an error.
fn check(path: &Path) -> Result<bool> {
    let model = decode_model(&read(path)?).with_context(|| format!("{} is not a test model", path.display()))?;
    let diagnostics = validate_test(&model, &OriginRegistry::new());
    for d in &diagnostics {
        println!("{}", format_diagnostic(d));
    }
    Ok(diagnostics.iter().any(|d| d.is_error()))
}

fn build(model: &Path, output: &Path) -> Result<bool> {
    let parsed = match parse_model(&read(model)?) {
        Ok(m) => m,
        Err(CodecError::InvariantViolation(diagnostics)) => {
            for d in &diagnostics {
                println!("{}", format_diagnostic(d));
            }
            return Ok(false);
        }
        Err(e) => return Err(e).with_context(|| format!("{} is not a test model", model.display())),
    };
    let html = emit_html(&parsed, &RunnerAssets::bundled())?;
    write_atomic(output, html.as_bytes())?;
    Ok(true)
}

fn analyze(file: &Path, profile: &str, format: Format) -> Result<()> {
    let profile = load_profile(profile)?;
    let doc = Document::new(file.display().to_string(), read(file)?);
    let report = analyze_noise(&doc, &profile).with_context(|| file.display().to_string())?;
    match format {
        Format::Text => print!("{report}"),
        Format::Csv => write_csv(std::io::stdout().lock(), &[(&doc.uri, &profile.name, report)])?,
    }
    Ok(())
}

fn demo(out_dir: &Path) -> Result<()> {
    std::fs::create_dir_all(out_dir).with_context(|| format!("cannot create {}", out_dir.display()))?;
    let model = biology_model();
    let json_path = out_dir.join("biology.testme.json");
    let html_path = out_dir.join("biology.html");
    write_atomic(&json_path, serialize_model(&model).as_bytes())?;
    write_atomic(&html_path, emit_html(&model, &RunnerAssets::bundled())?.as_bytes())?;
    println!("{}", json_path.display());
    println!("{}", html_path.display());
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let ok = match cli.command {
        Command::New {
            path,
            name,
            package,
            template,
            set,
            force,
        } => {
            new_file(&path, name, package, template.as_deref(), set, force)?;
            true
        }
        Command::Check { model } => !check(&model)?,
        Command::Build { model, output } => build(&model, &output)?,
        Command::Analyze { file, profile, format } => {
            analyze(&file, &profile, format)?;
            true
        }
        Command::ServeLsp => {
            let code = testme_core::lsp::serve(std::io::stdin().lock(), std::io::stdout().lock());
            return Ok(ExitCode::from(code as u8));
        }
        Command::Demo { out_dir } => {
            demo(&out_dir)?;
            true
        }
        Command::Corpus { output } => {
            write_atomic(&output, corpus_json().as_bytes())?;
            true
        }
    };
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
