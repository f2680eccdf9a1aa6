use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use semikan_cli::corpus::{default_corpus, spec_corpus, CorpusEntry, CorpusSpec};
use semikan_cli::run::{self, ConstructOptions, WitnessMode};

#[derive(Parser)]
#[command(
    name = "semikan",
    version,
    about = "Finite semi-simplicial sets: validate documents, decide lifting \
             properties, and build new complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    First,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a document and check its internal laws.
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide a property of a complex or map document at a dimension bound.
    Check {
        property: String,
        file: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Report the first failing square or all of them.
        #[arg(long, value_enum, default_value_t = Mode::First)]
        mode: Mode,
    },
    /// Build a new document from existing ones and print it.
    Construct {
        op: String,
        inputs: Vec<PathBuf>,
        #[arg(long)]
        dim: Option<usize>,
        /// Vertex id: the source for hom-left, the tip for t-extend.
        #[arg(long)]
        vertex: Option<String>,
        /// Tip vertex id for hom-left.
        #[arg(long)]
        target: Option<String>,
        /// Write the document here instead of stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Factor a map as generator attachments plus a residual check.
    Factor {
        file: PathBuf,
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 3)]
        rounds: usize,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Write the corpus documents into a directory.
    Corpus {
        #[arg(long, default_value = "corpus")]
        out: PathBuf,
        /// Generator spec file; without it the default corpus is written.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Run every invariant over the corpus and aggregate the verdicts.
    Suite {
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

/// `--dim` wins, then the SEMIKAN_DIM environment variable, then 3.
fn resolve_dim(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("SEMIKAN_DIM")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(3)
}

/// Print a line, swallowing broken pipes so `semikan ... | head` exits
/// cleanly instead of panicking.
fn emit(text: impl std::fmt::Display) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn read_value(path: &Path) -> Result<Value> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch() -> Result<u8> {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { file, json } => {
            let outcome = run::validate_value(&read_value(&file)?)?;
            if json {
                emit(serde_json::to_string_pretty(&outcome)?);
            } else {
                emit(outcome.render_text());
            }
            Ok(outcome.exit_code() as u8)
        }
        Command::Check {
            property,
            file,
            dim,
            json,
            mode,
        } => {
            let mode = match mode {
                Mode::First => WitnessMode::First,
                Mode::All => WitnessMode::All,
            };
            let verdict =
                run::check_value(&read_value(&file)?, &property, resolve_dim(dim), mode)?;
            if json {
                emit(serde_json::to_string_pretty(&verdict)?);
            } else {
                emit(verdict.render_text());
            }
            Ok(verdict.exit_code() as u8)
        }
        Command::Construct {
            op,
            inputs,
            dim,
            vertex,
            target,
            out,
        } => {
            let values = inputs
                .iter()
                .map(|p| read_value(p))
                .collect::<Result<Vec<_>>>()?;
            let opts = ConstructOptions {
                dim: resolve_dim(dim),
                vertex,
                target,
            };
            let doc = run::construct(&op, &values, &opts)?;
            let text = serde_json::to_string_pretty(&doc)?;
            match out {
                Some(path) => fs::write(&path, text + "\n")
                    .with_context(|| format!("writing {}", path.display()))?,
                None => emit(&text),
            }
            Ok(0)
        }
        Command::Factor {
            file,
            family,
            rounds,
            dim,
            json,
        } => {
            let trace = run::factor(&read_value(&file)?, &family, resolve_dim(dim), rounds)?;
            if json {
                emit(serde_json::to_string_pretty(&trace)?);
            } else {
                emit(trace.render_text());
            }
            Ok(trace.exit_code() as u8)
        }
        Command::Corpus { out, spec } => {
            let entries = corpus_entries(spec.as_deref())?;
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            for e in &entries {
                let path = out.join(format!("{}.json", e.name));
                fs::write(&path, serde_json::to_string_pretty(&e.document)? + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            emit(format_args!("wrote {} document(s) to {}", entries.len(), out.display()));
            Ok(0)
        }
        Command::Suite { dim, spec, json } => {
            let entries = corpus_entries(spec.as_deref())?;
            let report = run::suite(&entries, resolve_dim(dim));
            if json {
                emit(serde_json::to_string_pretty(&report)?);
            } else {
                emit(report.render_text());
            }
            Ok(report.exit_code() as u8)
        }
    }
}

fn corpus_entries(spec: Option<&Path>) -> Result<Vec<CorpusEntry>> {
    match spec {
        None => Ok(default_corpus()),
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let spec: CorpusSpec = serde_json::from_str(&text)
                .with_context(|| format!("parsing {}", path.display()))?;
            Ok(spec_corpus(&spec)?)
        }
    }
}
