//! Argument parsing and dispatch. Exit codes: 0 success, 1 bad input,
//! 2 validation failure.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::document::{self, DocError};
use crate::graph::{locus_graph, render_sections, sector_graph};
use crate::report::{self, CommandError, Outcome};

#[derive(Debug, Parser)]
#[command(name = "branchweight", version, about = "Branched surfaces, weights and contact structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every validator on a document.
    Validate { doc: PathBuf },
    /// Minimal generators of each surface's switch system.
    Hilbert {
        doc: PathBuf,
        #[arg(long)]
        surface: Option<String>,
        /// Cross-check generators with entries up to N by brute force.
        #[arg(long, value_name = "N")]
        oracle_bound: Option<u64>,
    },
    /// Build and classify the surface carried by a weight.
    Carry {
        doc: PathBuf,
        /// A vector like `1,0,2` or the name of a stored weight.
        #[arg(long)]
        weight: String,
        #[arg(long)]
        surface: Option<String>,
        /// Write the sheet adjacency graph here.
        #[arg(long, value_name = "FILE")]
        graph: Option<PathBuf>,
    },
    /// `lutz DOC --base B --target T` plans a path; `lutz enumerate DOC --base B --bound N` lists structures.
    Lutz {
        #[arg(num_args = 1..=2, value_name = "[enumerate] DOC")]
        args: Vec<String>,
        #[arg(long)]
        base: String,
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        surface: Option<String>,
    },
    /// Bypass surgery on the dividing set of one face.
    Bypass {
        doc: PathBuf,
        /// `TETRAHEDRON:FACE`.
        #[arg(long)]
        face: String,
        /// `LEFT,MIDDLE,RIGHT` arc indices or `half:ARC`.
        #[arg(long)]
        site: String,
        /// `pos` or `neg`.
        #[arg(long)]
        side: String,
        /// Write the updated document here.
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Prune an ensemble until its domain has no boundary.
    Prune {
        doc: PathBuf,
        #[arg(long)]
        ensemble: Option<String>,
        #[arg(long, value_name = "C")]
        cap: Option<String>,
    },
    /// Adjacency lists of a surface's branch locus and sectors.
    Graph {
        doc: PathBuf,
        #[arg(long)]
        surface: Option<String>,
    },
}

/// What a run produced: text for stdout and stderr, and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl From<CommandError> for Run {
    fn from(e: CommandError) -> Self {
        Run { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() }
    }
}

fn doc_error(e: DocError) -> CommandError {
    if e.is_validation_failure() {
        CommandError::Failed(e.to_string())
    } else {
        CommandError::Input(e.to_string())
    }
}

fn load(path: &Path) -> Result<(document::ComplexDocument, document::Resolved), CommandError> {
    document::load(path).map_err(doc_error)
}

fn write_file(path: &Path, text: &str) -> Result<(), CommandError> {
    std::fs::write(path, text).map_err(|e| CommandError::Input(format!("cannot write {}: {e}", path.display())))
}

fn finish(o: Outcome) -> Run {
    let code = if o.is_pass() { 0 } else { 2 };
    Run { stdout: o.text, stderr: String::new(), code }
}

fn execute(command: Command) -> Result<Run, CommandError> {
    match command {
        Command::Validate { doc } => {
            let (d, r) = load(&doc)?;
            Ok(finish(report::validate(&d, &r)))
        }
        Command::Hilbert { doc, surface, oracle_bound } => {
            let (_, r) = load(&doc)?;
            Ok(finish(report::hilbert(&r, surface.as_deref(), oracle_bound)?))
        }
        Command::Carry { doc, weight, surface, graph } => {
            let (_, r) = load(&doc)?;
            let (o, g) = report::carry(&r, surface.as_deref(), &weight)?;
            if let Some(p) = graph {
                write_file(&p, &g.render())?;
            }
            Ok(finish(o))
        }
        Command::Lutz { args, base, target, bound, surface } => {
            let (enumerate, path) = match &args[..] {
                [mode, path] if mode == "enumerate" => (true, path),
                [path] => (false, path),
                _ => return Err(CommandError::Input("expected `lutz DOC` or `lutz enumerate DOC`".into())),
            };
            let (_, r) = load(Path::new(path))?;
            let o = if enumerate {
                let bound = bound.ok_or_else(|| CommandError::Input("lutz enumerate needs --bound".into()))?;
                report::lutz_enumerate(&r, surface.as_deref(), &base, bound)?
            } else {
                let target = target.ok_or_else(|| CommandError::Input("lutz needs --target".into()))?;
                report::lutz_plan(&r, surface.as_deref(), &base, &target)?
            };
            Ok(finish(o))
        }
        Command::Bypass { doc, face, site, side, output } => {
            let (d, r) = load(&doc)?;
            let (o, new) = report::bypass(&d, &r, &face, &site, &side)?;
            if let Some(p) = output {
                new.resolve().map_err(doc_error)?;
                document::save(&new, &p).map_err(doc_error)?;
            }
            Ok(finish(o))
        }
        Command::Prune { doc, ensemble, cap } => {
            let (_, r) = load(&doc)?;
            let cap = cap.as_deref().map(report::parse_cap).transpose()?;
            Ok(finish(report::prune(&r, ensemble.as_deref(), cap)?))
        }
        Command::Graph { doc, surface } => {
            let (_, r) = load(&doc)?;
            let s = report::select_surface(&r, surface.as_deref())?;
            let text = render_sections(&[
                (&format!("branch locus of {}", s.id), &locus_graph(&s.surface)),
                (&format!("sectors of {}", s.id), &sector_graph(&s.surface)),
            ]);
            Ok(Run { stdout: text, stderr: String::new(), code: 0 })
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Run { stdout: text, stderr: String::new(), code }
            } else {
                Run { stdout: String::new(), stderr: text, code }
            };
        }
    };
    execute(cli.command).unwrap_or_else(Run::from)
}
