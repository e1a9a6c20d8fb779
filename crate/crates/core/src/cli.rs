//! Command-line front end. [`run`] takes the argument vector and explicit
//! output streams and returns the process exit code.

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::graph::{pins, SimplicialGraph};
use crate::lin_lab::{
    project_to_gamma_commuting, sweep, write_csv, Kind, LinError, MatrixFamily, ProjectOptions,
    SweepOptions,
};
use crate::pincushion::{min_level, min_level_capped, LevelResult};
use crate::words::{
    equivalent, is_reduced, normal_form, raag_is_trivial, raag_normal_form, reduce, GroupWord, Word,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "graphprod",
    version,
    about = "Pincushion classes, graph-product words and almost-commuting matrix families"
)]
pub struct Invocation {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Smallest pincushion level containing a graph.
    Classify {
        graph: PathBuf,
        #[arg(long)]
        max_level: Option<usize>,
        /// Also print a construction certificate.
        #[arg(long)]
        certificate: bool,
    },
    /// Vertices whose neighbourhood is everything else.
    Pins { graph: PathBuf },
    /// Words in the graph product.
    #[command(subcommand)]
    Word(WordCommand),
    /// Words in the right-angled Artin group.
    #[command(subcommand)]
    Raag(RaagCommand),
    /// Almost-commuting matrix families.
    #[command(subcommand)]
    Lin(LinCommand),
}

#[derive(Debug, Subcommand)]
enum WordCommand {
    Reduce(WordArgs),
    NormalForm(WordArgs),
    /// Takes two words, each as a single argument.
    Equal {
        graph: PathBuf,
        first: String,
        second: String,
    },
    #[command(name = "reduced?")]
    IsReduced(WordArgs),
}

#[derive(Debug, Args)]
struct WordArgs {
    graph: PathBuf,
    #[arg(allow_hyphen_values = true)]
    word: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum RaagCommand {
    NormalForm(WordArgs),
    #[command(name = "trivial?")]
    IsTrivial(WordArgs),
}

#[derive(Debug, Subcommand)]
enum LinCommand {
    /// Perturb-and-project trials over a grid of scales, as CSV.
    Sweep {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        deltas: Vec<f64>,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "normal")]
        kind: Kind,
        #[arg(long, default_value_t = 2)]
        leg_dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Projects one family and reports its defects.
    Project {
        graph: PathBuf,
        family: PathBuf,
        #[arg(long, default_value = "normal")]
        kind: Kind,
        /// Write the projected family here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure with its exit code and one-line message.
struct Failure {
    code: i32,
    message: String,
}

fn usage(e: impl Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: e.to_string(),
    }
}

fn domain(e: impl Display) -> Failure {
    Failure {
        code: EXIT_DOMAIN,
        message: e.to_string(),
    }
}

fn lin_failure(e: LinError) -> Failure {
    match e {
        LinError::Parse { .. } => usage(e),
        _ => domain(e),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<SimplicialGraph, Failure> {
    read(path)?
        .parse()
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| domain(format!("{}: {e}", path.display())))
}

/// Parses `args` (program name first) and executes the subcommand.
pub fn run<I, T, O, E>(args: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    O: Write,
    E: Write,
{
    let invocation = match Invocation::try_parse_from(args) {
        Ok(inv) => inv,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "{}", line.trim_start_matches("error: "));
            return EXIT_USAGE;
        }
    };
    let mut text = String::new();
    match execute(invocation.command, &mut text) {
        Ok(()) => match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "writing output: {e}");
                EXIT_DOMAIN
            }
        },
        Err(f) => {
            let _ = writeln!(err, "{}", f.message.replace('\n', " "));
            f.code
        }
    }
}

fn execute(command: Command, out: &mut String) -> Result<(), Failure> {
    use std::fmt::Write as _;
    match command {
        Command::Classify {
            graph,
            max_level,
            certificate,
        } => {
            let g = load_graph(&graph)?;
            let result = match max_level {
                Some(m) => min_level_capped(&g, m),
                None => min_level(&g),
            }
            .map_err(domain)?;
            match result {
                LevelResult::Member { min_level, trace } => {
                    let _ = writeln!(out, "member {min_level}");
                    if certificate {
                        out.push_str(&trace.to_string());
                        if !out.ends_with('\n') {
                            out.push('\n');
                        }
                    }
                }
                LevelResult::NotMember => out.push_str("not-member\n"),
            }
        }
        Command::Pins { graph } => {
            for v in pins(&load_graph(&graph)?) {
                let _ = writeln!(out, "{v}");
            }
        }
        Command::Word(cmd) => word(cmd, out)?,
        Command::Raag(cmd) => {
            let (args, trivial) = match cmd {
                RaagCommand::NormalForm(a) => (a, false),
                RaagCommand::IsTrivial(a) => (a, true),
            };
            let g = load_graph(&args.graph)?;
            let gw = GroupWord::parse(&g, &args.word.join(" ")).map_err(usage)?;
            if trivial {
                let _ = writeln!(out, "{}", raag_is_trivial(&gw));
            } else {
                let _ = writeln!(out, "{}", raag_normal_form(&gw));
            }
        }
        Command::Lin(LinCommand::Sweep {
            graph,
            deltas,
            trials,
            seed,
            kind,
            leg_dim,
            out: path,
        }) => {
            let g = load_graph(&graph)?;
            let options = SweepOptions {
                leg_dim,
                ..SweepOptions::default()
            };
            let records = sweep(&g, &deltas, trials, seed, kind, &options).map_err(lin_failure)?;
            let mut csv = Vec::new();
            write_csv(&records, &mut csv).map_err(domain)?;
            match path {
                Some(p) => write_file(&p, &csv)?,
                None => out.push_str(&String::from_utf8(csv).map_err(domain)?),
            }
        }
        Command::Lin(LinCommand::Project {
            graph,
            family,
            kind,
            out: path,
        }) => {
            let g = load_graph(&graph)?;
            let a = MatrixFamily::parse(&g, &read(&family)?)
                .map_err(|e| usage(format!("{}: {e}", family.display())))?;
            let p = project_to_gamma_commuting(&a, kind, &ProjectOptions::default())
                .map_err(lin_failure)?;
            let rows = [
                ("pre_edge_defect", p.before.max_edge_commutator),
                ("pre_normality", p.before.max_normality),
                ("epsilon", p.epsilon),
                ("post_edge_defect", p.after.max_edge_commutator),
                ("post_normality", p.after.max_normality),
                ("post_selfadjoint", p.after.max_selfadjoint),
                ("post_unitary", p.after.max_unitary),
            ];
            for (name, value) in rows {
                let _ = writeln!(out, "{name} {value}");
            }
            let _ = writeln!(out, "iterations {}", p.iterations);
            let _ = writeln!(out, "converged {}", p.converged);
            if let Some(path) = path {
                write_file(&path, p.family.to_string().as_bytes())?;
            }
        }
    }
    Ok(())
}

fn parse_word<'g>(g: &'g SimplicialGraph, tokens: &[String]) -> Result<Word<'g>, Failure> {
    Word::parse(g, &tokens.join(" ")).map_err(usage)
}

fn word(cmd: WordCommand, out: &mut String) -> Result<(), Failure> {
    use std::fmt::Write as _;
    match cmd {
        WordCommand::Equal {
            graph,
            first,
            second,
        } => {
            let g = load_graph(&graph)?;
            let x = Word::parse(&g, &first).map_err(usage)?;
            let y = Word::parse(&g, &second).map_err(usage)?;
            let _ = writeln!(out, "{}", equivalent(&x, &y).map_err(domain)?);
        }
        WordCommand::Reduce(args) => {
            let g = load_graph(&args.graph)?;
            let _ = writeln!(out, "{}", reduce(&parse_word(&g, &args.word)?));
        }
        WordCommand::NormalForm(args) => {
            let g = load_graph(&args.graph)?;
            let _ = writeln!(out, "{}", normal_form(&parse_word(&g, &args.word)?));
        }
        WordCommand::IsReduced(args) => {
            let g = load_graph(&args.graph)?;
            let _ = writeln!(out, "{}", is_reduced(&parse_word(&g, &args.word)?));
        }
    }
    Ok(())
}
