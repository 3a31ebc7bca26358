//! Command-line front end. `run` is the whole program; `main` only forwards to it.

mod commands;
mod repro;

use std::io::{Read, Write};
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixtures;

pub use repro::{run_repro, Check, ReproReport, ReproTarget};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "cimset", version, about = "Imsets, imset fibers and covariance-equivalence checks for directed graphs")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

/// Graph inputs accept a file path, `-` for stdin, `fixture:<name>`, or inline text / JSON.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Characteristic and standard imsets.
    #[command(subcommand)]
    Imset(ImsetCmd),
    /// Equivalence tests (exit 0 equivalent, 1 not, 2 error).
    #[command(subcommand)]
    Equiv(EquivCmd),
    /// Essential graph of a DAG.
    Essential { graph: String },
    /// All graphs with the same characteristic imset, and their move components.
    Fiber(FiberArgs),
    /// Flip lattice versus the integer kernel of phi.
    #[command(subcommand)]
    Kernel(KernelCmd),
    /// Write a kernel vector as a combination of flip vectors.
    Decompose(DecomposeArgs),
    /// Reverse the covered edge I -> J.
    Flip { graph: String, i: usize, j: usize },
    /// Reverse a directed cycle given as its node sequence.
    ReverseCycle {
        graph: String,
        #[arg(required = true, num_args = 2..)]
        cycle: Vec<usize>,
    },
    /// Sparse precision factors.
    #[command(subcommand)]
    Factor(FactorCmd),
    /// Reproduce a worked example with embedded graphs.
    Repro {
        #[arg(value_enum)]
        target: ReproTarget,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum ImsetCmd {
    /// Characteristic imset over all nonempty subsets.
    Char {
        graph: String,
        /// Leave zero coordinates out of the JSON.
        #[arg(long)]
        omit_zeros: bool,
    },
    /// Standard imset.
    Std { graph: String },
    /// Convert an imset JSON document between the char and std kinds.
    Convert { imset: String },
}

#[derive(Subcommand, Debug)]
pub enum EquivCmd {
    /// Equality of characteristic imsets.
    Imset { g: String, h: String },
    /// Markov equivalence of two DAGs.
    Dag { g: String, h: String },
    /// Numeric covariance-equivalence evidence.
    Numeric(NumericArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SolverArgs {
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    pub restarts: u64,
    #[arg(long, default_value_t = 2000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_iters: u64,
    #[arg(long, default_value_t = 1e-12)]
    pub step_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tau: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct NumericArgs {
    pub g: String,
    pub h: String,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
}

#[derive(Args, Debug)]
pub struct FiberArgs {
    /// A graph, or a characteristic imset JSON document.
    pub input: String,
    /// Moves used for the components: any of `flips`, `cycles`.
    #[arg(long, default_value = "flips,cycles")]
    pub moves: String,
    /// Keep one graph per isomorphism class.
    #[arg(long)]
    pub upto_iso: bool,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Abort after this many partial assignments.
    #[arg(long, default_value_t = crate::lattice::DEFAULT_CANDIDATE_LIMIT, value_parser = clap::value_parser!(u64).range(1..))]
    pub limit: u64,
}

#[derive(Subcommand, Debug)]
pub enum KernelCmd {
    /// Compare the Hermite normal forms of both lattices (exit 1 if they differ).
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=8))]
        n: u64,
    },
    /// Print a basis of the integer kernel of phi.
    Basis {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=8))]
        n: u64,
    },
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    /// One family-vector JSON document, or two graphs G H meaning v_G - v_H.
    #[arg(required = true, num_args = 1..=2)]
    pub inputs: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum FactorCmd {
    /// Random factor with the sparsity of a graph.
    Sample {
        graph: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rotate the columns A->B and A∪B->C of a factor.
    GivensFlip {
        factor: String,
        b: usize,
        c: usize,
        /// Comma-separated A; defaults to pa(B) in the graph the labels describe.
        #[arg(long)]
        parents: Option<String>,
    },
}

/// Reads an input argument: `-`, `fixture:<name>`, an existing path, or the text itself.
pub fn load_input(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    if let Some(name) = arg.strip_prefix("fixture:") {
        return fixtures::ALL
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, t)| t.to_string())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown fixture '{name}'")));
    }
    if Path::new(arg).is_file() {
        return Ok(std::fs::read_to_string(arg)?);
    }
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with("n=") || t.starts_with('#') {
        return Ok(arg.to_string());
    }
    Err(Error::Io(std::io::Error::new(std::io::ErrorKind::NotFound, format!("no such file: {arg}"))))
}

pub(crate) struct Output<'a> {
    pub w: &'a mut dyn Write,
    pub format: Format,
}

impl Output<'_> {
    pub fn json<T: Serialize + ?Sized>(&mut self, value: &T) -> Result<()> {
        let s = serde_json::to_string_pretty(value)?;
        writeln!(self.w, "{s}")?;
        Ok(())
    }

    /// JSON in JSON mode, otherwise the given text.
    pub fn emit<T: Serialize + ?Sized>(&mut self, value: &T, text: impl FnOnce() -> String) -> Result<()> {
        match self.format {
            Format::Json => self.json(value),
            Format::Text => {
                let s = text();
                self.w.write_all(s.as_bytes())?;
                if !s.ends_with('\n') {
                    writeln!(self.w)?;
                }
                Ok(())
            }
        }
    }
}

/// Whether a command's check came out positive; decides exit code 0 or 1.
pub(crate) type Positive = bool;

/// Runs the program on `argv` (including the program name), writing to the given streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let mut o = Output { w: out, format: cli.format };
    match commands::dispatch(cli.command, &mut o) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// `run_with` on the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = run_with(argv, &mut out, &mut err);
    let _ = out.flush();
    code
}
