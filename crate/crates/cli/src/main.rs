//! `hopfclass`: validate, decompose and classify module files, work with
//! graphs, generate corpora and run the acceptance suite.
//!
//! Exit codes: 0 success, 1 semantic failure, 2 I/O or parse failure,
//! 3 size-guard refusal.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "hopfclass",
    version,
    about = "Classification tools for Dieudonné-side modules of graded Hopf algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a module file and list its violations.
    Validate { path: PathBuf },
    /// Decompose an fp-string module into string summands.
    Decompose {
        path: PathBuf,
        /// Also print the presentation of each summand's Hopf algebra.
        #[arg(long, conflicts_with = "machine")]
        report: bool,
        /// Emit the canonical machine-readable listing with the change of basis.
        #[arg(long)]
        machine: bool,
        /// Degree of the bottom generator of an unshifted summand.
        #[arg(long, default_value_t = 1)]
        r: u64,
    },
    /// Recognise a basic witt module (or each p-typical piece of a
    /// Dieudonné module) and print its report.
    Classify {
        path: PathBuf,
        /// Machine-readable report.
        #[arg(long)]
        machine: bool,
        /// Degree type used for a witt module.
        #[arg(long, default_value_t = 1)]
        r: u64,
    },
    /// Graph utilities.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Write generated module files.
    #[command(subcommand)]
    Corpus(CorpusCommand),
    /// Run the acceptance suite.
    Selftest {
        /// Run only this criterion.
        #[arg(long)]
        only: Option<u32>,
    },
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Check the codec conditions of a graph file.
    Validate { path: PathBuf },
    /// Draw a graph file.
    Render {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// List every finite graph of length m.
    Enumerate {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Tikz,
}

#[derive(Args)]
struct OutDir {
    /// Directory receiving the files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Random fp-string modules.
    Random {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        window: usize,
        /// Largest dimension of a component.
        #[arg(long, default_value_t = 3)]
        maxdim: usize,
        #[command(flatten)]
        out: OutDir,
    },
    /// Every string module M(m, I) with m up to the bound, on the window 0..=m.
    Strings {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[command(flatten)]
        out: OutDir,
    },
    /// The glued module built from N extension graphs.
    BigIndec {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[command(flatten)]
        out: OutDir,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { path } => commands::cmd_validate(&path),
        Command::Decompose {
            path,
            report,
            machine,
            r,
        } => commands::cmd_decompose(&path, report, machine, r),
        Command::Classify { path, machine, r } => commands::cmd_classify(&path, machine, r),
        Command::Graph(GraphCommand::Validate { path }) => commands::cmd_graph_validate(&path),
        Command::Graph(GraphCommand::Render { path, format }) => commands::cmd_graph_render(
            &path,
            match format {
                Format::Ascii => hopfclass_core::graph::RenderFormat::Ascii,
                Format::Tikz => hopfclass_core::graph::RenderFormat::Tikz,
            },
        ),
        Command::Graph(GraphCommand::Enumerate { m }) => commands::cmd_graph_enumerate(m),
        Command::Corpus(CorpusCommand::Random {
            p,
            seed,
            count,
            window,
            maxdim,
            out,
        }) => commands::cmd_corpus_random(p, seed, count, window, maxdim, &out.out),
        Command::Corpus(CorpusCommand::Strings { p, m, out }) => commands::cmd_corpus_strings(p, m, &out.out),
        Command::Corpus(CorpusCommand::BigIndec { n, p, out }) => commands::cmd_corpus_big(n, p, &out.out),
        Command::Selftest { only } => commands::cmd_selftest(only),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
