//! The `pbt` command-line tool: build, query, inspect and benchmark block
//! trees.
//!
//! Everything is driven through [`run`], which takes the argument list and
//! the three standard streams so that tests can call it in-process.

pub mod bench;
pub mod commands;
pub mod query;

use std::ffi::OsString;
use std::fmt;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use blocktree::{Error, Tracking};
use clap::{Args, Parser, Subcommand};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "pbt",
    version,
    about = "Build and query block trees over byte texts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a tree from a text file and write it to disk.
    Build {
        input: PathBuf,
        #[command(flatten)]
        build: BuildArgs,
        /// Where to write the tree; defaults to `<input>.pbt`.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Answer `access:i`, `rank:c:i` or `select:c:j` queries. Without query
    /// arguments, one query per line is read from standard input.
    Query { tree: PathBuf, queries: Vec<String> },
    /// Print per-level statistics of a tree.
    Stats {
        tree: PathBuf,
        /// Also factorize this text and check level sizes against 3zτ.
        #[arg(long)]
        lz77: Option<PathBuf>,
    },
    /// Check a tree against the text it was built from.
    Verify { tree: PathBuf, input: PathBuf },
    /// Compare scalar and blocked window fingerprinting throughput.
    BenchFp {
        /// Text to hash; a random text is generated when absent.
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 16 << 20)]
        len: usize,
        /// Window lengths, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [16usize, 64, 1024])]
        ell: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
    /// Time builds for a range of worker counts and print CSV.
    BenchBuild {
        /// Text to index; the synthetic repetitive generator is used when absent.
        input: Option<PathBuf>,
        #[command(flatten)]
        build: BuildArgs,
        #[command(flatten)]
        synth: SynthArgs,
        /// Largest worker count; counts run through 1, 2, 4, ... up to it.
        #[arg(long)]
        max_workers: Option<usize>,
        #[arg(long, default_value_t = 1)]
        repeats: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct BuildArgs {
    /// Number of top-level blocks.
    #[arg(long)]
    pub s: Option<u32>,
    /// Children per marked block.
    #[arg(long)]
    pub tau: Option<u32>,
    /// Blocks of at most this length are stored as plain bytes.
    #[arg(long)]
    pub leaf_cutoff: Option<u32>,
    /// Build threads; defaults to the available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Bound on each worker's message queue.
    #[arg(long, default_value_t = 512)]
    pub queue_capacity: usize,
    /// Demote marked blocks that only repeat earlier content.
    #[arg(long)]
    pub prune: bool,
    /// Symbols to support rank/select for: `auto`, `all`, `none` or a list
    /// of characters.
    #[arg(long, default_value = "auto", value_parser = parse_tracking)]
    pub track: Tracking,
    /// Write the per-level build report (JSON lines) here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    /// Length of the generated text.
    #[arg(long, default_value_t = 32 << 20)]
    pub synth_len: usize,
    /// Length of the random seed string that is repeated.
    #[arg(long, default_value_t = 16 << 10)]
    pub synth_seed_len: usize,
    /// Per-byte substitution probability applied to each copy.
    #[arg(long, default_value_t = 0.001)]
    pub synth_mutation: f64,
    /// Alphabet size of the generated text.
    #[arg(long, default_value_t = 256)]
    pub synth_alphabet: u16,
    /// Seed for the generator.
    #[arg(long, default_value_t = 0x5eed)]
    pub synth_rng_seed: u64,
}

pub fn parse_tracking(s: &str) -> Result<Tracking, String> {
    match s {
        "auto" => Ok(Tracking::Auto),
        "all" => Ok(Tracking::All),
        "none" => Ok(Tracking::None),
        "" => Err("empty symbol list".into()),
        _ => {
            let mut symbols = Vec::new();
            let bytes = s.as_bytes();
            let mut i = 0;
            while i < bytes.len() {
                let (b, used) = query::parse_symbol_prefix(&bytes[i..])?;
                symbols.push(b);
                i += used;
            }
            symbols.sort_unstable();
            symbols.dedup();
            Ok(Tracking::Symbols(symbols))
        }
    }
}

/// A command failure with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(EXIT_USAGE, message)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedSymbol(_) | Error::NotFound { .. } => EXIT_UNSUPPORTED,
            Error::OutOfBounds { .. } | Error::InvalidParams(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        Self::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::new(EXIT_FAILURE, e.to_string())
    }
}

pub type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command. Returns
/// the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Build {
            input,
            build,
            output,
        } => commands::build(&input, &build, output.as_deref(), stdout),
        Command::Query { tree, queries } => commands::query(&tree, &queries, stdin, stdout),
        Command::Stats { tree, lz77 } => commands::stats(&tree, lz77.as_deref(), stdout),
        Command::Verify { tree, input } => commands::verify(&tree, &input, stdout),
        Command::BenchFp {
            input,
            len,
            ell,
            repeats,
        } => bench::bench_fp(input.as_deref(), len, &ell, repeats, stdout),
        Command::BenchBuild {
            input,
            build,
            synth,
            max_workers,
            repeats,
        } => bench::bench_build(
            input.as_deref(),
            &build,
            &synth,
            max_workers,
            repeats,
            stdout,
        ),
    };
    let _ = stdout.flush();
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "pbt: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracking_values() {
        assert_eq!(parse_tracking("all").unwrap(), Tracking::All);
        assert_eq!(parse_tracking("none").unwrap(), Tracking::None);
        assert_eq!(
            parse_tracking("caab").unwrap(),
            Tracking::Symbols(vec![b'a', b'b', b'c'])
        );
        assert_eq!(
            parse_tracking("a\\x00").unwrap(),
            Tracking::Symbols(vec![0, b'a'])
        );
        assert!(parse_tracking("").is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(["pbt", "build"], &mut &b""[..], &mut out, &mut err);
        assert_eq!(code, EXIT_USAGE);
        let code = run(["pbt", "frobnicate"], &mut &b""[..], &mut out, &mut err);
        assert_eq!(code, EXIT_USAGE);
        let code = run(["pbt", "--help"], &mut &b""[..], &mut out, &mut err);
        assert_eq!(code, EXIT_OK);
    }

    #[test]
    fn error_codes() {
        assert_eq!(
            Failure::from(Error::UnsupportedSymbol(b'z')).code,
            EXIT_UNSUPPORTED
        );
        assert_eq!(Failure::from(Error::EmptyInput).code, EXIT_FAILURE);
    }
}
