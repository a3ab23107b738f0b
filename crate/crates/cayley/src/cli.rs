//! The `cayley` command line.
//!
//! Exit status: 0 when the analysis succeeded with a positive verdict, 1 when
//! it succeeded with a negative one (a non-Latin table, a theorem violation),
//! 2 when the input could not be analysed at all.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use cayley_core::classify::{classify_with, AssocAlgorithm};
use cayley_core::generate::{
    cyclic_table, direct_product, enumerate_latin, fixture_intro_square, fixture_remark_loop,
    random_latin, GenerateError, OrderGuard, SampleConfig,
};
use cayley_core::table::{CayleyTable, TableError};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::format::{self, Format, ParseError};
use crate::parallel::{count_latin_parallel, verify_exhaustive_parallel, verify_sampled_parallel};
use crate::report;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExitStatus(pub u8);

impl ExitStatus {
    pub const SUCCESS: ExitStatus = ExitStatus(0);
    pub const NEGATIVE: ExitStatus = ExitStatus(1);
    pub const USAGE: ExitStatus = ExitStatus(2);

    fn verdict(positive: bool) -> ExitStatus {
        if positive {
            ExitStatus::SUCCESS
        } else {
            ExitStatus::NEGATIVE
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cayley", version, about = "Latin squares as Cayley tables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Table file format: input format for validate/classify/product,
    /// output format for gen and enumerate --list. Input defaults to the
    /// file extension (.json or text).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Print reports as JSON (0-based indices).
    #[arg(long, global = true)]
    pub json: bool,

    /// Write output to PATH instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that every row and column is a permutation of the symbols.
    Validate {
        /// Table file, or `-` for standard input.
        path: PathBuf,
    },
    /// Decide the axioms and name the structure.
    Classify {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
    },
    /// Write a table.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Count (and optionally list) every Latin square of order N.
    Enumerate {
        n: usize,
        /// Allow order 6 (812,851,200 squares).
        #[arg(long)]
        force: bool,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        /// Print every square as well as the count.
        #[arg(long)]
        list: bool,
    },
    /// Check that every associative Latin square of order N is a group table.
    Verify {
        n: usize,
        /// Check K random squares instead of all of them.
        #[arg(long, value_name = "K")]
        sampled: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        /// Allow exhaustive order 6.
        #[arg(long)]
        force: bool,
        /// Report wall time (makes output run-dependent).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Addition table of the integers mod N.
    Cyclic { n: usize },
    /// Jacobson–Matthews random walk from the cyclic square.
    Random {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Walk length; defaults to N³.
        #[arg(long)]
        steps: Option<u64>,
    },
    /// Direct product of two table files.
    Product { left: PathBuf, right: PathBuf },
    /// One of the built-in worked examples.
    Fixture { name: FixtureName },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FixtureName {
    /// The order-4 introductory square.
    Intro,
    /// The order-6 loop exactly as printed (not Latin).
    Remark,
    /// The order-6 loop with cell (4,3) repaired.
    RemarkCorrected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Auto,
    Naive,
    Light,
}

impl From<Algo> for AssocAlgorithm {
    fn from(a: Algo) -> Self {
        match a {
            Algo::Auto => AssocAlgorithm::Auto,
            Algo::Naive => AssocAlgorithm::Naive,
            Algo::Light => AssocAlgorithm::Light,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("{0}")]
    Usage(String),
}

fn guard(force: bool) -> OrderGuard {
    if force {
        OrderGuard::Override
    } else {
        OrderGuard::Default
    }
}

fn read_table(path: &Path, format: Option<Format>) -> Result<CayleyTable, CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        s
    } else {
        fs::read_to_string(path).map_err(io_err)?
    };
    let format = format.unwrap_or_else(|| Format::from_path(path));
    format::parse(&text, format).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

impl Cli {
    /// Output format for tables this invocation writes.
    fn table_format(&self) -> Format {
        match (self.format, self.json, &self.out) {
            (Some(f), _, _) => f,
            (None, true, _) => Format::Json,
            (None, false, Some(path)) => Format::from_path(path),
            (None, false, None) => Format::Text,
        }
    }
}

/// Runs one invocation, writing the main output to `stdout` (or `--out`) and
/// diagnostics to `stderr`.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> ExitStatus {
    match execute(cli, stderr) {
        Ok((status, output)) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, output.as_bytes()).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                }),
                None => stdout
                    .write_all(output.as_bytes())
                    .map_err(|source| CliError::Io {
                        path: PathBuf::from("<stdout>"),
                        source,
                    }),
            };
            match written {
                Ok(()) => status,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    ExitStatus::USAGE
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            ExitStatus::USAGE
        }
    }
}

fn execute(cli: &Cli, stderr: &mut dyn Write) -> Result<(ExitStatus, String), CliError> {
    match &cli.command {
        Command::Validate { path } => {
            let table = read_table(path, cli.format)?;
            let latin = table.latin_check();
            let out = if cli.json {
                report::latin_json(&latin)
            } else {
                report::latin_text(&table, &latin)
            };
            Ok((ExitStatus::verdict(latin.is_latin), out))
        }
        Command::Classify { path, algo } => {
            let table = read_table(path, cli.format)?;
            let r = classify_with(&table, (*algo).into());
            let out = if cli.json {
                report::classification_json(&table, &r)
            } else {
                report::classification_text(&table, &r)
            };
            Ok((ExitStatus::SUCCESS, out))
        }
        Command::Gen { kind } => {
            let table = match kind {
                GenKind::Cyclic { n } => cyclic_table(*n)?,
                GenKind::Random { n, seed, steps } => {
                    let mut cfg = SampleConfig::new(*n, *seed);
                    if let Some(steps) = steps {
                        cfg = cfg.with_steps(*steps);
                    }
                    random_latin(cfg)?
                }
                GenKind::Product { left, right } => {
                    let a = read_table(left, None)?;
                    let b = read_table(right, None)?;
                    direct_product(&a, &b)
                }
                GenKind::Fixture { name } => match name {
                    FixtureName::Intro => fixture_intro_square(),
                    FixtureName::Remark => fixture_remark_loop(false),
                    FixtureName::RemarkCorrected => fixture_remark_loop(true),
                },
            };
            Ok((
                ExitStatus::SUCCESS,
                format::serialize(&table, cli.table_format()),
            ))
        }
        Command::Enumerate {
            n,
            force,
            parallel,
            list,
        } => {
            if *parallel == 0 {
                return Err(CliError::Usage("--parallel must be at least 1".into()));
            }
            let guard = guard(*force);
            let mut out = String::new();
            let mut tables: Vec<serde_json::Value> = Vec::new();
            let count = if *list {
                let text_format = cli.format.unwrap_or(Format::Text);
                enumerate_latin(*n, None, guard, |t| {
                    if cli.json {
                        tables.push(json!(t
                            .rows()
                            .map(|r| r.iter().map(|s| s.index()).collect::<Vec<_>>())
                            .collect::<Vec<_>>()));
                    } else {
                        out.push_str(&format::serialize(t, text_format));
                        out.push('\n');
                    }
                })?
            } else {
                count_latin_parallel(*n, guard, *parallel)?
            };
            if cli.json {
                let mut v = json!({ "indexing": report::INDEXING, "n": n, "count": count });
                if *list {
                    v["tables"] = serde_json::Value::Array(tables);
                }
                out = serde_json::to_string_pretty(&v).expect("json value serializes");
                out.push('\n');
            } else {
                out.push_str(&format!("{count} Latin squares of order {n}\n"));
            }
            Ok((ExitStatus::SUCCESS, out))
        }
        Command::Verify {
            n,
            sampled,
            seed,
            parallel,
            force,
            timing,
        } => {
            if *parallel == 0 {
                return Err(CliError::Usage("--parallel must be at least 1".into()));
            }
            let r = match sampled {
                Some(0) => {
                    return Err(CliError::Usage("--sampled needs at least one trial".into()))
                }
                Some(trials) => verify_sampled_parallel(*n, *trials, *seed, *parallel)?,
                None => verify_exhaustive_parallel(*n, guard(*force), *parallel)?,
            };
            let out = if cli.json {
                report::verification_json(&r, *timing)
            } else {
                let mut s = report::verification_text(&r);
                if *timing {
                    s.push_str(&format!("elapsed: {:.3} s\n", r.elapsed.as_secs_f64()));
                }
                s
            };
            if !*timing {
                let _ = writeln!(stderr, "elapsed: {:.3} s", r.elapsed.as_secs_f64());
            }
            Ok((ExitStatus::verdict(r.holds()), out))
        }
    }
}
