//! Command-line front end: analysis reports, component tables, graph
//! exports, and the invariant suite runner.
//!
//! Exit codes: 0 success, 1 check failure, 2 unparseable input, 3
//! non-reduced word, 4 unknown graph selector.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bruhat_strata::checks::{run_checks, CheckLevel};
use bruhat_strata::report::{
    analysis_report, graph_to_dot, graph_to_json, report_to_json, resolve_z,
};
use bruhat_strata::strata::{components_total_threaded, StrataGraph};
use bruhat_strata::words::{Permutation, ReducedWord};
use bruhat_strata::Error;

const EXIT_CHECK_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_NOT_REDUCED: u8 = 3;
const EXIT_UNKNOWN_SELECTOR: u8 = 4;

#[derive(Parser)]
#[command(
    name = "bruhat-strata",
    version,
    about = "Strata of totally nonnegative Bruhat cells: counts, graphs, exact matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one reduced word (or a permutation via its canonical word)
    /// and print the full JSON report.
    Analyze {
        /// Comma-separated letters of a reduced word, e.g. 1,2,3,1,2
        #[arg(long)]
        word: Option<String>,
        /// One-line permutation, e.g. 45132 or 4,5,1,3,2
        #[arg(long)]
        perm: Option<String>,
        /// Worker threads for the sign-vector enumeration
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Print the total component count for the longest permutation of the
    /// given rank.
    ComponentsEta {
        /// Rank (1 through 6)
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Export the 1-skeleton over one lift as DOT or JSON.
    Export {
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        perm: Option<String>,
        /// Orbit index (e.g. 0) or explicit sign vector (e.g. --z=--+-+
        /// or --z=-1,-1,+1,-1,+1)
        #[arg(long)]
        z: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output file; standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suites and report per-check status.
    Check {
        /// fast (rank <= 3 exhaustive) or full (adds rank-4/5 goldens)
        #[arg(long, default_value = "fast")]
        level: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

fn fail(code: u8, message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

/// Resolves the word under analysis from exactly one of the two flags.
fn word_from_flags(word: &Option<String>, perm: &Option<String>) -> Result<ReducedWord, ExitCode> {
    match (word, perm) {
        (Some(w), None) => ReducedWord::parse(w).map_err(|e| match e {
            Error::NotReduced => fail(EXIT_NOT_REDUCED, &format!("word {w:?} is not reduced")),
            other => fail(EXIT_PARSE, &other.to_string()),
        }),
        (None, Some(p)) => Permutation::parse(p)
            .map(|sigma| sigma.canonical_word())
            .map_err(|e| fail(EXIT_PARSE, &e.to_string())),
        _ => Err(fail(EXIT_PARSE, "pass exactly one of --word or --perm")),
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Analyze { word, perm, threads } => {
            let word = match word_from_flags(&word, &perm) {
                Ok(w) => w,
                Err(code) => return code,
            };
            let report = analysis_report(&word, threads.max(1));
            println!("{}", report_to_json(&report));
            ExitCode::SUCCESS
        }
        Command::ComponentsEta { n, threads } => {
            if !(1..=6).contains(&n) {
                return fail(EXIT_PARSE, "rank must be between 1 and 6");
            }
            let eta = Permutation::longest(n + 1).canonical_word();
            println!("{}", components_total_threaded(&eta, threads.max(1)));
            ExitCode::SUCCESS
        }
        Command::Export { word, perm, z, format, out } => {
            let word = match word_from_flags(&word, &perm) {
                Ok(w) => w,
                Err(code) => return code,
            };
            let target = match resolve_z(&word, &z) {
                Ok(target) => target,
                Err(e) => return fail(EXIT_UNKNOWN_SELECTOR, &e.to_string()),
            };
            let graph = match StrataGraph::build(&word, &target) {
                Ok(g) => g,
                Err(e) => return fail(EXIT_UNKNOWN_SELECTOR, &e.to_string()),
            };
            let rendered = match format {
                Format::Dot => graph_to_dot(&graph),
                Format::Json => {
                    let mut json = graph_to_json(&graph);
                    json.push('\n');
                    json
                }
            };
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, rendered) {
                        return fail(EXIT_PARSE, &format!("cannot write {}: {e}", path.display()));
                    }
                }
                None => print!("{rendered}"),
            }
            ExitCode::SUCCESS
        }
        Command::Check { level } => {
            let level: CheckLevel = match level.parse() {
                Ok(level) => level,
                Err(e) => return fail(EXIT_PARSE, &e.to_string()),
            };
            let outcomes = run_checks(level);
            let mut all_passed = true;
            for o in &outcomes {
                let status = if o.passed { "PASS" } else { "FAIL" };
                println!("[check] {}: {status} ({})", o.name, o.detail);
                all_passed &= o.passed;
            }
            if all_passed {
                println!("all {} checks passed", outcomes.len());
                ExitCode::SUCCESS
            } else {
                println!("some checks failed");
                ExitCode::from(EXIT_CHECK_FAILURE)
            }
        }
    }
}
