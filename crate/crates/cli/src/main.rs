use std::fmt;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::Context;
use clap::{Parser, Subcommand};
use superlevel::report::{render_census_text, render_table1, MAX_CENSUS_GENUS};
use superlevel::verify::{self, Suite, DEFAULT_SEED};
use superlevel::CensusReport;

#[derive(Parser)]
#[command(name = "superlevel", version, about = "Level structures on superelliptic curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Component census of the level-3 trigonal moduli spaces.
    Census {
        /// A single genus `N` or an inclusive range `A..B`, within 1..40.
        #[arg(long)]
        genus: GenusRange,
        /// One JSON object per genus and line.
        #[arg(long)]
        json: bool,
    },
    /// Run verification suites: weil, psi, embedding, formula or all.
    Verify {
        suite: Option<String>,
        #[arg(long = "suite", conflicts_with = "suite")]
        suite_flag: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Index sets for g = 1..12; `*` marks a nontrivial stabilizer.
    Table1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct GenusRange(u32, u32);

#[derive(Debug)]
struct BadRange(String);

impl fmt::Display for BadRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BadRange: {} (need 1 <= A <= B <= {MAX_CENSUS_GENUS})", self.0)
    }
}

impl std::error::Error for BadRange {}

impl FromStr for GenusRange {
    type Err = BadRange;

    fn from_str(s: &str) -> Result<Self, BadRange> {
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|_| BadRange(format!("{s:?}")));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let g = parse(s)?;
                (g, g)
            }
        };
        if lo < 1 || lo > hi || hi > MAX_CENSUS_GENUS {
            return Err(BadRange(format!("{s:?}")));
        }
        Ok(GenusRange(lo, hi))
    }
}

fn census(range: GenusRange, json: bool) -> anyhow::Result<()> {
    for (i, g) in (range.0..=range.1).enumerate() {
        let report = CensusReport::compute(g).with_context(|| format!("census at g = {g}"))?;
        if json {
            println!("{}", report.to_json_line());
        } else {
            if i > 0 {
                println!();
            }
            print!("{}", render_census_text(&report));
        }
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Census { genus, json } => census(genus, json)?,
        Command::Verify {
            suite,
            suite_flag,
            seed,
        } => {
            let name = suite.or(suite_flag).unwrap_or_else(|| "all".to_string());
            let suite: Suite = name.parse()?;
            let outcomes = verify::run(suite, seed);
            for o in &outcomes {
                print!("{o}");
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            if failed > 0 {
                eprintln!("{failed} of {} suites failed", outcomes.len());
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Table1 => print!("{}", render_table1()),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<superlevel::Error>() || e.is::<BadRange>() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
