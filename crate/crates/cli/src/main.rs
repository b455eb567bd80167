use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use momilp::json;
use momilp::{parse_problem, run_pipeline, write_artifacts, RunOptions, StopAfter};
use momilp_core::phase1::Strategy;

#[derive(Parser)]
#[command(name = "momilp", version, about = "Exact Pareto fronts of multi-objective mixed-integer linear programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Pareto front of a problem file.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "exhaustive")]
        strategy: StrategyArg,
        #[arg(long, value_enum)]
        stop_after: Option<StopArg>,
        /// Check the front against a brute-force ε-constraint front.
        #[arg(long)]
        oracle: bool,
        /// Grid points per objective for the oracle.
        #[arg(long, default_value_t = 21, value_parser = clap::value_parser!(u32).range(1..))]
        resolution: u32,
        /// Directory for the JSON artifacts; without it the final artifact
        /// goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write front.csv (needs --out).
        #[arg(long, requires = "out")]
        plot: bool,
        /// Seed for the oracle's random front samples.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Milp,
}

#[derive(Clone, Copy, ValueEnum)]
enum StopArg {
    Phase1,
    Phase2,
}

const PARSE_ERROR: u8 = 2;
const PIPELINE_ERROR: u8 = 3;
const ORACLE_DISAGREES: u8 = 4;

fn main() -> ExitCode {
    let Command::Solve {
        file,
        strategy,
        stop_after,
        oracle,
        resolution,
        out,
        plot,
        seed,
    } = Cli::parse().command;

    let problem = match parse_problem(&file) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(PARSE_ERROR);
        }
    };
    let options = RunOptions {
        strategy: match strategy {
            StrategyArg::Exhaustive => Strategy::Exhaustive,
            StrategyArg::Milp => Strategy::MilpDriven,
        },
        stop_after: stop_after.map(|s| match s {
            StopArg::Phase1 => StopAfter::Phase1,
            StopArg::Phase2 => StopAfter::Phase2,
        }),
        oracle,
        resolution: resolution as usize,
        seed,
        ..RunOptions::default()
    };
    let run = match run_pipeline(&problem, &options) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(PIPELINE_ERROR);
        }
    };

    match &out {
        Some(dir) => {
            if let Err(e) = write_artifacts(dir, &run, plot) {
                eprintln!("error: writing {}: {e}", dir.display());
                return ExitCode::from(PIPELINE_ERROR);
            }
        }
        None => {
            let text = match (&run.front, &run.carved) {
                (Some(f), _) => json::front_to_json(f),
                (None, Some(c)) => json::carved_to_json(c),
                (None, None) => json::candidates_to_json(&run.candidates),
            };
            print!("{text}");
        }
    }

    let r = &run.report;
    eprint!("phase 1: {} pieces", r.phase1_pieces);
    if let Some(n) = r.phase2_pieces {
        eprint!(", phase 2: {n} pieces");
    }
    if let Some(n) = r.regions {
        eprint!(", front: {n} regions");
    }
    eprintln!();
    if let Some(o) = &r.oracle {
        eprintln!(
            "oracle (resolution {}): {} points, {} sampled, {} misses, {} false claims",
            o.resolution, o.points, o.sampled, o.misses, o.false_claims
        );
        if !o.agrees {
            return ExitCode::from(ORACLE_DISAGREES);
        }
    }
    ExitCode::SUCCESS
}
