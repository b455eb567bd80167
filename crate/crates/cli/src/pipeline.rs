//! The three phases in order, with optional early stop and oracle check.

use std::fmt;
use std::path::Path;
use std::time::Instant;

use momilp_core::oracle::{check_front, oracle_front};
use momilp_core::phase1::{collect, CandidateSet, CollectOptions, Strategy};
use momilp_core::phase2::{carve, CarvedSet, DEFAULT_BUDGET};
use momilp_core::phase3::assemble_front;
use momilp_core::{CheckReport, MomilpProblem, OracleFront, ParetoFront};
use serde::Serialize;
use thiserror::Error;

use crate::json;
use crate::plot::{emit_plot_data, PlotError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Collect,
    Carve,
    Assemble,
    Oracle,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Collect => "phase 1",
            Phase::Carve => "phase 2",
            Phase::Assemble => "phase 3",
            Phase::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Error)]
#[error("{phase}: {source}")]
pub struct PipelineError {
    pub phase: Phase,
    #[source]
    pub source: momilp_core::Error,
}

fn in_phase(phase: Phase) -> impl FnOnce(momilp_core::Error) -> PipelineError {
    move |source| PipelineError { phase, source }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopAfter {
    Phase1,
    Phase2,
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub strategy: Strategy,
    pub stop_after: Option<StopAfter>,
    /// Compare the front with a brute-force ε-constraint front.
    pub oracle: bool,
    pub resolution: usize,
    pub slice_limit: u128,
    pub budget: usize,
    /// Random front points checked against the oracle, beyond vertices and
    /// centroids.
    pub samples: usize,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            strategy: Strategy::Exhaustive,
            stop_after: None,
            oracle: false,
            resolution: 21,
            slice_limit: CollectOptions::default().slice_limit,
            budget: DEFAULT_BUDGET,
            samples: 200,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Timings {
    pub phase1_ms: f64,
    pub phase2_ms: Option<f64>,
    pub phase3_ms: Option<f64>,
    pub oracle_ms: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleSummary {
    pub resolution: usize,
    pub points: usize,
    pub sampled: usize,
    pub misses: usize,
    pub false_claims: usize,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub strategy: &'static str,
    pub timings: Timings,
    pub phase1_pieces: usize,
    pub phase2_pieces: Option<usize>,
    pub splits: Option<usize>,
    pub regions: Option<usize>,
    pub oracle: Option<OracleSummary>,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub candidates: CandidateSet,
    pub carved: Option<CarvedSet>,
    pub front: Option<ParetoFront>,
    pub oracle: Option<OracleFront>,
    pub check: Option<CheckReport>,
    pub report: RunReport,
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

/// Runs the pipeline. The oracle is only consulted when a front is built.
pub fn run_pipeline(problem: &MomilpProblem, options: &RunOptions) -> Result<RunOutput, PipelineError> {
    let mut timings = Timings::default();
    let start = Instant::now();
    let collect_options = CollectOptions {
        strategy: options.strategy,
        slice_limit: options.slice_limit,
    };
    let candidates = collect(problem, &collect_options).map_err(in_phase(Phase::Collect))?;
    timings.phase1_ms = ms(start);
    let mut out = RunOutput {
        report: RunReport {
            strategy: json::strategy_name(options.strategy),
            timings: Timings::default(),
            phase1_pieces: candidates.pieces.len(),
            phase2_pieces: None,
            splits: None,
            regions: None,
            oracle: None,
        },
        candidates,
        carved: None,
        front: None,
        oracle: None,
        check: None,
    };

    if options.stop_after != Some(StopAfter::Phase1) {
        let start = Instant::now();
        let carved = carve(&out.candidates, options.budget).map_err(in_phase(Phase::Carve))?;
        timings.phase2_ms = Some(ms(start));
        out.report.phase2_pieces = Some(carved.pieces.len());
        out.report.splits = Some(carved.splits);

        if options.stop_after != Some(StopAfter::Phase2) {
            let start = Instant::now();
            let front = assemble_front(&carved).map_err(in_phase(Phase::Assemble))?;
            timings.phase3_ms = Some(ms(start));
            out.report.regions = Some(front.regions.len());

            if options.oracle {
                let start = Instant::now();
                let oracle =
                    oracle_front(problem, options.resolution, options.slice_limit).map_err(in_phase(Phase::Oracle))?;
                let check =
                    check_front(&front, &oracle, options.samples, options.seed).map_err(in_phase(Phase::Oracle))?;
                timings.oracle_ms = Some(ms(start));
                out.report.oracle = Some(OracleSummary {
                    resolution: oracle.resolution,
                    points: oracle.points.len(),
                    sampled: check.sampled,
                    misses: check.misses.len(),
                    false_claims: check.false_claims.len(),
                    agrees: check.agrees(),
                });
                out.oracle = Some(oracle);
                out.check = Some(check);
            }
            out.front = Some(front);
        }
        out.carved = Some(carved);
    }
    out.report.timings = timings;
    Ok(out)
}

/// Writes `candidates.json`, and when present `carved.json`, `front.json`,
/// `oracle.json` and (with `plot`) `front.csv`, plus `report.json`. Only the
/// report carries timings.
pub fn write_artifacts(dir: &Path, out: &RunOutput, plot: bool) -> Result<(), PlotError> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("candidates.json"), json::candidates_to_json(&out.candidates))?;
    if let Some(c) = &out.carved {
        std::fs::write(dir.join("carved.json"), json::carved_to_json(c))?;
    }
    if let Some(f) = &out.front {
        std::fs::write(dir.join("front.json"), json::front_to_json(f))?;
        if plot {
            emit_plot_data(f, &dir.join("front.csv"))?;
        }
    }
    if let Some(o) = &out.oracle {
        std::fs::write(dir.join("oracle.json"), json::oracle_to_json(o))?;
    }
    let mut report = serde_json::to_string_pretty(&out.report).expect("report serializes");
    report.push('\n');
    std::fs::write(dir.join("report.json"), report)?;
    Ok(())
}
