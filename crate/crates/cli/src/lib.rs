//! File formats and pipeline driver for the `momilp` command.

pub mod format;
pub mod json;
pub mod pipeline;
pub mod plot;

pub use format::{parse_problem, parse_problem_str, ParseError};
pub use pipeline::{run_pipeline, write_artifacts, PipelineError, RunOptions, RunOutput, RunReport, StopAfter};
pub use plot::{emit_plot_data, PlotError};
