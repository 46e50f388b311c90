//! Command-line pipeline around `flatreach-core`: shape file I/O, the
//! minimize → extract → measure verification run, JSON reports and SVG plots.

pub mod cli;
pub mod error;
pub mod io;
pub mod pipeline;
pub mod report;
pub mod svg;

pub use error::{CliError, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL, EXIT_OK};
pub use io::{load_shape, InputKind, Shape};
pub use pipeline::{
    measure_components, run_verify, verify_mask, MeasureSettings, PipelineConfig, ReachChoice,
};
pub use report::{Overall, VerifyReport};
