//! Problem-file front end for `rotconj-core`.

pub mod commands;
pub mod problem;
pub mod report;

pub use commands::{run, Command, Options, Outcome};
pub use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0}")]
    Core(#[from] rotconj_core::Error),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("internal error: {0}")]
    Internal(String),
}
