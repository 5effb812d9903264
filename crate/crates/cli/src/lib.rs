//! Batch front end for the corings library: workspace-file parsing, task
//! execution and deterministic reports.

pub mod report;
pub mod runner;
pub mod workspace;

pub use report::{Report, TaskReport, TaskStatus};
pub use runner::{run_workspace, RunOptions};
pub use workspace::{
    fixture_workspace, parse_workspace, resolve_workspace, serialize_workspace, WorkspaceError,
    WorkspaceFile,
};
