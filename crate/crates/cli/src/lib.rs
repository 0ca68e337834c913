//! Command implementations behind the `meetpoint` binary.

pub mod bench;
pub mod commands;
pub mod graph_file;

pub use commands::{cmd_render, cmd_simulate, cmd_solve, RunConfig, SimulateReport, SolveReport};
