//! Library side of the `curvekit` command-line tool: configuration parsing
//! and validation, the three commands, and table output.

pub mod commands;
pub mod config;
pub mod table;

pub use commands::{cmd_check, cmd_invariants, cmd_reparam, Outcome, EXIT_COMPUTATION, EXIT_CONFIG, EXIT_OK};
pub use config::{load, parse, ConfigError, Format, Job, JobConfig};
pub use table::{Cell, Table};
