//! Library surface of the `hpmsim` CLI: scenario configuration, result
//! tables with CSV/JSON serialization, the parallel campaign driver, and
//! the per-subcommand table builders.

pub mod campaign;
pub mod commands;
pub mod scenario;
pub mod table;
