//! File formats and subcommands behind the `covline` binary.

pub mod commands;
pub mod io;
