//! Command-line front end for `hafs-core`: framework files, JSON output and
//! the `hafs` binary's subcommands.

pub mod assignment;
pub mod cli;
pub mod input;
pub mod output;
