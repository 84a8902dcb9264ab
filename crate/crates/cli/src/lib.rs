//! Library side of the `concave-lab` tool: configuration, run manifests and
//! the experiments behind each subcommand.

pub mod config;
pub mod experiments;
pub mod manifest;
