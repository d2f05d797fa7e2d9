//! Command implementations behind the `quadloci` binary.

pub mod args;
pub mod commands;
pub mod error;
pub mod render;

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "quadloci/1";
