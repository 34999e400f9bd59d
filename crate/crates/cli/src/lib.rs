//! Library half of the CLI: claim evaluation and report rendering, shared
//! between the binary and the acceptance tests.

pub mod claims;
pub mod output;

/// The claims manifest shipped with the crate.
pub const BUILTIN_MANIFEST: &str = include_str!("../claims/claims.json");
