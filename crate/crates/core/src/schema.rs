//! The JSON schema every command output validates against.

/// Draft 2020-12 schema with one `$defs` entry per output kind.
pub const OUTPUT_SCHEMA: &str = include_str!("../schema/output.schema.json");
