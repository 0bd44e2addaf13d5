//! The catalog shipped with the project.

/// Path of the seed catalog relative to the repository root.
pub const SEED_PATH: &str = "crates/core/catalog/structures.catalog";

/// Contents of the seed catalog, embedded at build time.
pub const SEED_CATALOG: &str = include_str!("../catalog/structures.catalog");
