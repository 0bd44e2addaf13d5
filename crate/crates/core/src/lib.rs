//! Compiler for catalogs of mathematical structures.
//!
//! A catalog is a small text file declaring colored sections and the
//! structures that belong to them. Each structure lists the structures it
//! extends (its *types*) together with the functions, relations and
//! properties it adds. The pipeline is:
//!
//! 1. [`parser::parse_catalog`] turns text into a [`Catalog`].
//! 2. [`resolve::resolve`] validates names and sections and builds a
//!    [`ResolvedGraph`] whose edges point from general to specific.
//! 3. [`transform::transitive_reduce`] drops redundant extension edges and
//!    [`transform::compute_levels`] assigns hierarchy depths.
//! 4. [`transform::map_suite`] / [`transform::select_map`] cut the graph into
//!    per-section, full and top-level maps.
//! 5. [`layout::layout`] produces a [`RenderPlan`] that the [`emit`] module
//!    serializes to SVG, TikZ, Graphviz DOT or standalone HTML.

pub mod emit;
pub mod layout;
pub mod model;
pub mod parser;
pub mod pipeline;
pub mod query;
pub mod resolve;
pub mod seed;
pub mod transform;

#[cfg(any(test, feature = "testkit"))]
pub mod testkit;

pub use emit::{EmitOptions, Format};
pub use layout::{LayoutConfig, RenderPlan};
pub use model::{Catalog, ExtensionRef, Rgb, SectionDecl, SourcePos, StructureDef};
pub use parser::{parse_catalog, print_catalog, ParseError};
pub use resolve::{resolve, EdgeInfo, NodeInfo, ResolvedGraph, SemanticError, SemanticErrorKind};
pub use transform::{MapSpec, MapView, NamedMap};
