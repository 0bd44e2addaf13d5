//! End-to-end helpers: source text to reduced graph to emitted files.

use std::fmt;
use std::str::FromStr;

use crate::emit::{emit, EmitOptions, Format};
use crate::layout::{layout_with, size_nodes, LayoutConfig, RenderPlan};
use crate::model::Catalog;
use crate::parser::{parse_catalog, ParseError};
use crate::resolve::{resolve, ResolvedGraph, SemanticError};
use crate::transform::{compute_levels, map_suite, select_map, transitive_reduce, GraphError, MapSpec, NamedMap};

#[derive(Debug, Clone)]
pub enum CompileError {
    Parse(ParseError),
    Semantic(Vec<SemanticError>),
}

impl fmt::Display for CompileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompileError::Parse(e) => write!(f, "{e}"),
            CompileError::Semantic(errors) => {
                for (i, e) in errors.iter().enumerate() {
                    if i > 0 {
                        writeln!(f)?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for CompileError {}

/// A validated catalog and its reduced, leveled graph.
#[derive(Debug, Clone)]
pub struct Compiled {
    pub catalog: Catalog,
    pub graph: ResolvedGraph,
    /// Redundant labeled edges that were dropped.
    pub warnings: Vec<String>,
}

pub fn compile(source: &str) -> Result<Compiled, CompileError> {
    let catalog = parse_catalog(source).map_err(CompileError::Parse)?;
    let resolved = resolve(&catalog).map_err(CompileError::Semantic)?;
    let reduction = transitive_reduce(&resolved).expect("resolved graphs are acyclic");
    let mut graph = reduction.graph;
    compute_levels(&mut graph).expect("resolved graphs are acyclic");
    Ok(Compiled {
        catalog,
        graph,
        warnings: reduction.warnings,
    })
}

/// Sizes and lays out one map.
pub fn plan_map(graph: &ResolvedGraph, outline: bool) -> RenderPlan {
    let mut g = graph.clone();
    size_nodes(&mut g);
    layout_with(&g, &LayoutConfig { outline })
}

/// Which maps to render.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapSelector {
    Suite,
    All,
    Top,
    Section(String),
}

impl FromStr for MapSelector {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "suite" => MapSelector::Suite,
            "all" => MapSelector::All,
            "top" => MapSelector::Top,
            other => MapSelector::Section(other.to_string()),
        })
    }
}

pub fn select_maps(graph: &ResolvedGraph, selector: &MapSelector) -> Result<Vec<NamedMap>, GraphError> {
    let single = |name: String, spec: MapSpec| -> Result<Vec<NamedMap>, GraphError> {
        let view = select_map(graph, &spec)?;
        Ok(vec![NamedMap { name, spec, view }])
    };
    match selector {
        MapSelector::Suite => map_suite(graph),
        MapSelector::All => single("all".into(), MapSpec::Full),
        MapSelector::Top => single("top".into(), MapSpec::TopLevel),
        MapSelector::Section(id) => {
            let name = crate::transform::merge_groups(&graph.sections)
                .into_iter()
                .find(|g| g.members.contains(id))
                .map(|g| g.name)
                .unwrap_or_else(|| id.clone());
            single(name, MapSpec::Section(id.clone()))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedFile {
    pub map: String,
    pub format: Format,
    /// `<map>.<ext>`
    pub file_name: String,
    pub contents: String,
}

/// Every (map, format) output, maps in suite order, formats in the order
/// given.
pub fn render(
    graph: &ResolvedGraph,
    selector: &MapSelector,
    formats: &[Format],
    outline: bool,
) -> Result<Vec<RenderedFile>, GraphError> {
    let mut files = Vec::new();
    for map in select_maps(graph, selector)? {
        let plan = plan_map(&map.view.graph, outline);
        for &format in formats {
            let opts = EmitOptions {
                format,
                include_body: !outline,
                title: Some(map.name.clone()),
            };
            files.push(RenderedFile {
                file_name: format!("{}.{}", map.name, format.extension()),
                map: map.name.clone(),
                format,
                contents: emit(&plan, &opts),
            });
        }
    }
    Ok(files)
}
