//! Graph passes: transitive reduction, level assignment and map selection.

use std::collections::HashMap;

use crate::model::SectionDecl;
use crate::resolve::{EdgeInfo, ResolvedGraph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    /// Resolution rejects cycles, so reaching this is a bug upstream.
    #[error("internal error: extension graph contains a cycle")]
    Cycle,
    #[error("unknown section `{0}`")]
    UnknownSection(String),
    #[error("unknown structure {0:?}")]
    UnknownStructure(String),
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub graph: ResolvedGraph,
    /// Deleted edges, in input order.
    pub removed: Vec<EdgeInfo>,
    /// One message per deleted edge that carried a label.
    pub warnings: Vec<String>,
}

/// Reflexive reachability: `reach[u][v]` iff there is a path u → v.
pub fn reachability(graph: &ResolvedGraph) -> Result<Vec<Vec<bool>>, GraphError> {
    let order = graph.topological_order().ok_or(GraphError::Cycle)?;
    let succ = graph.successors();
    let n = graph.nodes.len();
    let mut reach = vec![vec![false; n]; n];
    for &u in order.iter().rev() {
        reach[u][u] = true;
        for &w in &succ[u] {
            // w was visited earlier in this loop, so its row is final
            let row_w = reach[w].clone();
            for (x, y) in reach[u].iter_mut().zip(row_w) {
                *x |= y;
            }
        }
    }
    Ok(reach)
}

/// Removes every edge u → v that is implied by a longer path, unless the
/// edge is keep-flagged.
pub fn transitive_reduce(graph: &ResolvedGraph) -> Result<Reduction, GraphError> {
    let reach = reachability(graph)?;
    let succ = graph.successors();
    let mut kept = Vec::with_capacity(graph.edges.len());
    let mut removed = Vec::new();
    let mut warnings = Vec::new();

    for e in &graph.edges {
        let redundant = succ[e.from].iter().any(|&w| w != e.to && reach[w][e.to]);
        if e.keep || !redundant {
            kept.push(e.clone());
            continue;
        }
        if let Some(label) = &e.label {
            warnings.push(format!(
                "redundant edge {:?} -> {:?} removed; its label {:?} is not shown",
                graph.nodes[e.from].name(),
                graph.nodes[e.to].name(),
                label
            ));
        }
        removed.push(e.clone());
    }

    let reduced = ResolvedGraph {
        edges: kept,
        ..graph.clone()
    };
    Ok(Reduction {
        graph: reduced,
        removed,
        warnings,
    })
}

/// Sets each node's level to the length of the longest path reaching it.
pub fn compute_levels(graph: &mut ResolvedGraph) -> Result<(), GraphError> {
    let order = graph.topological_order().ok_or(GraphError::Cycle)?;
    let pred = graph.predecessors();
    let mut level = vec![0u32; graph.nodes.len()];
    for &v in &order {
        level[v] = pred[v].iter().map(|&u| level[u] + 1).max().unwrap_or(0);
    }
    for (node, l) in graph.nodes.iter_mut().zip(level) {
        node.level = l;
    }
    Ok(())
}

/// Which part of the graph one map shows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapSpec {
    /// A section together with every section merged with it.
    Section(String),
    Full,
    /// Representative structures only.
    TopLevel,
}

#[derive(Debug, Clone)]
pub struct MapView {
    pub graph: ResolvedGraph,
    /// `(structure, parent)` pairs where the parent lies outside the map.
    pub dangling_parents: Vec<(String, String)>,
}

#[derive(Debug, Clone)]
pub struct NamedMap {
    pub name: String,
    pub spec: MapSpec,
    pub view: MapView,
}

/// Sections drawn together on one map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeGroup {
    /// Member ids joined with `_`.
    pub name: String,
    pub members: Vec<String>,
}

/// Partitions sections into merge groups, ordered by first declaration.
///
/// Within a group, each section that declares `merge-with` is listed before
/// its partner, so `posets merge-with lattices` yields `posets_lattices`.
pub fn merge_groups(sections: &[SectionDecl]) -> Vec<MergeGroup> {
    let index: HashMap<&str, usize> = sections
        .iter()
        .enumerate()
        .rev()
        .map(|(i, s)| (s.id.as_str(), i))
        .collect();
    let mut parent: Vec<usize> = (0..sections.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let partner = |s: &SectionDecl| {
        s.merge_with
            .as_deref()
            .and_then(|m| index.get(m).copied())
            .filter(|&j| sections[j].id != s.id)
    };
    for (i, s) in sections.iter().enumerate() {
        if let Some(j) = partner(s) {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }

    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..sections.len() {
        if index[sections[i].id.as_str()] != i {
            continue; // duplicate declaration
        }
        let root = find(&mut parent, i);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, members)) => members.push(i),
            None => groups.push((root, vec![i])),
        }
    }

    groups
        .into_iter()
        .map(|(_, members)| {
            let mut order: Vec<usize> = Vec::new();
            for &i in &members {
                if let Some(j) = partner(&sections[i]) {
                    for k in [i, j] {
                        if !order.contains(&k) {
                            order.push(k);
                        }
                    }
                }
            }
            for &i in &members {
                if !order.contains(&i) {
                    order.push(i);
                }
            }
            let members: Vec<String> = order.iter().map(|&i| sections[i].id.clone()).collect();
            MergeGroup {
                name: members.join("_"),
                members,
            }
        })
        .collect()
}

fn induced(graph: &ResolvedGraph, selected: &[bool]) -> (ResolvedGraph, Vec<Option<usize>>) {
    let mut remap = vec![None; graph.nodes.len()];
    let mut nodes = Vec::new();
    for (i, node) in graph.nodes.iter().enumerate() {
        if selected[i] {
            remap[i] = Some(nodes.len());
            nodes.push(node.clone());
        }
    }
    let edges = graph
        .edges
        .iter()
        .filter_map(|e| {
            Some(EdgeInfo {
                from: remap[e.from]?,
                to: remap[e.to]?,
                ..e.clone()
            })
        })
        .collect();
    let sub = ResolvedGraph {
        nodes,
        edges,
        sections: graph.sections.clone(),
    };
    (sub, remap)
}

/// Cuts one map out of a reduced graph and recomputes its levels.
///
/// Section maps are induced subgraphs. The top-level map connects two
/// representatives whenever one reaches the other in the full graph, then
/// reduces those connections.
pub fn select_map(graph: &ResolvedGraph, spec: &MapSpec) -> Result<MapView, GraphError> {
    let n = graph.nodes.len();
    let mut dangling_parents = Vec::new();
    let mut view = match spec {
        MapSpec::Full => graph.clone(),
        MapSpec::Section(id) => {
            if graph.section(id).is_none() {
                return Err(GraphError::UnknownSection(id.clone()));
            }
            let members = merge_groups(&graph.sections)
                .into_iter()
                .find(|g| g.members.contains(id))
                .map(|g| g.members)
                .unwrap_or_else(|| vec![id.clone()]);
            let selected: Vec<bool> = graph
                .nodes
                .iter()
                .map(|node| node.structure.sections.iter().any(|s| members.contains(s)))
                .collect();
            for e in &graph.edges {
                if selected[e.to] && !selected[e.from] {
                    dangling_parents.push((
                        graph.nodes[e.to].name().to_string(),
                        graph.nodes[e.from].name().to_string(),
                    ));
                }
            }
            induced(graph, &selected).0
        }
        MapSpec::TopLevel => {
            let selected: Vec<bool> = graph.nodes.iter().map(|node| node.structure.representative).collect();
            let reach = reachability(graph)?;
            let (mut sub, remap) = induced(graph, &selected);
            let direct: HashMap<(usize, usize), &EdgeInfo> = graph.edges.iter().map(|e| ((e.from, e.to), e)).collect();
            sub.edges.clear();
            for u in (0..n).filter(|&u| selected[u]) {
                for v in (0..n).filter(|&v| selected[v] && v != u && reach[u][v]) {
                    let mut edge = EdgeInfo::new(remap[u].unwrap(), remap[v].unwrap());
                    if let Some(orig) = direct.get(&(u, v)) {
                        edge.label = orig.label.clone();
                        edge.keep = orig.keep;
                    }
                    sub.edges.push(edge);
                }
            }
            transitive_reduce(&sub)?.graph
        }
    };
    compute_levels(&mut view)?;
    Ok(MapView {
        graph: view,
        dangling_parents,
    })
}

/// One map per merge group of sections, then `all`, then `top`.
pub fn map_suite(graph: &ResolvedGraph) -> Result<Vec<NamedMap>, GraphError> {
    let mut specs: Vec<(String, MapSpec)> = merge_groups(&graph.sections)
        .into_iter()
        .map(|g| (g.name, MapSpec::Section(g.members[0].clone())))
        .collect();
    specs.push(("all".to_string(), MapSpec::Full));
    specs.push(("top".to_string(), MapSpec::TopLevel));
    specs
        .into_iter()
        .map(|(name, spec)| {
            let view = select_map(graph, &spec)?;
            Ok(NamedMap { name, spec, view })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_catalog;
    use crate::resolve::resolve;
    use crate::testkit;

    fn graph(src: &str) -> ResolvedGraph {
        resolve(&parse_catalog(src).unwrap()).unwrap()
    }

    fn edge_names(g: &ResolvedGraph) -> Vec<(String, String)> {
        g.edges
            .iter()
            .map(|e| (g.nodes[e.from].name().to_string(), g.nodes[e.to].name().to_string()))
            .collect()
    }

    const TRIANGLE: &str = r##"section s color "#000000"
structure "A" in s {}
structure "B" in s { types: "A" }
structure "C" in s { types: "B", "A" }
"##;

    #[test]
    fn triangle_loses_shortcut() {
        let r = transitive_reduce(&graph(TRIANGLE)).unwrap();
        assert_eq!(
            edge_names(&r.graph),
            vec![("A".into(), "B".into()), ("B".into(), "C".into())]
        );
        assert_eq!(r.removed.len(), 1);
        assert_eq!((r.removed[0].from, r.removed[0].to), (0, 2));
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn keep_flag_survives() {
        let g = graph(&TRIANGLE.replace(r##""B", "A""##, r##""B", "A" keep"##));
        let r = transitive_reduce(&g).unwrap();
        assert_eq!(r.graph.edges.len(), 3);
        assert!(r.removed.is_empty());
    }

    #[test]
    fn labeled_shortcut_warns() {
        let g = graph(&TRIANGLE.replace(r##""B", "A""##, r##""B", "A" label "shortcut""##));
        let r = transitive_reduce(&g).unwrap();
        assert_eq!(r.warnings.len(), 1);
        assert!(r.warnings[0].contains("shortcut"));
    }

    #[test]
    fn diamond_is_already_reduced() {
        let g = graph(
            r##"section s color "#000000"
structure "A" in s {}
structure "B" in s { types: "A" }
structure "C" in s { types: "A" }
structure "D" in s { types: "B", "C" }
"##,
        );
        let r = transitive_reduce(&g).unwrap();
        assert_eq!(r.graph.edges, g.edges);
    }

    #[test]
    fn cycle_is_internal_error() {
        let mut g = testkit::chain(&["A", "B"]);
        g.edges.push(EdgeInfo::new(1, 0));
        assert_eq!(transitive_reduce(&g).unwrap_err(), GraphError::Cycle);
        assert_eq!(compute_levels(&mut g).unwrap_err(), GraphError::Cycle);
    }

    #[test]
    fn levels_use_longest_path() {
        let mut g = testkit::chain(&["Set", "Monoid", "Group"]);
        compute_levels(&mut g).unwrap();
        assert_eq!(g.nodes.iter().map(|n| n.level).collect::<Vec<_>>(), vec![0, 1, 2]);

        let mut g = graph(TRIANGLE);
        compute_levels(&mut g).unwrap();
        assert_eq!(g.nodes[2].level, 2);

        let mut g = testkit::chain(&["Alone"]);
        compute_levels(&mut g).unwrap();
        assert_eq!(g.nodes[0].level, 0);
    }

    #[test]
    fn merge_group_naming() {
        let g = graph(
            r##"section lattices color "#000001"
section posets color "#000002" merge-with lattices
section sets color "#000003"
"##,
        );
        let groups = merge_groups(&g.sections);
        let names: Vec<_> = groups.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, vec!["posets_lattices", "sets"]);
    }

    #[test]
    fn mutual_merge_is_one_pair() {
        let g = graph(
            r##"section a color "#000001" merge-with b
section b color "#000002" merge-with a
"##,
        );
        assert_eq!(merge_groups(&g.sections).len(), 1);
        assert_eq!(map_suite(&g).unwrap().len(), 3);
    }

    #[test]
    fn suite_shapes() {
        assert_eq!(
            map_suite(&ResolvedGraph::default())
                .unwrap()
                .iter()
                .map(|m| (m.name.as_str(), m.view.graph.nodes.len()))
                .collect::<Vec<_>>(),
            vec![("all", 0), ("top", 0)]
        );
        let g = graph("section s color \"#000000\"\nstructure \"X\" in s { representative }");
        let names: Vec<_> = map_suite(&g).unwrap().into_iter().map(|m| m.name).collect();
        assert_eq!(names, vec!["s", "all", "top"]);
    }

    #[test]
    fn section_map_of_empty_section() {
        let g = graph("section s color \"#000000\"\nsection t color \"#111111\"\nstructure \"X\" in s {}");
        let view = select_map(&g, &MapSpec::Section("t".into())).unwrap();
        assert!(view.graph.nodes.is_empty());
        assert_eq!(
            select_map(&g, &MapSpec::Section("u".into())).unwrap_err(),
            GraphError::UnknownSection("u".into())
        );
    }

    #[test]
    fn section_map_restarts_levels_and_reports_dangling_parents() {
        let g = graph(
            r##"section a color "#000001"
section b color "#000002"
structure "Root" in a {}
structure "Mid" in a { types: "Root" }
structure "Low" in b { types: "Mid" }
structure "Lower" in b { types: "Low" }
"##,
        );
        let view = select_map(&g, &MapSpec::Section("b".into())).unwrap();
        assert_eq!(view.graph.nodes.iter().map(|n| n.level).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(view.dangling_parents, vec![("Low".to_string(), "Mid".to_string())]);
    }

    #[test]
    fn top_level_connects_through_hidden_nodes() {
        let g = graph(
            r##"section s color "#000000"
structure "Set" in s { representative }
structure "Magma" in s { types: "Set" }
structure "Group" in s { types: "Magma" representative }
structure "Ring" in s { types: "Group" representative }
"##,
        );
        let view = select_map(&g, &MapSpec::TopLevel).unwrap();
        assert_eq!(
            edge_names(&view.graph),
            vec![("Set".into(), "Group".into()), ("Group".into(), "Ring".into())]
        );
    }
}
