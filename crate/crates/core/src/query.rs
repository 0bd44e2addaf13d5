//! Local neighborhood of one structure.

use std::collections::VecDeque;

use crate::resolve::ResolvedGraph;
use crate::transform::{compute_levels, GraphError};

#[derive(Debug, Clone)]
pub struct Neighborhood {
    pub graph: ResolvedGraph,
    /// Index of the queried structure in `graph`.
    pub focus: usize,
}

/// Structures within `radius` undirected hops of `name`, with every edge
/// among them. Levels are recomputed for the subgraph.
pub fn neighborhood(graph: &ResolvedGraph, name: &str, radius: u32) -> Result<Neighborhood, GraphError> {
    let start = graph
        .node_index(name)
        .ok_or_else(|| GraphError::UnknownStructure(name.to_string()))?;
    let n = graph.nodes.len();
    let mut adjacent = vec![Vec::new(); n];
    for e in &graph.edges {
        adjacent[e.from].push(e.to);
        adjacent[e.to].push(e.from);
    }
    let mut dist = vec![u32::MAX; n];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        if dist[v] == radius {
            continue;
        }
        for &w in &adjacent[v] {
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }

    let mut remap = vec![None; n];
    let mut sub = ResolvedGraph {
        sections: graph.sections.clone(),
        ..ResolvedGraph::default()
    };
    for (i, node) in graph.nodes.iter().enumerate() {
        if dist[i] != u32::MAX {
            remap[i] = Some(sub.nodes.len());
            sub.nodes.push(node.clone());
        }
    }
    for e in &graph.edges {
        if let (Some(from), Some(to)) = (remap[e.from], remap[e.to]) {
            let mut edge = e.clone();
            edge.from = from;
            edge.to = to;
            sub.edges.push(edge);
        }
    }
    compute_levels(&mut sub)?;
    Ok(Neighborhood {
        focus: remap[start].unwrap(),
        graph: sub,
    })
}
