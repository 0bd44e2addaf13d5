//! Name resolution and validation.
//!
//! [`resolve`] turns a parsed [`Catalog`] into a [`ResolvedGraph`]: one node
//! per structure, one edge per extension reference, pointing from the
//! extended (more general) structure to the extending one. Every problem in
//! the catalog is collected before giving up.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::model::{Catalog, Rgb, SectionDecl, SourcePos, StructureDef};

#[derive(Debug, Clone)]
pub struct NodeInfo {
    pub structure: Arc<StructureDef>,
    /// One color per section of the structure, in its declared order.
    pub fill_stops: Vec<Rgb>,
    /// Longest path from a source; set by `transform::compute_levels`.
    pub level: u32,
    /// Fraction in (0, 1]; set by `layout::size_nodes`.
    pub size_scale: f64,
}

impl NodeInfo {
    pub fn new(structure: Arc<StructureDef>, fill_stops: Vec<Rgb>) -> Self {
        Self {
            structure,
            fill_stops,
            level: 0,
            size_scale: 1.0,
        }
    }

    pub fn name(&self) -> &str {
        &self.structure.name
    }
}

/// `from` is the more general structure, `to` the one extending it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeInfo {
    pub from: usize,
    pub to: usize,
    pub label: Option<String>,
    pub keep: bool,
}

impl EdgeInfo {
    pub fn new(from: usize, to: usize) -> Self {
        Self {
            from,
            to,
            label: None,
            keep: false,
        }
    }
}

/// A validated extension DAG.
#[derive(Debug, Clone, Default)]
pub struct ResolvedGraph {
    pub nodes: Vec<NodeInfo>,
    pub edges: Vec<EdgeInfo>,
    /// Section declarations in file order; the palette is derived from these.
    pub sections: Vec<SectionDecl>,
}

impl ResolvedGraph {
    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.name() == name)
    }

    pub fn section_palette(&self) -> BTreeMap<&str, Rgb> {
        self.sections.iter().map(|s| (s.id.as_str(), s.color)).collect()
    }

    pub fn section(&self, id: &str) -> Option<&SectionDecl> {
        self.sections.iter().find(|s| s.id == id)
    }

    /// Outgoing neighbor lists (general to specific), in edge order.
    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            out[e.from].push(e.to);
        }
        out
    }

    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            out[e.to].push(e.from);
        }
        out
    }

    /// Kahn order, or `None` when the edges contain a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let succ = self.successors();
        let mut indegree = vec![0usize; self.nodes.len()];
        for e in &self.edges {
            indegree[e.to] += 1;
        }
        let mut queue: VecDeque<usize> = (0..self.nodes.len()).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &succ[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        (order.len() == self.nodes.len()).then_some(order)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemanticErrorKind {
    UnresolvedTarget,
    DuplicateName,
    UnknownSection,
    Cycle,
    SelfReference,
    BadMerge,
    DuplicateSection,
}

impl fmt::Display for SemanticErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticError {
    pub kind: SemanticErrorKind,
    /// Names involved: the declaring structure or section first.
    pub offenders: Vec<String>,
    pub source_pos: SourcePos,
    /// For `Cycle` only: the witness, first entry repeated at the end.
    pub cycle_path: Vec<String>,
}

impl SemanticError {
    fn new(kind: SemanticErrorKind, offenders: Vec<String>, source_pos: SourcePos) -> Self {
        Self {
            kind,
            offenders,
            source_pos,
            cycle_path: Vec::new(),
        }
    }

    pub fn message(&self) -> String {
        let o = &self.offenders;
        match self.kind {
            SemanticErrorKind::UnresolvedTarget => {
                format!("structure {:?} extends undefined structure {:?}", o[0], o[1])
            }
            SemanticErrorKind::DuplicateName => format!("structure {:?} is declared more than once", o[0]),
            SemanticErrorKind::UnknownSection => {
                format!("structure {:?} is in undeclared section `{}`", o[0], o[1])
            }
            SemanticErrorKind::Cycle => {
                format!("extension cycle: {}", self.cycle_path.join(" -> "))
            }
            SemanticErrorKind::SelfReference => format!("structure {:?} extends itself", o[0]),
            SemanticErrorKind::BadMerge => {
                format!("section `{}` cannot merge with `{}`", o[0], o[1])
            }
            SemanticErrorKind::DuplicateSection => match o.as_slice() {
                [section] => format!("section `{section}` is declared more than once"),
                [structure, section, ..] => {
                    format!("structure {structure:?} lists section `{section}` more than once")
                }
                [] => "duplicate section".to_string(),
            },
        }
    }
}

impl fmt::Display for SemanticError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: error[{}]: {}", self.source_pos, self.kind, self.message())
    }
}

impl std::error::Error for SemanticError {}

/// Validates a catalog and builds its extension graph.
pub fn resolve(catalog: &Catalog) -> Result<ResolvedGraph, Vec<SemanticError>> {
    use SemanticErrorKind::*;
    let mut errors = Vec::new();

    let mut sections: Vec<SectionDecl> = Vec::new();
    for s in &catalog.sections {
        if sections.iter().any(|d| d.id == s.id) {
            errors.push(SemanticError::new(DuplicateSection, vec![s.id.clone()], s.source_pos));
        } else {
            sections.push(s.clone());
        }
    }
    let palette: HashMap<&str, Rgb> = sections.iter().map(|s| (s.id.as_str(), s.color)).collect();
    for s in &catalog.sections {
        if let Some(m) = &s.merge_with {
            if *m == s.id || !palette.contains_key(m.as_str()) {
                errors.push(SemanticError::new(
                    BadMerge,
                    vec![s.id.clone(), m.clone()],
                    s.source_pos,
                ));
            }
        }
    }

    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut defs: Vec<&StructureDef> = Vec::new();
    for def in &catalog.structures {
        if index.contains_key(def.name.as_str()) {
            errors.push(SemanticError::new(
                DuplicateName,
                vec![def.name.clone()],
                def.source_pos,
            ));
        } else {
            index.insert(&def.name, defs.len());
            defs.push(def);
        }
    }

    let mut nodes = Vec::with_capacity(defs.len());
    let mut edges: Vec<EdgeInfo> = Vec::new();
    for (to, def) in defs.iter().enumerate() {
        let mut seen = HashSet::new();
        let mut fill_stops = Vec::with_capacity(def.sections.len());
        for sec in &def.sections {
            if !seen.insert(sec.as_str()) {
                errors.push(SemanticError::new(
                    DuplicateSection,
                    vec![def.name.clone(), sec.clone()],
                    def.source_pos,
                ));
                continue;
            }
            match palette.get(sec.as_str()) {
                Some(&c) => fill_stops.push(c),
                None => errors.push(SemanticError::new(
                    UnknownSection,
                    vec![def.name.clone(), sec.clone()],
                    def.source_pos,
                )),
            }
        }
        nodes.push(NodeInfo::new(Arc::new((*def).clone()), fill_stops));

        for r in &def.types {
            if r.target == def.name {
                errors.push(SemanticError::new(
                    SelfReference,
                    vec![def.name.clone()],
                    def.source_pos,
                ));
                continue;
            }
            let Some(&from) = index.get(r.target.as_str()) else {
                errors.push(SemanticError::new(
                    UnresolvedTarget,
                    vec![def.name.clone(), r.target.clone()],
                    def.source_pos,
                ));
                continue;
            };
            if let Some(existing) = edges.iter_mut().find(|e| e.from == from && e.to == to) {
                existing.keep |= r.keep;
                if existing.label.is_none() {
                    existing.label = r.label.clone();
                }
                continue;
            }
            edges.push(EdgeInfo {
                from,
                to,
                label: r.label.clone(),
                keep: r.keep,
            });
        }
    }

    let graph = ResolvedGraph { nodes, edges, sections };
    errors.extend(cycle_errors(&graph));

    if errors.is_empty() {
        Ok(graph)
    } else {
        Err(errors)
    }
}

/// One error per non-trivial strongly connected component, ordered by the
/// component's least name.
fn cycle_errors(graph: &ResolvedGraph) -> Vec<SemanticError> {
    let mut out: Vec<SemanticError> = strongly_connected_components(graph)
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|component| {
            let path = cycle_witness(graph, &component);
            let start = graph.node_index(&path[0]).unwrap();
            let mut err = SemanticError::new(
                SemanticErrorKind::Cycle,
                path[..path.len() - 1].to_vec(),
                graph.nodes[start].structure.source_pos,
            );
            err.cycle_path = path;
            err
        })
        .collect();
    out.sort_by(|a, b| a.cycle_path[0].cmp(&b.cycle_path[0]));
    out
}

/// Shortest cycle through the lexicographically least member, following
/// "extends" references (declaring structure to its target). Neighbors are
/// explored in name order so the witness is deterministic.
fn cycle_witness(graph: &ResolvedGraph, component: &[usize]) -> Vec<String> {
    let members: HashSet<usize> = component.iter().copied().collect();
    let name = |v: usize| graph.nodes[v].name();
    let start = *component.iter().min_by(|&&a, &&b| name(a).cmp(name(b))).unwrap();

    let mut extends = graph.predecessors();
    for list in &mut extends {
        list.retain(|v| members.contains(v));
        list.sort_by(|&a, &b| name(a).cmp(name(b)));
    }

    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    'search: while let Some(v) = queue.pop_front() {
        for &w in &extends[v] {
            if w == start {
                parent.insert(start, v);
                break 'search;
            }
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(w) {
                e.insert(v);
                queue.push_back(w);
            }
        }
    }

    let mut rev = vec![start];
    let mut v = parent[&start];
    while v != start {
        rev.push(v);
        v = parent[&v];
    }
    rev.push(start);
    rev.reverse();
    rev.into_iter().map(|v| name(v).to_string()).collect()
}

/// Tarjan's algorithm, iterative.
fn strongly_connected_components(graph: &ResolvedGraph) -> Vec<Vec<usize>> {
    let n = graph.nodes.len();
    let succ = graph.successors();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&(v, next)) = call.last() {
            if let Some(&w) = succ[v].get(next) {
                call.last_mut().unwrap().1 += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut component = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        component.push(w);
                        if w == v {
                            break;
                        }
                    }
                    components.push(component);
                }
            }
        }
    }
    components
}
