//! Layered layout: node sizing, crossing reduction and coordinates.
//!
//! Nodes sit in horizontal layers by level, level 0 at the top. Edges that
//! span several layers are threaded through placeholder slots while the
//! within-layer order is optimised, then drawn as straight segments from the
//! bottom of the source box to the top of the target box. All units are
//! points.

use crate::resolve::ResolvedGraph;
use crate::transform::compute_levels;

pub const BASE_WIDTH: f64 = 200.0;
pub const SHRINK_PER_LEVEL: f64 = 0.85;
pub const MIN_SCALE: f64 = 0.5;
pub const GUTTER: f64 = 0.25 * BASE_WIDTH;
pub const LAYER_GAP: f64 = 60.0;
pub const MARGIN: f64 = 20.0;
pub const PADDING: f64 = 8.0;
pub const TITLE_HEIGHT: f64 = 16.0;
pub const LINE_HEIGHT: f64 = 11.0;
pub const TITLE_FONT: f64 = 12.0;
pub const BODY_FONT: f64 = 9.0;
pub const LABEL_FONT: f64 = 8.0;
pub const LABEL_OFFSET: f64 = 4.0;
/// Characters per body line before wrapping.
pub const WRAP_COLUMNS: usize = 36;
pub const SWEEPS: usize = 4;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LayoutConfig {
    /// Name-only boxes.
    pub outline: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// A category header ("Types", "Functions", ...) and its wrapped lines.
#[derive(Debug, Clone, PartialEq)]
pub struct BodySection {
    pub header: String,
    pub lines: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeBox {
    pub name: String,
    pub wikipedia: String,
    pub center: Point,
    pub width: f64,
    pub height: f64,
    pub scale: f64,
    pub level: u32,
    pub fill_stops: Vec<crate::model::Rgb>,
    pub body: Vec<BodySection>,
    /// Highlighted node, e.g. the subject of a neighborhood query.
    pub focus: bool,
}

impl NodeBox {
    pub fn left(&self) -> f64 {
        self.center.x - self.width / 2.0
    }
    pub fn right(&self) -> f64 {
        self.center.x + self.width / 2.0
    }
    pub fn top(&self) -> f64 {
        self.center.y - self.height / 2.0
    }
    pub fn bottom(&self) -> f64 {
        self.center.y + self.height / 2.0
    }

    /// True when the interiors of the two boxes intersect.
    pub fn overlaps(&self, other: &NodeBox) -> bool {
        self.left() < other.right()
            && other.left() < self.right()
            && self.top() < other.bottom()
            && other.top() < self.bottom()
    }

    pub fn on_boundary(&self, p: Point) -> bool {
        const EPS: f64 = 1e-9;
        let inside_x = p.x >= self.left() - EPS && p.x <= self.right() + EPS;
        let inside_y = p.y >= self.top() - EPS && p.y <= self.bottom() + EPS;
        let on_x = (p.x - self.left()).abs() < EPS || (p.x - self.right()).abs() < EPS;
        let on_y = (p.y - self.top()).abs() < EPS || (p.y - self.bottom()).abs() < EPS;
        (inside_x && on_y) || (inside_y && on_x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeLabel {
    pub text: String,
    pub position: Point,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgePath {
    pub from: usize,
    pub to: usize,
    pub source: Point,
    pub target: Point,
    /// Polyline including both anchors.
    pub waypoints: Vec<Point>,
    pub label: Option<EdgeLabel>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RenderPlan {
    pub width: f64,
    pub height: f64,
    /// Same order as the graph's nodes.
    pub nodes: Vec<NodeBox>,
    pub edges: Vec<EdgePath>,
}

impl RenderPlan {
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

pub fn scale_for_level(level: u32) -> f64 {
    SHRINK_PER_LEVEL.powi(level as i32).max(MIN_SCALE)
}

/// Fills `size_scale` from each node's level.
pub fn size_nodes(graph: &mut ResolvedGraph) {
    for node in &mut graph.nodes {
        node.size_scale = scale_for_level(node.level);
    }
}

fn body_sections(def: &crate::model::StructureDef) -> Vec<BodySection> {
    let mut out = Vec::new();
    if !def.types.is_empty() {
        let names: Vec<&str> = def.types.iter().map(|r| r.target.as_str()).collect();
        let lines = textwrap::wrap(&names.join(", "), WRAP_COLUMNS)
            .into_iter()
            .map(|l| l.into_owned())
            .collect();
        out.push(BodySection {
            header: "Types".into(),
            lines,
        });
    }
    let bullets = textwrap::Options::new(WRAP_COLUMNS)
        .initial_indent("• ")
        .subsequent_indent("  ");
    for (header, items) in [
        ("Functions", &def.functions),
        ("Relations", &def.relations),
        ("Properties", &def.properties),
    ] {
        if items.is_empty() {
            continue;
        }
        let lines = items
            .iter()
            .flat_map(|item| textwrap::wrap(item, &bullets))
            .map(|l| l.into_owned())
            .collect();
        out.push(BodySection {
            header: header.into(),
            lines,
        });
    }
    out
}

/// Unscaled box height for a body.
pub fn base_height(body: &[BodySection]) -> f64 {
    let lines: usize = body.iter().map(|s| 1 + s.lines.len()).sum();
    2.0 * PADDING + TITLE_HEIGHT + lines as f64 * LINE_HEIGHT
}

/// A position in a layer: a real node or a placeholder on a long edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Node(usize),
    Dummy { edge: usize, layer: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayerOrdering {
    pub layers: Vec<Vec<Slot>>,
    /// Crossings of the returned ordering.
    pub crossings: usize,
    /// Crossings of the lexicographic starting order.
    pub seed_crossings: usize,
}

struct Layering {
    /// Slot kind per slot id.
    slots: Vec<Slot>,
    keys: Vec<String>,
    layer_of: Vec<usize>,
    /// Segments between layer l and l + 1, as slot ids (upper, lower).
    segments: Vec<Vec<(usize, usize)>>,
    layer_count: usize,
}

fn layer_levels(graph: &ResolvedGraph) -> Vec<u32> {
    let consistent = graph
        .edges
        .iter()
        .all(|e| graph.nodes[e.from].level < graph.nodes[e.to].level);
    if consistent {
        return graph.nodes.iter().map(|n| n.level).collect();
    }
    let mut g = graph.clone();
    compute_levels(&mut g).expect("layout requires an acyclic graph");
    g.nodes.iter().map(|n| n.level).collect()
}

fn build_layering(graph: &ResolvedGraph, levels: &[u32]) -> Layering {
    let n = graph.nodes.len();
    let layer_count = levels.iter().max().map_or(0, |&m| m as usize + 1);
    let mut slots: Vec<Slot> = (0..n).map(Slot::Node).collect();
    let mut keys: Vec<String> = graph.nodes.iter().map(|n| n.name().to_string()).collect();
    let mut layer_of: Vec<usize> = levels.iter().map(|&l| l as usize).collect();
    let mut segments = vec![Vec::new(); layer_count.saturating_sub(1)];

    for (ei, e) in graph.edges.iter().enumerate() {
        let (lu, lv) = (levels[e.from], levels[e.to]);
        let mut prev = e.from;
        for layer in lu + 1..lv {
            let id = slots.len();
            slots.push(Slot::Dummy { edge: ei, layer });
            keys.push(format!(
                "{}\u{0}{}\u{0}{layer}",
                graph.nodes[e.from].name(),
                graph.nodes[e.to].name()
            ));
            layer_of.push(layer as usize);
            segments[layer as usize - 1].push((prev, id));
            prev = id;
        }
        segments[lv as usize - 1].push((prev, e.to));
    }
    Layering {
        slots,
        keys,
        layer_of,
        segments,
        layer_count,
    }
}

fn positions(order: &[Vec<usize>], slot_count: usize) -> Vec<usize> {
    let mut pos = vec![0; slot_count];
    for layer in order {
        for (i, &s) in layer.iter().enumerate() {
            pos[s] = i;
        }
    }
    pos
}

fn count_crossings(lay: &Layering, order: &[Vec<usize>]) -> usize {
    let pos = positions(order, lay.slots.len());
    lay.segments
        .iter()
        .map(|segs| {
            let mut count = 0;
            for (i, &(a1, b1)) in segs.iter().enumerate() {
                for &(a2, b2) in &segs[i + 1..] {
                    let (a1, b1, a2, b2) = (pos[a1], pos[b1], pos[a2], pos[b2]);
                    if (a1 < a2 && b1 > b2) || (a1 > a2 && b1 < b2) {
                        count += 1;
                    }
                }
            }
            count
        })
        .sum()
}

/// Reorders every layer by the mean position of its neighbors in the
/// adjacent, already-fixed layer. `downward` uses the layer above.
fn sweep(lay: &Layering, order: &mut [Vec<usize>], downward: bool) {
    let layers: Vec<usize> = if downward {
        (1..lay.layer_count).collect()
    } else {
        (0..lay.layer_count.saturating_sub(1)).rev().collect()
    };
    for l in layers {
        let pos = positions(order, lay.slots.len());
        let mut sums: Vec<(f64, usize)> = vec![(0.0, 0); lay.slots.len()];
        let segs = if downward {
            &lay.segments[l - 1]
        } else {
            &lay.segments[l]
        };
        for &(upper, lower) in segs {
            let (me, other) = if downward { (lower, upper) } else { (upper, lower) };
            sums[me].0 += pos[other] as f64;
            sums[me].1 += 1;
        }
        let bary = |s: usize| match sums[s] {
            (_, 0) => pos[s] as f64,
            (total, k) => total / k as f64,
        };
        order[l].sort_by(|&a, &b| bary(a).total_cmp(&bary(b)).then_with(|| lay.keys[a].cmp(&lay.keys[b])));
    }
}

fn order_with_layering(lay: &Layering) -> (Vec<Vec<usize>>, usize, usize) {
    let mut seed: Vec<Vec<usize>> = vec![Vec::new(); lay.layer_count];
    for (s, &l) in lay.layer_of.iter().enumerate() {
        seed[l].push(s);
    }
    for layer in &mut seed {
        layer.sort_by(|&a, &b| lay.keys[a].cmp(&lay.keys[b]));
    }
    let seed_crossings = count_crossings(lay, &seed);

    let mut best = seed.clone();
    let mut best_crossings = seed_crossings;
    let mut current = seed;
    for i in 0..SWEEPS {
        sweep(lay, &mut current, i % 2 == 0);
        let c = count_crossings(lay, &current);
        if c <= best_crossings {
            best = current.clone();
            best_crossings = c;
        } else {
            current = best.clone();
        }
    }
    (best, best_crossings, seed_crossings)
}

/// Within-layer order after the barycenter sweeps.
pub fn order_layers(graph: &ResolvedGraph) -> LayerOrdering {
    let lay = build_layering(graph, &layer_levels(graph));
    let (order, crossings, seed_crossings) = order_with_layering(&lay);
    LayerOrdering {
        layers: order
            .into_iter()
            .map(|layer| layer.into_iter().map(|s| lay.slots[s]).collect())
            .collect(),
        crossings,
        seed_crossings,
    }
}

pub fn layout(graph: &ResolvedGraph) -> RenderPlan {
    layout_with(graph, &LayoutConfig::default())
}

/// Computes geometry for a graph whose levels and sizes are filled in.
pub fn layout_with(graph: &ResolvedGraph, config: &LayoutConfig) -> RenderPlan {
    if graph.nodes.is_empty() {
        return RenderPlan::default();
    }
    let levels = layer_levels(graph);
    let ordering = order_layers(graph);

    let mut boxes: Vec<NodeBox> = graph
        .nodes
        .iter()
        .zip(&levels)
        .map(|(node, &level)| {
            let body = if config.outline {
                Vec::new()
            } else {
                body_sections(&node.structure)
            };
            let scale = node.size_scale;
            NodeBox {
                name: node.name().to_string(),
                wikipedia: node.structure.wikipedia.clone(),
                center: Point::new(0.0, 0.0),
                width: BASE_WIDTH * scale,
                height: base_height(&body) * scale,
                scale,
                level,
                fill_stops: node.fill_stops.clone(),
                body,
                focus: false,
            }
        })
        .collect();

    let real_layers: Vec<Vec<usize>> = ordering
        .layers
        .iter()
        .map(|layer| {
            layer
                .iter()
                .filter_map(|s| match s {
                    Slot::Node(i) => Some(*i),
                    Slot::Dummy { .. } => None,
                })
                .collect()
        })
        .collect();

    let widths: Vec<f64> = boxes.iter().map(|b| b.width).collect();
    let row_width =
        |layer: &[usize]| layer.iter().map(|&i| widths[i]).sum::<f64>() + GUTTER * layer.len().saturating_sub(1) as f64;
    let content_width = real_layers.iter().map(|l| row_width(l)).fold(0.0, f64::max);
    let width = content_width + 2.0 * MARGIN;

    let mut y = MARGIN;
    for layer in &real_layers {
        let row_height = layer.iter().map(|&i| boxes[i].height).fold(0.0, f64::max);
        let mut x = (width - row_width(layer)) / 2.0;
        for &i in layer {
            let b = &mut boxes[i];
            b.center = Point::new(x + b.width / 2.0, y + row_height / 2.0);
            x += b.width + GUTTER;
        }
        y += row_height + LAYER_GAP;
    }
    let height = y - LAYER_GAP + MARGIN;

    let edges = graph
        .edges
        .iter()
        .map(|e| {
            let (src, dst) = (&boxes[e.from], &boxes[e.to]);
            let source = Point::new(src.center.x, src.bottom());
            let target = Point::new(dst.center.x, dst.top());
            let label = e.label.as_ref().map(|text| EdgeLabel {
                text: text.clone(),
                position: Point::new((source.x + target.x) / 2.0 + LABEL_OFFSET, (source.y + target.y) / 2.0),
            });
            EdgePath {
                from: e.from,
                to: e.to,
                source,
                target,
                waypoints: vec![source, target],
                label,
            }
        })
        .collect();

    RenderPlan {
        width,
        height,
        nodes: boxes,
        edges,
    }
}
