use std::fmt::Write;

use super::{num, EmitOptions};
use crate::layout::RenderPlan;

const POINTS_PER_INCH: f64 = 72.0;

/// Escapes a DOT double-quoted string: `\` and `"` get a backslash, line
/// breaks become `\n`.
pub fn escape_dot(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => {}
            c => out.push(c),
        }
    }
    out
}

/// Graphviz digraph with pinned positions (y axis pointing up, points).
pub fn emit_dot(plan: &RenderPlan, opts: &EmitOptions) -> String {
    let name = escape_dot(opts.title.as_deref().unwrap_or("map"));
    let mut out = format!("digraph \"{name}\" {{\n");
    if plan.is_empty() {
        out.push_str("}\n");
        return out;
    }
    let _ = writeln!(
        out,
        "  graph [splines=line, bb=\"0,0,{},{}\"];",
        num(plan.width),
        num(plan.height)
    );
    out.push_str("  node [shape=box, style=\"rounded,filled\", fontname=\"Helvetica\"];\n");
    out.push_str("  edge [fontname=\"Helvetica\", fontsize=8];\n");

    for node in &plan.nodes {
        let mut label = escape_dot(&node.name);
        if opts.include_body && !node.body.is_empty() {
            label.push_str("\\n");
            for section in &node.body {
                label.push_str(&escape_dot(&section.header));
                label.push_str(":\\l");
                for line in &section.lines {
                    label.push_str(&escape_dot(line));
                    label.push_str("\\l");
                }
            }
        }
        let fill = node
            .fill_stops
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(":");
        let mut attrs = vec![
            format!("label=\"{label}\""),
            format!("pos=\"{},{}!\"", num(node.center.x), num(plan.height - node.center.y)),
            format!("width=\"{:.4}\"", node.width / POINTS_PER_INCH),
            format!("height=\"{:.4}\"", node.height / POINTS_PER_INCH),
            format!("fillcolor=\"{fill}\""),
        ];
        if node.fill_stops.len() > 1 {
            attrs.push("gradientangle=0".to_string());
        }
        if node.focus {
            attrs.push("penwidth=3".to_string());
        }
        attrs.push(format!("URL=\"{}\"", escape_dot(&node.wikipedia)));
        let _ = writeln!(out, "  \"{}\" [{}];", escape_dot(&node.name), attrs.join(", "));
    }

    for e in &plan.edges {
        let from = escape_dot(&plan.nodes[e.from].name);
        let to = escape_dot(&plan.nodes[e.to].name);
        match &e.label {
            Some(l) => {
                let _ = writeln!(out, "  \"{from}\" -> \"{to}\" [label=\"{}\"];", escape_dot(&l.text));
            }
            None => {
                let _ = writeln!(out, "  \"{from}\" -> \"{to}\";");
            }
        }
    }
    out.push_str("}\n");
    out
}
