use std::fmt::Write;

use super::{num, stop_offsets, EmitOptions};
use crate::layout::{RenderPlan, BODY_FONT, LABEL_FONT, LINE_HEIGHT, PADDING, TITLE_FONT, TITLE_HEIGHT};

const STROKE: &str = "#333333";
const FILL_OPACITY: &str = "0.45";

/// Escapes `& < > " '` for XML text and attribute values.
pub fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            '\n' | '\r' | '\t' => out.push(' '),
            c if (c as u32) < 0x20 => {}
            c => out.push(c),
        }
    }
    out
}

/// Standalone SVG document.
pub fn emit_svg(plan: &RenderPlan, opts: &EmitOptions) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&svg_element(plan, opts));
    out
}

/// The `<svg>` element alone, for embedding.
pub fn svg_element(plan: &RenderPlan, opts: &EmitOptions) -> String {
    let mut out = String::new();
    let (w, h) = (num(plan.width), num(plan.height));
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\" \
         width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" font-family=\"Helvetica, Arial, sans-serif\">"
    );
    if let Some(title) = &opts.title {
        let _ = writeln!(out, "  <title>{}</title>", escape_xml(title));
    }

    out.push_str("  <defs>\n");
    let _ = writeln!(
        out,
        "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"7\" markerHeight=\"7\" orient=\"auto\">\
         <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"{STROKE}\"/></marker>"
    );
    for (i, node) in plan.nodes.iter().enumerate() {
        if node.fill_stops.len() < 2 {
            continue;
        }
        let _ = writeln!(
            out,
            "    <linearGradient id=\"fill-{i}\" x1=\"0%\" y1=\"0%\" x2=\"100%\" y2=\"0%\">"
        );
        for (color, offset) in node.fill_stops.iter().zip(stop_offsets(node.fill_stops.len())) {
            let _ = writeln!(
                out,
                "      <stop offset=\"{}%\" stop-color=\"{color}\"/>",
                offset_text(offset)
            );
        }
        out.push_str("    </linearGradient>\n");
    }
    out.push_str("  </defs>\n");

    out.push_str("  <g class=\"edges\">\n");
    for e in &plan.edges {
        let _ = writeln!(
            out,
            "    <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{STROKE}\" stroke-width=\"1\" marker-end=\"url(#arrow)\"/>",
            num(e.source.x),
            num(e.source.y),
            num(e.target.x),
            num(e.target.y)
        );
        if let Some(label) = &e.label {
            let _ = writeln!(
                out,
                "    <text class=\"edge-label\" x=\"{}\" y=\"{}\" font-size=\"{}\" font-style=\"italic\">{}</text>",
                num(label.position.x),
                num(label.position.y),
                num(LABEL_FONT),
                escape_xml(&label.text)
            );
        }
    }
    out.push_str("  </g>\n");

    out.push_str("  <g class=\"nodes\">\n");
    for (i, node) in plan.nodes.iter().enumerate() {
        let href = escape_xml(&node.wikipedia);
        let s = node.scale;
        let fill = match node.fill_stops.as_slice() {
            [] => "none".to_string(),
            [only] => only.to_string(),
            _ => format!("url(#fill-{i})"),
        };
        let _ = writeln!(out, "    <a href=\"{href}\" xlink:href=\"{href}\">");
        let _ = writeln!(out, "      <g class=\"node\" id=\"node-{i}\">");
        let _ = writeln!(
            out,
            "        <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" rx=\"{}\" fill=\"{fill}\" fill-opacity=\"{FILL_OPACITY}\" stroke=\"{STROKE}\" stroke-width=\"{}\"/>",
            num(node.left()),
            num(node.top()),
            num(node.width),
            num(node.height),
            num(6.0 * s),
            if node.focus { "3" } else { "1" }
        );
        let mut baseline = node.top() + (PADDING + TITLE_FONT) * s;
        let _ = writeln!(
            out,
            "        <text x=\"{}\" y=\"{}\" font-size=\"{}\" font-weight=\"bold\" text-anchor=\"middle\">{}</text>",
            num(node.center.x),
            num(baseline),
            num(TITLE_FONT * s),
            escape_xml(&node.name)
        );
        if opts.include_body {
            baseline += (TITLE_HEIGHT - TITLE_FONT) * s;
            let x = num(node.left() + PADDING * s);
            let size = num(BODY_FONT * s);
            for section in &node.body {
                baseline += LINE_HEIGHT * s;
                let _ = writeln!(
                    out,
                    "        <text x=\"{x}\" y=\"{}\" font-size=\"{size}\" font-weight=\"bold\">{}:</text>",
                    num(baseline),
                    escape_xml(&section.header)
                );
                for line in &section.lines {
                    baseline += LINE_HEIGHT * s;
                    let _ = writeln!(
                        out,
                        "        <text x=\"{x}\" y=\"{}\" font-size=\"{size}\" xml:space=\"preserve\">{}</text>",
                        num(baseline),
                        escape_xml(line)
                    );
                }
            }
        }
        out.push_str("      </g>\n    </a>\n");
    }
    out.push_str("  </g>\n</svg>\n");
    out
}

fn offset_text(offset: f64) -> String {
    if offset.fract() == 0.0 {
        format!("{offset:.0}")
    } else {
        format!("{offset:.2}")
    }
}
