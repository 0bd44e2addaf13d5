use std::fmt::Write;

use super::svg::{escape_xml, svg_element};
use super::EmitOptions;
use crate::layout::RenderPlan;

const DEFAULT_TITLE: &str = "Map of mathematical structures";

const STYLE: &str = "body { font-family: Helvetica, Arial, sans-serif; margin: 1.5em; }
nav.index ul { columns: 4 12em; padding-left: 1.2em; }
nav.index a { color: #1a4f8b; text-decoration: none; }
div.map { overflow: auto; border-top: 1px solid #cccccc; padding-top: 1em; }
div.map a:hover rect { stroke-width: 2; }";

/// Self-contained page: title, an index of structures linking to their
/// boxes, and the inline SVG map. No external resources.
pub fn emit_html(plan: &RenderPlan, opts: &EmitOptions) -> String {
    let title = escape_xml(opts.title.as_deref().unwrap_or(DEFAULT_TITLE));
    let mut out = String::new();
    out.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\"/>\n");
    let _ = writeln!(out, "<title>{title}</title>");
    let _ = writeln!(out, "<style>\n{STYLE}\n</style>");
    out.push_str("</head>\n<body>\n");
    let _ = writeln!(out, "<h1>{title}</h1>");

    let mut index: Vec<(usize, &str)> = plan.nodes.iter().map(|n| n.name.as_str()).enumerate().collect();
    index.sort_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)));
    out.push_str("<nav class=\"index\">\n<ul>\n");
    for (i, name) in index {
        let _ = writeln!(out, "<li><a href=\"#node-{i}\">{}</a></li>", escape_xml(name));
    }
    out.push_str("</ul>\n</nav>\n<div class=\"map\">\n");
    out.push_str(&svg_element(plan, opts));
    out.push_str("</div>\n</body>\n</html>\n");
    out
}
