use std::fmt::Write;

use super::{num, EmitOptions};
use crate::layout::{RenderPlan, BODY_FONT, LABEL_FONT, PADDING, TITLE_FONT};
use crate::model::Rgb;

/// LaTeX escaping for text mode.
///
/// | char | output |
/// |------|--------|
/// | `\` | `\textbackslash{}` |
/// | `{` `}` `$` `&` `#` `%` `_` | backslash-prefixed |
/// | `~` | `\textasciitilde{}` |
/// | `^` | `\textasciicircum{}` |
/// | `[` `]` | `{[}` `{]}` |
/// | `•` | `\textbullet{}` |
/// | newline, tab | space |
pub fn escape_latex(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\textbackslash{}"),
            '{' | '}' | '$' | '&' | '#' | '%' | '_' => {
                out.push('\\');
                out.push(c);
            }
            '~' => out.push_str("\\textasciitilde{}"),
            '^' => out.push_str("\\textasciicircum{}"),
            '[' => out.push_str("{[}"),
            ']' => out.push_str("{]}"),
            '•' => out.push_str("\\textbullet{}"),
            '\n' | '\r' | '\t' => out.push(' '),
            c => out.push(c),
        }
    }
    out
}

/// Escaping for the URL argument of `\href`: `\`, `#`, `%`, `{`, `}`.
pub fn escape_latex_url(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if matches!(c, '\\' | '#' | '%' | '{' | '}') {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

fn font(size: f64) -> String {
    format!("\\fontsize{{{}}}{{{}}}\\selectfont", num(size), num(size * 1.2))
}

/// Standalone LaTeX document with one `tikzpicture`.
pub fn emit_tikz(plan: &RenderPlan, opts: &EmitOptions) -> String {
    let mut colors: Vec<Rgb> = Vec::new();
    for node in &plan.nodes {
        for c in &node.fill_stops {
            if !colors.contains(c) {
                colors.push(*c);
            }
        }
    }
    let color_name = |c: &Rgb| format!("fill{}", c.hex_digits());

    let mut out = String::new();
    out.push_str("\\documentclass[tikz,border=10pt]{standalone}\n");
    out.push_str("\\usepackage[T1]{fontenc}\n\\usepackage[utf8]{inputenc}\n\\usepackage{hyperref}\n");
    out.push_str("\\usetikzlibrary{arrows.meta}\n");
    for c in &colors {
        let _ = writeln!(out, "\\definecolor{{{}}}{{HTML}}{{{}}}", color_name(c), c.hex_digits());
    }
    out.push_str("\\begin{document}\n");
    if let Some(title) = &opts.title {
        let _ = writeln!(out, "% {}", escape_latex(title));
    }
    out.push_str("\\begin{tikzpicture}[x=1pt, y=-1pt, every node/.style={font=\\sffamily}]\n");

    for (i, node) in plan.nodes.iter().enumerate() {
        let s = node.scale;
        let inner = PADDING * s;
        let mut style = vec![
            "draw".to_string(),
            format!("rounded corners={}pt", num(6.0 * s)),
            format!("inner sep={}pt", num(inner)),
            format!("text width={}pt", num(node.width - 2.0 * inner)),
            format!("minimum height={}pt", num(node.height)),
            "align=left".to_string(),
        ];
        let mut omitted = None;
        match node.fill_stops.as_slice() {
            [] => {}
            [only] => style.push(format!("fill={}!45", color_name(only))),
            [first, second, rest @ ..] => {
                style.push(format!("left color={}!45", color_name(first)));
                style.push(format!("right color={}!45", color_name(second)));
                if !rest.is_empty() {
                    omitted = Some(rest.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));
                }
            }
        }
        if node.focus {
            style.push("line width=1.5pt".to_string());
        }

        let mut text = format!(
            "{{{}\\centering\\href{{{}}}{{\\textbf{{{}}}}}\\par}}",
            font(TITLE_FONT * s),
            escape_latex_url(&node.wikipedia),
            escape_latex(&node.name)
        );
        if opts.include_body && !node.body.is_empty() {
            text.push_str(&font(BODY_FONT * s));
            let mut lines = Vec::new();
            for section in &node.body {
                lines.push(format!("\\textbf{{{}:}}", escape_latex(&section.header)));
                lines.extend(section.lines.iter().map(|l| escape_latex(l)));
            }
            text.push_str(&lines.join("\\\\"));
        }

        let _ = writeln!(out, "% {}", escape_latex(&node.name));
        if let Some(colors) = omitted {
            let _ = writeln!(out, "% fill colors beyond the first two omitted: {colors}");
        }
        let _ = writeln!(
            out,
            "\\node[{}] (n{i}) at ({}, {}) {{{}}};",
            style.join(", "),
            num(node.center.x),
            num(node.center.y),
            text
        );
    }

    for e in &plan.edges {
        let label = match &e.label {
            Some(l) => format!(
                " node[midway, right, font={}] {{{}}}",
                font(LABEL_FONT),
                escape_latex(&l.text)
            ),
            None => String::new(),
        };
        let _ = writeln!(
            out,
            "\\draw[-{{Stealth[length=5pt]}}] ({}, {}) -- ({}, {}){label};",
            num(e.source.x),
            num(e.source.y),
            num(e.target.x),
            num(e.target.y)
        );
    }
    out.push_str("\\end{tikzpicture}\n\\end{document}\n");
    out
}
