//! Text serializers for a [`RenderPlan`].
//!
//! All emitters are pure: identical plans and options give byte-identical
//! output. Coordinates are written with two decimals.

mod dot;
mod html;
mod svg;
mod tikz;

use std::fmt;
use std::str::FromStr;

use crate::layout::RenderPlan;

pub use dot::{emit_dot, escape_dot};
pub use html::emit_html;
pub use svg::{emit_svg, escape_xml, svg_element};
pub use tikz::{emit_tikz, escape_latex, escape_latex_url};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Format {
    Svg,
    Tikz,
    Dot,
    Html,
}

impl Format {
    pub const ALL: [Format; 4] = [Format::Svg, Format::Tikz, Format::Dot, Format::Html];

    pub fn extension(self) -> &'static str {
        match self {
            Format::Svg => "svg",
            Format::Tikz => "tex",
            Format::Dot => "dot",
            Format::Html => "html",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Format::Svg => "svg",
            Format::Tikz => "tikz",
            Format::Dot => "dot",
            Format::Html => "html",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown format `{0}` (expected svg, tikz, dot or html)")]
pub struct UnknownFormat(pub String);

impl FromStr for Format {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Format::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| UnknownFormat(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmitOptions {
    pub format: Format,
    /// Draw the types/functions/relations/properties text inside nodes.
    pub include_body: bool,
    pub title: Option<String>,
}

impl EmitOptions {
    pub fn new(format: Format) -> Self {
        Self {
            format,
            include_body: true,
            title: None,
        }
    }

    pub fn outline(mut self) -> Self {
        self.include_body = false;
        self
    }

    pub fn titled(mut self, title: impl Into<String>) -> Self {
        self.title = Some(title.into());
        self
    }
}

pub fn emit(plan: &RenderPlan, opts: &EmitOptions) -> String {
    match opts.format {
        Format::Svg => emit_svg(plan, opts),
        Format::Tikz => emit_tikz(plan, opts),
        Format::Dot => emit_dot(plan, opts),
        Format::Html => emit_html(plan, opts),
    }
}

pub(crate) fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

/// Offsets in percent for `count` evenly spaced gradient stops.
pub fn stop_offsets(count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.0],
        n => (0..n).map(|i| 100.0 * i as f64 / (n - 1) as f64).collect(),
    }
}
