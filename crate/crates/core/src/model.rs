//! In-memory catalog model shared by every pipeline stage.
//!
//! Values are plain data and immutable once built. Equality on
//! [`SectionDecl`] and [`StructureDef`] ignores source positions so that a
//! catalog compares equal to the result of printing and re-parsing it.

use std::fmt;
use std::str::FromStr;

/// 1-based line/column of a declaration in its source file.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SourcePos {
    pub line: u32,
    pub column: u32,
}

impl SourcePos {
    pub fn new(line: u32, column: u32) -> Self {
        Self { line, column }
    }
}

impl fmt::Display for SourcePos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// An sRGB color written as `#RRGGBB`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rgb(pub [u8; 3]);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid color {0:?}: expected #RRGGBB")]
pub struct InvalidColor(pub String);

impl Rgb {
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Self([r, g, b])
    }

    /// Hex digits without the leading `#`, uppercase.
    pub fn hex_digits(&self) -> String {
        format!("{:02X}{:02X}{:02X}", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for Rgb {
    type Err = InvalidColor;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || InvalidColor(s.to_string());
        let digits = s.strip_prefix('#').ok_or_else(bad)?;
        if digits.len() != 6 || !digits.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(bad());
        }
        let channel = |i: usize| u8::from_str_radix(&digits[i..i + 2], 16).map_err(|_| bad());
        Ok(Rgb([channel(0)?, channel(2)?, channel(4)?]))
    }
}

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.hex_digits())
    }
}

/// A section: one broad family of structures sharing a map color.
#[derive(Debug, Clone)]
pub struct SectionDecl {
    pub id: String,
    pub color: Rgb,
    /// Another section this one shares a map with.
    pub merge_with: Option<String>,
    pub source_pos: SourcePos,
}

impl PartialEq for SectionDecl {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id && self.color == other.color && self.merge_with == other.merge_with
    }
}

impl Eq for SectionDecl {}

/// A reference from a structure to one it extends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionRef {
    pub target: String,
    /// Text drawn on the arrow.
    pub label: Option<String>,
    /// Exempt from transitive reduction.
    pub keep: bool,
}

impl ExtensionRef {
    pub fn new(target: impl Into<String>) -> Self {
        Self {
            target: target.into(),
            label: None,
            keep: false,
        }
    }

    pub fn labeled(target: impl Into<String>, label: impl Into<String>) -> Self {
        Self {
            label: Some(label.into()),
            ..Self::new(target)
        }
    }

    pub fn kept(mut self) -> Self {
        self.keep = true;
        self
    }
}

/// One mathematical structure, described by the four categories
/// types / functions / relations / properties.
#[derive(Debug, Clone, Default)]
pub struct StructureDef {
    pub name: String,
    pub sections: Vec<String>,
    pub types: Vec<ExtensionRef>,
    pub functions: Vec<String>,
    pub relations: Vec<String>,
    pub properties: Vec<String>,
    pub wikipedia: String,
    /// Stands for its section on the top-level map.
    pub representative: bool,
    pub source_pos: SourcePos,
}

impl PartialEq for StructureDef {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.sections == other.sections
            && self.types == other.types
            && self.functions == other.functions
            && self.relations == other.relations
            && self.properties == other.properties
            && self.wikipedia == other.wikipedia
            && self.representative == other.representative
    }
}

impl Eq for StructureDef {}

impl StructureDef {
    pub fn new(name: impl Into<String>, sections: &[&str]) -> Self {
        Self {
            name: name.into(),
            sections: sections.iter().map(|s| s.to_string()).collect(),
            ..Self::default()
        }
    }

    pub fn is_multi_section(&self) -> bool {
        self.sections.len() > 1
    }
}

/// Counts reported by [`Catalog::stats`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CatalogStats {
    pub sections: usize,
    pub structures: usize,
    pub edges: usize,
}

/// A parsed catalog. Both lists keep file order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Catalog {
    pub sections: Vec<SectionDecl>,
    pub structures: Vec<StructureDef>,
}

impl Catalog {
    /// The structure with exactly this name. Names are case-sensitive.
    pub fn lookup(&self, name: &str) -> Option<&StructureDef> {
        self.structures.iter().find(|s| s.name == name)
    }

    pub fn section(&self, id: &str) -> Option<&SectionDecl> {
        self.sections.iter().find(|s| s.id == id)
    }

    pub fn stats(&self) -> CatalogStats {
        CatalogStats {
            sections: self.sections.len(),
            structures: self.structures.len(),
            edges: self.structures.iter().map(|s| s.types.len()).sum(),
        }
    }
}
