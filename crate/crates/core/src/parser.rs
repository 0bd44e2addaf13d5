//! Front end for the catalog language and its canonical printer.
//!
//! ```text
//! catalog        = { statement } ;
//! statement      = section_decl | structure_decl ;
//! section_decl   = "section" IDENT "color" STRING [ "merge-with" IDENT ] ;
//! structure_decl = "structure" STRING "in" ident_list "{" { field } "}" ;
//! ident_list     = IDENT { "," IDENT } ;
//! field          = "types:" ref_list
//!                | "functions:" string_list
//!                | "relations:" string_list
//!                | "properties:" string_list
//!                | "wikipedia:" STRING
//!                | "representative" ;
//! ref_list       = ref { "," ref } ;
//! ref            = STRING [ "label" STRING ] [ "keep" ] ;
//! string_list    = STRING { "," STRING } ;
//! ```
//!
//! `#` starts a comment running to the end of the line. Inside strings `\"`
//! is a literal quote and `\\` a literal backslash; any other backslash is
//! kept as is. Parsing stops at the first error and performs no name
//! resolution.

use std::fmt;

use crate::model::{Catalog, ExtensionRef, Rgb, SectionDecl, SourcePos, StructureDef};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedToken,
    UnexpectedEof,
    UnterminatedString,
    InvalidCharacter,
    InvalidIdentifier,
    InvalidColor,
    EmptyName,
    DuplicateField,
}

/// First grammar violation in a catalog source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: u32,
    pub column: u32,
    pub message: String,
    /// The source line containing the error.
    pub snippet: String,
}

impl ParseError {
    pub fn pos(&self) -> SourcePos {
        SourcePos::new(self.line, self.column)
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}:{}: error: {}", self.line, self.column, self.message)?;
        write!(f, "  | {}", self.snippet)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Str(String),
    Comma,
    LBrace,
    RBrace,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::Comma => "`,`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    column: u32,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            chars: src.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn pos(&self) -> SourcePos {
        SourcePos::new(self.line, self.column)
    }

    fn error(&self, kind: ParseErrorKind, pos: SourcePos, message: impl Into<String>) -> ParseError {
        make_error(self.src, kind, pos, message.into())
    }

    fn next_token(&mut self) -> Result<(Tok, SourcePos), ParseError> {
        loop {
            match self.chars.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(&c) = self.chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
        let pos = self.pos();
        let Some(&c) = self.chars.peek() else {
            return Ok((Tok::Eof, pos));
        };
        let tok = match c {
            ',' => {
                self.bump();
                Tok::Comma
            }
            '{' => {
                self.bump();
                Tok::LBrace
            }
            '}' => {
                self.bump();
                Tok::RBrace
            }
            '"' => {
                self.bump();
                let mut text = String::new();
                loop {
                    match self.bump() {
                        None => {
                            return Err(self.error(
                                ParseErrorKind::UnterminatedString,
                                pos,
                                "unterminated string: expected closing `\"`",
                            ))
                        }
                        Some('"') => break,
                        Some('\\') => match self.chars.peek() {
                            Some('"') | Some('\\') => text.push(self.bump().unwrap()),
                            _ => text.push('\\'),
                        },
                        Some(other) => text.push(other),
                    }
                }
                Tok::Str(text)
            }
            c if is_word_char(c) => {
                let mut word = String::new();
                while let Some(&c) = self.chars.peek() {
                    if !is_word_char(c) {
                        break;
                    }
                    word.push(c);
                    self.bump();
                }
                Tok::Word(word)
            }
            other => {
                return Err(self.error(
                    ParseErrorKind::InvalidCharacter,
                    pos,
                    format!("unexpected character {other:?}"),
                ))
            }
        };
        Ok((tok, pos))
    }
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | ':')
}

fn is_ident(word: &str) -> bool {
    let mut chars = word.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn make_error(src: &str, kind: ParseErrorKind, pos: SourcePos, message: String) -> ParseError {
    let snippet = src
        .split('\n')
        .nth(pos.line as usize - 1)
        .unwrap_or("")
        .trim_end_matches('\r')
        .to_string();
    ParseError {
        kind,
        line: pos.line,
        column: pos.column,
        message,
        snippet,
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<(Tok, SourcePos)>,
}

const FIELD_KEYWORDS: [&str; 6] = [
    "types:",
    "functions:",
    "relations:",
    "properties:",
    "wikipedia:",
    "representative",
];

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Result<&(Tok, SourcePos), ParseError> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lexer.next_token()?);
        }
        Ok(self.peeked.as_ref().unwrap())
    }

    fn next(&mut self) -> Result<(Tok, SourcePos), ParseError> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lexer.next_token(),
        }
    }

    fn unexpected(&self, expected: &str, found: &Tok, pos: SourcePos) -> ParseError {
        let kind = if *found == Tok::Eof {
            ParseErrorKind::UnexpectedEof
        } else {
            ParseErrorKind::UnexpectedToken
        };
        self.lexer
            .error(kind, pos, format!("expected {expected}, found {}", found.describe()))
    }

    fn peek_is_word(&mut self, word: &str) -> Result<bool, ParseError> {
        Ok(matches!(&self.peek()?.0, Tok::Word(w) if w == word))
    }

    fn peek_is(&mut self, tok: &Tok) -> Result<bool, ParseError> {
        Ok(&self.peek()?.0 == tok)
    }

    fn expect_word(&mut self, word: &str) -> Result<SourcePos, ParseError> {
        match self.next()? {
            (Tok::Word(w), pos) if w == word => Ok(pos),
            (tok, pos) => Err(self.unexpected(&format!("`{word}`"), &tok, pos)),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<SourcePos, ParseError> {
        let (tok, pos) = self.next()?;
        if tok == want {
            Ok(pos)
        } else {
            Err(self.unexpected(&want.describe(), &tok, pos))
        }
    }

    fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.next()? {
            (Tok::Word(w), pos) => {
                if is_ident(&w) {
                    Ok(w)
                } else {
                    Err(self.lexer.error(
                        ParseErrorKind::InvalidIdentifier,
                        pos,
                        format!("invalid identifier `{w}`: expected a letter followed by letters, digits or `_`"),
                    ))
                }
            }
            (tok, pos) => Err(self.unexpected("identifier", &tok, pos)),
        }
    }

    fn expect_string(&mut self) -> Result<(String, SourcePos), ParseError> {
        match self.next()? {
            (Tok::Str(s), pos) => Ok((s, pos)),
            (tok, pos) => Err(self.unexpected("string", &tok, pos)),
        }
    }

    fn expect_name(&mut self, what: &str) -> Result<String, ParseError> {
        let (s, pos) = self.expect_string()?;
        if s.is_empty() {
            return Err(self
                .lexer
                .error(ParseErrorKind::EmptyName, pos, format!("{what} must not be empty")));
        }
        Ok(s)
    }

    fn catalog(&mut self) -> Result<Catalog, ParseError> {
        let mut catalog = Catalog::default();
        loop {
            let (tok, pos) = self.next()?;
            match tok {
                Tok::Eof => return Ok(catalog),
                Tok::Word(w) if w == "section" => catalog.sections.push(self.section(pos)?),
                Tok::Word(w) if w == "structure" => catalog.structures.push(self.structure(pos)?),
                tok => return Err(self.unexpected("`section` or `structure`", &tok, pos)),
            }
        }
    }

    fn section(&mut self, source_pos: SourcePos) -> Result<SectionDecl, ParseError> {
        let id = self.expect_ident()?;
        self.expect_word("color")?;
        let (text, pos) = self.expect_string()?;
        let color: Rgb = text
            .parse()
            .map_err(|e| self.lexer.error(ParseErrorKind::InvalidColor, pos, format!("{e}")))?;
        let merge_with = if self.peek_is_word("merge-with")? {
            self.next()?;
            Some(self.expect_ident()?)
        } else {
            None
        };
        Ok(SectionDecl {
            id,
            color,
            merge_with,
            source_pos,
        })
    }

    fn structure(&mut self, source_pos: SourcePos) -> Result<StructureDef, ParseError> {
        let name = self.expect_name("structure name")?;
        self.expect_word("in")?;
        let mut sections = vec![self.expect_ident()?];
        while self.peek_is(&Tok::Comma)? {
            self.next()?;
            sections.push(self.expect_ident()?);
        }
        self.expect(Tok::LBrace)?;

        let mut def = StructureDef {
            name,
            sections,
            source_pos,
            ..StructureDef::default()
        };
        let mut seen: Vec<&'static str> = Vec::new();
        loop {
            let (tok, pos) = self.next()?;
            let word = match tok {
                Tok::RBrace => return Ok(def),
                Tok::Word(w) => w,
                tok => return Err(self.unexpected("field or `}`", &tok, pos)),
            };
            let Some(keyword) = FIELD_KEYWORDS.iter().copied().find(|k| *k == word) else {
                return Err(self.unexpected("field or `}`", &Tok::Word(word), pos));
            };
            if seen.contains(&keyword) {
                return Err(self.lexer.error(
                    ParseErrorKind::DuplicateField,
                    pos,
                    format!("duplicate field `{keyword}`"),
                ));
            }
            seen.push(keyword);
            match keyword {
                "types:" => def.types = self.ref_list()?,
                "functions:" => def.functions = self.string_list()?,
                "relations:" => def.relations = self.string_list()?,
                "properties:" => def.properties = self.string_list()?,
                "wikipedia:" => def.wikipedia = self.expect_string()?.0,
                _ => def.representative = true,
            }
        }
    }

    fn ref_list(&mut self) -> Result<Vec<ExtensionRef>, ParseError> {
        let mut refs = vec![self.reference()?];
        while self.peek_is(&Tok::Comma)? {
            self.next()?;
            refs.push(self.reference()?);
        }
        Ok(refs)
    }

    fn reference(&mut self) -> Result<ExtensionRef, ParseError> {
        let mut r = ExtensionRef::new(self.expect_name("extension target")?);
        if self.peek_is_word("label")? {
            self.next()?;
            r.label = Some(self.expect_string()?.0);
        }
        if self.peek_is_word("keep")? {
            self.next()?;
            r.keep = true;
        }
        Ok(r)
    }

    fn string_list(&mut self) -> Result<Vec<String>, ParseError> {
        let mut items = vec![self.expect_string()?.0];
        while self.peek_is(&Tok::Comma)? {
            self.next()?;
            items.push(self.expect_string()?.0);
        }
        Ok(items)
    }
}

/// Parses catalog source text.
pub fn parse_catalog(source: &str) -> Result<Catalog, ParseError> {
    let mut parser = Parser {
        lexer: Lexer::new(source),
        peeked: None,
    };
    parser.catalog()
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if matches!(c, '"' | '\\') {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn structure_fields(def: &StructureDef) -> Vec<String> {
    let list = |items: &[String]| items.iter().map(|s| quote(s)).collect::<Vec<_>>().join(", ");
    let mut fields = Vec::new();
    if !def.types.is_empty() {
        let refs = def
            .types
            .iter()
            .map(|r| {
                let mut s = quote(&r.target);
                if let Some(label) = &r.label {
                    s.push_str(" label ");
                    s.push_str(&quote(label));
                }
                if r.keep {
                    s.push_str(" keep");
                }
                s
            })
            .collect::<Vec<_>>()
            .join(", ");
        fields.push(format!("types: {refs}"));
    }
    if !def.functions.is_empty() {
        fields.push(format!("functions: {}", list(&def.functions)));
    }
    if !def.relations.is_empty() {
        fields.push(format!("relations: {}", list(&def.relations)));
    }
    if !def.properties.is_empty() {
        fields.push(format!("properties: {}", list(&def.properties)));
    }
    if !def.wikipedia.is_empty() {
        fields.push(format!("wikipedia: {}", quote(&def.wikipedia)));
    }
    if def.representative {
        fields.push("representative".to_string());
    }
    fields
}

/// Prints a catalog in canonical form.
///
/// Sections come first, one per line. A structure with at most one field is
/// written on a single line; larger bodies get one field per line with
/// two-space indentation, and are set off from neighbouring declarations by
/// a blank line.
pub fn print_catalog(catalog: &Catalog) -> String {
    let mut blocks: Vec<(bool, String)> = Vec::new();
    for s in &catalog.sections {
        let mut line = format!("section {} color {}", s.id, quote(&s.color.to_string()));
        if let Some(m) = &s.merge_with {
            line.push_str(" merge-with ");
            line.push_str(m);
        }
        blocks.push((false, line + "\n"));
    }
    for def in &catalog.structures {
        let header = format!("structure {} in {}", quote(&def.name), def.sections.join(", "));
        let fields = structure_fields(def);
        let block = match fields.as_slice() {
            [] => (false, format!("{header} {{}}\n")),
            [only] => (false, format!("{header} {{ {only} }}\n")),
            many => {
                let mut text = format!("{header} {{\n");
                for f in many {
                    text.push_str("  ");
                    text.push_str(f);
                    text.push('\n');
                }
                text.push_str("}\n");
                (true, text)
            }
        };
        blocks.push(block);
    }

    let mut out = String::new();
    for (i, (multi_line, text)) in blocks.iter().enumerate() {
        if i > 0 && (*multi_line || blocks[i - 1].0) {
            out.push('\n');
        }
        out.push_str(text);
    }
    out
}
