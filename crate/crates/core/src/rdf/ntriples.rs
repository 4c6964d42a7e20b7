//! Line-based N-Triples reader and canonical writer.
//!
//! The reader is line-recoverable: a bad line produces a [`ParseError`] and
//! parsing continues with the next line. The writer emits triples in
//! canonical order, so output depends only on graph content.

use std::fmt::Write as _;

use thiserror::Error;

use super::graph::Graph;
use super::term::{BlankNode, Iri, Literal, Subject, Term, Triple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    /// 1-based.
    pub line: usize,
    pub reason: String,
}

/// Parses an N-Triples document. Every syntactically valid line becomes a
/// triple; every invalid line becomes a [`ParseError`].
pub fn parse_ntriples(input: &[u8]) -> (Graph, Vec<ParseError>) {
    let mut graph = Graph::new();
    let mut errors = Vec::new();
    for (idx, raw) in input.split(|&b| b == b'\n').enumerate() {
        let line = idx + 1;
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        let text = match std::str::from_utf8(raw) {
            Ok(t) => t,
            Err(e) => {
                errors.push(ParseError {
                    line,
                    reason: format!("invalid UTF-8: {e}"),
                });
                continue;
            }
        };
        match parse_line(text) {
            Ok(Some(t)) => {
                graph.insert(t);
            }
            Ok(None) => {}
            Err(reason) => errors.push(ParseError { line, reason }),
        }
    }
    (graph, errors)
}

/// Parses one line. `Ok(None)` for blank and comment-only lines.
pub fn parse_line(text: &str) -> Result<Option<Triple>, String> {
    let mut c = Cursor::new(text);
    c.skip_ws();
    if c.at_end() || c.peek() == Some('#') {
        return Ok(None);
    }
    let subject = match c.peek() {
        Some('<') => Subject::Iri(c.iri()?),
        Some('_') => Subject::Blank(c.blank()?),
        Some(other) => return Err(format!("unexpected {other:?} in subject position")),
        None => unreachable!(),
    };
    c.skip_ws();
    if c.peek() != Some('<') {
        return Err("predicate must be an IRI".into());
    }
    let predicate = c.iri()?;
    c.skip_ws();
    let object = c.term()?;
    c.skip_ws();
    if !c.eat('.') {
        return Err("missing terminating ' .'".into());
    }
    c.skip_ws();
    if !(c.at_end() || c.peek() == Some('#')) {
        return Err("trailing content after '.'".into());
    }
    Ok(Some(Triple {
        subject,
        predicate,
        object,
    }))
}

/// Parses a single N-Triples term token (`<iri>`, `_:label`, or a literal),
/// requiring the whole input to be consumed.
pub fn parse_term(text: &str) -> Result<Term, String> {
    let mut c = Cursor::new(text.trim());
    let t = c.term()?;
    if !c.at_end() {
        return Err("trailing content after term".into());
    }
    Ok(t)
}

struct Cursor<'a> {
    rest: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { rest: s }
    }

    fn peek(&self) -> Option<char> {
        self.rest.chars().next()
    }

    fn at_end(&self) -> bool {
        self.rest.is_empty()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.rest = &self.rest[c.len_utf8()..];
        Some(c)
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start_matches([' ', '\t']);
    }

    fn term(&mut self) -> Result<Term, String> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iri()?)),
            Some('_') => Ok(Term::Blank(self.blank()?)),
            Some('"') => Ok(Term::Literal(self.literal()?)),
            Some(other) => Err(format!("unexpected {other:?} in object position")),
            None => Err("missing object".into()),
        }
    }

    fn iri(&mut self) -> Result<Iri, String> {
        self.bump(); // '<'
        let mut value = String::new();
        loop {
            // copy the run of plain characters in one step
            let plain = self
                .rest
                .bytes()
                .position(|b| b <= b' ' || matches!(b, b'>' | b'\\' | b'<' | b'"' | b'{' | b'}' | b'|' | b'^' | b'`'))
                .unwrap_or(self.rest.len());
            value.push_str(&self.rest[..plain]);
            self.rest = &self.rest[plain..];
            match self.bump() {
                None => return Err("unterminated IRI".into()),
                Some('>') => break,
                Some('\\') => match self.bump() {
                    Some('u') => value.push(self.hex_char(4)?),
                    Some('U') => value.push(self.hex_char(8)?),
                    _ => return Err("invalid escape in IRI".into()),
                },
                Some(c)
                    if c <= ' ' || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') =>
                {
                    return Err(format!("character {c:?} not allowed in IRI"));
                }
                Some(c) => value.push(c),
            }
        }
        Iri::new(&value).map_err(|e| e.to_string())
    }

    fn blank(&mut self) -> Result<BlankNode, String> {
        if !self.rest.starts_with("_:") {
            return Err("expected '_:'".into());
        }
        self.rest = &self.rest[2..];
        let end = self
            .rest
            .find(|c: char| !c.is_ascii_alphanumeric())
            .unwrap_or(self.rest.len());
        let (label, rest) = self.rest.split_at(end);
        match rest.chars().next() {
            None | Some(' ' | '\t' | '<' | '"' | '.' | '#') => {}
            Some(c) => return Err(format!("unsupported character {c:?} in blank node label")),
        }
        self.rest = rest;
        BlankNode::new(label).map_err(|e| e.to_string())
    }

    fn literal(&mut self) -> Result<Literal, String> {
        self.bump(); // '"'
        let mut lexical = String::new();
        loop {
            let plain = self
                .rest
                .bytes()
                .position(|b| matches!(b, b'"' | b'\\' | b'\n' | b'\r'))
                .unwrap_or(self.rest.len());
            lexical.push_str(&self.rest[..plain]);
            self.rest = &self.rest[plain..];
            match self.bump() {
                None => return Err("unterminated literal".into()),
                Some('"') => break,
                Some('\\') => {
                    let c = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.hex_char(4)?,
                        Some('U') => self.hex_char(8)?,
                        _ => return Err("invalid escape in literal".into()),
                    };
                    lexical.push(c);
                }
                Some('\n' | '\r') => return Err("raw line break in literal".into()),
                Some(c) => lexical.push(c),
            }
        }
        if self.eat('@') {
            let end = self
                .rest
                .find(|c: char| !(c.is_ascii_alphanumeric() || c == '-'))
                .unwrap_or(self.rest.len());
            let (tag, rest) = self.rest.split_at(end);
            self.rest = rest;
            Literal::lang(lexical, tag).map_err(|e| e.to_string())
        } else if self.rest.starts_with("^^") {
            self.rest = &self.rest[2..];
            if self.peek() != Some('<') {
                return Err("datatype must be an IRI".into());
            }
            Ok(Literal::typed(lexical, self.iri()?))
        } else {
            Ok(Literal::plain(lexical))
        }
    }

    fn hex_char(&mut self, digits: usize) -> Result<char, String> {
        if self.rest.len() < digits || !self.rest.is_char_boundary(digits) {
            return Err("truncated \\u escape".into());
        }
        let (hex, rest) = self.rest.split_at(digits);
        let code = u32::from_str_radix(hex, 16).map_err(|_| format!("bad hex {hex:?}"))?;
        if !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(format!("bad hex {hex:?}"));
        }
        self.rest = rest;
        char::from_u32(code).ok_or_else(|| format!("escape U+{code:X} is not a scalar value"))
    }
}

pub(crate) fn write_iri(out: &mut String, iri: &Iri) {
    out.push('<');
    for c in iri.as_str().chars() {
        if c <= ' ' || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') {
            let _ = write!(out, "\\u{:04X}", c as u32);
        } else {
            out.push(c);
        }
    }
    out.push('>');
}

pub(crate) fn write_quoted(out: &mut String, lexical: &str) {
    out.push('"');
    for c in lexical.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            '\u{8}' => out.push_str("\\b"),
            '\u{c}' => out.push_str("\\f"),
            c if c < ' ' || c == '\u{7f}' => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

pub(crate) fn write_literal(out: &mut String, lit: &Literal) {
    write_quoted(out, lit.lexical());
    if let Some(lang) = lit.language() {
        out.push('@');
        out.push_str(lang);
    } else if let Some(dt) = lit.datatype() {
        out.push_str("^^");
        write_iri(out, dt);
    }
}

pub(crate) fn write_subject(out: &mut String, s: &Subject) {
    match s {
        Subject::Iri(i) => write_iri(out, i),
        Subject::Blank(b) => {
            out.push_str("_:");
            out.push_str(b.label());
        }
    }
}

/// Writes a term in N-Triples syntax.
pub fn write_term(out: &mut String, t: &Term) {
    match t {
        Term::Iri(i) => write_iri(out, i),
        Term::Blank(b) => {
            out.push_str("_:");
            out.push_str(b.label());
        }
        Term::Literal(l) => write_literal(out, l),
    }
}

/// One N-Triples line without the trailing newline.
pub fn triple_line(t: &Triple) -> String {
    let mut out = String::new();
    write_subject(&mut out, &t.subject);
    out.push(' ');
    write_iri(&mut out, &t.predicate);
    out.push(' ');
    write_term(&mut out, &t.object);
    out.push_str(" .");
    out
}

/// Serializes triples, one per line, in the order given.
pub fn serialize_triples<'a>(triples: impl IntoIterator<Item = &'a Triple>) -> Vec<u8> {
    let mut out = String::new();
    for t in triples {
        out.push_str(&triple_line(t));
        out.push('\n');
    }
    out.into_bytes()
}

/// Canonical N-Triples serialization of a graph.
pub fn serialize_ntriples(g: &Graph) -> Vec<u8> {
    serialize_triples(g.iter())
}
