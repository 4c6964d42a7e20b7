//! The legacy crosswalk file format.
//!
//! ```text
//! #xwalk source=thesoz target=stw source-lang=de target-lang=de
//! # comment
//! Informationswissenschaft	=	Informationswissenschaft
//! Soziologie	<	Sozialwissenschaften
//! Frauenerwerbstätigkeit	=	Frau	Erwerbstätigkeit
//! ```
//!
//! Fields are tab-separated. Relations: `=` equivalent, `<` source is
//! narrower than target, `>` source is broader than target, `^` related.
//! A fourth field makes a two-concept combination, allowed only with `=`.

use std::fmt;
use std::path::Path;

use crate::diagnostic::{Code, Diagnostic};
use crate::rdf::normalize_lang;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationCode {
    Equivalent,
    Broader,
    Narrower,
    Related,
}

impl RelationCode {
    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "=" => Some(RelationCode::Equivalent),
            "<" => Some(RelationCode::Broader),
            ">" => Some(RelationCode::Narrower),
            "^" => Some(RelationCode::Related),
            _ => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            RelationCode::Equivalent => "=",
            RelationCode::Broader => "<",
            RelationCode::Narrower => ">",
            RelationCode::Related => "^",
        }
    }
}

impl fmt::Display for RelationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosswalkHeader {
    pub source: String,
    pub target: String,
    pub source_lang: String,
    pub target_lang: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosswalkEntry {
    pub source_term: String,
    pub source_lang: String,
    pub relation: RelationCode,
    /// One term, or two for a combination.
    pub target_terms: Vec<String>,
    pub target_lang: String,
    pub line: usize,
}

#[derive(Debug, Clone, Default)]
pub struct ParsedCrosswalk {
    pub header: Option<CrosswalkHeader>,
    pub entries: Vec<CrosswalkEntry>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Trims and collapses internal whitespace runs to single spaces.
pub fn normalize_term(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn parse_header(rest: &str) -> Result<CrosswalkHeader, String> {
    let mut source = None;
    let mut target = None;
    let mut source_lang = None;
    let mut target_lang = None;
    for pair in rest.split_whitespace() {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| format!("header field {pair:?} is not key=value"))?;
        if v.is_empty() {
            return Err(format!("header field {k:?} is empty"));
        }
        let slot = match k {
            "source" => &mut source,
            "target" => &mut target,
            "source-lang" => &mut source_lang,
            "target-lang" => &mut target_lang,
            _ => return Err(format!("unknown header field {k:?}")),
        };
        if slot.replace(v.to_string()).is_some() {
            return Err(format!("header field {k:?} given twice"));
        }
    }
    let need = |v: Option<String>, k: &str| v.ok_or_else(|| format!("header lacks {k}="));
    let lang = |v: String| normalize_lang(&v).map_err(|e| e.to_string());
    Ok(CrosswalkHeader {
        source: need(source, "source")?,
        target: need(target, "target")?,
        source_lang: lang(need(source_lang, "source-lang")?)?,
        target_lang: lang(need(target_lang, "target-lang")?)?,
    })
}

/// Parses a crosswalk file. `file` is used for diagnostic locations only.
///
/// Malformed lines become `XWALK_SYNTAX` and parsing continues. A file whose
/// header names the same scheme on both sides yields `XWALK_SAME_SCHEME` and
/// no entries.
pub fn parse_crosswalk(input: &[u8], file: &Path) -> ParsedCrosswalk {
    let mut out = ParsedCrosswalk::default();
    let input = input.strip_prefix(b"\xEF\xBB\xBF").unwrap_or(input);
    let syntax = |line: usize, msg: String| Diagnostic::new(Code::XwalkSyntax, msg).at(file, line);

    for (idx, raw) in input.split(|&b| b == b'\n').enumerate() {
        let line = idx + 1;
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        let Ok(raw) = std::str::from_utf8(raw) else {
            out.diagnostics
                .push(syntax(line, "line is not valid UTF-8".into()));
            continue;
        };
        if let Some(rest) = raw.strip_prefix("#xwalk") {
            if !(rest.is_empty() || rest.starts_with([' ', '\t'])) {
                out.diagnostics
                    .push(syntax(line, format!("unknown directive {raw:?}")));
                continue;
            }
            if out.header.is_some() {
                out.diagnostics
                    .push(syntax(line, "duplicate #xwalk header".into()));
                continue;
            }
            match parse_header(rest) {
                Ok(h) => out.header = Some(h),
                Err(msg) => out.diagnostics.push(syntax(line, msg)),
            }
            continue;
        }
        if raw.starts_with('#') || raw.trim().is_empty() {
            continue;
        }
        let Some(header) = &out.header else {
            out.diagnostics.push(syntax(
                line,
                "data line before a valid #xwalk header".into(),
            ));
            continue;
        };

        let fields: Vec<&str> = raw.split('\t').collect();
        if !(3..=4).contains(&fields.len()) {
            out.diagnostics.push(syntax(
                line,
                format!("expected 3 or 4 tab-separated fields, found {}", fields.len()),
            ));
            continue;
        }
        let Some(relation) = RelationCode::from_symbol(fields[1].trim()) else {
            out.diagnostics.push(syntax(
                line,
                format!("unknown relation {:?}; expected one of = < > ^", fields[1].trim()),
            ));
            continue;
        };
        let terms: Vec<String> = fields
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != 1)
            .map(|(_, f)| normalize_term(f))
            .collect();
        if terms.iter().any(String::is_empty) {
            out.diagnostics
                .push(syntax(line, "empty term".into()));
            continue;
        }
        if terms.len() == 3 && relation != RelationCode::Equivalent {
            out.diagnostics.push(
                Diagnostic::new(
                    Code::XwalkBadCombination,
                    format!("combination mappings require '=', found '{}'", relation.symbol()),
                )
                .at(file, line),
            );
            continue;
        }
        let mut terms = terms.into_iter();
        out.entries.push(CrosswalkEntry {
            source_term: terms.next().unwrap(),
            source_lang: header.source_lang.clone(),
            relation,
            target_terms: terms.collect(),
            target_lang: header.target_lang.clone(),
            line,
        });
    }

    if let Some(h) = &out.header {
        if h.source == h.target {
            out.diagnostics.push(
                Diagnostic::new(
                    Code::XwalkSameScheme,
                    format!(
                        "source and target are both {:?}; intra-vocabulary crosswalks are not converted",
                        h.source
                    ),
                )
                .at(file, 1),
            );
            out.entries.clear();
        }
    }
    out
}
