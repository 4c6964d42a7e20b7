use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("empty IRI")]
    EmptyIri,
    #[error("IRI contains forbidden character {0:?}: {1}")]
    IriForbiddenChar(char, String),
    #[error("IRI has no scheme: {0}")]
    IriNoScheme(String),
    #[error("invalid language tag {0:?}")]
    BadLanguageTag(String),
    #[error("invalid blank node label {0:?}")]
    BadBlankLabel(String),
}

/// An absolute IRI. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(value: impl AsRef<str>) -> Result<Self, TermError> {
        let value = value.as_ref();
        if value.is_empty() {
            return Err(TermError::EmptyIri);
        }
        if let Some(c) = value
            .chars()
            .find(|c| c.is_whitespace() || matches!(c, '<' | '>' | '"'))
        {
            return Err(TermError::IriForbiddenChar(c, value.to_string()));
        }
        let colon = value.find(':');
        let slash = value.find('/').unwrap_or(usize::MAX);
        match colon {
            Some(i) if i > 0 && i < slash => Ok(Iri(Arc::from(value))),
            _ => Err(TermError::IriNoScheme(value.to_string())),
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Checks `[a-z]{2,3}(-[a-z0-9]{1,8})*` on an already lowercased tag.
fn valid_lang(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let primary = parts.next().unwrap_or("");
    if !(2..=3).contains(&primary.len()) || !primary.bytes().all(|b| b.is_ascii_lowercase()) {
        return false;
    }
    parts.all(|p| {
        (1..=8).contains(&p.len())
            && p.bytes().all(|b| b.is_ascii_lowercase() || b.is_ascii_digit())
    })
}

/// Lowercases and validates a BCP-47 style language tag.
pub fn normalize_lang(tag: &str) -> Result<String, TermError> {
    let lower = tag.to_ascii_lowercase();
    if valid_lang(&lower) {
        Ok(lower)
    } else {
        Err(TermError::BadLanguageTag(tag.to_string()))
    }
}

/// An RDF literal. Language tags are stored lowercased; a literal carries a
/// language tag or a datatype, never both.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    lexical: String,
    lang: Option<String>,
    datatype: Option<Iri>,
}

impl Literal {
    pub fn plain(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            lang: None,
            datatype: None,
        }
    }

    pub fn lang(lexical: impl Into<String>, lang: &str) -> Result<Self, TermError> {
        Ok(Literal {
            lexical: lexical.into(),
            lang: Some(normalize_lang(lang)?),
            datatype: None,
        })
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Self {
        Literal {
            lexical: lexical.into(),
            lang: None,
            datatype: Some(datatype),
        }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn language(&self) -> Option<&str> {
        self.lang.as_deref()
    }

    pub fn datatype(&self) -> Option<&Iri> {
        self.datatype.as_ref()
    }
}

/// Blank node label, restricted to `[A-Za-z0-9]+`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlankNode(Arc<str>);

impl BlankNode {
    pub fn new(label: impl AsRef<str>) -> Result<Self, TermError> {
        let label = label.as_ref();
        if !label.is_empty() && label.bytes().all(|b| b.is_ascii_alphanumeric()) {
            Ok(BlankNode(Arc::from(label)))
        } else {
            Err(TermError::BadBlankLabel(label.to_string()))
        }
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

/// Subject position: an IRI or a blank node. Variant order is the canonical
/// sort order (IRIs first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subject {
    Iri(Iri),
    Blank(BlankNode),
}

impl Subject {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Subject::Iri(i) => Some(i),
            Subject::Blank(_) => None,
        }
    }
}

impl From<Iri> for Subject {
    fn from(i: Iri) -> Self {
        Subject::Iri(i)
    }
}

impl From<BlankNode> for Subject {
    fn from(b: BlankNode) -> Self {
        Subject::Blank(b)
    }
}

/// Object position term. Canonical order: IRIs, then blank nodes, then literals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(Iri),
    Blank(BlankNode),
    Literal(Literal),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(i) => Some(i),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            _ => None,
        }
    }

    /// The subject-position form of this term, if it has one.
    pub fn to_subject(&self) -> Option<Subject> {
        match self {
            Term::Iri(i) => Some(Subject::Iri(i.clone())),
            Term::Blank(b) => Some(Subject::Blank(b.clone())),
            Term::Literal(_) => None,
        }
    }
}

impl From<Iri> for Term {
    fn from(i: Iri) -> Self {
        Term::Iri(i)
    }
}

impl From<Literal> for Term {
    fn from(l: Literal) -> Self {
        Term::Literal(l)
    }
}

impl From<BlankNode> for Term {
    fn from(b: BlankNode) -> Self {
        Term::Blank(b)
    }
}

impl From<Subject> for Term {
    fn from(s: Subject) -> Self {
        match s {
            Subject::Iri(i) => Term::Iri(i),
            Subject::Blank(b) => Term::Blank(b),
        }
    }
}

/// Field order gives the canonical sort: subject, predicate, object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Subject,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: impl Into<Subject>, predicate: Iri, object: impl Into<Term>) -> Self {
        Triple {
            subject: subject.into(),
            predicate,
            object: object.into(),
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::ntriples::triple_line(self))
    }
}
