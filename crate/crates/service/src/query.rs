//! Triple-pattern queries, shared by the `/query` routes and the CLI.
//!
//! A bound position is one token: `<iri>`, `_:label`, a quoted N-Triples
//! literal, a CURIE over the known prefixes, or a bare absolute IRI.

use skosbridge::rdf::ntriples::parse_term;
use skosbridge::rdf::{Iri, PrefixMap, Subject, Term, Triple};
use skosbridge::store::MultiStore;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QueryError {
    #[error("{position}: {reason}")]
    Term {
        position: &'static str,
        reason: String,
    },
    #[error("no registration {0:?}")]
    UnknownScope(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Pattern {
    pub subject: Option<Subject>,
    pub predicate: Option<Iri>,
    pub object: Option<Term>,
}

pub struct QueryResult<'a> {
    /// Canonical order, at most the limit.
    pub triples: Vec<&'a Triple>,
    pub truncated: bool,
}

fn term_error(position: &'static str, reason: impl Into<String>) -> QueryError {
    QueryError::Term {
        position,
        reason: reason.into(),
    }
}

/// Parses one token; an empty token is an error, not a wildcard.
pub fn parse_token(token: &str, prefixes: &PrefixMap, position: &'static str) -> Result<Term, QueryError> {
    let token = token.trim();
    if token.is_empty() {
        return Err(term_error(position, "empty term"));
    }
    if token.starts_with(['<', '"', '_']) {
        return parse_term(token).map_err(|e| term_error(position, e));
    }
    if let Some(i) = prefixes.expand(token) {
        return Ok(Term::Iri(i));
    }
    if token.contains("://") || token.starts_with("urn:") {
        return Iri::new(token)
            .map(Term::Iri)
            .map_err(|e| term_error(position, e.to_string()));
    }
    Err(term_error(
        position,
        format!("{token:?} is neither an IRI, a known CURIE nor a literal"),
    ))
}

impl Pattern {
    pub fn parse(
        s: Option<&str>,
        p: Option<&str>,
        o: Option<&str>,
        prefixes: &PrefixMap,
    ) -> Result<Pattern, QueryError> {
        let subject = s
            .map(|s| {
                parse_token(s, prefixes, "subject")?
                    .to_subject()
                    .ok_or_else(|| term_error("subject", "a literal cannot be a subject"))
            })
            .transpose()?;
        let predicate = p
            .map(|p| match parse_token(p, prefixes, "predicate")? {
                Term::Iri(i) => Ok(i),
                _ => Err(term_error("predicate", "a predicate must be an IRI")),
            })
            .transpose()?;
        let object = o.map(|o| parse_token(o, prefixes, "object")).transpose()?;
        Ok(Pattern {
            subject,
            predicate,
            object,
        })
    }
}

/// Matches `pattern` against the merged store, or one registration's graph
/// when `scope` names it.
pub fn run_query<'a>(
    store: &'a MultiStore,
    scope: Option<&str>,
    pattern: &Pattern,
    limit: usize,
) -> Result<QueryResult<'a>, QueryError> {
    let graph = match scope {
        None => store.merged(),
        Some(id) => store
            .registration(id)
            .map(|r| r.graph.as_ref())
            .ok_or_else(|| QueryError::UnknownScope(id.to_string()))?,
    };
    let mut triples = graph.matching(
        pattern.subject.as_ref(),
        pattern.predicate.as_ref(),
        pattern.object.as_ref(),
    );
    let truncated = triples.len() > limit;
    triples.truncate(limit);
    Ok(QueryResult { triples, truncated })
}
