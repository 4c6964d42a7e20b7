use std::collections::BTreeSet;

use thiserror::Error;

use super::graph::Graph;
use super::ntriples::{write_iri, write_quoted};
use super::term::{Iri, Subject, Term, Triple};
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrefixError {
    #[error("prefix {0:?} already registered")]
    Duplicate(String),
    #[error("invalid prefix name {0:?}")]
    BadName(String),
}

/// Ordered prefix → namespace table. Prefixes are unique; namespaces may repeat.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixMap {
    entries: Vec<(String, Iri)>,
}

fn valid_prefix_name(p: &str) -> bool {
    if p.is_empty() {
        return true;
    }
    let b = p.as_bytes();
    b[0].is_ascii_alphabetic()
        && b.iter()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, b'_' | b'-' | b'.'))
        && *b.last().unwrap() != b'.'
}

/// Local names we are willing to write unescaped.
fn valid_local_name(l: &str) -> bool {
    if l.is_empty() {
        return true;
    }
    let b = l.as_bytes();
    let body_ok = b
        .iter()
        .all(|c| c.is_ascii_alphanumeric() || matches!(c, b'_' | b'-' | b'.'));
    body_ok && b[0] != b'-' && b[0] != b'.' && *b.last().unwrap() != b'.'
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Built-in table used for CURIE expansion on the command line and in
    /// queries: skos, skosxl, rdf, rdfs, owl, dct.
    pub fn builtin() -> Self {
        let mut m = PrefixMap::new();
        for (p, ns) in [
            ("skos", vocab::SKOS_NS),
            ("skosxl", vocab::SKOSXL_NS),
            ("rdf", vocab::RDF_NS),
            ("rdfs", vocab::RDFS_NS),
            ("owl", vocab::OWL_NS),
            ("dct", vocab::DCT_NS),
        ] {
            m.insert(p, Iri::new(ns).expect("static namespace"))
                .expect("static prefix");
        }
        m
    }

    pub fn insert(&mut self, prefix: &str, namespace: Iri) -> Result<(), PrefixError> {
        if !valid_prefix_name(prefix) {
            return Err(PrefixError::BadName(prefix.to_string()));
        }
        if self.get(prefix).is_some() {
            return Err(PrefixError::Duplicate(prefix.to_string()));
        }
        self.entries.push((prefix.to_string(), namespace));
        Ok(())
    }

    /// Adds entries from `other` whose prefix is not yet present.
    pub fn merge_missing(&mut self, other: &PrefixMap) {
        for (p, ns) in &other.entries {
            if self.get(p).is_none() {
                self.entries.push((p.clone(), ns.clone()));
            }
        }
    }

    pub fn get(&self, prefix: &str) -> Option<&Iri> {
        self.entries
            .iter()
            .find(|(p, _)| p == prefix)
            .map(|(_, ns)| ns)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Iri)> {
        self.entries.iter().map(|(p, ns)| (p.as_str(), ns))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Expands `prefix:local` when `prefix` is registered.
    pub fn expand(&self, curie: &str) -> Option<Iri> {
        let (prefix, local) = curie.split_once(':')?;
        let ns = self.get(prefix)?;
        Iri::new(format!("{}{}", ns.as_str(), local)).ok()
    }

    /// `prefix:local` form of `iri`, when some namespace compacts it.
    pub fn curie(&self, iri: &Iri) -> Option<String> {
        self.compact(iri)
            .map(|(i, local)| format!("{}:{local}", self.entries[i].0))
    }

    /// Longest registered namespace that yields a writable local name.
    /// Returns the entry index and the local part.
    fn compact<'a>(&self, iri: &'a Iri) -> Option<(usize, &'a str)> {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(i, (_, ns))| {
                let local = iri.as_str().strip_prefix(ns.as_str())?;
                valid_local_name(local).then_some((i, ns.as_str().len(), local))
            })
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .map(|(i, _, local)| (i, local))
    }
}

struct Writer<'a> {
    prefixes: &'a PrefixMap,
    used: BTreeSet<usize>,
}

impl Writer<'_> {
    fn iri(&mut self, out: &mut String, iri: &Iri) {
        match self.prefixes.compact(iri) {
            Some((i, local)) => {
                self.used.insert(i);
                out.push_str(&self.prefixes.entries[i].0);
                out.push(':');
                out.push_str(local);
            }
            None => write_iri(out, iri),
        }
    }

    fn subject(&mut self, out: &mut String, s: &Subject) {
        match s {
            Subject::Iri(i) => self.iri(out, i),
            Subject::Blank(b) => {
                out.push_str("_:");
                out.push_str(b.label());
            }
        }
    }

    fn object(&mut self, out: &mut String, t: &Term) {
        match t {
            Term::Iri(i) => self.iri(out, i),
            Term::Blank(b) => {
                out.push_str("_:");
                out.push_str(b.label());
            }
            Term::Literal(l) => {
                write_quoted(out, l.lexical());
                if let Some(lang) = l.language() {
                    out.push('@');
                    out.push_str(lang);
                } else if let Some(dt) = l.datatype() {
                    out.push_str("^^");
                    self.iri(out, dt);
                }
            }
        }
    }
}

/// Serializes `g` as Turtle, grouping by subject (`;`) and by predicate
/// (`,`). Only prefixes actually used are declared. An empty graph yields
/// empty output.
pub fn serialize_turtle(g: &Graph, prefixes: &PrefixMap) -> Vec<u8> {
    if g.is_empty() {
        return Vec::new();
    }
    let triples: Vec<&Triple> = g.iter().collect();
    let mut w = Writer {
        prefixes,
        used: BTreeSet::new(),
    };
    let mut body = String::new();
    let mut i = 0;
    while i < triples.len() {
        let subject = &triples[i].subject;
        let end = i + triples[i..]
            .iter()
            .take_while(|t| &t.subject == subject)
            .count();
        w.subject(&mut body, subject);
        let block = &triples[i..end];
        let mut j = 0;
        while j < block.len() {
            let pred = &block[j].predicate;
            let pend = j + block[j..]
                .iter()
                .take_while(|t| &t.predicate == pred)
                .count();
            body.push_str(if j == 0 { " " } else { " ;\n    " });
            if pred.as_str() == vocab::RDF_TYPE {
                body.push('a');
            } else {
                w.iri(&mut body, pred);
            }
            for (k, t) in block[j..pend].iter().enumerate() {
                body.push_str(if k == 0 { " " } else { " ,\n        " });
                w.object(&mut body, &t.object);
            }
            j = pend;
        }
        body.push_str(" .\n");
        i = end;
    }

    let mut out = String::new();
    for idx in &w.used {
        let (p, ns) = &prefixes.entries[*idx];
        out.push_str("@prefix ");
        out.push_str(p);
        out.push_str(": ");
        write_iri(&mut out, ns);
        out.push_str(" .\n");
    }
    if !w.used.is_empty() {
        out.push('\n');
    }
    out.push_str(&body);
    out.into_bytes()
}
