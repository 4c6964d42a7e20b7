//! RDF terms, an indexed in-memory graph, N-Triples I/O and a Turtle writer.

mod graph;
pub mod ntriples;
mod term;
mod turtle;

pub use graph::Graph;
pub use ntriples::{parse_ntriples, parse_term, serialize_ntriples, serialize_triples, ParseError};
pub use term::{normalize_lang, BlankNode, Iri, Literal, Subject, Term, TermError, Triple};
pub use turtle::{serialize_turtle, PrefixError, PrefixMap};
