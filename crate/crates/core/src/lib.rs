//! Cross-concordance conversion and multi-thesaurus publishing over SKOS.
//!
//! * [`rdf`]: terms, indexed graph, N-Triples and Turtle.
//! * [`skos`]: concept and scheme views, SKOS-XL dumbing-down, validation.
//! * [`crosswalk`]: legacy term-based crosswalk files to SKOS mapping triples.
//! * [`store`]: several thesauri plus mapping graphs behind one lookup API.
//! * [`manifest`]: JSON deployment manifest that builds a store.

pub mod crosswalk;
pub mod diagnostic;
pub mod manifest;
pub mod rdf;
pub mod skos;
pub mod store;
pub mod vocab;

pub use diagnostic::{Code, Diagnostic, Severity};
