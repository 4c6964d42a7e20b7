//! Conversion of legacy term-based cross-concordances into SKOS mappings.
//!
//! Pipeline: [`parse_crosswalk`] → [`SchemeView`] per thesaurus →
//! [`convert_crosswalk`] (which calls [`convert_entry`] per line and
//! optionally [`generate_inverses`]) → [`edges_to_graph`].
//!
//! Relation direction: `A < B` states that source term A is narrower than
//! target B, so the output is `A skos:broadMatch B`.

mod convert;
mod format;
mod resolve;

pub use convert::{
    convert_combination, convert_crosswalk, convert_entry, edges_to_graph, generate_inverses,
    graph_to_edges, map_relation, AmbiguityMode, Conversion, ConversionPolicy, ExtVocabulary,
    MappingEdge, MappingProperty, NonPreferredMode, Provenance, SkosMapping,
};
pub use format::{
    normalize_term, parse_crosswalk, CrosswalkEntry, CrosswalkHeader, ParsedCrosswalk,
    RelationCode,
};
pub use resolve::{resolve_term, Resolution, SchemeView, Tier};
