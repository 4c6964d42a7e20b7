//! SKOS and SKOS-XL views over raw graphs, plus integrity validation.

mod model;
mod validate;
mod xl;

pub use model::{
    best_label, concept_iris, extract_concept, extract_concept_in, extract_schemes, is_concept,
    schemes_of, Concept, ConceptScheme, LabelKind,
};
pub use validate::{validate_skos, validate_skos_with};
pub use xl::{resolve_xl_labels, uses_xl};
