use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::rdf::{Graph, Iri, Subject, Term};
use crate::skos::{concept_iris, schemes_of, LabelKind};
use crate::vocab::iri;

use super::format::normalize_term;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    Preferred,
    NonPreferred,
}

/// Outcome of looking up a crosswalk term among a scheme's labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolution {
    Preferred(Iri),
    NonPreferred { concept: Iri, kind: LabelKind },
    /// At least two candidates, sorted, all from the winning tier.
    Ambiguous { candidates: Vec<Iri>, tier: Tier },
    NotFound,
}

#[derive(Debug, Default, Clone)]
struct Bucket {
    preferred: BTreeSet<Iri>,
    /// Alt wins over hidden when a concept has both.
    non_preferred: BTreeMap<Iri, LabelKind>,
}

/// Label lookup table over the concepts of one thesaurus (optionally one
/// scheme). Build it from a graph that already went through
/// [`crate::skos::resolve_xl_labels`].
#[derive(Debug, Clone, Default)]
pub struct SchemeView {
    labels: HashMap<(String, String), Bucket>,
    concepts: BTreeSet<Iri>,
}

impl SchemeView {
    /// All concepts in the graph.
    pub fn build(g: &Graph) -> Self {
        Self::from_concepts(g, concept_iris(&[g]))
    }

    /// Only concepts assigned to `scheme`.
    pub fn build_for_scheme(g: &Graph, scheme: &Iri) -> Self {
        let concepts = concept_iris(&[g])
            .into_iter()
            .filter(|c| schemes_of(&[g], c).contains(scheme))
            .collect();
        Self::from_concepts(g, concepts)
    }

    fn from_concepts(g: &Graph, concepts: BTreeSet<Iri>) -> Self {
        let mut labels: HashMap<(String, String), Bucket> = HashMap::new();
        for c in &concepts {
            let s = Subject::Iri(c.clone());
            for kind in [LabelKind::Pref, LabelKind::Alt, LabelKind::Hidden] {
                for obj in g.objects(&s, &iri(kind.predicate())) {
                    let Term::Literal(l) = obj else { continue };
                    let key = (
                        l.language().unwrap_or("").to_string(),
                        normalize_term(l.lexical()),
                    );
                    let bucket = labels.entry(key).or_default();
                    match kind {
                        LabelKind::Pref => {
                            bucket.preferred.insert(c.clone());
                        }
                        _ => {
                            bucket
                                .non_preferred
                                .entry(c.clone())
                                .and_modify(|k| *k = (*k).min(kind))
                                .or_insert(kind);
                        }
                    }
                }
            }
        }
        SchemeView { labels, concepts }
    }

    pub fn concepts(&self) -> &BTreeSet<Iri> {
        &self.concepts
    }
}

/// Exact, case-sensitive lookup of `(term, lang)` after whitespace
/// normalization. Preferred labels always win over alt/hidden labels.
pub fn resolve_term(view: &SchemeView, term: &str, lang: &str) -> Resolution {
    let key = (lang.to_ascii_lowercase(), normalize_term(term));
    let Some(bucket) = view.labels.get(&key) else {
        return Resolution::NotFound;
    };
    match bucket.preferred.len() {
        1 => return Resolution::Preferred(bucket.preferred.first().unwrap().clone()),
        n if n > 1 => {
            return Resolution::Ambiguous {
                candidates: bucket.preferred.iter().cloned().collect(),
                tier: Tier::Preferred,
            }
        }
        _ => {}
    }
    match bucket.non_preferred.len() {
        0 => Resolution::NotFound,
        1 => {
            let (concept, kind) = bucket.non_preferred.iter().next().unwrap();
            Resolution::NonPreferred {
                concept: concept.clone(),
                kind: *kind,
            }
        }
        _ => Resolution::Ambiguous {
            candidates: bucket.non_preferred.keys().cloned().collect(),
            tier: Tier::NonPreferred,
        },
    }
}
