use std::collections::BTreeSet;

use crate::diagnostic::{Code, Diagnostic};
use crate::rdf::{Graph, Iri, Literal, Subject, Term};
use crate::vocab::{self, iri};

/// A concept scheme and the concepts assigned to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptScheme {
    pub iri: Iri,
    pub title: Option<Literal>,
    pub concepts: BTreeSet<Iri>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LabelKind {
    Pref,
    Alt,
    Hidden,
}

impl LabelKind {
    pub fn predicate(self) -> &'static str {
        match self {
            LabelKind::Pref => vocab::SKOS_PREF_LABEL,
            LabelKind::Alt => vocab::SKOS_ALT_LABEL,
            LabelKind::Hidden => vocab::SKOS_HIDDEN_LABEL,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LabelKind::Pref => "pref",
            LabelKind::Alt => "alt",
            LabelKind::Hidden => "hidden",
        }
    }
}

/// SKOS-level view of one concept. Label sets hold every label triple found,
/// including ones that break SKOS integrity; use the validator to find those.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Concept {
    pub iri: Iri,
    pub schemes: BTreeSet<Iri>,
    pub pref_labels: BTreeSet<Literal>,
    pub alt_labels: BTreeSet<Literal>,
    pub hidden_labels: BTreeSet<Literal>,
    pub broader: BTreeSet<Iri>,
    pub narrower: BTreeSet<Iri>,
    pub related: BTreeSet<Iri>,
}

impl Concept {
    pub fn labels(&self, kind: LabelKind) -> &BTreeSet<Literal> {
        match kind {
            LabelKind::Pref => &self.pref_labels,
            LabelKind::Alt => &self.alt_labels,
            LabelKind::Hidden => &self.hidden_labels,
        }
    }

    /// Preferred label for the first matching language in `langs`, else any.
    pub fn pref_label(&self, langs: &[String]) -> Option<&Literal> {
        best_label(self.pref_labels.iter(), langs)
    }
}

/// Picks a label by language preference: exact tag, then a tag with the
/// preferred tag as primary subtag, for each preference in order. Falls back
/// to the canonically smallest label.
pub fn best_label<'a>(
    labels: impl IntoIterator<Item = &'a Literal>,
    langs: &[String],
) -> Option<&'a Literal> {
    let labels: Vec<&Literal> = labels.into_iter().collect();
    for want in langs {
        let want = want.to_ascii_lowercase();
        if let Some(l) = labels.iter().find(|l| l.language() == Some(want.as_str())) {
            return Some(l);
        }
        if let Some(l) = labels.iter().find(|l| {
            l.language()
                .is_some_and(|t| t.strip_prefix(want.as_str()).is_some_and(|r| r.starts_with('-')))
        }) {
            return Some(l);
        }
    }
    labels.into_iter().min()
}

fn iri_objects(graphs: &[&Graph], s: &Subject, p: &Iri) -> BTreeSet<Iri> {
    graphs
        .iter()
        .flat_map(|g| g.objects(s, p))
        .filter_map(|t| t.as_iri().cloned())
        .collect()
}

/// Concept-ness: typed `skos:Concept`, subject of `skos:inScheme` or
/// `skos:topConceptOf`, or object of `skos:hasTopConcept`.
pub fn is_concept(graphs: &[&Graph], node: &Iri) -> bool {
    let s = Subject::Iri(node.clone());
    let o = Term::Iri(node.clone());
    let type_p = iri(vocab::RDF_TYPE);
    let concept = Term::Iri(iri(vocab::SKOS_CONCEPT));
    graphs.iter().any(|g| {
        !g.matching(Some(&s), Some(&type_p), Some(&concept)).is_empty()
            || !g
                .matching(Some(&s), Some(&iri(vocab::SKOS_IN_SCHEME)), None)
                .is_empty()
            || !g
                .matching(Some(&s), Some(&iri(vocab::SKOS_TOP_CONCEPT_OF)), None)
                .is_empty()
            || !g
                .matching(None, Some(&iri(vocab::SKOS_HAS_TOP_CONCEPT)), Some(&o))
                .is_empty()
    })
}

/// Every IRI that qualifies under [`is_concept`], sorted.
pub fn concept_iris(graphs: &[&Graph]) -> BTreeSet<Iri> {
    let mut out = BTreeSet::new();
    let concept = Term::Iri(iri(vocab::SKOS_CONCEPT));
    for g in graphs {
        for s in g.subjects(&iri(vocab::RDF_TYPE), &concept) {
            out.extend(s.as_iri().cloned());
        }
        for p in [vocab::SKOS_IN_SCHEME, vocab::SKOS_TOP_CONCEPT_OF] {
            for t in g.matching(None, Some(&iri(p)), None) {
                out.extend(t.subject.as_iri().cloned());
            }
        }
        for t in g.matching(None, Some(&iri(vocab::SKOS_HAS_TOP_CONCEPT)), None) {
            out.extend(t.object.as_iri().cloned());
        }
    }
    out
}

/// Schemes a node is assigned to via inScheme, topConceptOf or hasTopConcept.
pub fn schemes_of(graphs: &[&Graph], node: &Iri) -> BTreeSet<Iri> {
    let s = Subject::Iri(node.clone());
    let mut out = iri_objects(graphs, &s, &iri(vocab::SKOS_IN_SCHEME));
    out.extend(iri_objects(graphs, &s, &iri(vocab::SKOS_TOP_CONCEPT_OF)));
    let o = Term::Iri(node.clone());
    for g in graphs {
        for sub in g.subjects(&iri(vocab::SKOS_HAS_TOP_CONCEPT), &o) {
            out.extend(sub.as_iri().cloned());
        }
    }
    out
}

/// Typed concepts with no scheme assignment.
pub(crate) fn orphans(graphs: &[&Graph]) -> Vec<Diagnostic> {
    let concept = Term::Iri(iri(vocab::SKOS_CONCEPT));
    let typed: BTreeSet<Iri> = graphs
        .iter()
        .flat_map(|g| g.subjects(&iri(vocab::RDF_TYPE), &concept))
        .filter_map(|s| s.as_iri().cloned())
        .collect();
    typed
        .into_iter()
        .filter(|c| schemes_of(graphs, c).is_empty())
        .map(|c| {
            Diagnostic::new(Code::OrphanConcept, "concept is not assigned to any concept scheme")
                .with_subject(c)
        })
        .collect()
}

/// One scheme per subject typed `skos:ConceptScheme`. Concepts without any
/// scheme assignment are reported as `ORPHAN_CONCEPT`.
pub fn extract_schemes(g: &Graph) -> (Vec<ConceptScheme>, Vec<Diagnostic>) {
    let graphs = [g];
    let scheme_type = Term::Iri(iri(vocab::SKOS_CONCEPT_SCHEME));
    let scheme_iris: BTreeSet<Iri> = g
        .subjects(&iri(vocab::RDF_TYPE), &scheme_type)
        .filter_map(|s| s.as_iri().cloned())
        .collect();

    let schemes = scheme_iris
        .into_iter()
        .map(|scheme| {
            let s = Subject::Iri(scheme.clone());
            let o = Term::Iri(scheme.clone());
            let mut concepts = BTreeSet::new();
            for p in [vocab::SKOS_IN_SCHEME, vocab::SKOS_TOP_CONCEPT_OF] {
                concepts.extend(g.subjects(&iri(p), &o).filter_map(|x| x.as_iri().cloned()));
            }
            concepts.extend(
                g.objects(&s, &iri(vocab::SKOS_HAS_TOP_CONCEPT))
                    .filter_map(|x| x.as_iri().cloned()),
            );
            let title = [vocab::DCT_TITLE, vocab::SKOS_PREF_LABEL, vocab::RDFS_LABEL]
                .iter()
                .find_map(|p| g.objects(&s, &iri(p)).find_map(|t| t.as_literal().cloned()));
            ConceptScheme {
                iri: scheme,
                title,
                concepts,
            }
        })
        .collect();
    (schemes, orphans(&graphs))
}

/// Builds the concept view of `node`, or `None` when the node has neither
/// concept typing nor any SKOS label or semantic relation triple.
pub fn extract_concept(g: &Graph, node: &Iri) -> Option<Concept> {
    extract_concept_in(&[g], node)
}

/// As [`extract_concept`], reading from several graphs.
pub fn extract_concept_in(graphs: &[&Graph], node: &Iri) -> Option<Concept> {
    let s = Subject::Iri(node.clone());
    let literals = |p: &str| -> BTreeSet<Literal> {
        let p = iri(p);
        graphs
            .iter()
            .flat_map(|g| g.objects(&s, &p))
            .filter_map(|t| t.as_literal().cloned())
            .collect()
    };
    let c = Concept {
        iri: node.clone(),
        schemes: schemes_of(graphs, node),
        pref_labels: literals(vocab::SKOS_PREF_LABEL),
        alt_labels: literals(vocab::SKOS_ALT_LABEL),
        hidden_labels: literals(vocab::SKOS_HIDDEN_LABEL),
        broader: iri_objects(graphs, &s, &iri(vocab::SKOS_BROADER)),
        narrower: iri_objects(graphs, &s, &iri(vocab::SKOS_NARROWER)),
        related: iri_objects(graphs, &s, &iri(vocab::SKOS_RELATED)),
    };
    let has_skos = !(c.pref_labels.is_empty()
        && c.alt_labels.is_empty()
        && c.hidden_labels.is_empty()
        && c.broader.is_empty()
        && c.narrower.is_empty()
        && c.related.is_empty());
    (has_skos || is_concept(graphs, node)).then_some(c)
}
