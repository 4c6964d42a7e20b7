use std::collections::{BTreeMap, BTreeSet};

use crate::diagnostic::{Code, Diagnostic};
use crate::rdf::{Graph, Iri, Literal, Subject, Term};
use crate::vocab::{self, iri};

use super::model::{is_concept, orphans, schemes_of, LabelKind};

/// Validates `g` on its own. See [`validate_skos_with`].
pub fn validate_skos(g: &Graph) -> Vec<Diagnostic> {
    validate_skos_with(g, &[])
}

/// Checks `g` for the integrity conditions conversion depends on. `context`
/// graphs (other thesauri) count when deciding whether a mapping endpoint is
/// a concept or is described at all; only `g`'s own triples are checked.
///
/// Never modifies anything. Output is sorted by subject, then code.
pub fn validate_skos_with(g: &Graph, context: &[&Graph]) -> Vec<Diagnostic> {
    let mut graphs: Vec<&Graph> = vec![g];
    graphs.extend_from_slice(context);

    let mut out = orphans(&[g]);
    out.extend(label_checks(g));
    out.extend(mapping_checks(g, &graphs));
    out.sort_by(|a, b| {
        (&a.subject, a.code, &a.message).cmp(&(&b.subject, b.code, &b.message))
    });
    out
}

fn label_checks(g: &Graph) -> Vec<Diagnostic> {
    // subject -> kind -> labels
    let mut labels: BTreeMap<Iri, BTreeMap<LabelKind, BTreeSet<Literal>>> = BTreeMap::new();
    for kind in [LabelKind::Pref, LabelKind::Alt, LabelKind::Hidden] {
        for t in g.matching(None, Some(&iri(kind.predicate())), None) {
            if let (Subject::Iri(s), Term::Literal(l)) = (&t.subject, &t.object) {
                labels
                    .entry(s.clone())
                    .or_default()
                    .entry(kind)
                    .or_default()
                    .insert(l.clone());
            }
        }
    }

    let mut out = Vec::new();
    for (subject, kinds) in labels {
        if let Some(prefs) = kinds.get(&LabelKind::Pref) {
            let mut by_lang: BTreeMap<&str, Vec<&Literal>> = BTreeMap::new();
            for l in prefs {
                by_lang.entry(l.language().unwrap_or("")).or_default().push(l);
            }
            for (lang, ls) in by_lang.into_iter().filter(|(_, ls)| ls.len() > 1) {
                let texts: Vec<&str> = ls.iter().map(|l| l.lexical()).collect();
                out.push(
                    Diagnostic::new(
                        Code::DuplicatePrefLabel,
                        format!("{} prefLabels in language {lang:?}: {texts:?}", ls.len()),
                    )
                    .with_subject(subject.clone()),
                );
            }
        }

        let pairs = [
            (LabelKind::Pref, LabelKind::Alt),
            (LabelKind::Pref, LabelKind::Hidden),
            (LabelKind::Alt, LabelKind::Hidden),
        ];
        for (a, b) in pairs {
            let (Some(la), Some(lb)) = (kinds.get(&a), kinds.get(&b)) else {
                continue;
            };
            for l in la.intersection(lb) {
                out.push(
                    Diagnostic::new(
                        Code::LabelClash,
                        format!(
                            "{:?}@{} is both {}Label and {}Label",
                            l.lexical(),
                            l.language().unwrap_or(""),
                            a.as_str(),
                            b.as_str()
                        ),
                    )
                    .with_subject(subject.clone()),
                );
            }
        }
    }
    out
}

/// Described = subject of at least one non-mapping triple somewhere.
fn is_described(graphs: &[&Graph], node: &Subject) -> bool {
    graphs.iter().any(|g| {
        g.matching(Some(node), None, None)
            .iter()
            .any(|t| !vocab::is_mapping_property(t.predicate.as_str()))
    })
}

fn mapping_checks(g: &Graph, graphs: &[&Graph]) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for prop in vocab::SKOS_MAPPING_PROPERTIES {
        for t in g.matching(None, Some(&iri(prop)), None) {
            let subject_iri = t.subject.as_iri().cloned();
            let with_subject = |d: Diagnostic| match &subject_iri {
                Some(s) => d.with_subject(s.clone()),
                None => d,
            };
            let object = match t.object.to_subject() {
                Some(o) => o,
                None => {
                    out.push(with_subject(Diagnostic::new(
                        Code::MappingNonConcept,
                        format!("{} has a literal object", short(prop)),
                    )));
                    continue;
                }
            };

            let mut non_concept = Vec::new();
            let mut dangling = Vec::new();
            for (role, node) in [("subject", &t.subject), ("object", &object)] {
                let concept = node.as_iri().is_some_and(|i| is_concept(graphs, i));
                if concept {
                    continue;
                }
                if is_described(graphs, node) {
                    non_concept.push(role);
                } else {
                    dangling.push(role);
                }
            }

            if !non_concept.is_empty() {
                out.push(with_subject(Diagnostic::new(
                    Code::MappingNonConcept,
                    format!(
                        "{} {} {} not a skos:Concept",
                        short(prop),
                        non_concept.join(" and "),
                        if non_concept.len() > 1 { "are" } else { "is" }
                    ),
                )));
            }
            for role in dangling {
                let node = if role == "subject" { &t.subject } else { &object };
                let name = match node {
                    Subject::Iri(i) => i.as_str().to_string(),
                    Subject::Blank(b) => format!("_:{}", b.label()),
                };
                out.push(with_subject(Diagnostic::new(
                    Code::DanglingMappingTarget,
                    format!("{} {role} {name} is not described in any loaded graph", short(prop)),
                )));
            }

            if let (Some(s), Some(o)) = (t.subject.as_iri(), object.as_iri()) {
                if is_concept(graphs, s) && is_concept(graphs, o) {
                    let shared: Vec<Iri> = schemes_of(graphs, s)
                        .intersection(&schemes_of(graphs, o))
                        .cloned()
                        .collect();
                    if let Some(scheme) = shared.first() {
                        out.push(with_subject(Diagnostic::new(
                            Code::MappingSameScheme,
                            format!("{} links two concepts of scheme {scheme}", short(prop)),
                        )));
                    }
                }
            }
        }
    }
    out
}

fn short(prop: &str) -> String {
    prop.strip_prefix(vocab::SKOS_NS)
        .map(|l| format!("skos:{l}"))
        .unwrap_or_else(|| prop.to_string())
}
