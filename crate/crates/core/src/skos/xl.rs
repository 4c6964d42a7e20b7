use std::collections::BTreeSet;

use crate::diagnostic::{Code, Diagnostic};
use crate::rdf::{Graph, Iri, Subject, Term, Triple};
use crate::vocab::{self, iri};

const XL_TO_PLAIN: [(&str, &str); 3] = [
    (vocab::SKOSXL_PREF_LABEL, vocab::SKOS_PREF_LABEL),
    (vocab::SKOSXL_ALT_LABEL, vocab::SKOS_ALT_LABEL),
    (vocab::SKOSXL_HIDDEN_LABEL, vocab::SKOS_HIDDEN_LABEL),
];

/// Dumbs SKOS-XL labels down to plain SKOS labels.
///
/// For every `?c skosxl:prefLabel ?l . ?l skosxl:literalForm ?lit` adds
/// `?c skos:prefLabel ?lit` (likewise alt and hidden). XL triples are kept.
/// Label resources without a literal form yield `XL_NO_LITERAL_FORM`, once
/// per label resource.
pub fn resolve_xl_labels(g: &Graph) -> (Graph, Vec<Diagnostic>) {
    let mut out = g.clone();
    let literal_form = iri(vocab::SKOSXL_LITERAL_FORM);
    let mut missing: BTreeSet<Subject> = BTreeSet::new();

    for (xl, plain) in XL_TO_PLAIN {
        let plain = iri(plain);
        for t in g.matching(None, Some(&iri(xl)), None) {
            let Some(label_node) = t.object.to_subject() else {
                continue;
            };
            let mut found = false;
            for form in g.objects(&label_node, &literal_form) {
                if let Term::Literal(lit) = form {
                    found = true;
                    out.insert(Triple::new(
                        t.subject.clone(),
                        plain.clone(),
                        lit.clone(),
                    ));
                }
            }
            if !found {
                missing.insert(label_node);
            }
        }
    }

    let diags = missing
        .into_iter()
        .map(|node| {
            let d = Diagnostic::new(
                Code::XlNoLiteralForm,
                match &node {
                    Subject::Iri(_) => "SKOS-XL label has no skosxl:literalForm".to_string(),
                    Subject::Blank(b) => {
                        format!("SKOS-XL label _:{} has no skosxl:literalForm", b.label())
                    }
                },
            );
            match node {
                Subject::Iri(i) => d.with_subject(i),
                Subject::Blank(_) => d,
            }
        })
        .collect();
    (out, diags)
}

/// True if the graph uses any SKOS-XL label property.
pub fn uses_xl(g: &Graph) -> bool {
    XL_TO_PLAIN
        .iter()
        .any(|(xl, _)| !g.matching(None, Some(&Iri::new(xl).unwrap()), None).is_empty())
}
