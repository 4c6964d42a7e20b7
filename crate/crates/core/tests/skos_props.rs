use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use skosbridge::rdf::{Graph, Iri, Literal, Subject, Term, Triple};
use skosbridge::skos::{extract_concept, resolve_xl_labels, LabelKind};
use skosbridge::vocab;

fn i(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

/// Concepts with a mix of plain and SKOS-XL labels; some XL label
/// resources lack a literal form, some labels are shared.
fn skos_graph(seed: u64, concepts: usize) -> Graph {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut g = Graph::new();
    let plain = [vocab::SKOS_PREF_LABEL, vocab::SKOS_ALT_LABEL, vocab::SKOS_HIDDEN_LABEL];
    let xl = [vocab::SKOSXL_PREF_LABEL, vocab::SKOSXL_ALT_LABEL, vocab::SKOSXL_HIDDEN_LABEL];
    for c in 0..concepts {
        let node = i(&format!("http://x.org/c{c}"));
        g.insert(Triple::new(node.clone(), i(vocab::RDF_TYPE), i(vocab::SKOS_CONCEPT)));
        for _ in 0..rng.gen_range(0..6) {
            let kind = rng.gen_range(0..3);
            let text = format!("T{}", rng.gen_range(0..8));
            let lang = ["de", "en"][rng.gen_range(0..2)];
            if rng.gen_bool(0.5) {
                g.insert(Triple::new(node.clone(), i(plain[kind]), Literal::lang(text, lang).unwrap()));
            } else {
                let label = i(&format!("http://x.org/label/{}", rng.gen_range(0..(concepts * 3 + 1))));
                g.insert(Triple::new(node.clone(), i(xl[kind]), label.clone()));
                if rng.gen_bool(0.8) {
                    g.insert(Triple::new(
                        label,
                        i(vocab::SKOSXL_LITERAL_FORM),
                        Literal::lang(text, lang).unwrap(),
                    ));
                }
            }
        }
        if rng.gen_bool(0.3) {
            g.insert(Triple::new(node, i(vocab::SKOS_PREF_LABEL), Literal::plain("untagged")));
        }
    }
    g
}

fn brute_labels(g: &Graph, node: &Iri, predicate: &str) -> BTreeSet<Literal> {
    g.iter_unordered()
        .filter(|t| t.subject == Subject::Iri(node.clone()) && t.predicate.as_str() == predicate)
        .filter_map(|t| match &t.object {
            Term::Literal(l) => Some(l.clone()),
            _ => None,
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn xl_resolution_is_idempotent(seed in any::<u64>(), n in 0usize..40) {
        let g = skos_graph(seed, n);
        let (once, d1) = resolve_xl_labels(&g);
        let (twice, d2) = resolve_xl_labels(&once);
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(d1, d2);
    }

    #[test]
    fn extracted_labels_equal_label_triples(seed in any::<u64>(), n in 1usize..40) {
        let (g, _) = resolve_xl_labels(&skos_graph(seed, n));
        for c in 0..n {
            let node = i(&format!("http://x.org/c{c}"));
            let concept = extract_concept(&g, &node).expect("typed concept");
            for kind in [LabelKind::Pref, LabelKind::Alt, LabelKind::Hidden] {
                prop_assert_eq!(concept.labels(kind), &brute_labels(&g, &node, kind.predicate()));
            }
        }
    }
}
