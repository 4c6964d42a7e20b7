use std::collections::BTreeMap;

use skosbridge::rdf::{Graph, Iri, Literal, Subject, Term, Triple};
use skosbridge::store::{MappingLink, MultiStore, Partner};

/// Everything the page and data views show about one resource.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Description {
    pub focus: Iri,
    /// Triples with `focus` as subject, from its owner and all mapping graphs.
    pub outbound: Vec<Triple>,
    pub mappings: Vec<MappingLink>,
    /// Best label of every IRI the views mention, across all registrations.
    pub neighbor_labels: BTreeMap<Iri, Literal>,
}

impl Description {
    pub fn is_empty(&self) -> bool {
        self.outbound.is_empty() && self.mappings.is_empty()
    }

    /// The data view: outbound triples plus every mapping triple, including
    /// combination structure.
    pub fn graph(&self, store: &MultiStore) -> Graph {
        let mut g: Graph = self.outbound.iter().cloned().collect();
        for m in &self.mappings {
            g.extend(m.triples(&self.focus, store.extension()));
        }
        g
    }
}

/// Builds the description of `iri`. An IRI nobody mentions gets an empty
/// description.
pub fn describe(store: &MultiStore, iri: &Iri, langs: &[String]) -> Description {
    let me = Subject::Iri(iri.clone());
    let mut outbound: Graph = Graph::new();
    if let Some(owner) = store.owner(iri.as_str()) {
        outbound.extend(owner.graph.matching(Some(&me), None, None).into_iter().cloned());
    }
    outbound.extend(
        store
            .mappings_graph()
            .matching(Some(&me), None, None)
            .into_iter()
            .cloned(),
    );
    let mappings = store.mappings_for(iri, langs);

    let mut mentioned: Vec<&Iri> = outbound
        .iter_unordered()
        .filter_map(|t| match &t.object {
            Term::Iri(i) => Some(i),
            _ => None,
        })
        .collect();
    for m in &mappings {
        match &m.partner {
            Partner::Concept(p) => mentioned.push(&p.iri),
            Partner::Combination { source, members, .. } => {
                mentioned.push(&source.iri);
                mentioned.extend(members.iter().map(|m| &m.iri));
            }
        }
    }
    let neighbor_labels = mentioned
        .into_iter()
        .filter_map(|i| store.label_of(i, langs).map(|l| (i.clone(), l)))
        .collect();

    Description {
        focus: iri.clone(),
        outbound: outbound.iter().cloned().collect(),
        mappings,
        neighbor_labels,
    }
}
