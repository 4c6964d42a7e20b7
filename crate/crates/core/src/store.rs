//! Several thesauri and mapping graphs held as separately addressable named
//! graphs, with cross-graph lookup.
//!
//! A store is built single-threaded (register, then load mappings) and then
//! shared read-only, typically as `Arc<MultiStore>`. Derived indexes are
//! computed lazily and thread-safely on first read.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::crosswalk::ExtVocabulary;
use crate::diagnostic::{Code, Diagnostic};
use crate::rdf::{Graph, Iri, Literal, PrefixMap, Subject, Term, Triple};
use crate::skos::{best_label, concept_iris, extract_concept, Concept};
use crate::vocab::{self, iri};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StoreError {
    #[error("thesaurus id {0:?} is already registered")]
    DuplicateId(String),
    #[error("mapping graph id {0:?} is already loaded")]
    DuplicateMappingId(String),
    #[error("base IRI {new} overlaps {existing} (registered by {existing_id:?})")]
    OverlappingBase {
        new: String,
        existing: String,
        existing_id: String,
    },
    #[error("invalid base IRI {0:?}")]
    BadBase(String),
    #[error("invalid thesaurus id {0:?}: use letters, digits, '-' or '_'")]
    BadId(String),
}

#[derive(Debug, Clone)]
pub struct ThesaurusRegistration {
    pub id: String,
    pub title: String,
    /// IRI prefix owned by this thesaurus.
    pub base_iri: String,
    pub graph: Arc<Graph>,
    pub prefixes: PrefixMap,
    pub default_lang: Option<String>,
    concept_count: usize,
}

impl ThesaurusRegistration {
    pub fn new(
        id: impl Into<String>,
        title: impl Into<String>,
        base_iri: impl Into<String>,
        graph: Graph,
    ) -> Result<Self, StoreError> {
        let id = id.into();
        let base_iri = base_iri.into();
        if id.is_empty()
            || !id
                .bytes()
                .all(|b| b.is_ascii_alphanumeric() || b == b'-' || b == b'_')
        {
            return Err(StoreError::BadId(id));
        }
        if Iri::new(&base_iri).is_err() {
            return Err(StoreError::BadBase(base_iri));
        }
        let concept_count = concept_iris(&[&graph]).len();
        Ok(ThesaurusRegistration {
            id,
            title: title.into(),
            base_iri,
            graph: Arc::new(graph),
            prefixes: PrefixMap::new(),
            default_lang: None,
            concept_count,
        })
    }

    pub fn with_prefixes(mut self, prefixes: PrefixMap) -> Self {
        self.prefixes = prefixes;
        self
    }

    pub fn with_default_lang(mut self, lang: Option<String>) -> Self {
        self.default_lang = lang;
        self
    }

    pub fn concept_count(&self) -> usize {
        self.concept_count
    }

    pub fn owns(&self, iri: &str) -> bool {
        iri.starts_with(&self.base_iri)
    }

    /// Part of `iri` after the base, if owned.
    pub fn local_part<'a>(&self, iri: &'a str) -> Option<&'a str> {
        iri.strip_prefix(self.base_iri.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Outbound,
    Inbound,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LabeledIri {
    pub iri: Iri,
    pub label: Option<Literal>,
    /// Registration owning the IRI, if any.
    pub registration: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Partner {
    Concept(LabeledIri),
    /// A combination node; `source` is the concept mapped onto it.
    Combination {
        node: Iri,
        source: LabeledIri,
        members: Vec<LabeledIri>,
    },
}

/// One cross-concordance touching a concept.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MappingLink {
    pub direction: Direction,
    pub property: Iri,
    pub partner: Partner,
}

impl MappingLink {
    /// The mapping triples this link stands for.
    pub fn triples(&self, focus: &Iri, ext: &ExtVocabulary) -> Vec<Triple> {
        match &self.partner {
            Partner::Concept(other) => match self.direction {
                Direction::Outbound => vec![Triple::new(
                    focus.clone(),
                    self.property.clone(),
                    other.iri.clone(),
                )],
                Direction::Inbound => vec![Triple::new(
                    other.iri.clone(),
                    self.property.clone(),
                    focus.clone(),
                )],
            },
            Partner::Combination {
                node,
                source,
                members,
            } => {
                let mut out = vec![
                    Triple::new(source.iri.clone(), ext.matches_combination(), node.clone()),
                    Triple::new(node.clone(), iri(vocab::RDF_TYPE), ext.concept_combination()),
                ];
                out.extend(
                    members
                        .iter()
                        .map(|m| Triple::new(node.clone(), ext.member(), m.iri.clone())),
                );
                out
            }
        }
    }
}

/// Result of [`MultiStore::lookup`]: the owning registration, and the
/// concept view when the IRI is a concept there.
#[derive(Debug, Clone)]
pub struct Lookup<'a> {
    pub registration: &'a ThesaurusRegistration,
    pub concept: Option<Concept>,
}

#[derive(Debug, Default)]
pub struct MultiStore {
    registrations: Vec<ThesaurusRegistration>,
    mapping_graphs: Vec<(String, Arc<Graph>)>,
    ext: ExtVocabulary,
    merged: OnceLock<Graph>,
    mappings_union: OnceLock<Graph>,
}

impl MultiStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_extension(ext: ExtVocabulary) -> Self {
        MultiStore {
            ext,
            ..Self::default()
        }
    }

    pub fn extension(&self) -> &ExtVocabulary {
        &self.ext
    }

    pub fn registrations(&self) -> &[ThesaurusRegistration] {
        &self.registrations
    }

    pub fn registration(&self, id: &str) -> Option<&ThesaurusRegistration> {
        self.registrations.iter().find(|r| r.id == id)
    }

    pub fn mapping_graphs(&self) -> impl Iterator<Item = (&str, &Graph)> {
        self.mapping_graphs.iter().map(|(id, g)| (id.as_str(), &**g))
    }

    fn invalidate(&mut self) {
        self.merged = OnceLock::new();
        self.mappings_union = OnceLock::new();
    }

    /// Adds a thesaurus. Ids must be unique and no base IRI may be a prefix
    /// of another.
    pub fn register(&mut self, reg: ThesaurusRegistration) -> Result<(), StoreError> {
        if self.registrations.iter().any(|r| r.id == reg.id) {
            return Err(StoreError::DuplicateId(reg.id));
        }
        if let Some(r) = self.registrations.iter().find(|r| {
            r.base_iri.starts_with(&reg.base_iri) || reg.base_iri.starts_with(&r.base_iri)
        }) {
            return Err(StoreError::OverlappingBase {
                new: reg.base_iri.clone(),
                existing: r.base_iri.clone(),
                existing_id: r.id.clone(),
            });
        }
        self.registrations.push(reg);
        self.invalidate();
        Ok(())
    }

    /// Stores a mapping graph under `id`. Endpoints outside every registered
    /// base are kept and reported as `DANGLING_MAPPING_TARGET`; triples that
    /// are neither mapping nor extension triples are kept and reported as
    /// `MAPPING_GRAPH_FOREIGN_TRIPLE`.
    pub fn load_mappings(
        &mut self,
        id: impl Into<String>,
        g: Graph,
    ) -> Result<Vec<Diagnostic>, StoreError> {
        let id = id.into();
        if self.mapping_graphs.iter().any(|(m, _)| *m == id) {
            return Err(StoreError::DuplicateMappingId(id));
        }
        let mut diags = Vec::new();
        let combo = self.ext.matches_combination();
        let member = self.ext.member();
        let rdf_type = iri(vocab::RDF_TYPE);
        let combo_class = Term::Iri(self.ext.concept_combination());

        let check = |node: &Term, role: &str, t: &Triple, diags: &mut Vec<Diagnostic>| {
            let owned = node
                .as_iri()
                .is_some_and(|i| self.owner(i.as_str()).is_some());
            if !owned {
                let mut d = Diagnostic::new(
                    Code::DanglingMappingTarget,
                    format!(
                        "{role} of {} is outside every registered thesaurus: {}",
                        t.predicate,
                        crate::rdf::ntriples::triple_line(t)
                    ),
                );
                if let Some(s) = t.subject.as_iri() {
                    d = d.with_subject(s.clone());
                }
                diags.push(d);
            }
        };

        for t in g.iter() {
            let p = t.predicate.as_str();
            let subject = Term::from(t.subject.clone());
            if vocab::is_mapping_property(p) {
                check(&subject, "subject", t, &mut diags);
                check(&t.object, "object", t, &mut diags);
            } else if t.predicate == combo {
                check(&subject, "subject", t, &mut diags);
            } else if t.predicate == member {
                check(&t.object, "member", t, &mut diags);
            } else if t.predicate == rdf_type && t.object == combo_class {
                // combination node typing
            } else {
                let mut d = Diagnostic::new(
                    Code::MappingGraphForeignTriple,
                    format!(
                        "mapping graph {id:?} contains a non-mapping triple: {}",
                        crate::rdf::ntriples::triple_line(t)
                    ),
                );
                if let Some(s) = t.subject.as_iri() {
                    d = d.with_subject(s.clone());
                }
                diags.push(d);
            }
        }
        self.mapping_graphs.push((id, Arc::new(g)));
        self.invalidate();
        Ok(diags)
    }

    /// Registration whose base is the longest prefix of `iri`.
    pub fn owner(&self, iri: &str) -> Option<&ThesaurusRegistration> {
        self.registrations
            .iter()
            .filter(|r| r.owns(iri))
            .max_by_key(|r| r.base_iri.len())
    }

    /// `None` when no registered base covers `iri`; otherwise the owner and,
    /// if `iri` is a concept there, its view.
    pub fn lookup(&self, iri: &Iri) -> Option<Lookup<'_>> {
        let registration = self.owner(iri.as_str())?;
        Some(Lookup {
            registration,
            concept: extract_concept(&registration.graph, iri),
        })
    }

    /// Language preference list extended with the owner's default language.
    fn langs_for(&self, owner: Option<&ThesaurusRegistration>, langs: &[String]) -> Vec<String> {
        let mut v = langs.to_vec();
        if let Some(d) = owner.and_then(|r| r.default_lang.clone()) {
            v.push(d);
        }
        v
    }

    /// Best preferred label for `iri` from its owning thesaurus.
    pub fn label_of(&self, node: &Iri, langs: &[String]) -> Option<Literal> {
        let owner = self.owner(node.as_str())?;
        let labels: Vec<Literal> = owner
            .graph
            .objects(&Subject::Iri(node.clone()), &iri(vocab::SKOS_PREF_LABEL))
            .filter_map(|t| t.as_literal().cloned())
            .collect();
        best_label(&labels, &self.langs_for(Some(owner), langs)).cloned()
    }

    fn labeled(&self, node: &Iri, langs: &[String]) -> LabeledIri {
        LabeledIri {
            iri: node.clone(),
            label: self.label_of(node, langs),
            registration: self.owner(node.as_str()).map(|r| r.id.clone()),
        }
    }

    /// Union of all mapping graphs.
    pub fn mappings_graph(&self) -> &Graph {
        self.mappings_union.get_or_init(|| {
            let mut g = Graph::new();
            for (_, m) in &self.mapping_graphs {
                g.extend_from(m);
            }
            g
        })
    }

    fn combination(&self, node: &Iri, source: &Iri, langs: &[String]) -> Partner {
        let members = self
            .mappings_graph()
            .objects(&Subject::Iri(node.clone()), &self.ext.member())
            .filter_map(|t| t.as_iri())
            .map(|m| self.labeled(m, langs))
            .collect();
        Partner::Combination {
            node: node.clone(),
            source: self.labeled(source, langs),
            members,
        }
    }

    /// Every cross-concordance with `iri` at either end, including
    /// membership in a combination. Partner labels come from the partner's
    /// own thesaurus. Sorted; duplicates across mapping graphs collapse.
    pub fn mappings_for(&self, node: &Iri, langs: &[String]) -> Vec<MappingLink> {
        let g = self.mappings_graph();
        let combo = self.ext.matches_combination();
        let me_s = Subject::Iri(node.clone());
        let me_o = Term::Iri(node.clone());
        let mut out = BTreeSet::new();

        for t in g.matching(Some(&me_s), None, None) {
            let Some(o) = t.object.as_iri() else { continue };
            if vocab::is_mapping_property(t.predicate.as_str()) {
                out.insert(MappingLink {
                    direction: Direction::Outbound,
                    property: t.predicate.clone(),
                    partner: Partner::Concept(self.labeled(o, langs)),
                });
            } else if t.predicate == combo {
                out.insert(MappingLink {
                    direction: Direction::Outbound,
                    property: combo.clone(),
                    partner: self.combination(o, node, langs),
                });
            }
        }
        for t in g.matching(None, None, Some(&me_o)) {
            let Some(s) = t.subject.as_iri() else { continue };
            if vocab::is_mapping_property(t.predicate.as_str()) {
                out.insert(MappingLink {
                    direction: Direction::Inbound,
                    property: t.predicate.clone(),
                    partner: Partner::Concept(self.labeled(s, langs)),
                });
            } else if t.predicate == self.ext.member() {
                for src in g.subjects(&combo, &Term::Iri(s.clone())) {
                    if let Some(src) = src.as_iri() {
                        out.insert(MappingLink {
                            direction: Direction::Inbound,
                            property: combo.clone(),
                            partner: self.combination(s, src, langs),
                        });
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// Union of every registration graph and mapping graph.
    pub fn merged(&self) -> &Graph {
        self.merged.get_or_init(|| {
            let mut g = Graph::new();
            for r in &self.registrations {
                g.extend_from(&r.graph);
            }
            g.extend_from(self.mappings_graph());
            g
        })
    }

    pub fn export_merged(&self) -> Graph {
        self.merged().clone()
    }
}
