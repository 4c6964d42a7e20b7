use std::collections::HashSet;
use std::path::{Path, PathBuf};

use crate::diagnostic::{Code, Diagnostic};
use crate::rdf::{Graph, Iri, Triple};
use crate::skos::LabelKind;
use crate::vocab::{self, iri};

use super::format::{CrosswalkEntry, ParsedCrosswalk, RelationCode};
use super::resolve::{resolve_term, Resolution, SchemeView, Tier};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NonPreferredMode {
    #[default]
    Strict,
    Promote,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AmbiguityMode {
    #[default]
    Fail,
    FirstBySortedIri,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConversionPolicy {
    pub nonpreferred_mode: NonPreferredMode,
    pub ambiguity_mode: AmbiguityMode,
    pub emit_inverses: bool,
}

impl Default for ConversionPolicy {
    fn default() -> Self {
        ConversionPolicy {
            nonpreferred_mode: NonPreferredMode::Strict,
            ambiguity_mode: AmbiguityMode::Fail,
            emit_inverses: true,
        }
    }
}

/// The SKOS mapping properties this converter reads or writes.
/// `closeMatch` is never produced from a crosswalk code but is inverted if seen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SkosMapping {
    Exact,
    Close,
    Broad,
    Narrow,
    Related,
}

impl SkosMapping {
    pub fn iri_str(self) -> &'static str {
        match self {
            SkosMapping::Exact => vocab::SKOS_EXACT_MATCH,
            SkosMapping::Close => vocab::SKOS_CLOSE_MATCH,
            SkosMapping::Broad => vocab::SKOS_BROAD_MATCH,
            SkosMapping::Narrow => vocab::SKOS_NARROW_MATCH,
            SkosMapping::Related => vocab::SKOS_RELATED_MATCH,
        }
    }

    pub fn iri(self) -> Iri {
        iri(self.iri_str())
    }

    pub fn from_iri(i: &str) -> Option<Self> {
        [
            SkosMapping::Exact,
            SkosMapping::Close,
            SkosMapping::Broad,
            SkosMapping::Narrow,
            SkosMapping::Related,
        ]
        .into_iter()
        .find(|m| m.iri_str() == i)
    }

    /// broadMatch and narrowMatch swap; the rest are symmetric.
    pub fn inverse(self) -> Self {
        match self {
            SkosMapping::Broad => SkosMapping::Narrow,
            SkosMapping::Narrow => SkosMapping::Broad,
            other => other,
        }
    }
}

impl From<RelationCode> for SkosMapping {
    /// `A < B` (A narrower than B) gives `A skos:broadMatch B`.
    fn from(r: RelationCode) -> Self {
        match r {
            RelationCode::Equivalent => SkosMapping::Exact,
            RelationCode::Broader => SkosMapping::Broad,
            RelationCode::Narrower => SkosMapping::Narrow,
            RelationCode::Related => SkosMapping::Related,
        }
    }
}

/// Forward mapping property for a crosswalk relation code.
pub fn map_relation(r: RelationCode) -> Iri {
    SkosMapping::from(r).iri()
}

/// The combination-mapping extension vocabulary under a configurable namespace.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtVocabulary {
    namespace: Iri,
}

impl Default for ExtVocabulary {
    fn default() -> Self {
        ExtVocabulary {
            namespace: iri(vocab::DEFAULT_EXT_NS),
        }
    }
}

impl ExtVocabulary {
    pub fn new(namespace: Iri) -> Self {
        ExtVocabulary { namespace }
    }

    pub fn namespace(&self) -> &Iri {
        &self.namespace
    }

    fn term(&self, local: &str) -> Iri {
        Iri::new(format!("{}{local}", self.namespace)).expect("namespace + local name")
    }

    pub fn matches_combination(&self) -> Iri {
        self.term("matchesCombination")
    }

    pub fn member(&self) -> Iri {
        self.term("member")
    }

    pub fn concept_combination(&self) -> Iri {
        self.term("ConceptCombination")
    }

    /// Deterministic node IRI: `namespace + "combination/" + hex`, where hex
    /// is the 64-bit FNV-1a hash of the two member IRIs in sorted order
    /// followed by the source IRI, each terminated by a NUL byte.
    pub fn combination_node(&self, source: &Iri, members: &[Iri; 2]) -> Iri {
        let mut sorted = [members[0].as_str(), members[1].as_str()];
        sorted.sort_unstable();
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        for part in [sorted[0], sorted[1], source.as_str()] {
            for &b in part.as_bytes().iter().chain(std::iter::once(&0u8)) {
                hash ^= u64::from(b);
                hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
        self.term(&format!("combination/{hash:016x}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MappingProperty {
    Skos(SkosMapping),
    MatchesCombination(ExtVocabulary),
}

impl MappingProperty {
    pub fn iri(&self) -> Iri {
        match self {
            MappingProperty::Skos(m) => m.iri(),
            MappingProperty::MatchesCombination(ext) => ext.matches_combination(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Provenance {
    pub file: PathBuf,
    pub line: usize,
}

/// A converted link. Exactly two targets iff the property is
/// `MatchesCombination`; otherwise one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MappingEdge {
    pub source: Iri,
    pub property: MappingProperty,
    pub targets: Vec<Iri>,
    pub provenance: Provenance,
}

impl MappingEdge {
    fn key(&self) -> (&Iri, &MappingProperty, &[Iri]) {
        (&self.source, &self.property, &self.targets)
    }
}

/// Conversion output: edges in input order, then inverses; diagnostics in
/// line order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Conversion {
    pub edges: Vec<MappingEdge>,
    pub diagnostics: Vec<Diagnostic>,
}

enum Side {
    Resolved { concept: Iri, warnings: Vec<Diagnostic> },
    Failed(Diagnostic),
}

struct SideCtx<'a> {
    role: &'a str,
    term: &'a str,
    lang: &'a str,
    file: &'a Path,
    line: usize,
}

impl SideCtx<'_> {
    fn diag(&self, code: Code, msg: String) -> Diagnostic {
        Diagnostic::new(code, msg).at(self.file, self.line)
    }

    fn describe(&self) -> String {
        format!("{} term {:?}@{}", self.role, self.term, self.lang)
    }

    fn non_preferred(
        &self,
        concept: Iri,
        kind: Option<LabelKind>,
        policy: &ConversionPolicy,
    ) -> Side {
        let label = kind.map_or("non-preferred label".to_string(), |k| {
            format!("{}Label", k.as_str())
        });
        match policy.nonpreferred_mode {
            NonPreferredMode::Strict => Side::Failed(
                self.diag(
                    Code::XwalkNonPreferred,
                    format!(
                        "{} is a non-preferred term ({label}) of {concept}; SKOS mappings link concepts, not non-preferred terms",
                        self.describe(),
                    ),
                )
                .with_subject(concept),
            ),
            NonPreferredMode::Promote => Side::Resolved {
                warnings: vec![self
                    .diag(
                        Code::XwalkPromoted,
                        format!(
                            "{} is a non-preferred term ({label}); mapped to its concept {concept}",
                            self.describe(),
                        ),
                    )
                    .with_subject(concept.clone())],
                concept,
            },
        }
    }
}

fn settle(res: Resolution, ctx: &SideCtx<'_>, policy: &ConversionPolicy) -> Side {
    match res {
        Resolution::Preferred(concept) => Side::Resolved {
            concept,
            warnings: Vec::new(),
        },
        Resolution::NonPreferred { concept, kind } => {
            ctx.non_preferred(concept, Some(kind), policy)
        }
        Resolution::Ambiguous { candidates, tier } => {
            let list = candidates
                .iter()
                .map(Iri::as_str)
                .collect::<Vec<_>>()
                .join(", ");
            match policy.ambiguity_mode {
                AmbiguityMode::Fail => Side::Failed(ctx.diag(
                    Code::XwalkAmbiguous,
                    format!("{} matches {} concepts: {list}", ctx.describe(), candidates.len()),
                )),
                AmbiguityMode::FirstBySortedIri => {
                    let chosen = candidates[0].clone();
                    let resolved = ctx
                        .diag(
                            Code::XwalkAmbiguousResolved,
                            format!("{} matches {list}; chose {chosen}", ctx.describe()),
                        )
                        .with_subject(chosen.clone());
                    match tier {
                        Tier::Preferred => Side::Resolved {
                            concept: chosen,
                            warnings: vec![resolved],
                        },
                        Tier::NonPreferred => {
                            match ctx.non_preferred(chosen, None, policy) {
                                Side::Resolved { concept, mut warnings } => {
                                    warnings.insert(0, resolved);
                                    Side::Resolved { concept, warnings }
                                }
                                failed => failed,
                            }
                        }
                    }
                }
            }
        }
        Resolution::NotFound => Side::Failed(ctx.diag(
            Code::XwalkUnresolved,
            format!("{} matches no concept label", ctx.describe()),
        )),
    }
}

/// Converts one crosswalk entry. Never fails: every problem is reported as a
/// diagnostic and yields no edge.
pub fn convert_entry(
    e: &CrosswalkEntry,
    source: &SchemeView,
    target: &SchemeView,
    policy: &ConversionPolicy,
    ext: &ExtVocabulary,
    file: &Path,
) -> (Vec<MappingEdge>, Vec<Diagnostic>) {
    let provenance = Provenance {
        file: file.to_path_buf(),
        line: e.line,
    };
    if e.target_terms.len() == 2 && e.relation != RelationCode::Equivalent {
        let d = Diagnostic::new(
            Code::XwalkBadCombination,
            format!(
                "combination mappings require '=', found '{}'",
                e.relation.symbol()
            ),
        )
        .at(file, e.line);
        return (Vec::new(), vec![d]);
    }
    if !(1..=2).contains(&e.target_terms.len()) {
        let d = Diagnostic::new(
            Code::XwalkSyntax,
            format!("entry has {} target terms", e.target_terms.len()),
        )
        .at(file, e.line);
        return (Vec::new(), vec![d]);
    }

    let mut sides = Vec::with_capacity(3);
    let src_ctx = SideCtx {
        role: "source",
        term: &e.source_term,
        lang: &e.source_lang,
        file,
        line: e.line,
    };
    sides.push(settle(
        resolve_term(source, &e.source_term, &e.source_lang),
        &src_ctx,
        policy,
    ));
    for t in &e.target_terms {
        let ctx = SideCtx {
            role: "target",
            term: t,
            lang: &e.target_lang,
            file,
            line: e.line,
        };
        sides.push(settle(resolve_term(target, t, &e.target_lang), &ctx, policy));
    }

    let mut concepts = Vec::new();
    let mut warnings = Vec::new();
    let mut errors = Vec::new();
    for side in sides {
        match side {
            Side::Resolved { concept, warnings: w } => {
                concepts.push(concept);
                warnings.extend(w);
            }
            Side::Failed(d) => errors.push(d),
        }
    }
    if !errors.is_empty() {
        return (Vec::new(), errors);
    }

    let src = concepts.remove(0);
    let edge = if concepts.len() == 2 {
        if concepts[0] == concepts[1] {
            let d = Diagnostic::new(
                Code::XwalkBadCombination,
                format!("both combination members resolve to {}", concepts[0]),
            )
            .with_subject(src)
            .at(file, e.line);
            return (Vec::new(), vec![d]);
        }
        MappingEdge {
            source: src,
            property: MappingProperty::MatchesCombination(ext.clone()),
            targets: concepts,
            provenance,
        }
    } else {
        MappingEdge {
            source: src,
            property: MappingProperty::Skos(e.relation.into()),
            targets: concepts,
            provenance,
        }
    };

    let mut diags = warnings;
    if diags.is_empty() {
        let targets = edge
            .targets
            .iter()
            .map(Iri::as_str)
            .collect::<Vec<_>>()
            .join(" + ");
        diags.push(
            Diagnostic::new(
                Code::XwalkOk,
                format!("{} {} {}", edge.source, edge.property.iri(), targets),
            )
            .with_subject(edge.source.clone())
            .at(file, e.line),
        );
    }
    (vec![edge], diags)
}

/// The four triples of a combination mapping:
/// `source ext:matchesCombination node`, `node a ext:ConceptCombination`, and
/// one `node ext:member m` per member. Identical members yield no triples and
/// `XWALK_BAD_COMBINATION`.
pub fn convert_combination(
    source: &Iri,
    members: &[Iri; 2],
    ext: &ExtVocabulary,
    provenance: &Provenance,
) -> (Vec<Triple>, Vec<Diagnostic>) {
    if members[0] == members[1] {
        let d = Diagnostic::new(
            Code::XwalkBadCombination,
            format!("combination members are identical: {}", members[0]),
        )
        .with_subject(source.clone())
        .at(&provenance.file, provenance.line);
        return (Vec::new(), vec![d]);
    }
    let node = ext.combination_node(source, members);
    let triples = vec![
        Triple::new(source.clone(), ext.matches_combination(), node.clone()),
        Triple::new(node.clone(), iri(vocab::RDF_TYPE), ext.concept_combination()),
        Triple::new(node.clone(), ext.member(), members[0].clone()),
        Triple::new(node, ext.member(), members[1].clone()),
    ];
    (triples, Vec::new())
}

/// Reverse edges for every single-target SKOS edge not already present.
/// Combination edges have no inverse and are reported as `XWALK_NO_INVERSE`.
pub fn generate_inverses(edges: &[MappingEdge]) -> (Vec<MappingEdge>, Vec<Diagnostic>) {
    let mut seen: HashSet<(Iri, MappingProperty, Vec<Iri>)> = edges
        .iter()
        .map(|e| {
            let (s, p, t) = e.key();
            (s.clone(), p.clone(), t.to_vec())
        })
        .collect();
    let mut out = Vec::new();
    let mut diags = Vec::new();
    for e in edges {
        match &e.property {
            MappingProperty::MatchesCombination(_) => diags.push(
                Diagnostic::new(
                    Code::XwalkNoInverse,
                    "combination mappings have no inverse property",
                )
                .with_subject(e.source.clone())
                .at(&e.provenance.file, e.provenance.line),
            ),
            MappingProperty::Skos(m) => {
                let inv = MappingEdge {
                    source: e.targets[0].clone(),
                    property: MappingProperty::Skos(m.inverse()),
                    targets: vec![e.source.clone()],
                    provenance: e.provenance.clone(),
                };
                let key = (inv.source.clone(), inv.property.clone(), inv.targets.clone());
                if seen.insert(key) {
                    out.push(inv);
                }
            }
        }
    }
    (out, diags)
}

/// One triple per SKOS edge, four per combination edge.
pub fn edges_to_graph(edges: &[MappingEdge]) -> Graph {
    let mut g = Graph::new();
    for e in edges {
        match &e.property {
            MappingProperty::Skos(m) => {
                g.insert(Triple::new(e.source.clone(), m.iri(), e.targets[0].clone()));
            }
            MappingProperty::MatchesCombination(ext) => {
                let members = [e.targets[0].clone(), e.targets[1].clone()];
                let (triples, _) = convert_combination(&e.source, &members, ext, &e.provenance);
                g.extend(triples);
            }
        }
    }
    g
}

/// Reads mapping edges back out of a mapping graph: one edge per SKOS
/// mapping triple and per well-formed combination node.
pub fn graph_to_edges(g: &Graph, ext: &ExtVocabulary, file: &Path) -> Vec<MappingEdge> {
    let provenance = Provenance {
        file: file.to_path_buf(),
        line: 0,
    };
    let mut out = Vec::new();
    for t in g.iter() {
        let (Some(s), Some(o)) = (t.subject.as_iri(), t.object.as_iri()) else {
            continue;
        };
        if let Some(m) = SkosMapping::from_iri(t.predicate.as_str()) {
            out.push(MappingEdge {
                source: s.clone(),
                property: MappingProperty::Skos(m),
                targets: vec![o.clone()],
                provenance: provenance.clone(),
            });
        } else if t.predicate == ext.matches_combination() {
            let members: Vec<Iri> = g
                .objects(&o.clone().into(), &ext.member())
                .filter_map(|m| m.as_iri().cloned())
                .collect();
            if members.len() == 2 {
                out.push(MappingEdge {
                    source: s.clone(),
                    property: MappingProperty::MatchesCombination(ext.clone()),
                    targets: members,
                    provenance: provenance.clone(),
                });
            }
        }
    }
    out
}

/// Converts a whole parsed crosswalk and, if the policy asks for it, appends
/// inverse edges. Parser diagnostics are included, merged in line order.
pub fn convert_crosswalk(
    parsed: &ParsedCrosswalk,
    source: &SchemeView,
    target: &SchemeView,
    policy: &ConversionPolicy,
    ext: &ExtVocabulary,
    file: &Path,
) -> Conversion {
    let mut edges = Vec::new();
    let mut diags = parsed.diagnostics.clone();
    for e in &parsed.entries {
        let (es, ds) = convert_entry(e, source, target, policy, ext, file);
        edges.extend(es);
        diags.extend(ds);
    }
    if policy.emit_inverses {
        let (inv, ds) = generate_inverses(&edges);
        edges.extend(inv);
        diags.extend(ds);
    }
    // stable: keeps per-line emission order
    diags.sort_by_key(|d| d.location.as_ref().map_or(0, |l| l.line));
    Conversion {
        edges,
        diagnostics: diags,
    }
}
