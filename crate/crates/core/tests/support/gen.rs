//! Seeded random graph generator shared by property and acceptance tests.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use skosbridge::rdf::{BlankNode, Graph, Iri, Literal, Subject, Term, Triple};

/// Characters that exercise every literal escape path: ECHARs, other C0
/// controls, DEL, quotes, non-ASCII from several planes.
const LITERAL_CHARS: &[char] = &[
    'a', 'Z', '0', ' ', '\\', '"', '\'', '\n', '\r', '\t', '\u{8}', '\u{c}', '\u{1}', '\u{1f}',
    '\u{7f}', 'ä', 'ß', 'é', '€', '中', '\u{10348}', '😀', '<', '>', '{', '#', '.', ';', ',',
];

/// IRI characters; `{ } | ^ ` \` force `\u` escapes in N-Triples output.
const IRI_CHARS_ESCAPED: &[char] = &['a', 'b', '0', '-', '_', '.', '~', 'ü', '{', '}', '|', '^', '`', '\\', '%'];
const IRI_CHARS_PLAIN: &[char] = &['a', 'b', 'c', '0', '9', '-', '_', 'ü', 'ß'];

#[derive(Debug, Clone, Copy)]
pub struct GenConfig {
    /// Include IRI characters that are only legal in escaped form.
    pub escaped_iris: bool,
    pub blank_nodes: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            escaped_iris: true,
            blank_nodes: true,
        }
    }
}

pub struct TermGen {
    rng: StdRng,
    cfg: GenConfig,
    iris: Vec<Iri>,
    predicates: Vec<Iri>,
}

fn random_string(rng: &mut StdRng, alphabet: &[char], max: usize) -> String {
    let n = rng.gen_range(0..=max);
    (0..n).map(|_| *alphabet.choose(rng).unwrap()).collect()
}

impl TermGen {
    pub fn new(seed: u64, cfg: GenConfig) -> Self {
        let mut rng = StdRng::seed_from_u64(seed);
        let alphabet = if cfg.escaped_iris {
            IRI_CHARS_ESCAPED
        } else {
            IRI_CHARS_PLAIN
        };
        let bases = [
            "http://lod.gesis.org/thesoz/concept/",
            "http://zbw.eu/stw/descriptor/",
            "http://example.org/x#",
            "urn:test:",
        ];
        let iris = (0..60)
            .map(|i| {
                let base = bases[i % bases.len()];
                let local = random_string(&mut rng, alphabet, 6);
                Iri::new(format!("{base}{i}{local}")).unwrap()
            })
            .collect();
        let predicates = [
            "http://www.w3.org/1999/02/22-rdf-syntax-ns#type",
            "http://www.w3.org/2004/02/skos/core#prefLabel",
            "http://www.w3.org/2004/02/skos/core#exactMatch",
            "http://www.w3.org/2004/02/skos/core#broader",
            "http://example.org/p/value",
            "http://example.org/p/other",
        ]
        .iter()
        .map(|p| Iri::new(p).unwrap())
        .collect();
        TermGen {
            rng,
            cfg,
            iris,
            predicates,
        }
    }

    pub fn rng(&mut self) -> &mut StdRng {
        &mut self.rng
    }

    pub fn iri(&mut self) -> Iri {
        self.iris.choose(&mut self.rng).unwrap().clone()
    }

    pub fn predicate(&mut self) -> Iri {
        self.predicates.choose(&mut self.rng).unwrap().clone()
    }

    pub fn blank(&mut self) -> BlankNode {
        BlankNode::new(format!("b{}", self.rng.gen_range(0..20))).unwrap()
    }

    pub fn literal(&mut self) -> Literal {
        let lexical = random_string(&mut self.rng, LITERAL_CHARS, 12);
        match self.rng.gen_range(0..3) {
            0 => Literal::plain(lexical),
            1 => {
                let tag = ["de", "en", "en-gb", "fr", "zh-hans"].choose(&mut self.rng).unwrap();
                Literal::lang(lexical, tag).unwrap()
            }
            _ => {
                let dt = [
                    "http://www.w3.org/2001/XMLSchema#integer",
                    "http://www.w3.org/2001/XMLSchema#date",
                    "http://example.org/dt",
                ]
                .choose(&mut self.rng)
                .unwrap();
                Literal::typed(lexical, Iri::new(dt).unwrap())
            }
        }
    }

    pub fn subject(&mut self) -> Subject {
        if self.cfg.blank_nodes && self.rng.gen_bool(0.15) {
            Subject::Blank(self.blank())
        } else {
            Subject::Iri(self.iri())
        }
    }

    pub fn object(&mut self) -> Term {
        match self.rng.gen_range(0..10) {
            0..=3 => Term::Iri(self.iri()),
            4 if self.cfg.blank_nodes => Term::Blank(self.blank()),
            _ => Term::Literal(self.literal()),
        }
    }

    pub fn triple(&mut self) -> Triple {
        Triple::new(self.subject(), self.predicate(), self.object())
    }

    pub fn graph(&mut self, n: usize) -> Graph {
        (0..n).map(|_| self.triple()).collect()
    }
}

pub fn random_graph(seed: u64, n: usize) -> Graph {
    TermGen::new(seed, GenConfig::default()).graph(n)
}
