use std::collections::HashMap;

use indexmap::IndexSet;

use super::term::{Iri, Subject, Term, Triple};

/// In-memory triple set with subject, predicate and object indexes.
///
/// Triples are addressed internally by their insertion slot in an
/// `IndexSet`; the indexes hold slot numbers. Nothing is ever removed, so
/// slots stay valid for the life of the graph.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    triples: IndexSet<Triple>,
    by_subject: HashMap<Subject, Vec<u32>>,
    by_predicate: HashMap<Iri, Vec<u32>>,
    by_object: HashMap<Term, Vec<u32>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Inserts a triple; returns `false` if it was already present.
    pub fn insert(&mut self, t: Triple) -> bool {
        let (slot, fresh) = self.triples.insert_full(t);
        if !fresh {
            return false;
        }
        let t = &self.triples[slot];
        let slot = u32::try_from(slot).expect("graph exceeds u32 slots");
        self.by_subject.entry(t.subject.clone()).or_default().push(slot);
        self.by_predicate
            .entry(t.predicate.clone())
            .or_default()
            .push(slot);
        self.by_object.entry(t.object.clone()).or_default().push(slot);
        true
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.triples.contains(t)
    }

    /// Inserts every triple of `other`.
    pub fn extend_from(&mut self, other: &Graph) {
        for t in other.triples.iter() {
            self.insert(t.clone());
        }
    }

    /// All triples in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        let mut all: Vec<&Triple> = self.triples.iter().collect();
        all.sort_unstable();
        all.into_iter()
    }

    /// All triples in insertion order; cheaper than [`Graph::iter`].
    pub fn iter_unordered(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    /// Triples matching every bound position, in canonical order.
    pub fn matching(
        &self,
        s: Option<&Subject>,
        p: Option<&Iri>,
        o: Option<&Term>,
    ) -> Vec<&Triple> {
        let lists = [
            s.map(|s| self.by_subject.get(s)),
            p.map(|p| self.by_predicate.get(p)),
            o.map(|o| self.by_object.get(o)),
        ];
        let candidates: Option<&[u32]> = lists
            .into_iter()
            .flatten()
            .map(|l| l.map(Vec::as_slice).unwrap_or(&[]))
            .min_by_key(|l| l.len());

        let mut out: Vec<&Triple> = match candidates {
            None => return self.iter().collect(),
            Some(slots) => slots
                .iter()
                .map(|&i| &self.triples[i as usize])
                .filter(|t| {
                    s.map_or(true, |s| &t.subject == s)
                        && p.map_or(true, |p| &t.predicate == p)
                        && o.map_or(true, |o| &t.object == o)
                })
                .collect(),
        };
        out.sort_unstable();
        out
    }

    /// Objects of `(s, p, ?)`, in canonical order.
    pub fn objects<'a>(&'a self, s: &Subject, p: &Iri) -> impl Iterator<Item = &'a Term> + 'a {
        self.matching(Some(s), Some(p), None)
            .into_iter()
            .map(|t| &t.object)
    }

    /// Subjects of `(?, p, o)`, in canonical order.
    pub fn subjects<'a>(&'a self, p: &Iri, o: &Term) -> impl Iterator<Item = &'a Subject> + 'a {
        self.matching(None, Some(p), Some(o))
            .into_iter()
            .map(|t| &t.subject)
    }

    /// True if `s` appears as subject of at least one triple.
    pub fn has_subject(&self, s: &Subject) -> bool {
        self.by_subject.get(s).is_some_and(|v| !v.is_empty())
    }

    /// Distinct subjects, unordered.
    pub fn subject_keys(&self) -> impl Iterator<Item = &Subject> {
        self.by_subject.keys()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.triples.iter().all(|t| other.contains(t))
    }
}

impl Eq for Graph {}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        for t in iter {
            g.insert(t);
        }
        g
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        for t in iter {
            self.insert(t);
        }
    }
}
