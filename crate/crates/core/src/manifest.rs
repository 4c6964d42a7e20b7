//! JSON deployment manifest.
//!
//! ```json
//! {
//!   "extension_namespace": "http://example.org/skos-ext#",
//!   "thesauri": [
//!     { "id": "thesoz", "title": "Thesaurus Sozialwissenschaften",
//!       "base_iri": "http://lod.gesis.org/thesoz/", "file": "thesoz.nt",
//!       "default_lang": "de",
//!       "prefixes": { "thesoz": "http://lod.gesis.org/thesoz/" } }
//!   ],
//!   "mappings": [ { "id": "thesoz-stw", "file": "thesoz-stw.nt" } ],
//!   "service": { "listen": "127.0.0.1:8080", "base_url": "", "result_limit": 10000 }
//! }
//! ```
//!
//! Relative file paths resolve against the manifest's directory. Every key
//! except `thesauri[].id/title/base_iri/file` and `mappings[].id/file` is optional.

use std::fs;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::Deserialize;
use thiserror::Error;

use crate::crosswalk::ExtVocabulary;
use crate::diagnostic::{Code, Diagnostic};
use crate::rdf::{normalize_lang, parse_ntriples, Graph, Iri, PrefixMap};
use crate::skos::resolve_xl_labels;
use crate::store::{MultiStore, StoreError, ThesaurusRegistration};

pub const DEFAULT_RESULT_LIMIT: usize = 10_000;
pub const DEFAULT_LISTEN: &str = "127.0.0.1:8080";

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid manifest {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("manifest: {0}")]
    Invalid(String),
    #[error(transparent)]
    Store(#[from] StoreError),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThesaurusEntry {
    pub id: String,
    pub title: String,
    pub base_iri: String,
    pub file: PathBuf,
    #[serde(default)]
    pub default_lang: Option<String>,
    #[serde(default)]
    pub prefixes: IndexMap<String, String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MappingEntry {
    pub id: String,
    pub file: PathBuf,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ServiceSection {
    #[serde(default)]
    pub listen: Option<String>,
    #[serde(default)]
    pub base_url: Option<String>,
    #[serde(default)]
    pub result_limit: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default)]
    pub extension_namespace: Option<String>,
    #[serde(default)]
    pub thesauri: Vec<ThesaurusEntry>,
    #[serde(default)]
    pub mappings: Vec<MappingEntry>,
    #[serde(default)]
    pub service: ServiceSection,
    #[serde(skip)]
    base_dir: PathBuf,
}

/// A built store plus everything worth reporting about the inputs.
#[derive(Debug)]
pub struct LoadedStore {
    pub store: MultiStore,
    /// Built-in prefixes followed by every manifest prefix.
    pub prefixes: PrefixMap,
    pub diagnostics: Vec<Diagnostic>,
}

fn read(path: &Path) -> Result<Vec<u8>, ManifestError> {
    fs::read(path).map_err(|source| ManifestError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads an N-Triples file, turning syntax errors into `NT_SYNTAX`.
pub fn read_ntriples(path: &Path) -> Result<(Graph, Vec<Diagnostic>), ManifestError> {
    let bytes = read(path)?;
    let (g, errs) = parse_ntriples(&bytes);
    let diags = errs
        .into_iter()
        .map(|e| Diagnostic::new(Code::NtSyntax, e.reason).at(path, e.line))
        .collect();
    Ok((g, diags))
}

impl Manifest {
    pub fn from_path(path: &Path) -> Result<Self, ManifestError> {
        let bytes = read(path)?;
        let mut m: Manifest =
            serde_json::from_slice(&bytes).map_err(|source| ManifestError::Json {
                path: path.to_path_buf(),
                source,
            })?;
        m.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(m)
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn result_limit(&self) -> usize {
        self.service.result_limit.unwrap_or(DEFAULT_RESULT_LIMIT)
    }

    pub fn extension(&self) -> Result<ExtVocabulary, ManifestError> {
        match &self.extension_namespace {
            None => Ok(ExtVocabulary::default()),
            Some(ns) => Iri::new(ns)
                .map(ExtVocabulary::new)
                .map_err(|e| ManifestError::Invalid(format!("extension_namespace: {e}"))),
        }
    }

    /// Loads every file, resolves SKOS-XL labels in each thesaurus, registers
    /// thesauri and then mapping graphs.
    pub fn build_store(&self) -> Result<LoadedStore, ManifestError> {
        let mut store = MultiStore::with_extension(self.extension()?);
        let mut prefixes = PrefixMap::builtin();
        let mut diagnostics = Vec::new();

        for t in &self.thesauri {
            let mut reg_prefixes = PrefixMap::new();
            for (p, ns) in &t.prefixes {
                let ns = Iri::new(ns).map_err(|e| {
                    ManifestError::Invalid(format!("thesaurus {:?} prefix {p:?}: {e}", t.id))
                })?;
                reg_prefixes
                    .insert(p, ns)
                    .map_err(|e| ManifestError::Invalid(format!("thesaurus {:?}: {e}", t.id)))?;
            }
            let default_lang = t
                .default_lang
                .as_deref()
                .map(normalize_lang)
                .transpose()
                .map_err(|e| ManifestError::Invalid(format!("thesaurus {:?}: {e}", t.id)))?;

            let path = self.resolve(&t.file);
            let (raw, mut diags) = read_ntriples(&path)?;
            let (graph, xl) = resolve_xl_labels(&raw);
            diags.extend(xl.into_iter().map(|d| d.at(&path, 0)));
            diagnostics.extend(diags);

            prefixes.merge_missing(&reg_prefixes);
            let reg = ThesaurusRegistration::new(&t.id, &t.title, &t.base_iri, graph)?
                .with_prefixes(reg_prefixes)
                .with_default_lang(default_lang);
            store.register(reg)?;
        }

        for m in &self.mappings {
            let path = self.resolve(&m.file);
            let (g, diags) = read_ntriples(&path)?;
            diagnostics.extend(diags);
            let load = store.load_mappings(&m.id, g)?;
            diagnostics.extend(load.into_iter().map(|d| d.at(&path, 0)));
        }

        Ok(LoadedStore {
            store,
            prefixes,
            diagnostics,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_manifest_builds_empty_store() {
        let m: Manifest = serde_json::from_str("{}").unwrap();
        let loaded = m.build_store().unwrap();
        assert!(loaded.store.registrations().is_empty());
        assert!(loaded.diagnostics.is_empty());
        assert_eq!(m.result_limit(), DEFAULT_RESULT_LIMIT);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(serde_json::from_str::<Manifest>(r#"{"thesaurus": []}"#).is_err());
    }

    #[test]
    fn bad_extension_namespace() {
        let m: Manifest = serde_json::from_str(r#"{"extension_namespace": "nope"}"#).unwrap();
        assert!(matches!(m.build_store(), Err(ManifestError::Invalid(_))));
    }

    #[test]
    fn missing_file_is_io_error() {
        let m: Manifest = serde_json::from_str(
            r#"{"thesauri":[{"id":"a","title":"A","base_iri":"http://a/","file":"/nonexistent/a.nt"}]}"#,
        )
        .unwrap();
        assert!(matches!(m.build_store(), Err(ManifestError::Io { .. })));
    }
}
