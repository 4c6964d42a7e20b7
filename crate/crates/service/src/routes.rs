//! URL layout and the path/IRI correspondence.
//!
//! A registration with base `http://lod.gesis.org/thesoz/` and path segment
//! `thesoz` maps `http://lod.gesis.org/thesoz/concept/1` to
//! `/thesoz/resource/concept/1`, `/thesoz/page/concept/1` and
//! `/thesoz/data/concept/1`. Local parts are percent-encoded.

use std::collections::{BTreeMap, BTreeSet};

use percent_encoding::{percent_decode_str, utf8_percent_encode, AsciiSet, CONTROLS};
use skosbridge::manifest::{Manifest, DEFAULT_LISTEN, DEFAULT_RESULT_LIMIT};
use skosbridge::store::{MultiStore, ThesaurusRegistration};
use thiserror::Error;

/// Characters escaped inside a path built from an IRI local part. `/` is
/// kept so nested local names stay readable.
const PATH: &AsciiSet = &CONTROLS
    .add(b' ')
    .add(b'"')
    .add(b'#')
    .add(b'%')
    .add(b'<')
    .add(b'>')
    .add(b'?')
    .add(b'`')
    .add(b'{')
    .add(b'}')
    .add(b'|')
    .add(b'\\')
    .add(b'^');

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("path template {0:?} must contain exactly one {{id}}")]
    Placeholder(String),
    #[error("path template {0:?} must start with '/'")]
    Relative(String),
    #[error("resource, page and data templates must differ")]
    NotDistinct,
    #[error("path segment {0:?} for registration {1:?} is empty or contains '/'")]
    BadSegment(String, String),
    #[error("path segment {0:?} is used by two registrations")]
    DuplicateSegment(String),
    #[error("path segment {0:?} names no registration")]
    UnknownRegistration(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum View {
    Resource,
    Page,
    Data,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RouteConfig {
    pub listen: String,
    /// Prefix for absolute links and `Location` headers; empty means
    /// host-relative paths.
    pub base_url: String,
    pub result_limit: usize,
    pub resource_template: String,
    pub page_template: String,
    pub data_template: String,
    /// Registration id to path segment; ids not listed use themselves.
    pub segments: BTreeMap<String, String>,
}

impl Default for RouteConfig {
    fn default() -> Self {
        RouteConfig {
            listen: DEFAULT_LISTEN.to_string(),
            base_url: String::new(),
            result_limit: DEFAULT_RESULT_LIMIT,
            resource_template: "/{id}/resource".to_string(),
            page_template: "/{id}/page".to_string(),
            data_template: "/{id}/data".to_string(),
            segments: BTreeMap::new(),
        }
    }
}

/// A recognised request path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Route {
    Index,
    Query { scope: Option<String> },
    /// `registration` is the registration id; `local` is percent-decoded.
    Concept {
        view: View,
        registration: String,
        local: String,
    },
}

impl RouteConfig {
    pub fn from_manifest(m: &Manifest) -> Self {
        let d = RouteConfig::default();
        RouteConfig {
            listen: m.service.listen.clone().unwrap_or(d.listen),
            base_url: m.service.base_url.clone().unwrap_or(d.base_url),
            result_limit: m.result_limit(),
            ..d
        }
    }

    fn templates(&self) -> [(View, &str); 3] {
        [
            (View::Resource, self.resource_template.as_str()),
            (View::Page, self.page_template.as_str()),
            (View::Data, self.data_template.as_str()),
        ]
    }

    /// Checks the template invariants, and segment uniqueness against `store`.
    pub fn validate(&self, store: &MultiStore) -> Result<(), ConfigError> {
        for (_, t) in self.templates() {
            if t.matches("{id}").count() != 1 {
                return Err(ConfigError::Placeholder(t.to_string()));
            }
            if !t.starts_with('/') {
                return Err(ConfigError::Relative(t.to_string()));
            }
        }
        let distinct: BTreeSet<&str> = self.templates().iter().map(|(_, t)| *t).collect();
        if distinct.len() != 3 {
            return Err(ConfigError::NotDistinct);
        }
        for id in self.segments.keys() {
            if store.registration(id).is_none() {
                return Err(ConfigError::UnknownRegistration(id.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for r in store.registrations() {
            let seg = self.segment(&r.id);
            if seg.is_empty() || seg.contains('/') {
                return Err(ConfigError::BadSegment(seg.to_string(), r.id.clone()));
            }
            if !seen.insert(seg) {
                return Err(ConfigError::DuplicateSegment(seg.to_string()));
            }
        }
        Ok(())
    }

    pub fn segment<'a>(&'a self, id: &'a str) -> &'a str {
        self.segments.get(id).map_or(id, String::as_str)
    }

    fn prefix(&self, view: View, segment: &str) -> String {
        let t = match view {
            View::Resource => &self.resource_template,
            View::Page => &self.page_template,
            View::Data => &self.data_template,
        };
        format!("{}/", t.replace("{id}", segment))
    }

    /// Host-relative path of `view` for an IRI owned by `reg`.
    pub fn path_for(&self, view: View, reg: &ThesaurusRegistration, iri: &str) -> Option<String> {
        let local = reg.local_part(iri)?;
        Some(format!(
            "{}{}",
            self.prefix(view, self.segment(&reg.id)),
            utf8_percent_encode(local, PATH)
        ))
    }

    /// Like [`RouteConfig::path_for`] but prefixed with the external base URL.
    pub fn url_for(&self, view: View, reg: &ThesaurusRegistration, iri: &str) -> Option<String> {
        self.path_for(view, reg, iri).map(|p| self.absolute(&p))
    }

    pub fn absolute(&self, path: &str) -> String {
        format!("{}{path}", self.base_url.trim_end_matches('/'))
    }

    /// Resolves a raw (still percent-encoded) request path.
    pub fn route(&self, store: &MultiStore, raw_path: &str) -> Option<Route> {
        if raw_path == "/" || raw_path.is_empty() {
            return Some(Route::Index);
        }
        if raw_path == "/query" {
            return Some(Route::Query { scope: None });
        }
        for r in store.registrations() {
            let seg = self.segment(&r.id);
            if raw_path == format!("/{seg}/query") {
                return Some(Route::Query {
                    scope: Some(r.id.clone()),
                });
            }
            for (view, _) in self.templates() {
                if let Some(rest) = raw_path.strip_prefix(&self.prefix(view, seg)) {
                    let local = percent_decode_str(rest).decode_utf8().ok()?;
                    return Some(Route::Concept {
                        view,
                        registration: r.id.clone(),
                        local: local.into_owned(),
                    });
                }
            }
        }
        None
    }
}
