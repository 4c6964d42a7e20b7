//! Transport-independent request handling: `http::Request` in,
//! `http::Response<Vec<u8>>` out.

use std::sync::{Arc, RwLock};

use http::header::{ACCEPT, ACCEPT_LANGUAGE, ALLOW, CONTENT_TYPE, LOCATION, VARY};
use http::{HeaderValue, Method, Request, Response, StatusCode};
use percent_encoding::percent_decode_str;
use skosbridge::manifest::LoadedStore;
use skosbridge::rdf::{normalize_lang, serialize_ntriples, serialize_triples, serialize_turtle, Iri, PrefixMap};
use skosbridge::store::MultiStore;

use crate::conneg::{accept_languages, negotiate, Format};
use crate::describe::describe;
use crate::html::{render_index, render_page};
use crate::query::{run_query, Pattern, QueryError};
use crate::routes::{ConfigError, Route, RouteConfig, View};

/// Header set on query responses whose result hit the limit.
pub const TRUNCATED_HEADER: &str = "truncated";

/// One immutable store version with the prefixes used to read CURIEs.
#[derive(Debug)]
pub struct Snapshot {
    pub store: MultiStore,
    pub prefixes: PrefixMap,
}

impl From<LoadedStore> for Snapshot {
    /// Adds `ext:` for the combination vocabulary unless the prefix is taken.
    fn from(l: LoadedStore) -> Self {
        let mut prefixes = l.prefixes;
        if prefixes.get("ext").is_none() {
            let ns = l.store.extension().namespace().clone();
            prefixes.insert("ext", ns).expect("valid prefix name");
        }
        Snapshot {
            store: l.store,
            prefixes,
        }
    }
}

/// Shared service state. Requests take one [`Snapshot`] and use it
/// throughout; [`App::replace`] swaps in a new one atomically.
#[derive(Debug)]
pub struct App {
    routes: RouteConfig,
    current: RwLock<Arc<Snapshot>>,
}

type Resp = Response<Vec<u8>>;

fn response(status: StatusCode, content_type: Option<&str>, body: Vec<u8>) -> Resp {
    let mut r = Response::new(body);
    *r.status_mut() = status;
    if let Some(ct) = content_type {
        r.headers_mut()
            .insert(CONTENT_TYPE, HeaderValue::from_str(ct).expect("content type"));
    }
    r
}

fn text(status: StatusCode, msg: impl Into<String>) -> Resp {
    let mut body = msg.into();
    body.push('\n');
    response(status, Some("text/plain; charset=utf-8"), body.into_bytes())
}

fn with_vary(mut r: Resp, vary: &'static str) -> Resp {
    r.headers_mut().insert(VARY, HeaderValue::from_static(vary));
    r
}

fn header<'a>(req: &'a Request<()>, name: http::header::HeaderName) -> Option<&'a str> {
    req.headers().get(name).and_then(|v| v.to_str().ok())
}

/// Decoded `application/x-www-form-urlencoded` pairs; `None` on bad UTF-8.
fn query_params(req: &Request<()>) -> Option<Vec<(String, String)>> {
    let Some(q) = req.uri().query() else {
        return Some(Vec::new());
    };
    let decode = |s: &str| {
        percent_decode_str(&s.replace('+', " "))
            .decode_utf8()
            .ok()
            .map(|c| c.into_owned())
    };
    q.split('&')
        .filter(|kv| !kv.is_empty())
        .map(|kv| {
            let (k, v) = kv.split_once('=').unwrap_or((kv, ""));
            Some((decode(k)?, decode(v)?))
        })
        .collect()
}

fn param<'a>(params: &'a [(String, String)], key: &str) -> Option<&'a str> {
    params
        .iter()
        .rev()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
}

impl App {
    pub fn new(routes: RouteConfig, snapshot: Snapshot) -> Result<Self, ConfigError> {
        routes.validate(&snapshot.store)?;
        Ok(App {
            routes,
            current: RwLock::new(Arc::new(snapshot)),
        })
    }

    pub fn routes(&self) -> &RouteConfig {
        &self.routes
    }

    pub fn snapshot(&self) -> Arc<Snapshot> {
        Arc::clone(&self.current.read().expect("store lock"))
    }

    /// Installs a new store version; in-flight requests keep the old one.
    pub fn replace(&self, snapshot: Snapshot) -> Result<(), ConfigError> {
        self.routes.validate(&snapshot.store)?;
        *self.current.write().expect("store lock") = Arc::new(snapshot);
        Ok(())
    }

    pub fn handle(&self, req: &Request<()>) -> Resp {
        let head = req.method() == Method::HEAD;
        if req.method() != Method::GET && !head {
            let mut r = text(StatusCode::METHOD_NOT_ALLOWED, "only GET and HEAD are supported");
            r.headers_mut().insert(ALLOW, HeaderValue::from_static("GET, HEAD"));
            return r;
        }
        let snap = self.snapshot();
        let mut r = self.dispatch(&snap, req);
        if head {
            r.body_mut().clear();
        }
        r
    }

    fn dispatch(&self, snap: &Snapshot, req: &Request<()>) -> Resp {
        let Some(params) = query_params(req) else {
            return text(StatusCode::BAD_REQUEST, "query string is not valid UTF-8");
        };
        match self.routes.route(&snap.store, req.uri().path()) {
            None => text(StatusCode::NOT_FOUND, "not found"),
            Some(Route::Index) => response(
                StatusCode::OK,
                Some(Format::Html.content_type()),
                render_index(&snap.store, &self.routes).into_bytes(),
            ),
            Some(Route::Query { scope }) => self.query(snap, scope.as_deref(), &params),
            Some(Route::Concept {
                view,
                registration,
                local,
            }) => self.concept(snap, req, &params, view, &registration, &local),
        }
    }

    fn query(&self, snap: &Snapshot, scope: Option<&str>, params: &[(String, String)]) -> Resp {
        let pattern = match Pattern::parse(
            param(params, "s"),
            param(params, "p"),
            param(params, "o"),
            &snap.prefixes,
        ) {
            Ok(p) => p,
            Err(e) => return text(StatusCode::BAD_REQUEST, e.to_string()),
        };
        match run_query(&snap.store, scope, &pattern, self.routes.result_limit) {
            Ok(result) => {
                let mut r = response(
                    StatusCode::OK,
                    Some(Format::NTriples.content_type()),
                    serialize_triples(result.triples.iter().copied()),
                );
                if result.truncated {
                    r.headers_mut()
                        .insert(TRUNCATED_HEADER, HeaderValue::from_static("true"));
                }
                r
            }
            Err(e @ QueryError::UnknownScope(_)) => text(StatusCode::NOT_FOUND, e.to_string()),
            Err(e) => text(StatusCode::BAD_REQUEST, e.to_string()),
        }
    }

    /// Language preference: `?lang=`, then `Accept-Language`, then the
    /// registration default. Labels fall back to any language after that.
    fn languages(&self, req: &Request<()>, params: &[(String, String)], default: Option<&str>) -> Vec<String> {
        let mut langs = Vec::new();
        if let Some(l) = param(params, "lang").and_then(|l| normalize_lang(l).ok()) {
            langs.push(l);
        }
        langs.extend(accept_languages(header(req, ACCEPT_LANGUAGE)));
        langs.extend(default.map(str::to_string));
        langs
    }

    fn concept(
        &self,
        snap: &Snapshot,
        req: &Request<()>,
        params: &[(String, String)],
        view: View,
        registration: &str,
        local: &str,
    ) -> Resp {
        let store = &snap.store;
        let reg = store.registration(registration).expect("routed registration");
        let Ok(iri) = Iri::new(format!("{}{local}", reg.base_iri)) else {
            return text(StatusCode::NOT_FOUND, "not a valid IRI");
        };
        let langs = self.languages(req, params, reg.default_lang.as_deref());
        let desc = describe(store, &iri, &langs);
        let vary = match view {
            View::Page => "Accept, Accept-Language",
            _ => "Accept",
        };
        if desc.is_empty() {
            return with_vary(text(StatusCode::NOT_FOUND, format!("{iri} is not described here")), vary);
        }

        let r = match view {
            View::Resource => match negotiate(header(req, ACCEPT), &Format::ALL) {
                None => text(
                    StatusCode::NOT_ACCEPTABLE,
                    "available: text/html, text/turtle, application/n-triples",
                ),
                Some(f) => {
                    let target = if f.is_rdf() { View::Data } else { View::Page };
                    let url = self
                        .routes
                        .url_for(target, reg, iri.as_str())
                        .expect("owned IRI");
                    let mut r = text(StatusCode::SEE_OTHER, format!("see {url}"));
                    r.headers_mut()
                        .insert(LOCATION, HeaderValue::from_str(&url).expect("encoded URL"));
                    r
                }
            },
            View::Page => response(
                StatusCode::OK,
                Some(Format::Html.content_type()),
                render_page(store, &self.routes, &snap.prefixes, reg, &desc, &langs).into_bytes(),
            ),
            View::Data => {
                let format = match param(params, "format") {
                    Some("nt") => Format::NTriples,
                    Some("ttl") => Format::Turtle,
                    Some(other) => {
                        return text(StatusCode::BAD_REQUEST, format!("unknown format {other:?}"))
                    }
                    None => negotiate(header(req, ACCEPT), &[Format::Turtle, Format::NTriples])
                        .unwrap_or(Format::Turtle),
                };
                let g = desc.graph(store);
                let body = match format {
                    Format::NTriples => serialize_ntriples(&g),
                    _ => {
                        let mut prefixes = reg.prefixes.clone();
                        prefixes.merge_missing(&snap.prefixes);
                        serialize_turtle(&g, &prefixes)
                    }
                };
                response(StatusCode::OK, Some(format.content_type()), body)
            }
        };
        with_vary(r, vary)
    }
}
