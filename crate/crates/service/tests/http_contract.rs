use std::path::{Path, PathBuf};

use http::{header, Method, Request, Response, StatusCode};
use proptest::prelude::*;
use skosbridge::manifest::Manifest;
use skosbridge::rdf::{parse_ntriples, Graph, Iri, Term};
use skosbridge::store::MultiStore;
use skosbridge_service::{describe, App, RouteConfig, Snapshot, TRUNCATED_HEADER};

const INFO_SCIENCE: &str = "<http://lod.gesis.org/thesoz/concept/10039068> <http://www.w3.org/2004/02/skos/core#exactMatch> <http://zbw.eu/stw/descriptor/11971-0> .";

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn manifest() -> Manifest {
    Manifest::from_path(&fixture("manifest.json")).unwrap()
}

fn app_with(m: &Manifest) -> App {
    let loaded = m.build_store().unwrap();
    App::new(RouteConfig::from_manifest(m), Snapshot::from(loaded)).unwrap()
}

fn app() -> App {
    app_with(&manifest())
}

fn get(app: &App, uri: &str, headers: &[(header::HeaderName, &str)]) -> Response<Vec<u8>> {
    request(app, Method::GET, uri, headers)
}

fn request(app: &App, method: Method, uri: &str, headers: &[(header::HeaderName, &str)]) -> Response<Vec<u8>> {
    let mut b = Request::builder().method(method).uri(uri);
    for (k, v) in headers {
        b = b.header(k, *v);
    }
    app.handle(&b.body(()).unwrap())
}

fn body(r: &Response<Vec<u8>>) -> &str {
    std::str::from_utf8(r.body()).unwrap()
}

fn content_type(r: &Response<Vec<u8>>) -> &str {
    r.headers()[header::CONTENT_TYPE].to_str().unwrap()
}

fn location(r: &Response<Vec<u8>>) -> &str {
    r.headers()[header::LOCATION].to_str().unwrap()
}

/// Every concept of every registration as (registration id, IRI).
fn all_concepts(store: &MultiStore) -> Vec<(String, Iri)> {
    let mut out = Vec::new();
    for r in store.registrations() {
        let ty = Iri::new("http://www.w3.org/1999/02/22-rdf-syntax-ns#type").unwrap();
        let concept = Term::Iri(Iri::new("http://www.w3.org/2004/02/skos/core#Concept").unwrap());
        for t in r.graph.matching(None, Some(&ty), Some(&concept)) {
            out.push((r.id.clone(), t.subject.as_iri().unwrap().clone()));
        }
    }
    out
}

fn local<'a>(store: &MultiStore, iri: &'a Iri) -> &'a str {
    let owner = store.owner(iri.as_str()).unwrap();
    &iri.as_str()[owner.base_iri.len()..]
}

#[test]
fn dereferencing_chain_for_every_concept() {
    let app = app();
    let snap = app.snapshot();
    let concepts = all_concepts(&snap.store);
    assert_eq!(concepts.len(), 12);
    let cases = [
        ("text/html", "page", "text/html"),
        ("text/turtle", "data", "text/turtle"),
        ("application/n-triples", "data", "application/n-triples"),
    ];
    for (reg, iri) in &concepts {
        let local = local(&snap.store, iri);
        for (accept, view, ct) in cases {
            let r = get(&app, &format!("/{reg}/resource/{local}"), &[(header::ACCEPT, accept)]);
            assert_eq!(r.status(), StatusCode::SEE_OTHER, "{iri} {accept}");
            assert_eq!(location(&r), format!("/{reg}/{view}/{local}"));
            assert_eq!(r.headers()[header::VARY], "Accept");
            let target = get(&app, location(&r), &[(header::ACCEPT, accept)]);
            assert_eq!(target.status(), StatusCode::OK);
            assert!(content_type(&target).starts_with(ct), "{}", content_type(&target));
        }
    }
}

#[test]
fn unacceptable_and_unknown() {
    let app = app();
    let r = get(&app, "/thesoz/resource/concept/10039068", &[(header::ACCEPT, "application/rdf+xml")]);
    assert_eq!(r.status(), StatusCode::NOT_ACCEPTABLE);
    for path in [
        "/thesoz/page/concept/99999",
        "/thesoz/resource/concept/99999",
        "/nope/page/x",
        "/thesoz/elsewhere/concept/10039068",
    ] {
        assert_eq!(get(&app, path, &[]).status(), StatusCode::NOT_FOUND, "{path}");
    }
    let r = request(&app, Method::POST, "/thesoz/page/concept/10039068", &[]);
    assert_eq!(r.status(), StatusCode::METHOD_NOT_ALLOWED);
    assert!(r.headers()[header::ALLOW].to_str().unwrap().contains("GET"));
}

#[test]
fn head_matches_get_without_body() {
    let app = app();
    let path = "/stw/data/descriptor/11971-0";
    let g = get(&app, path, &[]);
    let h = request(&app, Method::HEAD, path, &[]);
    assert_eq!(h.status(), g.status());
    assert_eq!(h.headers(), g.headers());
    assert!(h.body().is_empty());
    assert!(!g.body().is_empty());
}

#[test]
fn combined_page_shows_partner_from_other_thesaurus() {
    let app = app();
    let r = get(&app, "/thesoz/page/concept/10039068", &[]);
    assert_eq!(r.status(), StatusCode::OK);
    let html = body(&r);
    assert!(html.contains("<title>Informationswissenschaft | "), "{html}");
    let mappings = &html[html.find("id=\"mappings\"").unwrap()..];
    let mappings = &mappings[..mappings.find("</section>").unwrap()];
    assert!(mappings.contains("/stw/page/descriptor/11971-0"));
    assert!(mappings.contains(">Informationswissenschaft</a>"));
    assert!(mappings.contains("class=\"outbound\""));
    assert!(mappings.contains("class=\"inbound\""));
}

#[test]
fn page_without_mappings_says_so() {
    let app = app();
    let html = body(&get(&app, "/stw/page/descriptor/11330-0", &[])).to_string();
    assert!(html.contains("No mappings."));
}

#[test]
fn language_precedence() {
    let app = app();
    let path = "/thesoz/page/concept/10041806";
    let title = |r: Response<Vec<u8>>| {
        let h = body(&r).to_string();
        h[h.find("<title>").unwrap() + 7..h.find("</title>").unwrap()].to_string()
    };
    assert!(title(get(&app, path, &[])).starts_with("Frauenerwerbst"));
    assert!(title(get(&app, path, &[(header::ACCEPT_LANGUAGE, "en")])).starts_with("female employment"));
    let q = format!("{path}?lang=de");
    assert!(title(get(&app, &q, &[(header::ACCEPT_LANGUAGE, "en")])).starts_with("Frauenerwerbst"));
    assert!(title(get(&app, path, &[(header::ACCEPT_LANGUAGE, "fr")])).starts_with("Frauenerwerbst"));
    let r = get(&app, path, &[]);
    assert_eq!(r.headers()[header::VARY], "Accept, Accept-Language");
}

/// The data view parses back to exactly the description graph, and each
/// mapping partner in it also appears on the HTML page.
#[test]
fn data_view_agrees_with_description_and_page() {
    let app = app();
    let snap = app.snapshot();
    for (reg, iri) in all_concepts(&snap.store) {
        let local = local(&snap.store, &iri);
        let nt = get(&app, &format!("/{reg}/data/{local}?format=nt"), &[]);
        let (parsed, diags) = parse_ntriples(nt.body());
        assert!(diags.is_empty());
        let expected: Graph = describe(&snap.store, &iri, &[]).graph(&snap.store);
        assert_eq!(parsed, expected, "{iri}");

        let ttl = get(&app, &format!("/{reg}/data/{local}"), &[(header::ACCEPT, "text/turtle")]);
        assert!(content_type(&ttl).starts_with("text/turtle"));
        assert!(!ttl.body().is_empty());

        let html = body(&get(&app, &format!("/{reg}/page/{local}"), &[])).to_string();
        let mappings = &html[html.find("id=\"mappings\"").unwrap()..];
        for t in parsed.iter() {
            let p = t.predicate.as_str();
            if !p.starts_with("http://www.w3.org/2004/02/skos/core#") || !p.ends_with("Match") {
                continue;
            }
            let other = if t.subject.as_iri() == Some(&iri) {
                t.object.as_iri().unwrap().clone()
            } else {
                t.subject.as_iri().unwrap().clone()
            };
            let owner = snap.store.owner(other.as_str()).unwrap();
            let href = app.routes().url_for(skosbridge_service::routes::View::Page, owner, other.as_str()).unwrap();
            assert!(mappings.contains(&href), "{iri} page lacks {href}");
        }
    }
}

#[test]
fn n_triples_view_of_info_science_subject() {
    let app = app();
    let r = get(&app, "/thesoz/data/concept/10039068", &[(header::ACCEPT, "application/n-triples")]);
    assert!(body(&r).lines().any(|l| l == INFO_SCIENCE));
}

#[test]
fn query_route() {
    let app = app();
    let r = get(&app, "/query?s=thesoz:10039068&p=skos:exactMatch", &[]);
    assert_eq!(r.status(), StatusCode::OK);
    assert_eq!(body(&r).trim_end(), INFO_SCIENCE);
    assert!(r.headers().get(TRUNCATED_HEADER).is_none());

    assert_eq!(get(&app, "/query?s=nope:x", &[]).status(), StatusCode::BAD_REQUEST);
    assert_eq!(get(&app, "/query?o=%22open", &[]).status(), StatusCode::BAD_REQUEST);
    assert_eq!(get(&app, "/missing/query", &[]).status(), StatusCode::NOT_FOUND);

    // scoped queries see only the registration's own graph
    let scoped = get(&app, "/thesoz/query?p=skos:exactMatch", &[]);
    assert_eq!(scoped.status(), StatusCode::OK);
    assert!(scoped.body().is_empty());
    let merged = get(&app, "/query?p=skos:exactMatch", &[]);
    assert!(!merged.body().is_empty());
}

#[test]
fn query_truncation() {
    let mut m = manifest();
    m.service.result_limit = Some(3);
    let app = app_with(&m);
    let r = get(&app, "/query", &[]);
    assert_eq!(body(&r).lines().count(), 3);
    assert_eq!(r.headers()[TRUNCATED_HEADER], "true");
    let r = get(&app, "/query?s=thesoz:10039068&p=skos:exactMatch", &[]);
    assert!(r.headers().get(TRUNCATED_HEADER).is_none());
}

#[test]
fn replace_swaps_whole_snapshot() {
    let app = app();
    let before = app.snapshot();
    let mut m = manifest();
    m.mappings.clear();
    app.replace(Snapshot::from(m.build_store().unwrap())).unwrap();
    // the old snapshot is untouched for whoever still holds it
    assert!(!before.store.mappings_graph().is_empty());
    let html = body(&get(&app, "/thesoz/page/concept/10039068", &[])).to_string();
    assert!(html.contains("No mappings."));
}

#[test]
fn index_lists_registrations() {
    let app = app();
    let html = body(&get(&app, "/", &[])).to_string();
    assert!(html.contains("thesoz") && html.contains("stw"));
}

proptest! {
    #[test]
    fn negotiation_is_deterministic(
        parts in prop::collection::vec(
            (prop::sample::select(vec!["text/html", "text/turtle", "application/n-triples",
                                       "application/rdf+xml", "*/*", "text/*", "image/png"]),
             prop::option::of(0u8..=10)),
            0..5)
    ) {
        let accept: Vec<String> = parts
            .iter()
            .map(|(m, q)| match q {
                Some(q) => format!("{m};q={}", f32::from(*q) / 10.0),
                None => m.to_string(),
            })
            .collect();
        let accept = accept.join(", ");
        let app = app();
        let a = get(&app, "/stw/resource/descriptor/11971-0", &[(header::ACCEPT, &accept)]);
        let b = get(&app, "/stw/resource/descriptor/11971-0", &[(header::ACCEPT, &accept)]);
        prop_assert_eq!(a.status(), b.status());
        prop_assert_eq!(a.headers().get(header::LOCATION), b.headers().get(header::LOCATION));
        prop_assert!(a.status() == StatusCode::SEE_OTHER || a.status() == StatusCode::NOT_ACCEPTABLE);
    }
}
