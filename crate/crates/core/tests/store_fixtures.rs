use std::path::{Path, PathBuf};

use proptest::prelude::*;
use skosbridge::crosswalk::{
    convert_crosswalk, edges_to_graph, generate_inverses, graph_to_edges, parse_crosswalk,
    resolve_term, ConversionPolicy, ExtVocabulary, Resolution, SchemeView, SkosMapping,
};
use skosbridge::diagnostic::Code;
use skosbridge::manifest::{read_ntriples, Manifest};
use skosbridge::rdf::{parse_ntriples, serialize_ntriples, Graph, Iri};
use skosbridge::skos::{extract_concept, extract_schemes, resolve_xl_labels, validate_skos};
use skosbridge::store::{Direction, MultiStore, Partner, StoreError, ThesaurusRegistration};

const INFO_SCIENCE: &str = "<http://lod.gesis.org/thesoz/concept/10039068> <http://www.w3.org/2004/02/skos/core#exactMatch> <http://zbw.eu/stw/descriptor/11971-0> .\n";
const THESOZ_BASE: &str = "http://lod.gesis.org/thesoz/";
const STW_BASE: &str = "http://zbw.eu/stw/";

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn thesaurus(name: &str) -> Graph {
    let (raw, diags) = read_ntriples(&fixture(name)).unwrap();
    assert!(diags.is_empty(), "{diags:?}");
    let (g, xl) = resolve_xl_labels(&raw);
    assert!(xl.is_empty(), "{xl:?}");
    g
}

fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

fn two_thesauri() -> MultiStore {
    let mut s = MultiStore::new();
    s.register(ThesaurusRegistration::new("thesoz", "TheSoz", THESOZ_BASE, thesaurus("thesoz.nt")).unwrap())
        .unwrap();
    s.register(ThesaurusRegistration::new("stw", "STW", STW_BASE, thesaurus("stw.nt")).unwrap())
        .unwrap();
    s
}

fn info_science() -> Graph {
    parse_ntriples(INFO_SCIENCE.as_bytes()).0
}

#[test]
fn thesoz_fixture_shape() {
    let g = thesaurus("thesoz.nt");
    let (schemes, diags) = extract_schemes(&g);
    assert!(diags.is_empty());
    assert_eq!(schemes.len(), 1);
    assert_eq!(schemes[0].concepts.len(), 5);
    let c = extract_concept(&g, &iri("http://lod.gesis.org/thesoz/concept/10039068")).unwrap();
    assert!(c.pref_labels.iter().any(|l| l.lexical() == "Informationswissenschaft" && l.language() == Some("de")));
    assert!(validate_skos(&g).is_empty());
    assert!(validate_skos(&thesaurus("stw.nt")).is_empty());
}

#[test]
fn info_science_subject_resolves_preferred() {
    let view = SchemeView::build(&thesaurus("thesoz.nt"));
    assert_eq!(
        resolve_term(&view, "Informationswissenschaft", "de"),
        Resolution::Preferred(iri("http://lod.gesis.org/thesoz/concept/10039068"))
    );
}

#[test]
fn registration_rules() {
    let mut s = two_thesauri();
    assert_eq!(s.registrations().len(), 2);
    let dup = ThesaurusRegistration::new("stw", "x", "http://other.org/", Graph::new()).unwrap();
    assert!(matches!(s.register(dup), Err(StoreError::DuplicateId(_))));
    let nested = ThesaurusRegistration::new("n", "x", "http://lod.gesis.org/thesoz/concept/", Graph::new()).unwrap();
    assert!(matches!(s.register(nested), Err(StoreError::OverlappingBase { .. })));
    let outer = ThesaurusRegistration::new("o", "x", "http://zbw.eu/", Graph::new()).unwrap();
    assert!(matches!(s.register(outer), Err(StoreError::OverlappingBase { .. })));
}

#[test]
fn load_info_science_mapping() {
    let mut s = two_thesauri();
    assert!(s.load_mappings("l1", info_science()).unwrap().is_empty());
    assert!(s.load_mappings("empty", Graph::new()).unwrap().is_empty());

    let third = parse_ntriples(
        b"<http://lod.gesis.org/thesoz/concept/10039068> <http://www.w3.org/2004/02/skos/core#closeMatch> <http://iblk.example.org/c/1> .\n",
    )
    .0;
    let d = s.load_mappings("third", third).unwrap();
    assert_eq!(d.iter().map(|d| d.code).collect::<Vec<_>>(), [Code::DanglingMappingTarget]);
    assert!(s.mappings_graph().len() == 2, "dangling mapping retained");
}

#[test]
fn lookup_and_mappings() {
    let mut s = two_thesauri();
    s.load_mappings("l1", info_science()).unwrap();
    let c = iri("http://lod.gesis.org/thesoz/concept/10039068");
    let hit = s.lookup(&c).unwrap();
    assert_eq!(hit.registration.id, "thesoz");
    assert!(hit.concept.is_some());
    let scheme = s.lookup(&iri("http://lod.gesis.org/thesoz/scheme")).unwrap();
    assert!(scheme.concept.is_none());
    assert!(s.lookup(&iri("http://nowhere.org/x")).is_none());

    let de = ["de".to_string()];
    let out = s.mappings_for(&c, &de);
    assert_eq!(out.len(), 1);
    assert_eq!(out[0].direction, Direction::Outbound);
    assert_eq!(out[0].property, SkosMapping::Exact.iri());
    match &out[0].partner {
        Partner::Concept(p) => {
            assert_eq!(p.iri.as_str(), "http://zbw.eu/stw/descriptor/11971-0");
            assert_eq!(p.label.as_ref().unwrap().lexical(), "Informationswissenschaft");
            assert_eq!(p.registration.as_deref(), Some("stw"));
        }
        other => panic!("{other:?}"),
    }
    let back = s.mappings_for(&iri("http://zbw.eu/stw/descriptor/11971-0"), &[]);
    assert_eq!(back.len(), 1);
    assert_eq!(back[0].direction, Direction::Inbound);
    assert!(s.mappings_for(&iri("http://zbw.eu/stw/descriptor/15963-0"), &[]).is_empty());
}

#[test]
fn merged_size_is_union() {
    let mut s = two_thesauri();
    let a = s.registration("thesoz").unwrap().graph.len();
    let b = s.registration("stw").unwrap().graph.len();
    s.load_mappings("l1", info_science()).unwrap();
    assert_eq!(s.export_merged().len(), a + b + 1);
    s.load_mappings("again", info_science()).unwrap();
    assert_eq!(s.export_merged().len(), a + b + 1);
    assert!(MultiStore::new().export_merged().is_empty());

    let bytes = serialize_ntriples(&s.export_merged());
    assert_eq!(parse_ntriples(&bytes).0, s.export_merged());
}

#[test]
fn mapping_symmetry_after_inverses() {
    let src = thesaurus("thesoz.nt");
    let tgt = thesaurus("stw.nt");
    let file = fixture("thesoz-stw.xwalk");
    let parsed = parse_crosswalk(&std::fs::read(&file).unwrap(), &file);
    let ext = ExtVocabulary::default();
    let policy = ConversionPolicy { emit_inverses: false, ..Default::default() };
    let conv = convert_crosswalk(&parsed, &SchemeView::build(&src), &SchemeView::build(&tgt), &policy, &ext, &file);
    let mut edges = conv.edges.clone();
    edges.extend(generate_inverses(&conv.edges).0);

    let mut s = two_thesauri();
    s.load_mappings("m", edges_to_graph(&edges)).unwrap();
    for e in graph_to_edges(s.mappings_graph(), &ext, Path::new("m")) {
        let Some(m) = SkosMapping::from_iri(e.property.iri().as_str()) else { continue };
        let at_target = s.mappings_for(&e.targets[0], &[]);
        let ok = at_target.iter().any(|l| {
            l.direction == Direction::Inbound
                && l.property == m.iri()
                && matches!(&l.partner, Partner::Concept(p) if p.iri == e.source)
        });
        assert!(ok, "no inbound {m:?} at {}", e.targets[0]);
        let reverse = at_target.iter().any(|l| {
            l.direction == Direction::Outbound
                && l.property == m.inverse().iri()
                && matches!(&l.partner, Partner::Concept(p) if p.iri == e.source)
        });
        assert!(reverse, "no outbound inverse at {}", e.targets[0]);
    }
}

#[test]
fn fixture_manifest_builds() {
    let m = Manifest::from_path(&fixture("manifest.json")).unwrap();
    let loaded = m.build_store().unwrap();
    assert!(loaded.diagnostics.is_empty(), "{:?}", loaded.diagnostics);
    assert_eq!(loaded.store.registrations().len(), 2);
    assert_eq!(loaded.store.registration("thesoz").unwrap().concept_count(), 5);
    assert!(loaded.prefixes.get("stw").is_some());
}

proptest! {
    #[test]
    fn lookup_iff_base_prefix(host in prop::sample::select(vec!["lod.gesis.org", "zbw.eu", "example.org"]),
                              dir in prop::sample::select(vec!["thesoz/", "stw/", "", "thesoz", "x/"]),
                              local in "[a-z0-9/]{0,12}") {
        let s = two_thesauri();
        let raw = format!("http://{host}/{dir}{local}");
        let i = iri(&raw);
        let covered = raw.starts_with(THESOZ_BASE) || raw.starts_with(STW_BASE);
        prop_assert_eq!(s.lookup(&i).is_some(), covered);
    }
}
