use std::path::{Path, PathBuf};
use std::process::Command;

use skosbridge::rdf::parse_ntriples;
use skosbridge_cli::{run, EXIT_DIAGNOSTICS, EXIT_FAILURE, EXIT_OK};

const INFO_SCIENCE: &str = "<http://lod.gesis.org/thesoz/concept/10039068> <http://www.w3.org/2004/02/skos/core#exactMatch> <http://zbw.eu/stw/descriptor/11971-0> .";

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

struct Out {
    code: u8,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Out {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let mut full = vec!["skosbridge"];
    full.extend_from_slice(args);
    let code = run(full, &mut stdout, &mut stderr);
    Out {
        code,
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn write_manifest(dir: &Path, body: &str) -> PathBuf {
    let p = dir.join("manifest.json");
    std::fs::write(&p, body).unwrap();
    p
}

fn convert_info_science(extra: &[&str]) -> Out {
    let (s, t, x) = (fixture("thesoz.nt"), fixture("stw.nt"), fixture("infoscience.xwalk"));
    let mut args = vec!["convert", "--source", &s, "--target", &t, "--crosswalk", &x];
    args.extend_from_slice(extra);
    cli(&args)
}

#[test]
fn convert_info_science_with_and_without_inverses() {
    let forward = convert_info_science(&["--no-inverses"]);
    assert_eq!(forward.code, EXIT_OK, "{}", forward.stderr);
    assert_eq!(forward.stdout, format!("{INFO_SCIENCE}\n"));
    assert!(forward.stderr.lines().all(|l| l.starts_with("info\tXWALK_OK\t")), "{}", forward.stderr);

    let both = convert_info_science(&[]);
    assert_eq!(both.code, EXIT_OK);
    let lines: Vec<&str> = both.stdout.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.contains(&INFO_SCIENCE));
    assert!(lines.contains(
        &"<http://zbw.eu/stw/descriptor/11971-0> <http://www.w3.org/2004/02/skos/core#exactMatch> <http://lod.gesis.org/thesoz/concept/10039068> ."
    ));
}

#[test]
fn convert_is_byte_deterministic_and_matches_committed_output() {
    let (s, t, x) = (fixture("thesoz.nt"), fixture("stw.nt"), fixture("thesoz-stw.xwalk"));
    let args = ["convert", "--source", &s, "--target", &t, "--crosswalk", &x];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a.code, EXIT_OK, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, std::fs::read_to_string(fixture("thesoz-stw.nt")).unwrap());
}

#[test]
fn convert_problems_report() {
    let (s, t, x) = (fixture("thesoz.nt"), fixture("stw.nt"), fixture("problems.xwalk"));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.nt");
    let out_s = out.to_string_lossy().into_owned();
    let r = cli(&["convert", "--source", &s, "--target", &t, "--crosswalk", &x, "--output", &out_s, "--report-json"]);
    assert_eq!(r.code, EXIT_DIAGNOSTICS);
    let json = r.stdout.trim();
    assert!(json.starts_with('[') && json.ends_with(']'), "{json}");
    for code in ["XWALK_NONPREFERRED", "XWALK_AMBIGUOUS", "XWALK_UNRESOLVED", "XWALK_BAD_COMBINATION", "XWALK_SYNTAX"] {
        assert!(json.contains(code), "{code} missing from {json}");
    }
    // every line is rejected; the output file still exists and is empty
    assert!(std::fs::read(&out).unwrap().is_empty());
}

#[test]
fn validate_codes_and_exits() {
    let ok = cli(&["validate", &fixture("thesoz.nt"), &fixture("stw.nt")]);
    assert_eq!(ok.code, EXIT_OK, "{}", ok.stdout);
    assert!(ok.stdout.is_empty());

    let bad = cli(&["validate", &fixture("seeded-faults.nt")]);
    assert_eq!(bad.code, EXIT_DIAGNOSTICS);
    let mut codes: Vec<&str> = bad.stdout.lines().filter_map(|l| l.split('\t').nth(1)).collect();
    codes.sort();
    codes.dedup();
    assert_eq!(
        codes,
        [
            "DANGLING_MAPPING_TARGET",
            "DUPLICATE_PREFLABEL",
            "LABEL_CLASH",
            "MAPPING_NON_CONCEPT",
            "MAPPING_SAME_SCHEME",
            "ORPHAN_CONCEPT",
            "XL_NO_LITERAL_FORM"
        ]
    );

    let missing = cli(&["validate", "/definitely/not/here.nt"]);
    assert_eq!(missing.code, EXIT_FAILURE);
    assert!(missing.stderr.contains("error:"));
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(cli(&[]).code, EXIT_FAILURE);
    assert_eq!(cli(&["frobnicate"]).code, EXIT_FAILURE);
    assert_eq!(convert_info_science(&["--ambiguity", "maybe"]).code, EXIT_FAILURE);
    assert_eq!(convert_info_science(&["--ext-namespace", "not an iri"]).code, EXIT_FAILURE);
    assert_eq!(cli(&["--help"]).code, EXIT_OK);
}

#[test]
fn merge_is_union_of_parts() {
    let r = cli(&["merge", "--manifest", &fixture("manifest.json")]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let (merged, _) = parse_ntriples(r.stdout.as_bytes());
    let mut expected = 0;
    for f in ["thesoz.nt", "stw.nt", "thesoz-stw.nt"] {
        let raw = std::fs::read(fixture(f)).unwrap();
        let (g, _) = parse_ntriples(&raw);
        let (g, _) = skosbridge::skos::resolve_xl_labels(&g);
        expected += g.len();
    }
    assert_eq!(merged.len(), expected);
    assert_eq!(r.stdout, cli(&["merge", "--manifest", &fixture("manifest.json")]).stdout);
}

#[test]
fn manifest_failures() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write_manifest(dir.path(), r#"{"thesauri": [], "mappings": []}"#);
    let r = cli(&["merge", "--manifest", empty.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.is_empty());

    let garbage = write_manifest(dir.path(), "{ not json");
    assert_eq!(cli(&["merge", "--manifest", garbage.to_str().unwrap()]).code, EXIT_FAILURE);

    let overlap = format!(
        r#"{{"thesauri": [
            {{"id": "a", "title": "A", "base_iri": "http://lod.gesis.org/thesoz/", "file": "{0}"}},
            {{"id": "b", "title": "B", "base_iri": "http://lod.gesis.org/", "file": "{0}"}}
        ]}}"#,
        fixture("thesoz.nt")
    );
    let overlap = write_manifest(dir.path(), &overlap);
    let r = cli(&["merge", "--manifest", overlap.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_FAILURE);
    assert!(r.stderr.contains("overlaps"), "{}", r.stderr);

    let missing_file = write_manifest(
        dir.path(),
        r#"{"thesauri": [{"id": "a", "title": "A", "base_iri": "http://x.org/", "file": "nope.nt"}]}"#,
    );
    assert_eq!(cli(&["merge", "--manifest", missing_file.to_str().unwrap()]).code, EXIT_FAILURE);
}

#[test]
fn query_command() {
    let m = fixture("manifest.json");
    let r = cli(&["query", "--manifest", &m, "-s", "thesoz:10039068", "-p", "skos:exactMatch"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert_eq!(r.stdout.trim_end(), INFO_SCIENCE);

    let lit = cli(&["query", "--manifest", &m, "-o", "\"Bibliothek\"@de"]);
    assert_eq!(lit.code, EXIT_OK);
    assert!(!lit.stdout.is_empty());

    let limited = cli(&["query", "--manifest", &m, "--limit", "2"]);
    assert_eq!(limited.stdout.lines().count(), 2);
    assert!(limited.stderr.contains("truncated"));

    assert_eq!(cli(&["query", "--manifest", &m, "-s", "nope:x"]).code, EXIT_FAILURE);
    assert_eq!(cli(&["query", "--manifest", &m, "-p", "\"lit\""]).code, EXIT_FAILURE);
    assert_eq!(cli(&["query", "--manifest", &m, "--scope", "zzz"]).code, EXIT_FAILURE);
}

#[test]
fn serve_startup_failures() {
    let bin = env!("CARGO_BIN_EXE_skosbridge");
    let out = Command::new(bin)
        .args(["serve", "--manifest", "/no/such/manifest.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(i32::from(EXIT_FAILURE)));

    // occupy a port so the server cannot bind it
    let taken = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = taken.local_addr().unwrap().to_string();
    let out = Command::new(bin)
        .args(["serve", "--manifest", &fixture("manifest.json"), "--listen", &addr])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(i32::from(EXIT_FAILURE)));
}
