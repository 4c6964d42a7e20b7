//! `Accept` and `Accept-Language` handling.
//!
//! Quality values are honored; among equally weighted supported types the
//! server order HTML, Turtle, N-Triples decides. RDF/XML is recognised but
//! never produced, so it only ever counts as an unsupported type.

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Format {
    Html,
    Turtle,
    NTriples,
}

impl Format {
    pub const ALL: [Format; 3] = [Format::Html, Format::Turtle, Format::NTriples];

    pub fn content_type(self) -> &'static str {
        match self {
            Format::Html => "text/html; charset=utf-8",
            Format::Turtle => "text/turtle; charset=utf-8",
            Format::NTriples => "application/n-triples",
        }
    }

    fn media_types(self) -> &'static [&'static str] {
        match self {
            Format::Html => &["text/html", "application/xhtml+xml"],
            Format::Turtle => &["text/turtle", "application/x-turtle"],
            Format::NTriples => &["application/n-triples"],
        }
    }

    pub fn is_rdf(self) -> bool {
        self != Format::Html
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Range {
    kind: String,
    subtype: String,
    q: f32,
}

/// Ranges with unparseable syntax are skipped; a malformed `q` is treated as 0.
fn parse_accept(header: &str) -> Vec<Range> {
    let mut out = Vec::new();
    for part in header.split(',') {
        let mut params = part.split(';');
        let media = params.next().unwrap_or("").trim().to_ascii_lowercase();
        let Some((kind, subtype)) = media.split_once('/') else {
            continue;
        };
        if kind.is_empty() || subtype.is_empty() {
            continue;
        }
        let mut q = 1.0;
        for p in params {
            if let Some((k, v)) = p.split_once('=') {
                if k.trim().eq_ignore_ascii_case("q") {
                    q = v
                        .trim()
                        .parse::<f32>()
                        .ok()
                        .filter(|q| (0.0..=1.0).contains(q))
                        .unwrap_or(0.0);
                }
            }
        }
        out.push(Range {
            kind: kind.to_string(),
            subtype: subtype.to_string(),
            q,
        });
    }
    out
}

/// Most specific range matching `media` as `(specificity, q)`:
/// `type/sub` beats `type/*` beats `*/*`.
fn quality(ranges: &[Range], media: &str) -> Option<(u8, f32)> {
    let (kind, subtype) = media.split_once('/').expect("media type");
    ranges
        .iter()
        .filter_map(|r| {
            let specificity = match (r.kind.as_str(), r.subtype.as_str()) {
                (k, s) if k == kind && s == subtype => 2,
                (k, "*") if k == kind => 1,
                ("*", "*") => 0,
                _ => return None,
            };
            Some((specificity, r.q))
        })
        .max_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)))
}

/// Picks a format among `offered` (in server preference order). A missing
/// or blank header selects the first offer. `None` means 406.
pub fn negotiate(accept: Option<&str>, offered: &[Format]) -> Option<Format> {
    let header = accept.map(str::trim).filter(|h| !h.is_empty());
    let Some(header) = header else {
        return offered.first().copied();
    };
    let ranges = parse_accept(header);
    if ranges.is_empty() {
        return offered.first().copied();
    }
    let mut best: Option<(Format, f32)> = None;
    for &f in offered {
        // aliases count only through their own most specific range
        let q = f
            .media_types()
            .iter()
            .filter_map(|m| quality(&ranges, m))
            .max_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)))
            .map_or(0.0, |(_, q)| q);
        if q > 0.0 && best.map_or(true, |(_, bq)| q > bq) {
            best = Some((f, q));
        }
    }
    best.map(|(f, _)| f)
}

/// Language tags from an `Accept-Language` header, highest quality first.
/// `*` and zero-quality entries are dropped.
pub fn accept_languages(header: Option<&str>) -> Vec<String> {
    let Some(header) = header else {
        return Vec::new();
    };
    let mut tags: Vec<(String, f32)> = header
        .split(',')
        .filter_map(|part| {
            let mut params = part.split(';');
            let tag = params.next()?.trim().to_ascii_lowercase();
            let mut q = 1.0;
            for p in params {
                if let Some(v) = p.trim().strip_prefix("q=") {
                    q = v.trim().parse().unwrap_or(0.0);
                }
            }
            (!tag.is_empty() && tag != "*" && q > 0.0).then_some((tag, q))
        })
        .collect();
    // stable: equal weights keep header order
    tags.sort_by(|a, b| b.1.total_cmp(&a.1));
    tags.into_iter().map(|(t, _)| t).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: &[Format] = &Format::ALL;

    #[test]
    fn no_header_prefers_html() {
        assert_eq!(negotiate(None, ALL), Some(Format::Html));
        assert_eq!(negotiate(Some("  "), ALL), Some(Format::Html));
    }

    #[test]
    fn exact_types() {
        assert_eq!(negotiate(Some("text/turtle"), ALL), Some(Format::Turtle));
        assert_eq!(negotiate(Some("application/n-triples"), ALL), Some(Format::NTriples));
        assert_eq!(negotiate(Some("text/html"), ALL), Some(Format::Html));
    }

    #[test]
    fn q_values_and_ties() {
        let a = "text/html;q=0.5, application/n-triples";
        assert_eq!(negotiate(Some(a), ALL), Some(Format::NTriples));
        let tie = "application/n-triples, text/turtle";
        assert_eq!(negotiate(Some(tie), ALL), Some(Format::Turtle));
        assert_eq!(negotiate(Some("*/*"), ALL), Some(Format::Html));
        assert_eq!(negotiate(Some("text/*"), ALL), Some(Format::Html));
        assert_eq!(negotiate(Some("*/*;q=0.1, text/turtle"), ALL), Some(Format::Turtle));
    }

    #[test]
    fn specific_range_overrides_wildcard() {
        let a = "*/*, text/html;q=0";
        assert_eq!(negotiate(Some(a), ALL), Some(Format::Turtle));
    }

    #[test]
    fn rdf_xml_alone_is_not_acceptable() {
        assert_eq!(negotiate(Some("application/rdf+xml"), ALL), None);
        assert_eq!(negotiate(Some("image/png, text/html;q=0"), ALL), None);
        let mixed = "application/rdf+xml, text/turtle;q=0.5";
        assert_eq!(negotiate(Some(mixed), ALL), Some(Format::Turtle));
    }

    #[test]
    fn garbage_header_falls_back() {
        assert_eq!(negotiate(Some("nonsense"), ALL), Some(Format::Html));
    }

    #[test]
    fn languages_by_quality() {
        let h = "en;q=0.5, de-DE, fr;q=0, *;q=0.1, de;q=0.9";
        assert_eq!(accept_languages(Some(h)), ["de-de", "de", "en"]);
        assert!(accept_languages(None).is_empty());
    }
}
