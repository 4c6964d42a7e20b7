//! Server-rendered pages. Markup is plain and semantic; every dynamic
//! string goes through [`escape`].

use std::fmt::Write as _;

use skosbridge::rdf::{Iri, Literal, PrefixMap, Term};
use skosbridge::skos::{best_label, extract_concept, Concept, LabelKind};
use skosbridge::store::{Direction, LabeledIri, MappingLink, MultiStore, Partner, ThesaurusRegistration};

use crate::describe::Description;
use crate::routes::{RouteConfig, View};

pub fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c => out.push(c),
        }
    }
    out
}

fn literal_html(l: &Literal) -> String {
    match l.language() {
        Some(lang) => format!(
            "<span lang=\"{}\">{}</span> <small>@{}</small>",
            escape(lang),
            escape(l.lexical()),
            escape(lang)
        ),
        None => escape(l.lexical()),
    }
}

struct Ctx<'a> {
    store: &'a MultiStore,
    routes: &'a RouteConfig,
    prefixes: &'a PrefixMap,
    desc: &'a Description,
}

impl Ctx<'_> {
    fn page_url(&self, iri: &Iri) -> Option<String> {
        let owner = self.store.owner(iri.as_str())?;
        self.routes.url_for(View::Page, owner, iri.as_str())
    }

    fn name(&self, iri: &Iri) -> String {
        match self.desc.neighbor_labels.get(iri) {
            Some(l) => escape(l.lexical()),
            None => escape(iri.as_str()),
        }
    }

    /// Link to the local page when the IRI is served here, else to the IRI.
    fn link(&self, iri: &Iri, text: &str) -> String {
        let href = self.page_url(iri).unwrap_or_else(|| iri.to_string());
        format!("<a href=\"{}\">{text}</a>", escape(&href))
    }

    fn property(&self, p: &Iri) -> String {
        escape(&self.prefixes.curie(p).unwrap_or_else(|| p.to_string()))
    }

    fn labeled(&self, p: &LabeledIri) -> String {
        let text = match &p.label {
            Some(l) => escape(l.lexical()),
            None => escape(p.iri.as_str()),
        };
        let thesaurus = p
            .registration
            .as_deref()
            .and_then(|id| self.store.registration(id))
            .map(|r| format!(" <span class=\"thesaurus\">({})</span>", escape(&r.title)))
            .unwrap_or_default();
        format!("{}{thesaurus}", self.link(&p.iri, &text))
    }

    fn mapping(&self, m: &MappingLink) -> String {
        let dir = match m.direction {
            Direction::Outbound => "outbound",
            Direction::Inbound => "inbound",
        };
        let prop = self.property(&m.property);
        match &m.partner {
            Partner::Concept(p) => {
                let verb = match m.direction {
                    Direction::Outbound => prop,
                    Direction::Inbound => format!("is {prop} of"),
                };
                format!("<li class=\"{dir}\">{verb} {}</li>", self.labeled(p))
            }
            Partner::Combination {
                node,
                source,
                members,
            } => {
                let members: String = members
                    .iter()
                    .map(|mem| format!("<li>{}</li>", self.labeled(mem)))
                    .collect();
                let head = match m.direction {
                    Direction::Outbound => format!("{prop} the combination of"),
                    Direction::Inbound => {
                        format!("member of a combination that {} {prop}", self.labeled(source))
                    }
                };
                format!(
                    "<li class=\"{dir} combination\" data-node=\"{}\">{head}<ul class=\"members\">{members}</ul></li>",
                    escape(node.as_str())
                )
            }
        }
    }

    fn term(&self, t: &Term) -> String {
        match t {
            Term::Iri(i) => self.link(i, &self.name(i)),
            Term::Blank(b) => format!("_:{}", escape(b.label())),
            Term::Literal(l) => literal_html(l),
        }
    }
}

fn labels_row(out: &mut String, title: &str, labels: &std::collections::BTreeSet<Literal>) {
    if labels.is_empty() {
        return;
    }
    let items: Vec<String> = labels.iter().map(literal_html).collect();
    let _ = write!(out, "<dt>{title}</dt><dd>{}</dd>", items.join(", "));
}

fn relation_section(out: &mut String, ctx: &Ctx<'_>, title: &str, iris: &std::collections::BTreeSet<Iri>) {
    if iris.is_empty() {
        return;
    }
    let _ = write!(out, "<section class=\"{}\"><h2>{title}</h2><ul>", title.to_ascii_lowercase());
    for i in iris {
        let _ = write!(out, "<li>{}</li>", ctx.link(i, &ctx.name(i)));
    }
    out.push_str("</ul></section>");
}

fn head(title: &str, lang: Option<&str>) -> String {
    let lang = lang.map(|l| format!(" lang=\"{}\"", escape(l))).unwrap_or_default();
    format!(
        "<!DOCTYPE html>\n<html{lang}>\n<head><meta charset=\"utf-8\"><title>{}</title></head>\n<body>\n",
        escape(title)
    )
}

/// The combined page: the concept from its own thesaurus plus every
/// cross-concordance, labelled from the partner thesaurus.
pub fn render_page(
    store: &MultiStore,
    routes: &RouteConfig,
    prefixes: &PrefixMap,
    reg: &ThesaurusRegistration,
    desc: &Description,
    langs: &[String],
) -> String {
    let ctx = Ctx {
        store,
        routes,
        prefixes,
        desc,
    };
    let focus = &desc.focus;
    let concept: Option<Concept> = extract_concept(&reg.graph, focus);
    let label = concept.as_ref().and_then(|c| best_label(&c.pref_labels, langs));
    let title = label.map_or_else(|| focus.to_string(), |l| l.lexical().to_string());

    let mut out = head(&format!("{title} | {}", reg.title), label.and_then(Literal::language));
    let _ = write!(out, "<h1>{}</h1>\n", escape(&title));
    let resource = routes
        .url_for(View::Resource, reg, focus.as_str())
        .unwrap_or_default();
    let _ = write!(
        out,
        "<p class=\"iri\"><a href=\"{}\">{}</a></p>\n<p class=\"thesaurus\">{}</p>\n",
        escape(&resource),
        escape(focus.as_str()),
        escape(&reg.title)
    );

    if let Some(c) = &concept {
        out.push_str("<section class=\"labels\"><h2>Labels</h2><dl>");
        labels_row(&mut out, "Preferred", c.labels(LabelKind::Pref));
        labels_row(&mut out, "Alternative", c.labels(LabelKind::Alt));
        labels_row(&mut out, "Hidden", c.labels(LabelKind::Hidden));
        out.push_str("</dl></section>\n");
        relation_section(&mut out, &ctx, "Broader", &c.broader);
        relation_section(&mut out, &ctx, "Narrower", &c.narrower);
        relation_section(&mut out, &ctx, "Related", &c.related);
    }

    out.push_str("\n<section id=\"mappings\"><h2>Mappings</h2>");
    if desc.mappings.is_empty() {
        out.push_str("<p>No mappings.</p>");
    } else {
        out.push_str("<ul>");
        for m in &desc.mappings {
            out.push_str(&ctx.mapping(m));
        }
        out.push_str("</ul>");
    }
    out.push_str("</section>\n");

    out.push_str("<section class=\"properties\"><h2>Properties</h2><table>");
    for t in &desc.outbound {
        let _ = write!(
            out,
            "<tr><th>{}</th><td>{}</td></tr>",
            ctx.property(&t.predicate),
            ctx.term(&t.object)
        );
    }
    out.push_str("</table></section>\n");

    if let Some(data) = routes.url_for(View::Data, reg, focus.as_str()) {
        let _ = write!(
            out,
            "<p class=\"data\">Data: <a href=\"{0}?format=ttl\">Turtle</a> <a href=\"{0}?format=nt\">N-Triples</a></p>\n",
            escape(&data)
        );
    }
    out.push_str("</body>\n</html>\n");
    out
}

pub fn render_index(store: &MultiStore, routes: &RouteConfig) -> String {
    let mut out = head("Thesauri", None);
    out.push_str("<h1>Thesauri</h1>\n<table><tr><th>Id</th><th>Title</th><th>Base IRI</th><th>Concepts</th></tr>");
    for r in store.registrations() {
        let query = routes.absolute(&format!("/{}/query", routes.segment(&r.id)));
        let _ = write!(
            out,
            "<tr><td><a href=\"{}\">{}</a></td><td>{}</td><td>{}</td><td>{}</td></tr>",
            escape(&query),
            escape(&r.id),
            escape(&r.title),
            escape(&r.base_iri),
            r.concept_count()
        );
    }
    out.push_str("</table>\n<h2>Mapping graphs</h2><ul>");
    for (id, g) in store.mapping_graphs() {
        let _ = write!(out, "<li>{}: {} triples</li>", escape(id), g.len());
    }
    out.push_str("</ul>\n</body>\n</html>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escaping() {
        assert_eq!(escape("<a href=\"x\">&'"), "&lt;a href=&quot;x&quot;&gt;&amp;&#39;");
    }
}
