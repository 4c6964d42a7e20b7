//! Machine-readable diagnostics with a closed code registry.
//!
//! Reports are either tab-separated lines (`severity, code, subject, message`)
//! or a JSON array. Tests and tooling should compare codes, never message text.

use std::fmt;
use std::path::PathBuf;

use serde::Serialize;

use crate::rdf::Iri;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Info,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Info => "info",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

macro_rules! codes {
    ($( $variant:ident => ($name:literal, $sev:ident, $trigger:literal), )*) => {
        /// The diagnostic code registry.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Code {
            $( $variant, )*
        }

        impl Code {
            pub const ALL: &'static [Code] = &[$( Code::$variant, )*];

            pub fn as_str(self) -> &'static str {
                match self { $( Code::$variant => $name, )* }
            }

            pub fn severity(self) -> Severity {
                match self { $( Code::$variant => Severity::$sev, )* }
            }

            /// One-line trigger condition, as published in the registry table.
            pub fn trigger(self) -> &'static str {
                match self { $( Code::$variant => $trigger, )* }
            }

            pub fn from_name(name: &str) -> Option<Code> {
                match name { $( $name => Some(Code::$variant), )* _ => None }
            }
        }
    };
}

codes! {
    NtSyntax => ("NT_SYNTAX", Error, "an N-Triples input line is not valid N-Triples"),
    OrphanConcept => ("ORPHAN_CONCEPT", Warning, "a skos:Concept belongs to no concept scheme"),
    XlNoLiteralForm => ("XL_NO_LITERAL_FORM", Warning, "a SKOS-XL label resource has no skosxl:literalForm"),
    DuplicatePrefLabel => ("DUPLICATE_PREFLABEL", Error, "a concept has two prefLabels in the same language"),
    LabelClash => ("LABEL_CLASH", Error, "the same (language, text) pair is used by two label kinds of one concept"),
    MappingSameScheme => ("MAPPING_SAME_SCHEME", Warning, "a SKOS mapping property links two concepts of one scheme"),
    MappingNonConcept => ("MAPPING_NON_CONCEPT", Error, "a SKOS mapping property has a described non-concept as subject or object"),
    DanglingMappingTarget => ("DANGLING_MAPPING_TARGET", Info, "a mapping endpoint is not described by any loaded graph or registered base"),
    MappingGraphForeignTriple => ("MAPPING_GRAPH_FOREIGN_TRIPLE", Warning, "a mapping graph contains a triple that is not a mapping or extension triple"),
    XwalkSyntax => ("XWALK_SYNTAX", Error, "a crosswalk line or header is malformed"),
    XwalkSameScheme => ("XWALK_SAME_SCHEME", Error, "a crosswalk file declares the same scheme as source and target"),
    XwalkOk => ("XWALK_OK", Info, "a crosswalk entry converted with both sides preferred terms"),
    XwalkNonPreferred => ("XWALK_NONPREFERRED", Error, "a crosswalk term is only a non-preferred label and the policy is strict"),
    XwalkPromoted => ("XWALK_PROMOTED", Warning, "a non-preferred crosswalk term was promoted to its owning concept"),
    XwalkAmbiguous => ("XWALK_AMBIGUOUS", Error, "a crosswalk term matches several concepts and the policy is fail"),
    XwalkAmbiguousResolved => ("XWALK_AMBIGUOUS_RESOLVED", Warning, "an ambiguous crosswalk term was resolved to the first candidate by IRI"),
    XwalkUnresolved => ("XWALK_UNRESOLVED", Error, "a crosswalk term matches no concept label"),
    XwalkBadCombination => ("XWALK_BAD_COMBINATION", Error, "a combination mapping is not an equivalence or has identical members"),
    XwalkNoInverse => ("XWALK_NO_INVERSE", Info, "a combination mapping has no inverse and was skipped"),
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Code {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SourceLocation {
    pub file: PathBuf,
    /// 1-based; 0 when the finding concerns the file as a whole.
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    #[serde(serialize_with = "ser_opt_iri")]
    pub subject: Option<Iri>,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location: Option<SourceLocation>,
}

fn ser_opt_iri<S: serde::Serializer>(v: &Option<Iri>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(i) => s.serialize_str(i.as_str()),
        None => s.serialize_none(),
    }
}

impl Diagnostic {
    /// A diagnostic at the code's registered severity.
    pub fn new(code: Code, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: code.severity(),
            code,
            subject: None,
            message: message.into(),
            location: None,
        }
    }

    pub fn with_subject(mut self, subject: Iri) -> Self {
        self.subject = Some(subject);
        self
    }

    pub fn at(mut self, file: impl Into<PathBuf>, line: usize) -> Self {
        self.location = Some(SourceLocation {
            file: file.into(),
            line,
        });
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// Tab-separated report line (no trailing newline). Tabs and line breaks
    /// inside the message are replaced by spaces.
    pub fn to_tsv(&self) -> String {
        let mut message = String::new();
        match &self.location {
            Some(loc) if loc.line > 0 => {
                message.push_str(&format!("{}:{}: ", loc.file.display(), loc.line))
            }
            Some(loc) => message.push_str(&format!("{}: ", loc.file.display())),
            None => {}
        }
        message.push_str(&self.message);
        let message = message.replace(['\t', '\n', '\r'], " ");
        format!(
            "{}\t{}\t{}\t{}",
            self.severity,
            self.code,
            self.subject.as_ref().map_or("", |s| s.as_str()),
            message
        )
    }
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}

/// Tab-separated report, one record per line.
pub fn render_tsv(diags: &[Diagnostic]) -> String {
    diags.iter().map(|d| d.to_tsv() + "\n").collect()
}

pub fn render_json(diags: &[Diagnostic]) -> String {
    serde_json::to_string_pretty(diags).expect("diagnostics serialize")
}
