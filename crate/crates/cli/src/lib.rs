//! The `skosbridge` command line.
//!
//! Exit codes: 0 success without error diagnostics, 1 completed but some
//! diagnostic has error severity, 2 could not run (I/O, configuration,
//! invocation syntax).

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use skosbridge::crosswalk::{
    convert_crosswalk, edges_to_graph, parse_crosswalk, AmbiguityMode, ConversionPolicy, ExtVocabulary,
    NonPreferredMode, SchemeView,
};
use skosbridge::diagnostic::{has_errors, render_json, render_tsv, Diagnostic};
use skosbridge::manifest::{read_ntriples, LoadedStore, Manifest, ManifestError};
use skosbridge::rdf::{serialize_ntriples, serialize_triples, Graph, Iri};
use skosbridge::skos::{resolve_xl_labels, validate_skos_with};
use skosbridge_service::query::{run_query, Pattern, QueryError};
use skosbridge_service::{App, ConfigError, RouteConfig, Snapshot};
use thiserror::Error;

/// Environment variable that overrides the manifest's listen address.
pub const LISTEN_ENV: &str = "SKOSBRIDGE_LISTEN";

pub const EXIT_OK: u8 = 0;
pub const EXIT_DIAGNOSTICS: u8 = 1;
pub const EXIT_FAILURE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "skosbridge", version, about = "Validate SKOS thesauri, convert crosswalks to SKOS mappings, and serve them as linked data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check N-Triples thesauri (SKOS or SKOS-XL) for integrity problems.
    Validate(ValidateArgs),
    /// Turn a term-based crosswalk into SKOS mapping triples.
    Convert(ConvertArgs),
    /// Write the union of every graph named in a manifest.
    Merge(MergeArgs),
    /// Serve a manifest's thesauri and mappings over HTTP.
    Serve(ServeArgs),
    /// Match a triple pattern against a manifest's merged store.
    Query(QueryArgs),
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Print diagnostics as a JSON array instead of tab-separated lines.
    #[arg(long)]
    pub report_json: bool,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// N-Triples files; each is validated with the others as context.
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum NonPreferredArg {
    /// Reject entries that name a non-preferred term.
    Strict,
    /// Map the owning concept instead, with a warning.
    Promote,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AmbiguityArg {
    /// Reject terms that match several concepts.
    Fail,
    /// Take the candidate with the smallest IRI, with a warning.
    First,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Source thesaurus (N-Triples).
    #[arg(long)]
    pub source: PathBuf,
    /// Target thesaurus (N-Triples).
    #[arg(long)]
    pub target: PathBuf,
    /// Crosswalk file (`#xwalk` header, tab-separated lines).
    #[arg(long)]
    pub crosswalk: PathBuf,
    /// Mapping N-Triples output; standard output when omitted, in which case
    /// the report goes to standard error.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "strict")]
    pub nonpreferred: NonPreferredArg,
    #[arg(long, value_enum, default_value = "fail")]
    pub ambiguity: AmbiguityArg,
    /// Emit forward mappings only.
    #[arg(long)]
    pub no_inverses: bool,
    /// Namespace of the combination-mapping vocabulary.
    #[arg(long, value_name = "IRI")]
    pub ext_namespace: Option<String>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct MergeArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    /// N-Triples output; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    /// Overrides the manifest and the SKOSBRIDGE_LISTEN variable.
    #[arg(long, value_name = "ADDR")]
    pub listen: Option<String>,
    /// External URL prefix for links and redirects.
    #[arg(long, value_name = "URL")]
    pub base_url: Option<String>,
    #[arg(long, value_name = "N")]
    pub result_limit: Option<usize>,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    /// Subject: <iri>, CURIE, absolute IRI or _:label.
    #[arg(long, short = 's')]
    pub subject: Option<String>,
    /// Predicate: <iri>, CURIE or absolute IRI.
    #[arg(long, short = 'p')]
    pub predicate: Option<String>,
    /// Object: <iri>, CURIE, absolute IRI, _:label or an N-Triples literal.
    #[arg(long, short = 'o')]
    pub object: Option<String>,
    /// Restrict to one thesaurus graph.
    #[arg(long, value_name = "ID")]
    pub scope: Option<String>,
    /// Defaults to the manifest's service result limit.
    #[arg(long, value_name = "N")]
    pub limit: Option<usize>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Manifest(#[from] ManifestError),
    #[error("route configuration: {0}")]
    Config(#[from] ConfigError),
    #[error("query: {0}")]
    Query(#[from] QueryError),
    #[error("{0}")]
    Invalid(String),
    #[error("server: {0}")]
    Server(std::io::Error),
}

type Outcome = Result<u8, CliError>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_FAILURE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Validate(a) => cmd_validate(&a, stdout),
        Command::Convert(a) => cmd_convert(&a, stdout, stderr),
        Command::Merge(a) => cmd_merge(&a, stdout, stderr),
        Command::Serve(a) => cmd_serve(&a),
        Command::Query(a) => cmd_query(&a, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn report(diags: &[Diagnostic], json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let text = if json {
        let mut s = render_json(diags);
        s.push('\n');
        s
    } else {
        render_tsv(diags)
    };
    out.write_all(text.as_bytes()).map_err(|source| CliError::Write {
        path: "<report>".into(),
        source,
    })
}

fn exit_for(diags: &[Diagnostic]) -> u8 {
    if has_errors(diags) {
        EXIT_DIAGNOSTICS
    } else {
        EXIT_OK
    }
}

fn write_output(path: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|source| CliError::Write {
            path: p.to_path_buf(),
            source,
        }),
        None => stdout.write_all(bytes).map_err(|source| CliError::Write {
            path: "<stdout>".into(),
            source,
        }),
    }
}

/// Reads an N-Triples thesaurus and resolves its SKOS-XL labels.
fn load_thesaurus(path: &Path) -> Result<(Graph, Vec<Diagnostic>), CliError> {
    let (raw, mut diags) = read_ntriples(path)?;
    let (g, xl) = resolve_xl_labels(&raw);
    diags.extend(xl.into_iter().map(|d| d.at(path, 0)));
    Ok((g, diags))
}

pub fn cmd_validate(a: &ValidateArgs, stdout: &mut dyn Write) -> Outcome {
    let loaded = a
        .files
        .iter()
        .map(|f| load_thesaurus(f))
        .collect::<Result<Vec<_>, _>>()?;
    let mut all = Vec::new();
    for (i, (g, diags)) in loaded.iter().enumerate() {
        all.extend(diags.iter().cloned());
        let context: Vec<&Graph> = loaded
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, (g, _))| g)
            .collect();
        all.extend(
            validate_skos_with(g, &context)
                .into_iter()
                .map(|d| d.at(&a.files[i], 0)),
        );
    }
    report(&all, a.report.report_json, stdout)?;
    Ok(exit_for(&all))
}

pub fn cmd_convert(a: &ConvertArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let ext = match &a.ext_namespace {
        None => ExtVocabulary::default(),
        Some(ns) => ExtVocabulary::new(
            Iri::new(ns).map_err(|e| CliError::Invalid(format!("--ext-namespace: {e}")))?,
        ),
    };
    let policy = ConversionPolicy {
        nonpreferred_mode: match a.nonpreferred {
            NonPreferredArg::Strict => NonPreferredMode::Strict,
            NonPreferredArg::Promote => NonPreferredMode::Promote,
        },
        ambiguity_mode: match a.ambiguity {
            AmbiguityArg::Fail => AmbiguityMode::Fail,
            AmbiguityArg::First => AmbiguityMode::FirstBySortedIri,
        },
        emit_inverses: !a.no_inverses,
    };
    let (src, mut diags) = load_thesaurus(&a.source)?;
    let (tgt, tgt_diags) = load_thesaurus(&a.target)?;
    diags.extend(tgt_diags);
    let bytes = std::fs::read(&a.crosswalk).map_err(|source| CliError::Read {
        path: a.crosswalk.clone(),
        source,
    })?;
    let parsed = parse_crosswalk(&bytes, &a.crosswalk);
    let conv = convert_crosswalk(
        &parsed,
        &SchemeView::build(&src),
        &SchemeView::build(&tgt),
        &policy,
        &ext,
        &a.crosswalk,
    );
    diags.extend(conv.diagnostics);

    let graph = edges_to_graph(&conv.edges);
    write_output(a.output.as_deref(), &serialize_ntriples(&graph), stdout)?;
    let report_to: &mut dyn Write = if a.output.is_some() { stdout } else { stderr };
    report(&diags, a.report.report_json, report_to)?;
    Ok(exit_for(&diags))
}

fn load_manifest(path: &Path) -> Result<(Manifest, LoadedStore), CliError> {
    let m = Manifest::from_path(path)?;
    let loaded = m.build_store()?;
    Ok((m, loaded))
}

pub fn cmd_merge(a: &MergeArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let (_, loaded) = load_manifest(&a.manifest)?;
    let merged = loaded.store.export_merged();
    write_output(a.output.as_deref(), &serialize_ntriples(&merged), stdout)?;
    report(&loaded.diagnostics, false, stderr)?;
    Ok(exit_for(&loaded.diagnostics))
}

pub fn cmd_query(a: &QueryArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let (m, loaded) = load_manifest(&a.manifest)?;
    let diagnostics = loaded.diagnostics.clone();
    // same prefix table as the HTTP query route
    let snap = Snapshot::from(loaded);
    let pattern = Pattern::parse(
        a.subject.as_deref(),
        a.predicate.as_deref(),
        a.object.as_deref(),
        &snap.prefixes,
    )?;
    let limit = a.limit.unwrap_or_else(|| m.result_limit());
    let result = run_query(&snap.store, a.scope.as_deref(), &pattern, limit)?;
    write_output(None, &serialize_triples(result.triples.iter().copied()), stdout)?;
    if result.truncated {
        let _ = writeln!(stderr, "note: result truncated at {limit} triples");
    }
    report(&diagnostics, false, stderr)?;
    Ok(EXIT_OK)
}

/// Route configuration from the manifest, then the environment, then flags.
pub fn serve_config(m: &Manifest, a: &ServeArgs) -> RouteConfig {
    let mut cfg = RouteConfig::from_manifest(m);
    if let Ok(listen) = std::env::var(LISTEN_ENV) {
        cfg.listen = listen;
    }
    if let Some(l) = &a.listen {
        cfg.listen = l.clone();
    }
    if let Some(b) = &a.base_url {
        cfg.base_url = b.clone();
    }
    if let Some(n) = a.result_limit {
        cfg.result_limit = n;
    }
    cfg
}

pub fn cmd_serve(a: &ServeArgs) -> Outcome {
    let (m, loaded) = load_manifest(&a.manifest)?;
    for d in &loaded.diagnostics {
        log::warn!("{}", d.to_tsv());
    }
    let cfg = serve_config(&m, a);
    let listen = cfg.listen.clone();
    for r in loaded.store.registrations() {
        log::info!(
            "thesaurus {} ({}): {} concepts under {}",
            r.id,
            r.title,
            r.concept_count(),
            r.base_iri
        );
    }
    for (id, g) in loaded.store.mapping_graphs() {
        log::info!("mappings {id}: {} triples", g.len());
    }
    let app = Arc::new(App::new(cfg, Snapshot::from(loaded))?);

    let runtime = tokio::runtime::Runtime::new().map_err(CliError::Server)?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(&listen)
            .await
            .map_err(CliError::Server)?;
        log::info!("listening on http://{}", listener.local_addr().map_err(CliError::Server)?);
        let shutdown = async {
            let _ = tokio::signal::ctrl_c().await;
            log::info!("shutting down");
        };
        skosbridge_service::serve(app, listener, shutdown)
            .await
            .map_err(CliError::Server)
    })?;
    Ok(EXIT_OK)
}
