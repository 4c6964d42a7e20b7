//! Linked-data frontend over a [`skosbridge::store::MultiStore`].
//!
//! Concept IRIs are served under per-thesaurus paths:
//!
//! | route | response |
//! |---|---|
//! | `/{id}/resource/{local}` | 303 to the page or data view, by `Accept` |
//! | `/{id}/page/{local}` | HTML with a combined view of every mapping |
//! | `/{id}/data/{local}` | Turtle (default) or N-Triples |
//! | `/query`, `/{id}/query` | triple-pattern match, N-Triples |
//! | `/` | registrations with titles and concept counts |
//!
//! [`App::handle`] is a plain function of the request, so tests can drive it
//! without a socket; [`serve`] puts it behind axum.

pub mod conneg;
mod describe;
mod handler;
pub mod html;
pub mod query;
pub mod routes;
mod server;

pub use describe::{describe, Description};
pub use handler::{App, Snapshot, TRUNCATED_HEADER};
pub use routes::{ConfigError, RouteConfig};
pub use server::{router, serve};
