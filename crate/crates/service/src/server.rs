use std::future::Future;
use std::sync::Arc;
use std::time::Instant;

use axum::body::Body;
use axum::extract::Request;
use axum::Router;
use tokio::net::TcpListener;

use crate::handler::App;

/// Wraps [`App::handle`] in a router that logs one line per request.
pub fn router(app: Arc<App>) -> Router {
    Router::new().fallback(move |req: Request| {
        let app = Arc::clone(&app);
        async move {
            let started = Instant::now();
            let (parts, _body) = req.into_parts();
            let req = http::Request::from_parts(parts, ());
            let resp = app.handle(&req);
            log::info!(
                "{} {} {} {:.1?}",
                req.method(),
                req.uri(),
                resp.status().as_u16(),
                started.elapsed()
            );
            resp.map(Body::from)
        }
    })
}

/// Serves until `shutdown` resolves, then drains open connections.
pub async fn serve(
    app: Arc<App>,
    listener: TcpListener,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, router(app))
        .with_graceful_shutdown(shutdown)
        .await
}
