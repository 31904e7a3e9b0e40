//! HTTP API over a corpus index and a store of review sessions.

mod error;
mod registry;
mod routes;
pub mod store;

use std::future::Future;
use std::net::SocketAddr;
use std::sync::Arc;

use axum::http::HeaderValue;
use finder_core::CorpusIndex;
use tokio::net::TcpListener;
use tower_http::cors::{Any, CorsLayer};

pub use error::ApiError;
pub use registry::SessionRegistry;
pub use routes::{router, AppState, Person, SessionView};
pub use store::{DirStore, MemoryStore, SessionStore};

impl AppState {
    pub fn new(index: Arc<CorpusIndex>, store: Arc<dyn SessionStore>) -> Self {
        Self {
            index,
            sessions: Arc::new(SessionRegistry::new(store)),
        }
    }
}

/// Builds the full application, optionally allowing one CORS origin
/// (`*` allows any).
pub fn app(state: AppState, cors_origin: Option<&str>) -> axum::Router {
    let router = router(state);
    match cors_origin {
        None => router,
        Some("*") => router.layer(
            CorsLayer::new()
                .allow_origin(Any)
                .allow_headers(Any)
                .allow_methods(Any),
        ),
        Some(origin) => match origin.parse::<HeaderValue>() {
            Ok(origin) => router.layer(
                CorsLayer::new()
                    .allow_origin(origin)
                    .allow_headers(Any)
                    .allow_methods(Any),
            ),
            Err(_) => {
                tracing::warn!(origin, "ignoring invalid CORS origin");
                router
            }
        },
    }
}

/// Serves on an already-bound listener until `shutdown` resolves.
pub async fn serve_on(
    listener: TcpListener,
    app: axum::Router,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, app)
        .with_graceful_shutdown(shutdown)
        .await
}

/// Binds `addr` and serves until Ctrl-C. `on_bound` receives the actual
/// address, which matters when port 0 was requested.
pub async fn serve(
    index: Arc<CorpusIndex>,
    addr: SocketAddr,
    store: Arc<dyn SessionStore>,
    cors_origin: Option<&str>,
    on_bound: impl FnOnce(SocketAddr),
) -> std::io::Result<()> {
    let listener = TcpListener::bind(addr).await?;
    on_bound(listener.local_addr()?);
    let app = app(AppState::new(index, store), cors_origin);
    serve_on(listener, app, async {
        let _ = tokio::signal::ctrl_c().await;
    })
    .await
}
