use std::collections::HashMap;
use std::net::SocketAddr;

use axum::body::Bytes;
use axum::extract::rejection::QueryRejection;
use axum::extract::{DefaultBodyLimit, Query};
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use proxigraph_core::compute::{catalog, ComputeError, ComputeRequest};
use serde_json::json;
use tower_http::cors::{AllowOrigin, CorsLayer};

use crate::cli::ServeArgs;

/// Request bodies above this are refused before parsing.
const BODY_LIMIT: usize = 16 * 1024 * 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cors {
    Disabled,
    Any,
    Origins(Vec<String>),
}

/// The service's routes. Every handler is a pure function of its request.
pub fn router(cors: Cors) -> Router {
    let app = Router::new()
        .route("/api/compute", post(compute))
        .route("/api/algorithms", get(algorithms))
        .route("/healthz", get(healthz))
        .fallback(not_found)
        .layer(DefaultBodyLimit::max(BODY_LIMIT));
    let layer = match cors {
        Cors::Disabled => return app,
        Cors::Any => CorsLayer::new().allow_origin(AllowOrigin::any()),
        Cors::Origins(list) => CorsLayer::new().allow_origin(
            list.iter()
                .filter_map(|o| HeaderValue::from_str(o).ok())
                .collect::<Vec<_>>(),
        ),
    };
    app.layer(
        layer
            .allow_methods([Method::GET, Method::POST])
            .allow_headers([header::CONTENT_TYPE]),
    )
}

fn json_response(status: StatusCode, body: Vec<u8>) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn error_response(status: StatusCode, error: &str, detail: impl Into<String>) -> Response {
    let body = json!({ "error": error, "detail": detail.into() });
    json_response(status, serde_json::to_vec(&body).expect("plain JSON value"))
}

async fn compute(query: Result<Query<HashMap<String, String>>, QueryRejection>, body: Bytes) -> Response {
    let with_svg = match query.as_ref().map(|Query(q)| q.get("render").map(String::as_str)) {
        Ok(None) => false,
        Ok(Some("svg")) => true,
        Ok(Some(other)) => {
            let detail = format!("unsupported render `{other}`; only `svg` is available");
            return error_response(StatusCode::BAD_REQUEST, "MalformedRequest", detail);
        }
        Err(e) => return error_response(StatusCode::BAD_REQUEST, "MalformedRequest", e.body_text()),
    };
    let request: ComputeRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return error_response(StatusCode::BAD_REQUEST, "MalformedRequest", e.to_string()),
    };
    let job = tokio::task::spawn_blocking(move || {
        request
            .run()
            .map(|(ps, outcome)| outcome.to_json(&ps, with_svg))
    });
    match job.await {
        Ok(Ok(body)) => json_response(StatusCode::OK, body),
        Ok(Err(e)) => {
            let status = match e {
                ComputeError::UnknownAlgorithm(_) => StatusCode::NOT_FOUND,
                ComputeError::TooManyPoints { .. } => StatusCode::PAYLOAD_TOO_LARGE,
                ComputeError::Core(_) => StatusCode::BAD_REQUEST,
            };
            error_response(status, e.name(), e.to_string())
        }
        Err(_) => error_response(
            StatusCode::INTERNAL_SERVER_ERROR,
            "InternalError",
            "the computation failed unexpectedly",
        ),
    }
}

async fn algorithms() -> Response {
    json_response(StatusCode::OK, serde_json::to_vec(&catalog()).expect("catalog serializes"))
}

async fn healthz() -> Response {
    json_response(StatusCode::OK, br#"{"status":"ok"}"#.to_vec())
}

async fn not_found() -> Response {
    error_response(StatusCode::NOT_FOUND, "NotFound", "no such endpoint")
}

/// Serves until interrupted.
pub fn run_blocking(args: &ServeArgs) -> Result<(), String> {
    let runtime = tokio::runtime::Runtime::new().map_err(|e| format!("IoError: {e}"))?;
    let addr = SocketAddr::new(args.bind, args.port);
    let app = router(args.cors());
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr)
            .await
            .map_err(|e| format!("IoError: cannot bind {addr}: {e}"))?;
        eprintln!("proxigraph: listening on http://{addr}");
        axum::serve(listener, app)
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await
            .map_err(|e| format!("IoError: {e}"))
    })
}
