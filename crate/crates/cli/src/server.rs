//! Stateless HTTP JSON service.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::PathBuf;

use axum::extract::Query;
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{Html, IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use serde::Serialize;
use tower_http::cors::{AllowOrigin, CorsLayer};
use tower_http::services::ServeDir;

use toric_core::document::{build_document, presets, Preset, SectionRequest, SCHEMA_VERSION};
use toric_core::export::to_json;
use toric_core::{TorusParams, DEFAULT_TOL};

pub const DEFAULT_PORT: u16 = 8080;
pub const SERVICE_RESOLUTION: usize = 256;

const PLACEHOLDER_INDEX: &str = "<!doctype html>
<html><head><meta charset=\"utf-8\"><title>toric</title></head>
<body>
<h1>toric section service</h1>
<p>No explorer bundle configured. Start with <code>toric serve --ui-dir DIR</code> to serve one.</p>
<ul>
<li><a href=\"/api/presets\">/api/presets</a></li>
<li><a href=\"/api/section?R=2&amp;r=1&amp;rho=1&amp;alpha=0&amp;phi=0\">/api/section?R=2&amp;r=1&amp;rho=1&amp;alpha=0&amp;phi=0</a></li>
</ul>
</body></html>
";

/// Routes: `/api/section`, `/api/presets` and the UI at `/`.
pub fn router(ui_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/section", get(section))
        .route("/api/presets", get(preset_list));
    let app = match ui_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.route("/", get(|| async { Html(PLACEHOLDER_INDEX) })),
    };
    app.layer(cors())
}

fn cors() -> CorsLayer {
    CorsLayer::new()
        .allow_methods([Method::GET])
        .allow_origin(AllowOrigin::predicate(|origin: &HeaderValue, _| {
            is_local_origin(origin.as_bytes())
        }))
}

fn is_local_origin(origin: &[u8]) -> bool {
    let Ok(origin) = std::str::from_utf8(origin) else {
        return false;
    };
    let rest = origin
        .strip_prefix("http://")
        .or_else(|| origin.strip_prefix("https://"));
    let Some(rest) = rest else { return false };
    let host = rest.split(':').next().unwrap_or("");
    matches!(host, "localhost" | "127.0.0.1" | "[::1]")
}

fn bad_request(msg: String) -> Response {
    (
        StatusCode::BAD_REQUEST,
        [(header::CONTENT_TYPE, "application/json")],
        serde_json::json!({ "error": msg }).to_string(),
    )
        .into_response()
}

fn json_body(body: String) -> Response {
    (
        StatusCode::OK,
        [(header::CONTENT_TYPE, "application/json")],
        body,
    )
        .into_response()
}

fn number(q: &HashMap<String, String>, key: &str, default: Option<f64>) -> Result<f64, String> {
    match q.get(key) {
        Some(v) => v
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("parameter {key}: not a number ({v:?})")),
        None => default.ok_or_else(|| format!("parameter {key} is required")),
    }
}

/// Builds a request from query parameters. `R` and `r` are required;
/// angles are degrees.
pub fn parse_section_query(q: &HashMap<String, String>) -> Result<SectionRequest, String> {
    let resolution = match q.get("resolution") {
        Some(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("parameter resolution: not a non-negative integer ({v:?})"))?,
        None => SERVICE_RESOLUTION,
    };
    Ok(SectionRequest {
        major: number(q, "R", None)?,
        minor: number(q, "r", None)?,
        rho: number(q, "rho", Some(0.0))?,
        alpha_deg: number(q, "alpha", Some(0.0))?,
        phi_deg: number(q, "phi", Some(0.0))?,
        resolution,
        tol: number(q, "tol", Some(DEFAULT_TOL))?,
    })
}

/// The exact bytes `/api/section` returns for a query.
pub fn section_body(q: &HashMap<String, String>) -> Result<String, String> {
    let req = parse_section_query(q)?;
    build_document(&req)
        .map(|doc| to_json(&doc))
        .map_err(|e| e.to_string())
}

async fn section(Query(q): Query<HashMap<String, String>>) -> Response {
    match tokio::task::spawn_blocking(move || section_body(&q)).await {
        Ok(Ok(body)) => json_body(body),
        Ok(Err(msg)) => bad_request(msg),
        Err(e) => (StatusCode::INTERNAL_SERVER_ERROR, e.to_string()).into_response(),
    }
}

#[derive(Serialize)]
struct PresetList {
    schema_version: u32,
    presets: Vec<Preset>,
}

async fn preset_list(Query(q): Query<HashMap<String, String>>) -> Response {
    let torus = number(&q, "R", Some(3.0)).and_then(|big| {
        let small = number(&q, "r", Some(1.0))?;
        TorusParams::new(big, small).map_err(|e| e.to_string())
    });
    match torus {
        Ok(tp) => json_body(
            serde_json::to_string(&PresetList {
                schema_version: SCHEMA_VERSION,
                presets: presets(&tp),
            })
            .expect("preset serialization"),
        ),
        Err(msg) => bad_request(msg),
    }
}

pub async fn serve(addr: SocketAddr, ui_dir: Option<PathBuf>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(ui_dir)).await
}

pub fn serve_blocking(host: &str, port: u16, ui_dir: Option<PathBuf>) -> std::io::Result<()> {
    let addr: SocketAddr = format!("{host}:{port}")
        .parse()
        .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidInput, format!("{e}")))?;
    tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()?
        .block_on(serve(addr, ui_dir))
}
