//! HTTP front of the card engine.
//!
//! Routes:
//! - `GET /api/health` → `{"status":"ok"}`
//! - `GET /api/models` → effective registry entries, in order
//! - `GET /api/categories` → usage-category catalog
//! - `POST /api/match` → `{query, threshold?}` resolved against the registry
//! - `POST /api/generate` → `{request, format}` rendered into a card
//!
//! Bodies that do not parse get 400; requests that parse but cannot become a
//! card get 422 with `{code, message}`.

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use cardwriter::api::{handle_generate, handle_match, ErrorBody, GenerateRequest, MatchRequest};
use cardwriter::Engine;
use serde::de::DeserializeOwned;
use serde_json::json;
use tower_http::cors::CorsLayer;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub engine: Engine,
    /// Origin allowed to call the API from a browser; `None` disables CORS.
    pub allowed_origin: Option<String>,
}

type AppState = Arc<Engine>;

fn error(status: StatusCode, code: &str, message: impl Into<String>) -> Response {
    (
        status,
        Json(ErrorBody {
            code: code.to_string(),
            message: message.into(),
        }),
    )
        .into_response()
}

fn parse_body<T: DeserializeOwned>(body: &Bytes) -> Result<T, Box<Response>> {
    serde_json::from_slice(body)
        .map_err(|e| Box::new(error(StatusCode::BAD_REQUEST, "malformed_body", e.to_string())))
}

async fn health() -> Json<serde_json::Value> {
    Json(json!({"status": "ok"}))
}

async fn models(State(engine): State<AppState>) -> Response {
    Json(engine.registry().entries()).into_response()
}

async fn categories(State(engine): State<AppState>) -> Response {
    Json(engine.catalog().categories()).into_response()
}

async fn match_name(State(engine): State<AppState>, body: Bytes) -> Response {
    let req: MatchRequest = match parse_body(&body) {
        Ok(r) => r,
        Err(resp) => return *resp,
    };
    match handle_match(&engine, &req) {
        Ok(m) => Json(m).into_response(),
        Err(msg) => error(StatusCode::BAD_REQUEST, "invalid_threshold", msg),
    }
}

async fn generate(State(engine): State<AppState>, body: Bytes) -> Response {
    let req: GenerateRequest = match parse_body(&body) {
        Ok(r) => r,
        Err(resp) => return *resp,
    };
    match handle_generate(&engine, &req) {
        Ok(resp) => Json(resp).into_response(),
        Err(e) => {
            let body = ErrorBody::from(&e);
            (StatusCode::UNPROCESSABLE_ENTITY, Json(body)).into_response()
        }
    }
}

pub fn router(config: ServiceConfig) -> Router {
    let mut app = Router::new()
        .route("/api/health", get(health))
        .route("/api/models", get(models))
        .route("/api/categories", get(categories))
        .route("/api/match", post(match_name))
        .route("/api/generate", post(generate))
        .with_state(Arc::new(config.engine));
    if let Some(origin) = config.allowed_origin {
        if let Ok(value) = HeaderValue::from_str(&origin) {
            app = app.layer(
                CorsLayer::new()
                    .allow_origin(value)
                    .allow_methods([axum::http::Method::GET, axum::http::Method::POST])
                    .allow_headers([axum::http::header::CONTENT_TYPE]),
            );
        }
    }
    app
}

/// Serves until the listener fails.
pub async fn serve(listener: tokio::net::TcpListener, config: ServiceConfig) -> std::io::Result<()> {
    axum::serve(listener, router(config)).await
}
