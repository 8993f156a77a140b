//! Request and response bodies of the HTTP API.

use serde::{Deserialize, Serialize};

use crate::card::SectionKind;
use crate::error::CardError;
use crate::matcher::{MatchResult, Threshold};
use crate::registry::ModelEntry;
use crate::renderer::RenderFormat;
use crate::request::{Engine, WireCardRequest};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchRequest {
    pub query: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchResponse {
    pub kind: String,
    pub query: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub score: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry: Option<serde_json::Value>,
}

impl From<&MatchResult> for MatchResponse {
    fn from(m: &MatchResult) -> Self {
        MatchResponse {
            kind: m.kind().as_str().to_string(),
            query: m.query.clone(),
            model: m.entry().map(|e| e.model().to_string()),
            score: m.score(),
            entry: m
                .entry()
                .map(|e| serde_json::to_value(e).expect("entries serialize")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerateRequest {
    pub request: WireCardRequest,
    #[serde(default)]
    pub format: RenderFormat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionBody {
    pub kind: SectionKind,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerateResponse {
    pub card: String,
    pub sections: Vec<SectionBody>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

impl From<&CardError> for ErrorBody {
    fn from(e: &CardError) -> Self {
        ErrorBody {
            code: e.code().to_string(),
            message: e.to_string(),
        }
    }
}

/// Runs a match request. Out-of-range thresholds are reported as `Err`.
pub fn handle_match(engine: &Engine, req: &MatchRequest) -> Result<MatchResponse, String> {
    let threshold = req
        .threshold
        .map(Threshold::new)
        .transpose()
        .map_err(|e| e.to_string())?;
    Ok(MatchResponse::from(&engine.match_name(&req.query, threshold)))
}

pub fn handle_generate(engine: &Engine, req: &GenerateRequest) -> Result<GenerateResponse, CardError> {
    let g = engine.generate(&req.request, req.format)?;
    Ok(GenerateResponse {
        card: g.rendered.body,
        sections: g
            .card
            .sections()
            .iter()
            .map(|s| SectionBody {
                kind: s.kind(),
                text: s.text().to_string(),
            })
            .collect(),
        warnings: g.warnings.iter().map(ToString::to_string).collect(),
    })
}

pub fn list_models(engine: &Engine) -> &[ModelEntry] {
    engine.registry().entries()
}
