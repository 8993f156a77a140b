//! JSON form of a card request and its resolution against a registry and
//! catalog. The CLI and the HTTP service both go through [`Engine`], so the
//! same request produces the same bytes on either surface.

use std::fmt;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::card::PaperCard;
use crate::catalog::{builtin_catalog, Catalog};
use crate::composer::{
    compose_card, AccessWindow, CardRequest, CustomModel, DisclaimerSet, ModelSelection,
    RequestShape,
};
use crate::error::CardError;
use crate::matcher::{best_match, MatchOutcome, MatchResult, Threshold};
use crate::registry::{builtin_registry, ModelRegistry};
use crate::renderer::{render, RenderFormat, RenderedCard};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireCustomModel {
    pub model: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provider: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub url: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<String>,
}

/// `{"name": "..."}` to resolve against the registry, or `{"custom": {...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum WireModel {
    Name(String),
    Custom(WireCustomModel),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireDisclaimers {
    #[serde(default)]
    pub d1_rights: bool,
    #[serde(default)]
    pub d2_ethics: bool,
    #[serde(default)]
    pub d3_integrity: bool,
}

impl From<WireDisclaimers> for DisclaimerSet {
    fn from(d: WireDisclaimers) -> Self {
        DisclaimerSet {
            rights: d.d1_rights,
            ethics: d.d2_ethics,
            integrity: d.d3_integrity,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireWindow {
    pub from: NaiveDate,
    pub to: NaiveDate,
}

/// Card request as read from a request file or an HTTP body. Dates are ISO-8601.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireCardRequest {
    #[serde(default)]
    pub no_ai: bool,
    #[serde(default)]
    pub steps: Vec<String>,
    #[serde(default)]
    pub models: Vec<WireModel>,
    #[serde(default)]
    pub disclaimers: WireDisclaimers,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<WireWindow>,
}

impl WireCardRequest {
    pub fn from_json(bytes: &[u8]) -> Result<Self, serde_json::Error> {
        serde_json::from_slice(bytes)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    FuzzyMatch {
        query: String,
        model: String,
        score: f64,
    },
    NoDisclaimers,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::FuzzyMatch {
                query,
                model,
                score,
            } => write!(f, "model {query:?} fuzzy-matched ({score:.3}) to {model:?}"),
            Warning::NoDisclaimers => {
                f.write_str("no disclaimers selected; the card has no disclaimer section")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Resolved {
    pub request: CardRequest,
    pub warnings: Vec<Warning>,
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub card: PaperCard,
    pub rendered: RenderedCard,
    pub warnings: Vec<Warning>,
}

/// Effective registry, catalog and default threshold. Immutable once built.
#[derive(Debug, Clone)]
pub struct Engine {
    registry: ModelRegistry,
    catalog: Catalog,
    threshold: Threshold,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new(builtin_registry(), builtin_catalog(), Threshold::DEFAULT)
    }
}

impl Engine {
    pub fn new(registry: ModelRegistry, catalog: Catalog, threshold: Threshold) -> Self {
        Self {
            registry,
            catalog,
            threshold,
        }
    }

    pub fn registry(&self) -> &ModelRegistry {
        &self.registry
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    pub fn threshold(&self) -> Threshold {
        self.threshold
    }

    pub fn match_name(&self, query: &str, threshold: Option<Threshold>) -> MatchResult {
        best_match(&self.registry, query, threshold.unwrap_or(self.threshold))
    }

    /// Structural checks first, then step and model resolution, so a
    /// conflicting or incomplete request is reported as such even when it
    /// also names unknown steps or models.
    pub fn resolve(&self, wire: &WireCardRequest) -> Result<Resolved, CardError> {
        let window = wire.window.map(|w| AccessWindow {
            from: w.from,
            to: w.to,
        });
        let disclaimers = DisclaimerSet::from(wire.disclaimers);
        RequestShape {
            no_ai: wire.no_ai,
            steps: wire.steps.len(),
            models: wire.models.len(),
            window,
            disclaimers,
        }
        .check()?;

        let steps = wire
            .steps
            .iter()
            .map(|id| {
                self.catalog
                    .get(id)
                    .cloned()
                    .ok_or_else(|| CardError::UnknownStep(id.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;

        let mut warnings = Vec::new();
        let mut models = Vec::with_capacity(wire.models.len());
        for m in &wire.models {
            let selection = match m {
                WireModel::Name(name) => {
                    if name.trim().is_empty() {
                        return Err(CardError::EmptyModelName);
                    }
                    match self.match_name(name, None).outcome {
                        MatchOutcome::Exact(entry) => ModelSelection::Registry(entry),
                        MatchOutcome::Fuzzy { entry, score } => {
                            warnings.push(Warning::FuzzyMatch {
                                query: name.clone(),
                                model: entry.model().to_string(),
                                score,
                            });
                            ModelSelection::Registry(entry)
                        }
                        MatchOutcome::None => return Err(CardError::UnresolvedModel(name.clone())),
                    }
                }
                WireModel::Custom(c) => ModelSelection::Custom(CustomModel::new(
                    &c.model,
                    c.provider.as_deref(),
                    c.url.as_deref(),
                    c.terms.as_deref(),
                    c.version.as_deref(),
                )?),
            };
            models.push(selection);
        }

        if !wire.no_ai && !disclaimers.any() {
            warnings.push(Warning::NoDisclaimers);
        }

        Ok(Resolved {
            request: CardRequest {
                no_ai: wire.no_ai,
                steps,
                models,
                disclaimers,
                window,
            },
            warnings,
        })
    }

    pub fn generate(
        &self,
        wire: &WireCardRequest,
        format: RenderFormat,
    ) -> Result<Generated, CardError> {
        let Resolved { request, warnings } = self.resolve(wire)?;
        let card = compose_card(&request)?;
        let rendered = render(&card, format);
        Ok(Generated {
            card,
            rendered,
            warnings,
        })
    }
}
