use chrono::NaiveDate;
use thiserror::Error;

/// Why a card request could not be turned into a card.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CardError {
    #[error("no-AI declaration cannot be combined with {}", .conflicting.join(", "))]
    MutuallyExclusive { conflicting: Vec<&'static str> },
    #[error("incomplete request: missing {}", .missing.join(", "))]
    Incomplete { missing: Vec<&'static str> },
    #[error("access window starts {from} but ends earlier, {to}")]
    WindowOrder { from: NaiveDate, to: NaiveDate },
    #[error("model name must not be empty")]
    EmptyModelName,
    #[error("custom model field `{field}` {reason}")]
    InvalidCustomModel { field: &'static str, reason: String },
    #[error("cannot join an empty list")]
    EmptyList,
    #[error("unknown usage step {0:?}")]
    UnknownStep(String),
    #[error("model {0:?} does not match any registry entry")]
    UnresolvedModel(String),
}

impl CardError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            CardError::MutuallyExclusive { .. } => "mutually_exclusive",
            CardError::Incomplete { .. } => "incomplete",
            CardError::WindowOrder { .. } => "window_order",
            CardError::EmptyModelName => "empty_model_name",
            CardError::InvalidCustomModel { .. } => "invalid_custom_model",
            CardError::EmptyList => "empty_list",
            CardError::UnknownStep(_) => "unknown_step",
            CardError::UnresolvedModel(_) => "unresolved_model",
        }
    }

    pub fn is_unresolved_model(&self) -> bool {
        matches!(self, CardError::UnresolvedModel(_))
    }
}
