//! Usage categories offered as checkboxes and inserted into the first
//! sentence of a card.

use std::io::Read;

use serde::{Deserialize, Serialize};
use thiserror::Error;

const BUILTIN_CATEGORIES: &str = include_str!("../data/categories.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UsageCategory {
    pub id: String,
    pub label: String,
    pub description: String,
}

impl UsageCategory {
    pub fn new(id: &str, label: &str, description: &str) -> Self {
        Self {
            id: id.to_string(),
            label: label.to_string(),
            description: description.to_string(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid catalog entry #{index}: {reason}")]
    Invalid { index: usize, reason: String },
    #[error("duplicate category id {id:?} (entries #{first} and #{second})")]
    Duplicate {
        id: String,
        first: usize,
        second: usize,
    },
    #[error("cannot read catalog: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    categories: Vec<UsageCategory>,
}

fn is_token(id: &str) -> bool {
    !id.is_empty()
        && id
            .chars()
            .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-')
}

impl Catalog {
    pub fn new(categories: Vec<UsageCategory>) -> Result<Self, CatalogError> {
        for (index, c) in categories.iter().enumerate() {
            if !is_token(&c.id) {
                return Err(CatalogError::Invalid {
                    index,
                    reason: format!("id {:?} must be a lowercase token of [a-z0-9-]", c.id),
                });
            }
            let label = c.label.trim();
            if label.is_empty() || label != c.label || c.label.chars().any(char::is_control) {
                return Err(CatalogError::Invalid {
                    index,
                    reason: "label must be non-empty single-line text without surrounding whitespace"
                        .into(),
                });
            }
            if let Some(first) = categories[..index].iter().position(|o| o.id == c.id) {
                return Err(CatalogError::Duplicate {
                    id: c.id.clone(),
                    first,
                    second: index,
                });
            }
        }
        Ok(Self { categories })
    }

    pub fn categories(&self) -> &[UsageCategory] {
        &self.categories
    }

    pub fn get(&self, id: &str) -> Option<&UsageCategory> {
        self.categories.iter().find(|c| c.id == id)
    }
}

pub fn catalog_from_slice(bytes: &[u8]) -> Result<Catalog, CatalogError> {
    let categories: Vec<UsageCategory> =
        serde_json::from_slice(bytes).map_err(|e| CatalogError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
    Catalog::new(categories)
}

pub fn load_catalog<R: Read>(mut source: R) -> Result<Catalog, CatalogError> {
    let mut buf = Vec::new();
    source.read_to_end(&mut buf)?;
    catalog_from_slice(&buf)
}

/// The seven shipped categories.
pub fn builtin_catalog() -> Catalog {
    catalog_from_slice(BUILTIN_CATEGORIES.as_bytes()).expect("embedded categories.json is valid")
}
