//! Model metadata dictionary backing the model sentence of a card.
//!
//! The on-disk form is a JSON array of flat records with exactly the keys
//! `model`, `provider`, `url`, `terms` and `version`. Serialization writes one
//! record per line so that community edits produce small diffs.

use std::fmt;
use std::io::Read;
use std::str::FromStr;

use chrono::{Datelike, NaiveDate};
use serde::Deserialize;
use thiserror::Error;

use crate::matcher::normalize_name;
use crate::weburl;

const BUILTIN_MODELS: &str = include_str!("../data/models.json");

/// A calendar date written as `YYYY.MM.DD`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VersionDate(NaiveDate);

impl VersionDate {
    pub fn new(date: NaiveDate) -> Self {
        Self(date)
    }

    pub fn date(&self) -> NaiveDate {
        self.0
    }
}

impl fmt::Display for VersionDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:04}.{:02}.{:02}",
            self.0.year(),
            self.0.month(),
            self.0.day()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("expected a date formatted as YYYY.MM.DD, got {0:?}")]
pub struct VersionDateError(String);

impl FromStr for VersionDate {
    type Err = VersionDateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || VersionDateError(s.to_string());
        let b = s.as_bytes();
        let shaped = b.len() == 10
            && b[4] == b'.'
            && b[7] == b'.'
            && b.iter()
                .enumerate()
                .all(|(i, c)| i == 4 || i == 7 || c.is_ascii_digit());
        if !shaped {
            return Err(err());
        }
        let year: i32 = s[0..4].parse().map_err(|_| err())?;
        let month: u32 = s[5..7].parse().map_err(|_| err())?;
        let day: u32 = s[8..10].parse().map_err(|_| err())?;
        NaiveDate::from_ymd_opt(year, month, day)
            .map(VersionDate)
            .ok_or_else(err)
    }
}

/// Which field of a record failed validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryField {
    Model,
    Provider,
    Url,
    Terms,
    Version,
}

impl EntryField {
    pub fn as_str(&self) -> &'static str {
        match self {
            EntryField::Model => "model",
            EntryField::Provider => "provider",
            EntryField::Url => "url",
            EntryField::Terms => "terms",
            EntryField::Version => "version",
        }
    }
}

impl fmt::Display for EntryField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("field `{field}` {reason}")]
pub struct EntryError {
    pub field: EntryField,
    pub reason: String,
}

/// One dictionary record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelEntry {
    model: String,
    provider: String,
    url: String,
    terms: String,
    version: VersionDate,
}

impl ModelEntry {
    /// Builds a validated record. `model` and `provider` are trimmed.
    pub fn new(
        model: &str,
        provider: &str,
        url: &str,
        terms: &str,
        version: VersionDate,
    ) -> Result<Self, EntryError> {
        let model = model.trim();
        if model.is_empty() {
            return Err(EntryError {
                field: EntryField::Model,
                reason: "must not be empty".into(),
            });
        }
        let provider = provider.trim();
        if provider.is_empty() {
            return Err(EntryError {
                field: EntryField::Provider,
                reason: "must not be empty".into(),
            });
        }
        weburl::check(url).map_err(|reason| EntryError {
            field: EntryField::Url,
            reason,
        })?;
        weburl::check(terms).map_err(|reason| EntryError {
            field: EntryField::Terms,
            reason,
        })?;
        Ok(Self {
            model: model.to_string(),
            provider: provider.to_string(),
            url: url.to_string(),
            terms: terms.to_string(),
            version,
        })
    }

    pub fn model(&self) -> &str {
        &self.model
    }

    pub fn provider(&self) -> &str {
        &self.provider
    }

    pub fn url(&self) -> &str {
        &self.url
    }

    pub fn terms(&self) -> &str {
        &self.terms
    }

    pub fn version(&self) -> VersionDate {
        self.version
    }

    pub fn normalized_name(&self) -> String {
        normalize_name(&self.model)
    }

    /// The record as a single-line JSON object in the dictionary's key order.
    pub fn to_json_line(&self) -> String {
        let q = |s: &str| serde_json::to_string(s).expect("strings always serialize");
        format!(
            "{{\"model\": {}, \"provider\": {}, \"url\": {}, \"terms\": {}, \"version\": {}}}",
            q(&self.model),
            q(&self.provider),
            q(&self.url),
            q(&self.terms),
            q(&self.version.to_string()),
        )
    }
}

impl serde::Serialize for ModelEntry {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("ModelEntry", 5)?;
        s.serialize_field("model", &self.model)?;
        s.serialize_field("provider", &self.provider)?;
        s.serialize_field("url", &self.url)?;
        s.serialize_field("terms", &self.terms)?;
        s.serialize_field("version", &self.version.to_string())?;
        s.end()
    }
}

/// Record as it appears on disk, before validation.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawEntry {
    pub model: String,
    pub provider: String,
    pub url: String,
    pub terms: String,
    pub version: String,
}

impl RawEntry {
    pub(crate) fn validate(&self) -> Result<ModelEntry, EntryError> {
        let version = self.version.parse().map_err(|e: VersionDateError| EntryError {
            field: EntryField::Version,
            reason: e.to_string(),
        })?;
        ModelEntry::new(&self.model, &self.provider, &self.url, &self.terms, version)
    }
}

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("registry parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid registry entry #{index} ({model:?}): {source}")]
    Invalid {
        index: usize,
        model: String,
        #[source]
        source: EntryError,
    },
    #[error(
        "conflicting registry entries #{first_index} ({first:?}) and #{second_index} ({second:?}) \
         both normalize to {normalized:?}"
    )]
    Conflict {
        first_index: usize,
        first: String,
        second_index: usize,
        second: String,
        normalized: String,
    },
    #[error("cannot read registry: {0}")]
    Io(#[from] std::io::Error),
}

/// An ordered, immutable set of records with unique normalized names.
#[derive(Debug, Clone)]
pub struct ModelRegistry {
    entries: Vec<ModelEntry>,
    source_label: String,
}

impl ModelRegistry {
    /// Builds a registry, rejecting entries whose normalized names collide.
    pub fn from_entries(
        entries: Vec<ModelEntry>,
        source_label: impl Into<String>,
    ) -> Result<Self, RegistryError> {
        let mut seen: Vec<(String, usize)> = Vec::with_capacity(entries.len());
        for (index, entry) in entries.iter().enumerate() {
            let normalized = entry.normalized_name();
            if let Some((_, first_index)) = seen.iter().find(|(n, _)| *n == normalized) {
                return Err(RegistryError::Conflict {
                    first_index: *first_index,
                    first: entries[*first_index].model.clone(),
                    second_index: index,
                    second: entry.model.clone(),
                    normalized,
                });
            }
            seen.push((normalized, index));
        }
        Ok(Self {
            entries,
            source_label: source_label.into(),
        })
    }

    pub fn empty() -> Self {
        Self {
            entries: Vec::new(),
            source_label: "empty".into(),
        }
    }

    pub fn entries(&self) -> &[ModelEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }

    /// Looks an entry up by normalized name.
    pub fn get(&self, name: &str) -> Option<&ModelEntry> {
        let key = normalize_name(name);
        self.entries.iter().find(|e| e.normalized_name() == key)
    }
}

/// Reads and validates a registry from a JSON byte stream.
pub fn load_registry<R: Read>(mut source: R) -> Result<ModelRegistry, RegistryError> {
    let mut buf = Vec::new();
    source.read_to_end(&mut buf)?;
    registry_from_slice(&buf, "stream")
}

/// Parses a registry from an in-memory document; `label` is kept for diagnostics.
pub fn registry_from_slice(bytes: &[u8], label: &str) -> Result<ModelRegistry, RegistryError> {
    let raw: Vec<RawEntry> = serde_json::from_slice(bytes).map_err(|e| RegistryError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let entries = raw
        .iter()
        .enumerate()
        .map(|(index, r)| {
            r.validate().map_err(|source| RegistryError::Invalid {
                index,
                model: r.model.clone(),
                source,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    ModelRegistry::from_entries(entries, label)
}

/// The compiled-in seed dictionary.
pub fn builtin_registry() -> ModelRegistry {
    registry_from_slice(BUILTIN_MODELS.as_bytes(), "builtin")
        .expect("embedded models.json is valid")
}

/// Overlay-wins merge. Colliding entries are replaced in place; new overlay
/// entries are appended in overlay order.
pub fn merge(base: &ModelRegistry, overlay: &ModelRegistry) -> ModelRegistry {
    let mut entries = base.entries.clone();
    for incoming in &overlay.entries {
        let key = incoming.normalized_name();
        match entries.iter_mut().find(|e| e.normalized_name() == key) {
            Some(slot) => *slot = incoming.clone(),
            None => entries.push(incoming.clone()),
        }
    }
    ModelRegistry {
        entries,
        source_label: format!("{}+{}", base.source_label, overlay.source_label),
    }
}

/// Writes the registry in its on-disk form, one record per line.
pub fn serialize_registry(registry: &ModelRegistry) -> Vec<u8> {
    if registry.entries.is_empty() {
        return b"[]\n".to_vec();
    }
    let lines: Vec<String> = registry
        .entries
        .iter()
        .map(|e| format!("  {}", e.to_json_line()))
        .collect();
    format!("[\n{}\n]\n", lines.join(",\n")).into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;

    const PAPER_GPT4: &str = r#"{"model": "GPT-4", "provider": "OpenAI", "url": "https://chat.openai.com/", "terms": "https://openai.com/policies/terms-of-use", "version": "2024.02.13"}"#;

    fn entry(name: &str, version: &str) -> ModelEntry {
        ModelEntry::new(
            name,
            "Acme",
            "https://example.org/",
            "https://example.org/terms",
            version.parse().unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn loads_single_sample_record() {
        let doc = format!("[{PAPER_GPT4}]");
        let r = load_registry(doc.as_bytes()).unwrap();
        assert_eq!(r.len(), 1);
        let e = &r.entries()[0];
        assert_eq!(e.model(), "GPT-4");
        assert_eq!(e.provider(), "OpenAI");
        assert_eq!(e.url(), "https://chat.openai.com/");
        assert_eq!(e.terms(), "https://openai.com/policies/terms-of-use");
        assert_eq!(e.version().to_string(), "2024.02.13");
    }

    #[test]
    fn empty_list_is_valid() {
        let r = load_registry(&b"[]"[..]).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn normalized_duplicates_conflict() {
        let doc = r#"[
          {"model": "GPT-4", "provider": "OpenAI", "url": "https://a.example/", "terms": "https://a.example/t", "version": "2024.02.13"},
          {"model": "gpt 4", "provider": "OpenAI", "url": "https://a.example/", "terms": "https://a.example/t", "version": "2024.02.13"}
        ]"#;
        match load_registry(doc.as_bytes()) {
            Err(RegistryError::Conflict {
                first,
                second,
                normalized,
                ..
            }) => {
                assert_eq!(first, "GPT-4");
                assert_eq!(second, "gpt 4");
                assert_eq!(normalized, "gpt4");
            }
            other => panic!("expected conflict, got {other:?}"),
        }
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = load_registry(&b"[\n  {\"model\": }\n]"[..]).unwrap_err();
        match err {
            RegistryError::Parse { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_field_is_rejected() {
        let doc = r#"[{"model": "X", "provider": "Y", "url": "https://x.example/", "terms": "https://x.example/t", "version": "2024.01.01", "notes": "hi"}]"#;
        assert!(matches!(
            load_registry(doc.as_bytes()),
            Err(RegistryError::Parse { .. })
        ));
    }

    #[test]
    fn invalid_fields_name_entry_and_field() {
        let cases = [
            (r#"{"model": "  ", "provider": "Y", "url": "https://x.example/", "terms": "https://x.example/t", "version": "2024.01.01"}"#, EntryField::Model),
            (r#"{"model": "X", "provider": "", "url": "https://x.example/", "terms": "https://x.example/t", "version": "2024.01.01"}"#, EntryField::Provider),
            (r#"{"model": "X", "provider": "Y", "url": "ftp://x.example/", "terms": "https://x.example/t", "version": "2024.01.01"}"#, EntryField::Url),
            (r#"{"model": "X", "provider": "Y", "url": "https://x.example/", "terms": "x.example/t", "version": "2024.01.01"}"#, EntryField::Terms),
            (r#"{"model": "X", "provider": "Y", "url": "https://x.example/", "terms": "https://x.example/t", "version": "2024-01-01"}"#, EntryField::Version),
            (r#"{"model": "X", "provider": "Y", "url": "https://x.example/", "terms": "https://x.example/t", "version": "2023.02.29"}"#, EntryField::Version),
        ];
        for (record, field) in cases {
            let doc = format!("[{record}]");
            match load_registry(doc.as_bytes()) {
                Err(RegistryError::Invalid { index, source, .. }) => {
                    assert_eq!(index, 0);
                    assert_eq!(source.field, field, "{record}");
                }
                other => panic!("expected validation error for {record}, got {other:?}"),
            }
        }
    }

    #[test]
    fn version_date_format() {
        assert!("2024.2.13".parse::<VersionDate>().is_err());
        assert!("2024.02.1x".parse::<VersionDate>().is_err());
        assert!("2024.02.13 ".parse::<VersionDate>().is_err());
        let d: VersionDate = "0999.01.09".parse().unwrap();
        assert_eq!(d.to_string(), "0999.01.09");
    }

    #[test]
    fn builtin_has_the_five_listed_models() {
        let r = builtin_registry();
        let names: Vec<_> = r.entries().iter().map(|e| e.model()).collect();
        assert_eq!(
            names,
            ["GPT-3.5", "GPT-4", "Gemini", "Claude 3 Sonnet", "Claude 3 Opus"]
        );
        let gpt4 = r.get("GPT-4").unwrap();
        assert_eq!(gpt4.provider(), "OpenAI");
        assert_eq!(gpt4.version().to_string(), "2024.02.13");
        assert_eq!(gpt4.to_json_line(), PAPER_GPT4);
        assert!(r.get("Claude 3 Opus").is_some());
    }

    #[test]
    fn serialized_builtin_contains_sample_record_verbatim() {
        let bytes = serialize_registry(&builtin_registry());
        let text = String::from_utf8(bytes).unwrap();
        assert!(text.contains(PAPER_GPT4));
        assert_eq!(text, BUILTIN_MODELS);
    }

    #[test]
    fn serialize_empty() {
        assert_eq!(serialize_registry(&ModelRegistry::empty()), b"[]\n");
    }

    #[test]
    fn merge_replaces_in_place_and_appends() {
        let base = builtin_registry();
        let overlay = ModelRegistry::from_entries(
            vec![
                ModelEntry::new(
                    "GPT-4",
                    "OpenAI",
                    "https://chat.openai.com/",
                    "https://openai.com/policies/terms-of-use",
                    "2024.06.01".parse().unwrap(),
                )
                .unwrap(),
                entry("Llama 3", "2024.04.18"),
            ],
            "overlay",
        )
        .unwrap();
        let merged = merge(&base, &overlay);
        assert_eq!(merged.len(), 6);
        assert_eq!(merged.entries()[1].model(), "GPT-4");
        assert_eq!(merged.entries()[1].version().to_string(), "2024.06.01");
        assert_eq!(merged.entries()[5].model(), "Llama 3");

        let same = merge(&base, &ModelRegistry::empty());
        assert_eq!(same.entries(), base.entries());
    }

    #[test]
    fn merge_keeps_overlay_display_name() {
        let base = ModelRegistry::from_entries(vec![entry("GPT-4", "2024.01.01")], "a").unwrap();
        let overlay = ModelRegistry::from_entries(vec![entry("gpt 4", "2024.01.02")], "b").unwrap();
        let merged = merge(&base, &overlay);
        assert_eq!(merged.len(), 1);
        assert_eq!(merged.entries()[0].model(), "gpt 4");
    }
}
