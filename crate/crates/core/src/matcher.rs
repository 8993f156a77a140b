//! Resolution of typed model names against the registry.
//!
//! Names are compared after [`normalize_name`]. An exact normalized match
//! always wins; otherwise the entry with the highest normalized Levenshtein
//! similarity is offered if it reaches the threshold.

use std::fmt;

use thiserror::Error;

use crate::registry::{ModelEntry, ModelRegistry};

/// Lowercases and drops every character that is not a letter or digit.
pub fn normalize_name(raw: &str) -> String {
    raw.chars()
        .flat_map(char::to_lowercase)
        .filter(|c| c.is_alphanumeric())
        .collect()
}

/// Unit-cost edit distance over chars, single-row dynamic programming.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, ca) in a.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let above = row[j + 1];
            let cost = usize::from(ca != cb);
            row[j + 1] = (diag + cost).min(above + 1).min(row[j] + 1);
            diag = above;
        }
    }
    row[b.len()]
}

fn similarity_normalized(a: &str, b: &str) -> f64 {
    let longest = a.chars().count().max(b.chars().count());
    if longest == 0 {
        return 1.0;
    }
    1.0 - levenshtein(a, b) as f64 / longest as f64
}

/// `1 - lev / max_len` over normalized names; 1.0 when both are empty.
pub fn similarity(a: &str, b: &str) -> f64 {
    similarity_normalized(&normalize_name(a), &normalize_name(b))
}

/// Minimum similarity for a fuzzy match, in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Threshold(f64);

impl Threshold {
    pub const DEFAULT: Threshold = Threshold(0.75);

    pub fn new(value: f64) -> Result<Self, ThresholdError> {
        if value > 0.0 && value <= 1.0 {
            Ok(Self(value))
        } else {
            Err(ThresholdError(value))
        }
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

impl Default for Threshold {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("match threshold must be in (0, 1], got {0}")]
pub struct ThresholdError(pub f64);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchKind {
    Exact,
    Fuzzy,
    None,
}

impl MatchKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MatchKind::Exact => "exact",
            MatchKind::Fuzzy => "fuzzy",
            MatchKind::None => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MatchOutcome {
    Exact(ModelEntry),
    Fuzzy { entry: ModelEntry, score: f64 },
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchResult {
    pub query: String,
    pub outcome: MatchOutcome,
}

impl MatchResult {
    pub fn kind(&self) -> MatchKind {
        match self.outcome {
            MatchOutcome::Exact(_) => MatchKind::Exact,
            MatchOutcome::Fuzzy { .. } => MatchKind::Fuzzy,
            MatchOutcome::None => MatchKind::None,
        }
    }

    pub fn entry(&self) -> Option<&ModelEntry> {
        match &self.outcome {
            MatchOutcome::Exact(e) | MatchOutcome::Fuzzy { entry: e, .. } => Some(e),
            MatchOutcome::None => None,
        }
    }

    pub fn score(&self) -> Option<f64> {
        match self.outcome {
            MatchOutcome::Exact(_) => Some(1.0),
            MatchOutcome::Fuzzy { score, .. } => Some(score),
            MatchOutcome::None => None,
        }
    }
}

/// Resolves `query` against `registry`. Ties go to the earlier entry.
pub fn best_match(registry: &ModelRegistry, query: &str, threshold: Threshold) -> MatchResult {
    let key = normalize_name(query);
    let outcome = if key.is_empty() {
        MatchOutcome::None
    } else {
        let names: Vec<String> = registry.entries().iter().map(|e| e.normalized_name()).collect();
        if let Some(i) = names.iter().position(|n| *n == key) {
            MatchOutcome::Exact(registry.entries()[i].clone())
        } else {
            let mut best: Option<(usize, f64)> = None;
            for (i, name) in names.iter().enumerate() {
                let score = similarity_normalized(&key, name);
                if best.is_none_or(|(_, s)| score > s) {
                    best = Some((i, score));
                }
            }
            match best {
                Some((i, score)) if score >= threshold.value() => MatchOutcome::Fuzzy {
                    entry: registry.entries()[i].clone(),
                    score,
                },
                _ => MatchOutcome::None,
            }
        }
    };
    MatchResult {
        query: query.to_string(),
        outcome,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::builtin_registry;
    use proptest::prelude::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_name("GPT-4"), "gpt4");
        assert_eq!(normalize_name("Claude 3 Opus"), "claude3opus");
        assert_eq!(normalize_name(""), "");
        assert_eq!(normalize_name("GPT-3.5"), "gpt35");
        assert_eq!(normalize_name("Ünïcode–Ⅻ"), "ünïcodeⅻ");
    }

    #[test]
    fn levenshtein_small_cases() {
        assert_eq!(levenshtein("", ""), 0);
        assert_eq!(levenshtein("abc", ""), 3);
        assert_eq!(levenshtein("", "ab"), 2);
        assert_eq!(levenshtein("kitten", "sitting"), 3);
        assert_eq!(levenshtein("claud3opus", "claude3opus"), 1);
    }

    #[test]
    fn similarity_examples() {
        assert_eq!(similarity("GPT-4", "gpt 4"), 1.0);
        assert_eq!(similarity("x", "x"), 1.0);
        assert_eq!(similarity("", "--"), 1.0);
        assert_eq!(similarity("Claud 3 Opus", "Claude 3 Opus"), 1.0 - 1.0 / 11.0);
    }

    #[test]
    fn best_match_examples() {
        let r = builtin_registry();
        let t = Threshold::DEFAULT;

        let m = best_match(&r, "gpt-4", t);
        assert_eq!(m.kind(), MatchKind::Exact);
        assert_eq!(m.entry().unwrap().model(), "GPT-4");
        assert_eq!(m.score(), Some(1.0));

        let m = best_match(&r, "Claud 3 Opus", t);
        assert_eq!(m.kind(), MatchKind::Fuzzy);
        assert_eq!(m.entry().unwrap().model(), "Claude 3 Opus");
        assert!((m.score().unwrap() - 0.909_090_909_090_909_1).abs() < 1e-12);

        let m = best_match(&r, "Midjourney", t);
        assert_eq!(m.kind(), MatchKind::None);
        assert!(m.entry().is_none());
        assert_eq!(m.score(), None);

        assert_eq!(best_match(&r, "  -- ", t).kind(), MatchKind::None);
        assert_eq!(best_match(&ModelRegistry::empty(), "gpt", t).kind(), MatchKind::None);
    }

    #[test]
    fn ties_go_to_first_entry() {
        use crate::registry::ModelEntry;
        let mk = |n: &str| {
            ModelEntry::new(n, "p", "https://a.example/", "https://a.example/t", "2024.01.01".parse().unwrap())
                .unwrap()
        };
        let r = ModelRegistry::from_entries(vec![mk("abcd"), mk("abce")], "t").unwrap();
        let m = best_match(&r, "abcx", Threshold::new(0.5).unwrap());
        assert_eq!(m.entry().unwrap().model(), "abcd");
    }

    #[test]
    fn threshold_bounds() {
        assert!(Threshold::new(0.0).is_err());
        assert!(Threshold::new(1.01).is_err());
        assert!(Threshold::new(f64::NAN).is_err());
        assert!(Threshold::new(1.0).is_ok());
    }

    proptest! {
        #[test]
        fn similarity_is_symmetric(a in ".{0,12}", b in ".{0,12}") {
            prop_assert_eq!(similarity(&a, &b), similarity(&b, &a));
        }

        #[test]
        fn similarity_range_and_identity(a in "[a-zA-Z0-9 .-]{0,12}", b in "[a-zA-Z0-9 .-]{0,12}") {
            let s = similarity(&a, &b);
            prop_assert!((0.0..=1.0).contains(&s));
            prop_assert_eq!(s == 1.0, normalize_name(&a) == normalize_name(&b));
        }

        #[test]
        fn normalize_is_idempotent(s in any::<String>()) {
            let once = normalize_name(&s);
            prop_assert_eq!(normalize_name(&once), once);
        }

        #[test]
        fn query_normalization_invariance(q in "[a-zA-Z0-9 .-]{0,16}") {
            let r = builtin_registry();
            let a = best_match(&r, &q, Threshold::DEFAULT);
            let b = best_match(&r, &normalize_name(&q), Threshold::DEFAULT);
            prop_assert_eq!(a.outcome, b.outcome);
        }

        #[test]
        fn match_result_invariants(q in "[a-zA-Z0-9 .-]{0,16}", t in 0.01f64..=1.0) {
            let r = builtin_registry();
            let threshold = Threshold::new(t).unwrap();
            let m = best_match(&r, &q, threshold);
            match &m.outcome {
                MatchOutcome::Exact(_) => {}
                MatchOutcome::Fuzzy { score, .. } => {
                    prop_assert!(*score >= t && *score < 1.0);
                }
                MatchOutcome::None => prop_assert!(m.entry().is_none()),
            }
        }

        #[test]
        fn exact_dominates(idx in 0usize..5, noise in "[ .-]{0,3}") {
            let r = builtin_registry();
            let name = format!("{noise}{}{noise}", r.entries()[idx].model().to_uppercase());
            let m = best_match(&r, &name, Threshold::new(0.01).unwrap());
            prop_assert_eq!(m.kind(), MatchKind::Exact);
            prop_assert_eq!(m.entry().unwrap(), &r.entries()[idx]);
        }
    }
}
