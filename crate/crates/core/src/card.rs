//! The composed card: ordered sections with URL spans marked for renderers.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weburl;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionKind {
    Step1,
    Step2,
    Step3,
    NoAi,
}

impl SectionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SectionKind::Step1 => "step1",
            SectionKind::Step2 => "step2",
            SectionKind::Step3 => "step3",
            SectionKind::NoAi => "no_ai",
        }
    }
}

impl fmt::Display for SectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A URL inside section text, as a half-open byte range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UrlSpan {
    pub start: usize,
    pub end: usize,
    pub href: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CardShapeError {
    #[error("section text must be non-empty single-line text without surrounding whitespace")]
    BadText,
    #[error("url span {start}..{end} is out of bounds, overlapping or unordered")]
    BadSpan { start: usize, end: usize },
    #[error("url span text {found:?} does not equal its href {href:?}")]
    SpanMismatch { found: String, href: String },
    #[error("url span href {href:?} {reason}")]
    BadHref { href: String, reason: String },
    #[error("section order {0:?} is not [no_ai] or [step1, step2, step3?]")]
    BadOrder(Vec<SectionKind>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    kind: SectionKind,
    text: String,
    url_spans: Vec<UrlSpan>,
}

impl Section {
    pub fn new(
        kind: SectionKind,
        text: impl Into<String>,
        url_spans: Vec<UrlSpan>,
    ) -> Result<Self, CardShapeError> {
        let text = text.into();
        if text.is_empty() || text.trim() != text || text.chars().any(char::is_control) {
            return Err(CardShapeError::BadText);
        }
        let mut cursor = 0;
        for span in &url_spans {
            if span.start < cursor
                || span.start >= span.end
                || span.end > text.len()
                || !text.is_char_boundary(span.start)
                || !text.is_char_boundary(span.end)
            {
                return Err(CardShapeError::BadSpan {
                    start: span.start,
                    end: span.end,
                });
            }
            let found = &text[span.start..span.end];
            if found != span.href {
                return Err(CardShapeError::SpanMismatch {
                    found: found.to_string(),
                    href: span.href.clone(),
                });
            }
            weburl::check(&span.href).map_err(|reason| CardShapeError::BadHref {
                href: span.href.clone(),
                reason,
            })?;
            cursor = span.end;
        }
        Ok(Self {
            kind,
            text,
            url_spans,
        })
    }

    pub fn kind(&self) -> SectionKind {
        self.kind
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn url_spans(&self) -> &[UrlSpan] {
        &self.url_spans
    }

    /// Splits the text into alternating plain and URL segments.
    pub fn segments(&self) -> Vec<Segment<'_>> {
        let mut out = Vec::with_capacity(self.url_spans.len() * 2 + 1);
        let mut cursor = 0;
        for span in &self.url_spans {
            if span.start > cursor {
                out.push(Segment::Text(&self.text[cursor..span.start]));
            }
            out.push(Segment::Url(&self.text[span.start..span.end]));
            cursor = span.end;
        }
        if cursor < self.text.len() {
            out.push(Segment::Text(&self.text[cursor..]));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Segment<'a> {
    Text(&'a str),
    Url(&'a str),
}

/// Accumulates section text while recording where URLs land.
#[derive(Debug, Default)]
pub(crate) struct SectionBuilder {
    text: String,
    spans: Vec<UrlSpan>,
}

impl SectionBuilder {
    pub fn push(&mut self, s: &str) -> &mut Self {
        self.text.push_str(s);
        self
    }

    pub fn push_url(&mut self, href: &str) -> &mut Self {
        let start = self.text.len();
        self.text.push_str(href);
        self.spans.push(UrlSpan {
            start,
            end: self.text.len(),
            href: href.to_string(),
        });
        self
    }

    /// Appends another builder's content, shifting its spans.
    pub fn append(&mut self, other: SectionBuilder) -> &mut Self {
        let offset = self.text.len();
        self.text.push_str(&other.text);
        self.spans.extend(other.spans.into_iter().map(|s| UrlSpan {
            start: s.start + offset,
            end: s.end + offset,
            href: s.href,
        }));
        self
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn build(self, kind: SectionKind) -> Result<Section, CardShapeError> {
        Section::new(kind, self.text, self.spans)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperCard {
    sections: Vec<Section>,
}

impl PaperCard {
    pub fn new(sections: Vec<Section>) -> Result<Self, CardShapeError> {
        let kinds: Vec<SectionKind> = sections.iter().map(Section::kind).collect();
        use SectionKind::*;
        let ok = matches!(
            kinds.as_slice(),
            [NoAi] | [Step1, Step2] | [Step1, Step2, Step3]
        );
        if !ok {
            return Err(CardShapeError::BadOrder(kinds));
        }
        Ok(Self { sections })
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }
}
