//! Plain text, Markdown and LaTeX output of a card.
//!
//! Layout for every format: heading, blank line, one paragraph per section
//! separated by a single blank line, trailing newline. URLs are emitted
//! through each format's link mechanism and never escaped.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::card::{PaperCard, Segment};

pub const DEFAULT_HEADING: &str = "PaperCard";
pub const LATEX_PREAMBLE: &str = "% requires \\usepackage{url} or hyperref";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RenderFormat {
    #[default]
    Plain,
    Markdown,
    Latex,
}

impl RenderFormat {
    pub const ALL: [RenderFormat; 3] = [RenderFormat::Plain, RenderFormat::Markdown, RenderFormat::Latex];

    pub fn as_str(&self) -> &'static str {
        match self {
            RenderFormat::Plain => "plain",
            RenderFormat::Markdown => "markdown",
            RenderFormat::Latex => "latex",
        }
    }
}

impl fmt::Display for RenderFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown format {0:?}, expected plain, markdown or latex")]
pub struct UnknownFormat(pub String);

impl FromStr for RenderFormat {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(RenderFormat::Plain),
            "markdown" => Ok(RenderFormat::Markdown),
            "latex" => Ok(RenderFormat::Latex),
            other => Err(UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedCard {
    pub format: RenderFormat,
    pub heading: String,
    pub body: String,
}

pub fn escape_latex(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '#' | '$' | '%' | '&' | '_' | '{' | '}' => {
                out.push('\\');
                out.push(c);
            }
            '\\' => out.push_str("\\textbackslash{}"),
            '~' => out.push_str("\\textasciitilde{}"),
            '^' => out.push_str("\\textasciicircum{}"),
            _ => out.push(c),
        }
    }
    out
}

pub fn escape_markdown(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        if matches!(c, '*' | '_' | '[' | ']' | '(' | ')' | '#' | '`' | '\\') {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

fn parens_balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

fn markdown_link(href: &str) -> String {
    let text: String = href
        .chars()
        .flat_map(|c| match c {
            '[' | ']' => vec!['\\', c],
            _ => vec![c],
        })
        .collect();
    if parens_balanced(href) {
        format!("[{text}]({href})")
    } else {
        format!("[{text}](<{href}>)")
    }
}

fn paragraph(segments: &[Segment<'_>], format: RenderFormat) -> String {
    segments
        .iter()
        .map(|seg| match (format, seg) {
            (RenderFormat::Plain, Segment::Text(t) | Segment::Url(t)) => t.to_string(),
            (RenderFormat::Markdown, Segment::Text(t)) => escape_markdown(t),
            (RenderFormat::Markdown, Segment::Url(u)) => markdown_link(u),
            (RenderFormat::Latex, Segment::Text(t)) => escape_latex(t),
            (RenderFormat::Latex, Segment::Url(u)) => format!("\\url{{{u}}}"),
        })
        .collect()
}

pub fn render(card: &PaperCard, format: RenderFormat) -> RenderedCard {
    render_with_heading(card, format, DEFAULT_HEADING)
}

/// Like [`render`] with a custom title; the title is escaped per format.
pub fn render_with_heading(card: &PaperCard, format: RenderFormat, heading: &str) -> RenderedCard {
    let heading_line = match format {
        RenderFormat::Plain => heading.to_string(),
        RenderFormat::Markdown => format!("## {}", escape_markdown(heading)),
        RenderFormat::Latex => format!("\\subsection*{{{}}}", escape_latex(heading)),
    };
    let mut blocks = vec![heading_line];
    blocks.extend(
        card.sections()
            .iter()
            .map(|s| paragraph(&s.segments(), format)),
    );
    let mut body = String::new();
    if format == RenderFormat::Latex {
        body.push_str(LATEX_PREAMBLE);
        body.push('\n');
    }
    body.push_str(&blocks.join("\n\n"));
    body.push('\n');
    RenderedCard {
        format,
        heading: heading.to_string(),
        body,
    }
}
