//! Generation of PaperCards: short declarations of how generative AI was
//! used while writing a manuscript.
//!
//! A card is composed from three inputs: the usage steps, the models used
//! (looked up in a metadata [`registry`], with fuzzy [`matcher`] fallback for
//! typed names) and three disclaimer flags. The [`composer`] fills fixed
//! sentence templates and the [`renderer`] writes the result as plain text,
//! Markdown or LaTeX.

pub mod api;
pub mod card;
pub mod catalog;
pub mod composer;
mod error;
pub mod matcher;
pub mod registry;
pub mod renderer;
pub mod request;
mod weburl;

pub use card::{PaperCard, Section, SectionKind, UrlSpan};
pub use catalog::{builtin_catalog, Catalog, UsageCategory};
pub use composer::{
    compose_card, AccessWindow, CardRequest, CustomModel, DisclaimerSet, ModelSelection,
};
pub use error::CardError;
pub use matcher::{best_match, normalize_name, similarity, MatchKind, MatchResult, Threshold};
pub use registry::{builtin_registry, ModelEntry, ModelRegistry, RegistryError, VersionDate};
pub use renderer::{render, RenderFormat, RenderedCard};
pub use request::{Engine, WireCardRequest, WireModel};
pub use weburl::is_web_url;
