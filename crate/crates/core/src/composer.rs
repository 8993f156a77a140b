//! Fills the card templates from a validated request.
//!
//! A card is either the single no-AI sentence, or a usage sentence, one model
//! sentence per selected model, and the sentences of whichever disclaimers
//! were ticked.

use chrono::{Datelike, NaiveDate};

use crate::card::{PaperCard, Section, SectionBuilder, SectionKind};
use crate::catalog::UsageCategory;
use crate::error::CardError;
use crate::registry::{ModelEntry, VersionDate};
use crate::weburl;

pub const NO_AI_SENTENCE: &str =
    "The authors did not use any assistance from generative AI in writing this manuscript.";

const STEP1_PREFIX: &str =
    "We used machine assistance for the writing of this manuscript, especially in ";

pub const RIGHTS_SENTENCE: &str =
    "We own the rights of the generated text and are accountable for potential conflicts.";
pub const ETHICS_SENTENCE: &str = "We believe the AI-generated texts included in this paper do not have elements that may give rise to ethical issues.";
pub const INTEGRITY_SENTENCE: &str =
    "We inspected the texts thoroughly to check for their academic accuracy and plagiarism.";

/// A model typed by the user that is not (or not taken from) the registry.
/// Only the name is required.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CustomModel {
    model: String,
    provider: Option<String>,
    url: Option<String>,
    terms: Option<String>,
    version: Option<VersionDate>,
}

fn blank_to_none(v: Option<&str>) -> Option<&str> {
    v.map(str::trim).filter(|s| !s.is_empty())
}

impl CustomModel {
    /// Validates and trims the fields; blank optional fields count as absent.
    pub fn new(
        model: &str,
        provider: Option<&str>,
        url: Option<&str>,
        terms: Option<&str>,
        version: Option<&str>,
    ) -> Result<Self, CardError> {
        let model = model.trim();
        if model.is_empty() {
            return Err(CardError::EmptyModelName);
        }
        let check_url = |field, v: Option<&str>| -> Result<Option<String>, CardError> {
            match blank_to_none(v) {
                Some(u) => weburl::check(u)
                    .map(|_| Some(u.to_string()))
                    .map_err(|reason| CardError::InvalidCustomModel { field, reason }),
                None => Ok(None),
            }
        };
        let url = check_url("url", url)?;
        let terms = check_url("terms", terms)?;
        let version = blank_to_none(version)
            .map(|v| {
                v.parse::<VersionDate>()
                    .map_err(|e| CardError::InvalidCustomModel {
                        field: "version",
                        reason: e.to_string(),
                    })
            })
            .transpose()?;
        Ok(Self {
            model: model.to_string(),
            provider: blank_to_none(provider).map(str::to_string),
            url,
            terms,
            version,
        })
    }

    pub fn model(&self) -> &str {
        &self.model
    }
}

impl From<&ModelEntry> for CustomModel {
    fn from(e: &ModelEntry) -> Self {
        Self {
            model: e.model().to_string(),
            provider: Some(e.provider().to_string()),
            url: Some(e.url().to_string()),
            terms: Some(e.terms().to_string()),
            version: Some(e.version()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelSelection {
    Registry(ModelEntry),
    Custom(CustomModel),
}

impl ModelSelection {
    pub fn name(&self) -> &str {
        match self {
            ModelSelection::Registry(e) => e.model(),
            ModelSelection::Custom(c) => c.model(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DisclaimerSet {
    pub rights: bool,
    pub ethics: bool,
    pub integrity: bool,
}

impl DisclaimerSet {
    pub fn any(&self) -> bool {
        self.rights || self.ethics || self.integrity
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AccessWindow {
    pub from: NaiveDate,
    pub to: NaiveDate,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CardRequest {
    pub no_ai: bool,
    pub steps: Vec<UsageCategory>,
    pub models: Vec<ModelSelection>,
    pub disclaimers: DisclaimerSet,
    pub window: Option<AccessWindow>,
}

/// Counts-only view of a request, checkable before steps and models are resolved.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RequestShape {
    pub no_ai: bool,
    pub steps: usize,
    pub models: usize,
    pub window: Option<AccessWindow>,
    pub disclaimers: DisclaimerSet,
}

impl RequestShape {
    pub fn check(&self) -> Result<(), CardError> {
        if self.no_ai {
            let mut conflicting = Vec::new();
            if self.steps > 0 {
                conflicting.push("steps");
            }
            if self.models > 0 {
                conflicting.push("models");
            }
            if self.window.is_some() {
                conflicting.push("window");
            }
            if self.disclaimers.any() {
                conflicting.push("disclaimers");
            }
            if !conflicting.is_empty() {
                return Err(CardError::MutuallyExclusive { conflicting });
            }
            return Ok(());
        }
        let mut missing = Vec::new();
        if self.steps == 0 {
            missing.push("steps");
        }
        if self.models == 0 {
            missing.push("models");
        }
        if self.window.is_none() {
            missing.push("window");
        }
        if !missing.is_empty() {
            return Err(CardError::Incomplete { missing });
        }
        check_window(self.window.as_ref().expect("presence checked above"))
    }
}

fn check_window(w: &AccessWindow) -> Result<(), CardError> {
    if w.from > w.to {
        return Err(CardError::WindowOrder {
            from: w.from,
            to: w.to,
        });
    }
    Ok(())
}

/// Checks the request's structural invariants and hands it back unchanged.
pub fn validate_request(request: CardRequest) -> Result<CardRequest, CardError> {
    RequestShape {
        no_ai: request.no_ai,
        steps: request.steps.len(),
        models: request.models.len(),
        window: request.window,
        disclaimers: request.disclaimers,
    }
    .check()?;
    Ok(request)
}

pub fn compose_no_ai() -> Section {
    Section::new(SectionKind::NoAi, NO_AI_SENTENCE, Vec::new()).expect("constant sentence")
}

/// English list: "a", "a and b", "a, b, and c".
pub fn join_list<S: AsRef<str>>(items: &[S]) -> Result<String, CardError> {
    match items {
        [] => Err(CardError::EmptyList),
        [one] => Ok(one.as_ref().to_string()),
        [a, b] => Ok(format!("{} and {}", a.as_ref(), b.as_ref())),
        [init @ .., last] => {
            let head: Vec<&str> = init.iter().map(AsRef::as_ref).collect();
            Ok(format!("{}, and {}", head.join(", "), last.as_ref()))
        }
    }
}

pub fn compose_step1(steps: &[UsageCategory]) -> Result<Section, CardError> {
    let labels: Vec<&str> = steps.iter().map(|s| s.label.as_str()).collect();
    let text = format!("{STEP1_PREFIX}{}.", join_list(&labels)?);
    Ok(Section::new(SectionKind::Step1, text, Vec::new()).expect("labels are single-line text"))
}

/// `DD/MM/YYYY`, zero-padded.
pub fn format_date(date: NaiveDate) -> String {
    format!("{:02}/{:02}/{:04}", date.day(), date.month(), date.year())
}

fn model_sentence(model: &CustomModel, window: &AccessWindow) -> SectionBuilder {
    let mut b = SectionBuilder::default();
    b.push("We adopted ").push(&model.model);
    if let Some(url) = &model.url {
        b.push(" (url: ").push_url(url).push(")");
    }
    if let Some(version) = &model.version {
        b.push(" version ").push(&version.to_string());
    }
    if let Some(provider) = &model.provider {
        b.push(" provided by ").push(provider);
        if let Some(terms) = &model.terms {
            b.push(" (terms of usage: ").push_url(terms).push(")");
        }
    }
    b.push(", accessed from ")
        .push(&format_date(window.from))
        .push(" to ")
        .push(&format_date(window.to))
        .push(".");
    b
}

pub fn compose_step2(models: &[ModelSelection], window: &AccessWindow) -> Result<Section, CardError> {
    if models.is_empty() {
        return Err(CardError::Incomplete {
            missing: vec!["models"],
        });
    }
    check_window(window)?;
    let mut out = SectionBuilder::default();
    for selection in models {
        let model = match selection {
            ModelSelection::Registry(e) => CustomModel::from(e),
            ModelSelection::Custom(c) => c.clone(),
        };
        if model.model.trim().is_empty() {
            return Err(CardError::EmptyModelName);
        }
        if !out.is_empty() {
            out.push(" ");
        }
        out.append(model_sentence(&model, window));
    }
    out.build(SectionKind::Step2).map_err(|e| CardError::InvalidCustomModel {
        field: "model",
        reason: e.to_string(),
    })
}

/// `None` when no disclaimer is ticked.
pub fn compose_step3(d: DisclaimerSet) -> Option<Section> {
    let sentences: Vec<&str> = [
        (d.rights, RIGHTS_SENTENCE),
        (d.ethics, ETHICS_SENTENCE),
        (d.integrity, INTEGRITY_SENTENCE),
    ]
    .into_iter()
    .filter_map(|(on, s)| on.then_some(s))
    .collect();
    if sentences.is_empty() {
        return None;
    }
    Some(Section::new(SectionKind::Step3, sentences.join(" "), Vec::new()).expect("constant sentences"))
}

pub fn compose_card(request: &CardRequest) -> Result<PaperCard, CardError> {
    let request = validate_request(request.clone())?;
    let sections = if request.no_ai {
        vec![compose_no_ai()]
    } else {
        let window = request.window.expect("validated");
        let mut s = vec![
            compose_step1(&request.steps)?,
            compose_step2(&request.models, &window)?,
        ];
        s.extend(compose_step3(request.disclaimers));
        s
    };
    Ok(PaperCard::new(sections).expect("composer emits sections in canonical order"))
}
