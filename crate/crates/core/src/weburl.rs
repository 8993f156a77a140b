//! Acceptance rule for URLs stored in records and cards.
//!
//! A URL must parse as an absolute `http`/`https` URL with a host and be
//! spelled only with characters RFC 3986 allows unencoded. The character
//! restriction keeps URLs safe to emit verbatim inside `\url{}` and Markdown
//! link destinations.

use url::Url;

fn is_uri_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || "-._~:/?#[]@!$&'()*+,;=%".contains(c)
}

/// Returns a human-readable reason when `s` is not acceptable.
pub(crate) fn check(s: &str) -> Result<(), String> {
    if let Some(bad) = s.chars().find(|c| !is_uri_char(*c)) {
        return Err(format!("contains character {bad:?} not allowed in a URL"));
    }
    let parsed = Url::parse(s).map_err(|e| format!("is not an absolute URL ({e})"))?;
    match parsed.scheme() {
        "http" | "https" => {}
        other => return Err(format!("has scheme {other:?}, expected http or https")),
    }
    if parsed.host_str().is_none_or(str::is_empty) {
        return Err("has no host".into());
    }
    Ok(())
}

/// Whether `s` is an acceptable card URL.
pub fn is_web_url(s: &str) -> bool {
    check(s).is_ok()
}
