//! Flat `key = value` text: one pair per line, `#` starts a comment.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Entry {
    pub line: usize,
    pub key: String,
    pub value: String,
}

pub(crate) fn parse(text: &str) -> Result<Vec<Entry>> {
    let mut out: Vec<Entry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| Error::ConfigParse {
            line,
            msg: format!("expected `key = value`, found `{content}`"),
        })?;
        let key = key.trim();
        if key.is_empty() {
            return Err(Error::ConfigParse { line, msg: "empty key".into() });
        }
        if out.iter().any(|e| e.key == key) {
            return Err(Error::ConfigParse { line, msg: format!("duplicate key `{key}`") });
        }
        out.push(Entry {
            line,
            key: key.to_string(),
            value: value.trim().to_string(),
        });
    }
    Ok(out)
}

pub(crate) fn value<T: std::str::FromStr>(e: &Entry) -> Result<T> {
    e.value.parse().map_err(|_| Error::ConfigParse {
        line: e.line,
        msg: format!("invalid value `{}` for `{}`", e.value, e.key),
    })
}

/// Re-tags a domain error with the line it came from.
pub(crate) fn at_line<T>(e: &Entry, r: Result<T>) -> Result<T> {
    r.map_err(|err| Error::ConfigParse {
        line: e.line,
        msg: format!("`{}`: {err}", e.key),
    })
}
