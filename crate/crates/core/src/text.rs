//! Shared helpers for the line-oriented text formats.

use crate::{Error, Result};

/// Non-empty lines with `#` comments stripped, paired with 1-based numbers.
pub fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// A line split into leading positional tokens and `key=value` fields.
///
/// A token containing `=` opens a field; following tokens without `=` are
/// appended to that field's value separated by a single space, so word lists
/// such as `egens=a b, c` survive whitespace.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Fields {
    pub positional: Vec<String>,
    pub named: Vec<(String, String)>,
}

impl Fields {
    pub fn parse(line: &str) -> Result<Fields> {
        let mut out = Fields::default();
        for tok in line.split_whitespace() {
            if let Some((k, v)) = tok.split_once('=') {
                if k.is_empty() {
                    return Err(Error::input(format!("field without a key in {tok:?}")));
                }
                if out.named.iter().any(|(n, _)| n == k) {
                    return Err(Error::input(format!("field {k} given twice")));
                }
                out.named.push((k.to_string(), v.to_string()));
            } else if let Some((_, v)) = out.named.last_mut() {
                if !v.is_empty() {
                    v.push(' ');
                }
                v.push_str(tok);
            } else {
                out.positional.push(tok.to_string());
            }
        }
        Ok(out)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.named
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| Error::input(format!("missing field {key}=")))
    }

    /// Rejects any field outside `allowed`.
    pub fn only(&self, allowed: &[&str]) -> Result<()> {
        match self.named.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            Some((k, _)) => Err(Error::input(format!("unknown field {k}="))),
            None => Ok(()),
        }
    }
}

/// Comma-separated list with entries trimmed; an empty string is an empty list.
pub fn split_list(s: &str) -> Vec<String> {
    if s.trim().is_empty() {
        return Vec::new();
    }
    s.split(',').map(|x| x.trim().to_string()).collect()
}

/// Comma-separated `key:value` entries.
pub fn parse_assoc(s: &str) -> Result<Vec<(String, String)>> {
    split_list(s)
        .into_iter()
        .map(|entry| {
            let (k, v) = entry
                .split_once(':')
                .ok_or_else(|| Error::input(format!("expected key:value, got {entry:?}")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}
