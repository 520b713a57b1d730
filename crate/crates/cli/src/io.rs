//! Input loading, cap resolution and report rendering.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use clap::ValueEnum;
use gogkit::config::Caps;
use gogkit::picore::FiniteGroup;
use gogkit::text::parse_assoc;
use gogkit::words::{Alphabet, Word};
use gogkit::{Error, Result};

/// Environment variable holding `key=value` cap overrides separated by `,`.
pub const CAPS_ENV: &str = "GOGKIT_CAPS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Compact,
    Verbose,
}

pub struct Ctx {
    pub caps: Caps,
    pub format: Format,
    pub seed: u64,
}

/// Defaults, then the config file, then the environment, then `--cap` flags.
pub fn resolve_caps(config: Option<&str>, env: Option<&str>, flags: &[String]) -> Result<Caps> {
    let mut caps = Caps::default();
    if let Some(path) = config {
        caps.apply_config_text(&read_file(path)?)?;
    }
    let mut apply = |kv: &str| -> Result<()> {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::input(format!("cap override {kv:?} is not key=value")))?;
        caps.set(k, v)
    };
    for kv in env.unwrap_or("").split(',').map(str::trim).filter(|s| !s.is_empty()) {
        apply(kv)?;
    }
    for kv in flags {
        apply(kv)?;
    }
    Ok(caps)
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {path}: {e}")))
}

/// `@path` reads a file; anything else is inline text with `|` between lines.
pub fn load_text(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => read_file(path),
        None => Ok(arg.replace('|', "\n")),
    }
}

/// `cyclic:N`, `symmetric:K`, or a group table as accepted by [`load_text`].
pub fn load_group(arg: Option<&str>) -> Result<Arc<FiniteGroup>> {
    let Some(arg) = arg else {
        return Ok(Arc::new(FiniteGroup::cyclic(1)));
    };
    let num = |s: &str| {
        s.parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::input(format!("bad group size in {arg:?}")))
    };
    if let Some(n) = arg.strip_prefix("cyclic:") {
        return Ok(Arc::new(FiniteGroup::cyclic(num(n)?)));
    }
    if let Some(k) = arg.strip_prefix("symmetric:") {
        let k = num(k)?;
        if k > 5 {
            return Err(Error::input("symmetric groups are limited to degree 5"));
        }
        return Ok(Arc::new(FiniteGroup::symmetric(k)));
    }
    Ok(Arc::new(FiniteGroup::parse(&load_text(arg)?)?))
}

fn token_name(tok: &str) -> &str {
    tok.split_once('^').map_or(tok, |(n, _)| n)
}

/// The alphabet from `--gens`, or else the sorted generator names used.
pub fn alphabet_for(gens: Option<&str>, words: &[&str]) -> Result<Alphabet> {
    if let Some(g) = gens {
        return Alphabet::new(gogkit::text::split_list(g));
    }
    let names: BTreeSet<&str> = words
        .iter()
        .flat_map(|w| w.split_whitespace())
        .filter(|t| *t != "1")
        .map(token_name)
        .collect();
    Alphabet::new(names)
}

pub fn words(alphabet: &Alphabet, texts: &[&str]) -> Result<Vec<Word>> {
    texts.iter().map(|t| alphabet.parse_word(t)).collect()
}

/// Comma-separated word list.
pub fn word_list(alphabet: &Alphabet, text: &str) -> Result<Vec<Word>> {
    gogkit::text::split_list(text).iter().map(|t| alphabet.parse_word(t)).collect()
}

pub fn assoc(text: Option<&str>) -> Result<Vec<(String, String)>> {
    parse_assoc(text.unwrap_or(""))
}

pub fn int_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>> {
    gogkit::text::split_list(text)
        .iter()
        .map(|s| s.parse::<T>().map_err(|_| Error::input(format!("bad integer {s:?}"))))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Affirmative,
    Negative,
}

enum Item {
    Field(String, String),
    Block(String, String),
}

/// Labelled output lines; compact mode prints values only.
pub struct Report {
    items: Vec<Item>,
    pub status: Status,
}

impl Report {
    pub fn new() -> Self {
        Report { items: Vec::new(), status: Status::Affirmative }
    }

    pub fn field(mut self, key: &str, value: impl ToString) -> Self {
        self.items.push(Item::Field(key.to_string(), value.to_string()));
        self
    }

    pub fn block(mut self, key: &str, text: impl ToString) -> Self {
        self.items.push(Item::Block(key.to_string(), text.to_string()));
        self
    }

    pub fn negative(mut self) -> Self {
        self.status = Status::Negative;
        self
    }

    pub fn verdict(self, ok: bool) -> Self {
        if ok {
            self
        } else {
            self.negative()
        }
    }

    pub fn render(&self, format: Format) -> String {
        let mut s = String::new();
        for item in &self.items {
            match (item, format) {
                (Item::Field(_, v), Format::Compact) => {
                    let _ = writeln!(s, "{v}");
                }
                (Item::Field(k, v), Format::Verbose) => {
                    let _ = writeln!(s, "{k}: {v}");
                }
                (Item::Block(k, t), f) => {
                    if f == Format::Verbose {
                        let _ = writeln!(s, "{k}:");
                    }
                    s.push_str(t);
                    if !t.ends_with('\n') {
                        s.push('\n');
                    }
                }
            }
        }
        s
    }
}
