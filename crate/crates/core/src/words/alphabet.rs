use std::collections::HashMap;
use std::fmt;

use super::word::{Letter, Word};
use crate::{Error, Result};

/// A ranked, named generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut out = Alphabet {
            names: Vec::new(),
            index: HashMap::new(),
        };
        for name in names {
            out.push(name.as_ref())?;
        }
        Ok(out)
    }

    pub(crate) fn push(&mut self, name: &str) -> Result<usize> {
        if !is_identifier(name) {
            return Err(Error::input(format!("invalid generator name {name:?}")));
        }
        if self.index.contains_key(name) {
            return Err(Error::input(format!("duplicate generator name {name:?}")));
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        Ok(i)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, gen: usize) -> &str {
        &self.names[gen]
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Parses the shared word grammar: whitespace-separated `name` or
    /// `name^k` tokens (k a nonzero integer), with `1` for the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut raw = Vec::new();
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() == 1 && tokens[0] == "1" {
            return Ok(Word::identity());
        }
        for tok in tokens {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let k: i64 = e
                        .parse()
                        .map_err(|_| Error::input(format!("bad exponent in {tok:?}")))?;
                    if k == 0 {
                        return Err(Error::input(format!("zero exponent in {tok:?}")));
                    }
                    (n, k)
                }
                None => (tok, 1),
            };
            let gen = self
                .lookup(name)
                .ok_or_else(|| Error::input(format!("unknown generator {name:?}")))?;
            let letter = Letter::new(gen, exp < 0);
            for _ in 0..exp.unsigned_abs() {
                raw.push(letter);
            }
        }
        Ok(Word::from_letters(raw))
    }

    /// Renders a word in the shared grammar, collapsing runs into powers.
    pub fn format_word(&self, w: &Word) -> String {
        DisplayWord { alphabet: self, word: w }.to_string()
    }

    pub fn display<'a>(&'a self, w: &'a Word) -> DisplayWord<'a> {
        DisplayWord { alphabet: self, word: w }
    }
}

pub struct DisplayWord<'a> {
    alphabet: &'a Alphabet,
    word: &'a Word,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64;
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let name = self
                .alphabet
                .names
                .get(l.gen())
                .map(String::as_str)
                .unwrap_or("?");
            let exp = if l.is_inverse() { -run } else { run };
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i = j;
        }
        Ok(())
    }
}
