//! Search caps shared by the enumeration-heavy operations.

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest ball radius accepted by ball discrimination.
    pub ball_radius: usize,
    /// Largest family index examined by ball discrimination.
    pub index_cap: u64,
    /// Largest witness length accepted by formal-solution search.
    pub search_length: usize,
    /// Largest tree accepted by the rooted-tree comparator.
    pub tree_nodes: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            ball_radius: 8,
            index_cap: 10_000,
            search_length: 8,
            tree_nodes: 8,
        }
    }
}

impl Caps {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let parse = |v: &str| -> Result<u64> {
            let n: u64 = v
                .trim()
                .parse()
                .map_err(|_| Error::input(format!("cap {key} needs a positive integer")))?;
            if n == 0 {
                return Err(Error::input(format!("cap {key} must be positive")));
            }
            Ok(n)
        };
        match key.trim() {
            "ball_radius" => self.ball_radius = parse(value)? as usize,
            "index_cap" => self.index_cap = parse(value)?,
            "search_length" => self.search_length = parse(value)? as usize,
            "tree_nodes" => self.tree_nodes = parse(value)? as usize,
            other => return Err(Error::input(format!("unknown cap {other:?}"))),
        }
        Ok(())
    }

    /// Reads a flat `key = value` file; `#` starts a comment.
    pub fn apply_config_text(&mut self, text: &str) -> Result<()> {
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(no + 1, "expected key = value"))?;
            self.set(k, v).map_err(|e| e.at_line(no + 1))?;
        }
        Ok(())
    }
}
