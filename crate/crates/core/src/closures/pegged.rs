use std::sync::Arc;

use crate::picore::FiniteGroup;
use crate::text::{content_lines, Fields};
use crate::{Error, Result};

/// Aligned bases `(pg, m_j)` of `M` and `(pg, m̄_j)` of `M̄` with
/// `m_j = m̄_j^{k_j}`, recorded through their images in `Q`.
#[derive(Debug, Clone)]
pub struct PeggedAbelianPair {
    q: Arc<FiniteGroup>,
    peg: usize,
    roots: Vec<(u64, usize)>,
}

impl PeggedAbelianPair {
    /// `roots[j] = (k_j, π(m̄_j))`.
    pub fn new(q: Arc<FiniteGroup>, peg: usize, roots: Vec<(u64, usize)>) -> Result<Self> {
        if peg >= q.order() || roots.iter().any(|&(_, p)| p >= q.order()) {
            return Err(Error::input("pi image outside the group"));
        }
        if roots.iter().any(|&(k, _)| k == 0) {
            return Err(Error::input("root degrees must be positive"));
        }
        Ok(PeggedAbelianPair { q, peg, roots })
    }

    /// Parses `peg pi=<element>` followed by `root k=<int> bar=<element>`
    /// lines.
    pub fn parse(text: &str, q: Arc<FiniteGroup>) -> Result<Self> {
        let mut peg = None;
        let mut roots = Vec::new();
        for (ln, line) in content_lines(text) {
            let f = Fields::parse(line).map_err(|e| e.at_line(ln))?;
            match f.positional.first().map(String::as_str) {
                Some("peg") if peg.is_none() => {
                    f.only(&["pi"]).map_err(|e| e.at_line(ln))?;
                    peg = Some(q.parse_element(f.require("pi").map_err(|e| e.at_line(ln))?).map_err(|e| e.at_line(ln))?);
                }
                Some("root") => {
                    f.only(&["k", "bar"]).map_err(|e| e.at_line(ln))?;
                    let k = f
                        .require("k")
                        .and_then(|k| k.parse::<u64>().map_err(|_| Error::input("k must be a positive integer")))
                        .map_err(|e| e.at_line(ln))?;
                    let bar = q
                        .parse_element(f.require("bar").map_err(|e| e.at_line(ln))?)
                        .map_err(|e| e.at_line(ln))?;
                    roots.push((k, bar));
                }
                _ => return Err(Error::parse(ln, "expected `peg pi=..` once, then `root k=.. bar=..` lines")),
            }
        }
        let peg = peg.ok_or_else(|| Error::input("missing peg line"))?;
        Self::new(q, peg, roots)
    }

    pub fn q(&self) -> &Arc<FiniteGroup> {
        &self.q
    }

    pub fn peg(&self) -> usize {
        self.peg
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    pub fn degree(&self, j: usize) -> u64 {
        self.roots[j].0
    }

    pub fn root_pi(&self, j: usize) -> usize {
        self.roots[j].1
    }

    /// `π(m_j) = π(m̄_j)^{k_j}`.
    pub fn basis_pi(&self, j: usize) -> usize {
        let (k, p) = self.roots[j];
        self.q.pow(p, k as i64)
    }
}

/// With `f(m_j) = f(pg)^{e_j}`, the exponents `e_j / k_j` of the extension
/// to `M̄`, when every root exists and is marked correctly.
pub fn extension_exists(pair: &PeggedAbelianPair, exps: &[i64]) -> Result<Option<Vec<i64>>> {
    if exps.len() != pair.rank() {
        return Err(Error::input(format!(
            "{} exponents given for {} basis elements",
            exps.len(),
            pair.rank()
        )));
    }
    let mut out = Vec::with_capacity(exps.len());
    for (j, &e) in exps.iter().enumerate() {
        let k = pair.degree(j) as i64;
        if e % k != 0 {
            return Ok(None);
        }
        let t = e / k;
        if pair.q.pow(pair.peg, t) != pair.root_pi(j) {
            return Ok(None);
        }
        out.push(t);
    }
    Ok(Some(out))
}
