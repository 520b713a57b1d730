use std::fmt;
use std::sync::Arc;

use crate::config::Caps;
use crate::picore::FiniteGroup;
use crate::text::{content_lines, parse_assoc, split_list};
use crate::words::{Alphabet, Letter, Word};
use crate::{Error, Result};

/// One `∀x ∃y` block with its `Q`-tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub forall: Vec<usize>,
    pub p: Vec<usize>,
    pub exists: Vec<usize>,
    pub q: Vec<usize>,
}

/// A simple constrained positive sentence: constants, alternating blocks
/// and a system of equations over all of them.
#[derive(Debug, Clone)]
pub struct FormalSolutionProblem {
    alphabet: Alphabet,
    group: Arc<FiniteGroup>,
    constants: Vec<usize>,
    constant_pi: Vec<usize>,
    blocks: Vec<Block>,
    equations: Vec<Word>,
}

/// Outcome of witness verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// A witness word mentions a variable outside its scope.
    Scope(String),
    /// A witness evaluates to the wrong element of `Q`.
    PiMismatch(String),
    /// An equation does not reduce to the identity.
    Equation(String),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        *self == Verdict::Valid
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => f.write_str("valid"),
            Verdict::Scope(m) => write!(f, "scope: {m}"),
            Verdict::PiMismatch(m) => write!(f, "pi-mismatch: {m}"),
            Verdict::Equation(m) => write!(f, "equation: {m}"),
        }
    }
}

fn names_and_elements(rest: &str, q: &FiniteGroup) -> Result<(Vec<String>, Vec<usize>)> {
    let (vars, elems) = match rest.split_once(" in ") {
        Some((v, e)) => (v, Some(e)),
        None => (rest, None),
    };
    let names: Vec<String> = vars
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect();
    let elems = match elems {
        Some(e) => e
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| q.parse_element(s))
            .collect::<Result<Vec<_>>>()?,
        None => vec![q.identity(); names.len()],
    };
    if elems.len() != names.len() {
        return Err(Error::input(format!(
            "{} variables but {} Q-elements",
            names.len(),
            elems.len()
        )));
    }
    Ok((names, elems))
}

impl FormalSolutionProblem {
    /// Parses `constants:`, optional `pi: a:g, ...`, alternating
    /// `forall <vars> [in <elements>]` / `exists <vars> [in <elements>]`
    /// lines and `eq: <word>` lines. Without `q` the marking group is trivial.
    pub fn parse(text: &str, q: Option<Arc<FiniteGroup>>) -> Result<Self> {
        let group = q.unwrap_or_else(|| Arc::new(FiniteGroup::cyclic(1)));
        let mut alphabet = Alphabet::new(Vec::<String>::new())?;
        let mut constants = Vec::new();
        let mut pi_lines: Vec<(usize, String)> = Vec::new();
        let mut blocks: Vec<Block> = Vec::new();
        let mut pending: Option<(Vec<usize>, Vec<usize>)> = None;
        let mut eq_lines: Vec<(usize, String)> = Vec::new();
        for (ln, line) in content_lines(text) {
            let at = |e: Error| e.at_line(ln);
            if let Some(rest) = line.strip_prefix("constants:") {
                if !blocks.is_empty() || pending.is_some() || !constants.is_empty() {
                    return Err(Error::parse(ln, "constants must come first, once"));
                }
                for n in split_list(rest) {
                    constants.push(alphabet.push(&n).map_err(at)?);
                }
            } else if let Some(rest) = line.strip_prefix("pi:") {
                pi_lines.push((ln, rest.to_string()));
            } else if let Some(rest) = line.strip_prefix("eq:") {
                eq_lines.push((ln, rest.trim().to_string()));
            } else if let Some(rest) = line.strip_prefix("forall ") {
                if pending.is_some() {
                    return Err(Error::parse(ln, "forall block without its exists line"));
                }
                let (names, elems) = names_and_elements(rest, &group).map_err(at)?;
                let gens = names.iter().map(|n| alphabet.push(n)).collect::<Result<Vec<_>>>().map_err(at)?;
                pending = Some((gens, elems));
            } else if let Some(rest) = line.strip_prefix("exists ") {
                let (forall, p) = pending.take().unwrap_or_default();
                let (names, elems) = names_and_elements(rest, &group).map_err(at)?;
                let gens = names.iter().map(|n| alphabet.push(n)).collect::<Result<Vec<_>>>().map_err(at)?;
                blocks.push(Block {
                    forall,
                    p,
                    exists: gens,
                    q: elems,
                });
            } else {
                return Err(Error::parse(ln, "expected constants:, pi:, forall, exists or eq:"));
            }
        }
        if let Some((forall, p)) = pending {
            blocks.push(Block {
                forall,
                p,
                exists: vec![],
                q: vec![],
            });
        }
        let mut constant_pi = vec![group.identity(); constants.len()];
        for (ln, rest) in pi_lines {
            for (name, elem) in parse_assoc(&rest).map_err(|e| e.at_line(ln))? {
                let i = constants
                    .iter()
                    .position(|&c| alphabet.name(c) == name)
                    .ok_or_else(|| Error::parse(ln, format!("{name:?} is not a constant")))?;
                constant_pi[i] = group.parse_element(&elem).map_err(|e| e.at_line(ln))?;
            }
        }
        let equations = eq_lines
            .into_iter()
            .map(|(ln, w)| alphabet.parse_word(&w).map_err(|e| e.at_line(ln)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FormalSolutionProblem {
            alphabet,
            group,
            constants,
            constant_pi,
            blocks,
            equations,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn equations(&self) -> &[Word] {
        &self.equations
    }

    /// Parses `var:word, ...` for every existential variable.
    pub fn parse_witness(&self, text: &str) -> Result<Vec<Vec<Word>>> {
        let given = parse_assoc(text)?;
        for (name, _) in &given {
            if !self.blocks.iter().any(|b| b.exists.iter().any(|&g| self.alphabet.name(g) == name)) {
                return Err(Error::input(format!("{name:?} is not an existential variable")));
            }
        }
        self.blocks
            .iter()
            .map(|b| {
                b.exists
                    .iter()
                    .map(|&g| {
                        let name = self.alphabet.name(g);
                        let (_, w) = given
                            .iter()
                            .find(|(n, _)| n == name)
                            .ok_or_else(|| Error::input(format!("no witness for {name}")))?;
                        self.alphabet.parse_word(w)
                    })
                    .collect()
            })
            .collect()
    }

    pub fn format_witness(&self, w: &[Vec<Word>]) -> String {
        let mut parts = Vec::new();
        for (b, ws) in self.blocks.iter().zip(w) {
            for (&g, word) in b.exists.iter().zip(ws) {
                parts.push(format!("{}:{}", self.alphabet.name(g), self.alphabet.format_word(word)));
            }
        }
        parts.join(", ")
    }

    /// Generators a witness of block `j` may use.
    fn scope(&self, j: usize) -> Vec<usize> {
        let mut out = self.constants.clone();
        for b in &self.blocks[..=j] {
            out.extend(&b.forall);
        }
        out.sort_unstable();
        out
    }

    fn pi_assignment(&self) -> Vec<usize> {
        let mut v = vec![self.group.identity(); self.alphabet.rank()];
        for (&c, &p) in self.constants.iter().zip(&self.constant_pi) {
            v[c] = p;
        }
        for b in &self.blocks {
            for (&x, &p) in b.forall.iter().zip(&b.p) {
                v[x] = p;
            }
        }
        v
    }

    fn evaluate(&self, pi: &[usize], w: &Word) -> usize {
        w.letters().iter().fold(self.group.identity(), |acc, l| {
            let x = pi[l.gen()];
            self.group.mul(acc, if l.is_inverse() { self.group.inv(x) } else { x })
        })
    }

    fn substitution(&self, w: &[Vec<Word>]) -> Vec<Word> {
        let mut images: Vec<Word> = (0..self.alphabet.rank()).map(Word::generator).collect();
        for (b, ws) in self.blocks.iter().zip(w) {
            for (&y, word) in b.exists.iter().zip(ws) {
                images[y] = word.clone();
            }
        }
        images
    }
}

/// Scope, `Q`-evaluation and equation checks for a witness tuple.
pub fn verify_scp_witness(prob: &FormalSolutionProblem, w: &[Vec<Word>]) -> Result<Verdict> {
    if w.len() != prob.blocks.len() || prob.blocks.iter().zip(w).any(|(b, ws)| b.exists.len() != ws.len()) {
        return Err(Error::input("witness does not match the existential variables"));
    }
    let a = &prob.alphabet;
    for (j, (b, ws)) in prob.blocks.iter().zip(w).enumerate() {
        let scope = prob.scope(j);
        for (&y, word) in b.exists.iter().zip(ws) {
            if let Some(l) = word.letters().iter().find(|l| scope.binary_search(&l.gen()).is_err()) {
                return Ok(Verdict::Scope(format!(
                    "witness for {} mentions {}",
                    a.name(y),
                    a.name(l.gen())
                )));
            }
        }
    }
    let pi = prob.pi_assignment();
    for (b, ws) in prob.blocks.iter().zip(w) {
        for ((&y, word), &want) in b.exists.iter().zip(ws).zip(&b.q) {
            let got = prob.evaluate(&pi, word);
            if got != want {
                return Ok(Verdict::PiMismatch(format!(
                    "witness for {} evaluates to {}, expected {}",
                    a.name(y),
                    prob.group.element_name(got),
                    prob.group.element_name(want)
                )));
            }
        }
    }
    let images = prob.substitution(w);
    for u in &prob.equations {
        let v = u.substitute(&images);
        if !v.is_identity() {
            return Ok(Verdict::Equation(format!(
                "{} becomes {}",
                a.format_word(u),
                a.format_word(&v)
            )));
        }
    }
    Ok(Verdict::Valid)
}

/// True iff every equation reduces to the identity after `y_i := w_i`.
pub fn verify_merzlyakov_witness(sigma: &[Word], ys: &[usize], w: &[Word]) -> Result<bool> {
    if ys.len() != w.len() {
        return Err(Error::input(format!("{} witnesses for {} variables", w.len(), ys.len())));
    }
    if w.iter().any(|word| word.letters().iter().any(|l| ys.contains(&l.gen()))) {
        return Err(Error::input("witness words may not mention the existential variables"));
    }
    let rank = sigma
        .iter()
        .chain(w)
        .filter_map(Word::max_generator)
        .chain(ys.iter().copied())
        .max()
        .map_or(0, |m| m + 1);
    let mut images: Vec<Word> = (0..rank).map(Word::generator).collect();
    for (&y, word) in ys.iter().zip(w) {
        images[y] = word.clone();
    }
    Ok(sigma.iter().all(|u| u.substitute(&images).is_identity()))
}

/// Reduced words of length at most `len` over `gens`, in shortlex order.
fn shortlex_words(gens: &[usize], len: usize) -> Vec<Word> {
    let mut out = vec![Word::identity()];
    let mut layer = vec![Word::identity()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for &g in gens {
                for inv in [false, true] {
                    let l = Letter::new(g, inv);
                    if w.last() != Some(l.inverse()) {
                        next.push(w.mul(&Word::letter(l)));
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// The first witness in block-major shortlex order with every word of
/// length at most `bound`, or `None` when there is none.
pub fn search_formal_solution(
    prob: &FormalSolutionProblem,
    bound: usize,
    caps: &Caps,
) -> Result<Option<Vec<Vec<Word>>>> {
    if bound > caps.search_length {
        return Err(Error::input(format!(
            "length bound {bound} exceeds the configured cap {}",
            caps.search_length
        )));
    }
    let pi = prob.pi_assignment();
    let mut slots: Vec<Vec<Word>> = Vec::new();
    for (j, b) in prob.blocks.iter().enumerate() {
        let words = shortlex_words(&prob.scope(j), bound);
        for &want in &b.q {
            slots.push(words.iter().filter(|w| prob.evaluate(&pi, w) == want).cloned().collect());
        }
    }
    if slots.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let mut idx = vec![0usize; slots.len()];
    loop {
        let mut flat = idx.iter().zip(&slots).map(|(&i, s)| s[i].clone());
        let tuple: Vec<Vec<Word>> = prob
            .blocks
            .iter()
            .map(|b| flat.by_ref().take(b.exists.len()).collect())
            .collect();
        if verify_scp_witness(prob, &tuple)?.is_valid() {
            return Ok(Some(tuple));
        }
        let mut k = slots.len();
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < slots[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}
