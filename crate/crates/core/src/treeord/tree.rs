use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;

use super::order::{BaseOrder, Label};
use crate::config::Caps;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Node {
    name: String,
    label: Label,
    parent: Option<usize>,
    children: Vec<usize>,
}

/// A finite rooted tree whose labels decrease weakly from the root to its
/// children and strictly below them. Node 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledRootedTree {
    nodes: Vec<Node>,
}

impl LabeledRootedTree {
    /// A single root node.
    pub fn root(name: &str, label: Label) -> Self {
        LabeledRootedTree {
            nodes: vec![Node { name: name.to_string(), label, parent: None, children: Vec::new() }],
        }
    }

    /// Adds a child and returns its index. Labels are checked by [`validate`](Self::validate).
    pub fn add_child(&mut self, parent: usize, name: &str, label: Label) -> Result<usize> {
        if parent >= self.nodes.len() {
            return Err(Error::input(format!("no node {parent}")));
        }
        if self.nodes.iter().any(|n| n.name == name) {
            return Err(Error::input(format!("node name {name} used twice")));
        }
        let id = self.nodes.len();
        self.nodes.push(Node { name: name.to_string(), label, parent: Some(parent), children: Vec::new() });
        self.nodes[parent].children.push(id);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.nodes[i].label
    }

    pub fn name(&self, i: usize) -> &str {
        &self.nodes[i].name
    }

    pub fn children(&self, i: usize) -> &[usize] {
        &self.nodes[i].children
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.nodes[i].parent
    }

    /// Checks that every label lies in `base` and that labels decrease
    /// along edges, strictly below the root's children.
    pub fn validate(&self, base: &BaseOrder) -> Result<()> {
        for n in &self.nodes {
            base.check(&n.label)?;
            if let Some(p) = n.parent {
                let pl = &self.nodes[p].label;
                let ok = if p == 0 { base.leq(&n.label, pl) } else { base.less(&n.label, pl) };
                if !ok {
                    return Err(Error::input(format!(
                        "label of {} ({}) must be {} the label of {} ({})",
                        n.name,
                        n.label,
                        if p == 0 { "at most" } else { "strictly below" },
                        self.nodes[p].name,
                        pl
                    )));
                }
            }
        }
        Ok(())
    }

    /// Parses `r=3(a=2(b=1), c=2)`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser { s: text.as_bytes(), pos: 0, text };
        let mut tree: Option<LabeledRootedTree> = None;
        p.node(&mut tree, None)?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(Error::input(format!("trailing text in tree literal at byte {}", p.pos)));
        }
        Ok(tree.expect("parser built a root"))
    }

    fn write_node(&self, i: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = &self.nodes[i];
        write!(f, "{}={}", n.name, n.label)?;
        if !n.children.is_empty() {
            f.write_str("(")?;
            for (k, &c) in n.children.iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                self.write_node(c, f)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }

    fn fresh_name(&self) -> String {
        (0..).map(|k| format!("n{k}")).find(|s| self.nodes.iter().all(|n| &n.name != s)).expect("unbounded")
    }

    /// The tree with the subtree below `i` removed.
    fn prune_below(&self, i: usize) -> Self {
        let mut keep = vec![true; self.len()];
        let mut stack = self.nodes[i].children.clone();
        while let Some(x) = stack.pop() {
            keep[x] = false;
            stack.extend(self.nodes[x].children.iter().copied());
        }
        let mut map = vec![usize::MAX; self.len()];
        let mut nodes = Vec::new();
        for (old, n) in self.nodes.iter().enumerate() {
            if keep[old] {
                map[old] = nodes.len();
                nodes.push(n.clone());
            }
        }
        for n in &mut nodes {
            n.parent = n.parent.map(|p| map[p]);
            n.children = n.children.iter().filter(|&&c| keep[c]).map(|&c| map[c]).collect();
        }
        LabeledRootedTree { nodes }
    }
}

impl fmt::Display for LabeledRootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_node(0, f)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::input(format!("tree literal: {msg} at byte {}", self.pos))
    }

    fn node(&mut self, tree: &mut Option<LabeledRootedTree>, parent: Option<usize>) -> Result<()> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos] != b'=' {
            self.pos += 1;
        }
        if self.pos == self.s.len() {
            return Err(self.err("expected name=label"));
        }
        let name = self.text[start..self.pos].trim();
        if !crate::words::is_identifier(name) {
            return Err(self.err(&format!("bad node name {name:?}")));
        }
        self.pos += 1;
        self.skip_ws();
        let lstart = self.pos;
        let mut depth = 0i32;
        while self.pos < self.s.len() {
            match self.s[self.pos] {
                b'<' => depth += 1,
                b'>' => depth -= 1,
                b'(' | b',' | b')' if depth == 0 => break,
                _ => {}
            }
            self.pos += 1;
        }
        let label = Label::parse(&self.text[lstart..self.pos])?;
        let id = match (tree.as_mut(), parent) {
            (None, _) => {
                *tree = Some(LabeledRootedTree::root(name, label));
                0
            }
            (Some(t), Some(p)) => t.add_child(p, name, label)?,
            (Some(_), None) => unreachable!("only the root has no parent"),
        };
        self.skip_ws();
        if self.pos < self.s.len() && self.s[self.pos] == b'(' {
            self.pos += 1;
            loop {
                self.node(tree, Some(id))?;
                self.skip_ws();
                match self.s.get(self.pos) {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected , or )")),
                }
            }
        }
        Ok(())
    }
}

/// Whether some root-containing subtree `S` of `t1` maps isomorphically,
/// root to root, onto a subtree of `t2` such that:
/// `t1` and `t2` extend `S` and its image, labels never increase along the
/// map and strictly decrease at least once, leaves of `S` with children in
/// `t1` strictly decrease, and every node of `t2` outside the image hangs
/// below the image of a strictly decreased leaf.
pub fn tr_less(t1: &LabeledRootedTree, t2: &LabeledRootedTree, base: &BaseOrder, caps: &Caps) -> Result<bool> {
    for t in [t1, t2] {
        if t.len() > caps.tree_nodes {
            return Err(Error::input(format!(
                "tree with {} nodes exceeds the tree_nodes cap {}",
                t.len(),
                caps.tree_nodes
            )));
        }
        t.validate(base)?;
    }
    Ok(best(t1, 0, t2, 0, base) == Some(true))
}

/// `None` when `u ↦ v` extends to no admissible map of the subtrees below,
/// otherwise whether some such map has a strict decrease.
fn best(t1: &LabeledRootedTree, u: usize, t2: &LabeledRootedTree, v: usize, base: &BaseOrder) -> Option<bool> {
    let (pu, pv) = (t1.label(u), t2.label(v));
    if !base.leq(pv, pu) {
        return None;
    }
    let strict = base.less(pv, pu);
    let (cu, cv) = (t1.children(u), t2.children(v));
    let mut out = None;
    if strict || (cu.is_empty() && cv.is_empty()) {
        out = Some(strict);
    }
    if !cu.is_empty() && cu.len() == cv.len() {
        let m: Vec<Vec<Option<bool>>> =
            cu.iter().map(|&a| cv.iter().map(|&b| best(t1, a, t2, b, base)).collect()).collect();
        if let Some(s) = assign(&m, 0, &mut vec![false; cv.len()]) {
            out = Some(out.unwrap_or(false) || s || strict);
        }
    }
    out
}

/// Best perfect matching of rows to columns: `None` if none exists,
/// otherwise whether one uses a strict entry.
fn assign(m: &[Vec<Option<bool>>], row: usize, used: &mut [bool]) -> Option<bool> {
    if row == m.len() {
        return Some(false);
    }
    let mut out = None;
    for j in 0..used.len() {
        if used[j] {
            continue;
        }
        if let Some(s) = m[row][j] {
            used[j] = true;
            if let Some(rest) = assign(m, row + 1, used) {
                out = Some(out.unwrap_or(false) || s || rest);
            }
            used[j] = false;
            if out == Some(true) {
                break;
            }
        }
    }
    out
}

/// Single-step candidates: lower one label, optionally pruning the subtree
/// below it or attaching a fresh leaf, kept only when valid, within
/// `max_nodes` and strictly below `t` in the comparator.
pub fn successors(t: &LabeledRootedTree, base: &BaseOrder, caps: &Caps) -> Result<Vec<LabeledRootedTree>> {
    let universe = base
        .elements()
        .ok_or_else(|| Error::Unsupported("successor search needs a finite base order".into()))?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |cand: LabeledRootedTree, out: &mut Vec<LabeledRootedTree>| -> Result<()> {
        if cand.len() <= caps.tree_nodes && cand.validate(base).is_ok() && seen.insert(cand.to_string()) {
            if tr_less(t, &cand, base, caps)? {
                out.push(cand);
            }
        }
        Ok(())
    };
    for i in 0..t.len() {
        for l in universe.iter().filter(|l| base.less(l, t.label(i))) {
            let mut lowered = t.clone();
            lowered.nodes[i].label = l.clone();
            push(lowered.clone(), &mut out)?;
            if !t.children(i).is_empty() {
                push(lowered.prune_below(i), &mut out)?;
            }
            for m in &universe {
                let mut grown = lowered.clone();
                let name = grown.fresh_name();
                grown.add_child(i, &name, m.clone())?;
                push(grown, &mut out)?;
            }
        }
    }
    Ok(out)
}

/// A random chain `t ≻ t₁ ≻ t₂ ≻ …` built from [`successors`]. Returns the
/// chain and whether it stopped on its own before `step_cap` steps.
pub fn descending_chain<R: Rng>(
    start: &LabeledRootedTree,
    base: &BaseOrder,
    caps: &Caps,
    step_cap: usize,
    rng: &mut R,
) -> Result<(Vec<LabeledRootedTree>, bool)> {
    start.validate(base)?;
    let mut chain = vec![start.clone()];
    while chain.len() <= step_cap {
        let next = successors(chain.last().expect("nonempty"), base, caps)?;
        if next.is_empty() {
            return Ok((chain, true));
        }
        let k = rng.gen_range(0..next.len());
        chain.push(next[k].clone());
    }
    Ok((chain, false))
}
