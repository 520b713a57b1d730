use std::fmt;

use crate::text::{content_lines, split_list};
use crate::{Error, Result};

/// An element of a base order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Int(i64),
    Name(String),
    Pair(Box<Label>, Box<Label>),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(n) => write!(f, "{n}"),
            Label::Name(s) => f.write_str(s),
            Label::Pair(a, b) => write!(f, "<{a},{b}>"),
        }
    }
}

impl Label {
    /// Parses `3`, `name` or `<x,y>`.
    pub fn parse(s: &str) -> Result<Label> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('<').and_then(|r| r.strip_suffix('>')) {
            let mut depth = 0;
            for (i, c) in inner.char_indices() {
                match c {
                    '<' => depth += 1,
                    '>' => depth -= 1,
                    ',' if depth == 0 => {
                        return Ok(Label::Pair(
                            Box::new(Label::parse(&inner[..i])?),
                            Box::new(Label::parse(&inner[i + 1..])?),
                        ))
                    }
                    _ => {}
                }
            }
            return Err(Error::input(format!("pair label needs two components: {s:?}")));
        }
        if let Ok(n) = s.parse::<i64>() {
            return Ok(Label::Int(n));
        }
        if crate::words::is_identifier(s) {
            return Ok(Label::Name(s.to_string()));
        }
        Err(Error::input(format!("bad label {s:?}")))
    }
}

/// A preorder on labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseOrder {
    /// Non-negative integers in their usual order.
    Naturals,
    /// A finite preorder, stored as its reflexive-transitive closure.
    Table { elements: Vec<String>, leq: Vec<Vec<bool>> },
    /// `p ≤ q ⟺ p ≤₁ q ∧ ¬(q ≤₁ p) ∨ (p ≡₁ q ∧ p ≤₂ q)` on pairs.
    Product(Box<BaseOrder>, Box<BaseOrder>),
}

/// The lexicographic combination of two orders on pairs.
pub fn product_order(o1: BaseOrder, o2: BaseOrder) -> BaseOrder {
    BaseOrder::Product(Box::new(o1), Box::new(o2))
}

impl BaseOrder {
    /// A finite preorder from `a < b` and `a = b` relations.
    pub fn table(elements: Vec<String>, less: &[(String, String)], equal: &[(String, String)]) -> Result<Self> {
        let n = elements.len();
        let idx = |s: &str| {
            elements
                .iter()
                .position(|e| e == s)
                .ok_or_else(|| Error::input(format!("unknown element {s:?}")))
        };
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        let mut strict = Vec::new();
        for (a, b) in less {
            let (i, j) = (idx(a)?, idx(b)?);
            leq[i][j] = true;
            strict.push((i, j));
        }
        for (a, b) in equal {
            let (i, j) = (idx(a)?, idx(b)?);
            leq[i][j] = true;
            leq[j][i] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some((i, j)) = strict.into_iter().find(|&(i, j)| leq[j][i]) {
            return Err(Error::input(format!(
                "relations force {} < {} < ... <= {}: strict cycle",
                elements[i], elements[j], elements[i]
            )));
        }
        Ok(BaseOrder::Table { elements, leq })
    }

    /// The chain `0 < 1 < … < n-1` as a table.
    pub fn chain(n: usize) -> Self {
        let elements: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let less: Vec<(String, String)> = (1..n).map(|i| (elements[i - 1].clone(), elements[i].clone())).collect();
        Self::table(elements, &less, &[]).expect("a chain has no cycles")
    }

    /// Parses `int`, `A*B` products, or a table text with an `elements:`
    /// line followed by `a < b` / `a = b` lines.
    pub fn parse(spec: &str) -> Result<Self> {
        let t = spec.trim();
        if !t.contains('\n') && !t.contains(':') {
            return Self::parse_product(t);
        }
        let mut elements = None;
        let (mut less, mut equal) = (Vec::new(), Vec::new());
        for (ln, line) in content_lines(spec) {
            if let Some(rest) = line.strip_prefix("elements:") {
                elements = Some(split_list(rest));
            } else if let Some((a, b)) = line.split_once('<') {
                less.push((a.trim().to_string(), b.trim().to_string()));
            } else if let Some((a, b)) = line.split_once('=') {
                equal.push((a.trim().to_string(), b.trim().to_string()));
            } else {
                return Err(Error::parse(ln, "expected elements:, `a < b` or `a = b`"));
            }
        }
        let elements = elements.ok_or_else(|| Error::input("order table needs an elements: line"))?;
        Self::table(elements, &less, &equal)
    }

    fn parse_product(t: &str) -> Result<Self> {
        match t.split_once('*') {
            Some((a, b)) => Ok(product_order(Self::parse_product(a)?, Self::parse_product(b)?)),
            None if t == "int" => Ok(BaseOrder::Naturals),
            None if t.starts_with("chain") => {
                let n = t[5..]
                    .parse::<usize>()
                    .map_err(|_| Error::input(format!("bad chain length in {t:?}")))?;
                Ok(Self::chain(n))
            }
            None => Err(Error::input(format!("unknown order {t:?}"))),
        }
    }

    pub fn contains(&self, l: &Label) -> bool {
        match (self, l) {
            (BaseOrder::Naturals, Label::Int(n)) => *n >= 0,
            (BaseOrder::Table { elements, .. }, Label::Name(s)) => elements.contains(s),
            (BaseOrder::Product(a, b), Label::Pair(x, y)) => a.contains(x) && b.contains(y),
            _ => false,
        }
    }

    pub fn check(&self, l: &Label) -> Result<()> {
        if self.contains(l) {
            Ok(())
        } else {
            Err(Error::input(format!("label {l} is outside the base order")))
        }
    }

    /// `a ≤ b`; both labels must lie in the domain.
    pub fn leq(&self, a: &Label, b: &Label) -> bool {
        match (self, a, b) {
            (BaseOrder::Naturals, Label::Int(x), Label::Int(y)) => x <= y,
            (BaseOrder::Table { elements, leq }, Label::Name(x), Label::Name(y)) => {
                let i = elements.iter().position(|e| e == x);
                let j = elements.iter().position(|e| e == y);
                matches!((i, j), (Some(i), Some(j)) if leq[i][j])
            }
            (BaseOrder::Product(o1, o2), Label::Pair(x1, x2), Label::Pair(y1, y2)) => {
                o1.less(x1, y1) || (o1.equivalent(x1, y1) && o2.leq(x2, y2))
            }
            _ => false,
        }
    }

    pub fn less(&self, a: &Label, b: &Label) -> bool {
        self.leq(a, b) && !self.leq(b, a)
    }

    pub fn equivalent(&self, a: &Label, b: &Label) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    /// Every element strictly below `l`, when the order is finite.
    pub fn strictly_below(&self, l: &Label) -> Option<Vec<Label>> {
        Some(self.elements()?.into_iter().filter(|x| self.less(x, l)).collect())
    }

    /// All elements of a finite order.
    pub fn elements(&self) -> Option<Vec<Label>> {
        match self {
            BaseOrder::Naturals => None,
            BaseOrder::Table { elements, .. } => Some(elements.iter().cloned().map(Label::Name).collect()),
            BaseOrder::Product(a, b) => {
                let (xs, ys) = (a.elements()?, b.elements()?);
                Some(
                    xs.iter()
                        .flat_map(|x| ys.iter().map(move |y| Label::Pair(Box::new(x.clone()), Box::new(y.clone()))))
                        .collect(),
                )
            }
        }
    }
}
