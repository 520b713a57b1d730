//! Unvalidated graph-of-groups data and its text format.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::picore::FiniteGroup;
use crate::text::{content_lines, parse_assoc, split_list, Fields};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Free,
    Abelian,
    Surface,
    /// Given by generators and relators; produced by collapse and fold.
    Presented,
}

impl VertexKind {
    pub fn keyword(self) -> &'static str {
        match self {
            VertexKind::Free => "free",
            VertexKind::Abelian => "abelian",
            VertexKind::Surface => "surface",
            VertexKind::Presented => "presented",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "free" => VertexKind::Free,
            "abelian" => VertexKind::Abelian,
            "surface" => VertexKind::Surface,
            "presented" => VertexKind::Presented,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeTag {
    Rigid,
    AbelianType,
    SurfaceType,
}

impl TypeTag {
    pub fn keyword(self) -> &'static str {
        match self {
            TypeTag::Rigid => "rigid",
            TypeTag::AbelianType => "abelian",
            TypeTag::SurfaceType => "surface",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "rigid" => TypeTag::Rigid,
            "abelian" => TypeTag::AbelianType,
            "surface" => TypeTag::SurfaceType,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSpec {
    pub name: String,
    pub kind: VertexKind,
    pub gens: Vec<String>,
    /// Designated peripheral sub-basis.
    pub per: Vec<String>,
    pub tag: Option<TypeTag>,
    /// Relators in the shared word grammar (presented and surface vertices).
    pub rels: Vec<String>,
}

impl VertexSpec {
    pub fn new(name: &str, kind: VertexKind, gens: &[&str]) -> Self {
        VertexSpec {
            name: name.into(),
            kind,
            gens: gens.iter().map(|s| s.to_string()).collect(),
            per: vec![],
            tag: None,
            rels: vec![],
        }
    }
}

/// An edge stored once; the reverse orientation is written `~name`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpec {
    pub name: String,
    pub from: String,
    pub to: String,
    /// Edge-group generators as words in the origin vertex group.
    pub egens: Vec<String>,
    /// Their images under the embedding into the terminus vertex group.
    pub image: Vec<String>,
}

impl EdgeSpec {
    pub fn new(name: &str, from: &str, to: &str, egens: &[&str], image: &[&str]) -> Self {
        EdgeSpec {
            name: name.into(),
            from: from.into(),
            to: to.into(),
            egens: egens.iter().map(|s| s.to_string()).collect(),
            image: image.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GogSpec {
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
    pub tree: Vec<String>,
    /// Marking as (generator or Bass-Serre letter, element of Q).
    pub pi: Vec<(String, String)>,
    pub q: Option<Arc<FiniteGroup>>,
    /// Designated constants sub-alphabet.
    pub constants: Vec<String>,
    pub base: Option<String>,
}

fn word_list(s: &str) -> Vec<String> {
    split_list(s)
}

impl GogSpec {
    /// Parses the line format:
    ///
    /// ```text
    /// vertex <name> <free|abelian|surface|presented> gens=<list> [per=<list>] [type=<tag>] [rels=<words>] [pi=<assoc>]
    /// edge <name> <from> <to> egens=<words> image=<words> [pi=<element>]
    /// tree: <edges>
    /// constants: <generators>
    /// base: <vertex>
    /// ```
    pub fn parse(text: &str) -> Result<GogSpec> {
        let mut spec = GogSpec::default();
        let mut saw_tree = false;
        for (ln, line) in content_lines(text) {
            let keyed = |prefix: &str| line.strip_prefix(prefix).map(str::trim);
            if let Some(rest) = keyed("tree:") {
                if saw_tree {
                    return Err(Error::parse(ln, "tree given twice"));
                }
                saw_tree = true;
                spec.tree = split_list(rest);
                continue;
            }
            if let Some(rest) = keyed("constants:") {
                spec.constants.extend(split_list(rest));
                continue;
            }
            if let Some(rest) = keyed("base:") {
                spec.base = Some(rest.to_string());
                continue;
            }
            let f = Fields::parse(line).map_err(|e| e.at_line(ln))?;
            match f.positional.first().map(String::as_str) {
                Some("vertex") => {
                    f.only(&["gens", "per", "type", "rels", "pi"]).map_err(|e| e.at_line(ln))?;
                    let [_, name, kind] = f.positional.as_slice() else {
                        return Err(Error::parse(ln, "expected `vertex <name> <kind>`"));
                    };
                    let kind = VertexKind::parse(kind)
                        .ok_or_else(|| Error::parse(ln, format!("unknown vertex kind {kind:?}")))?;
                    let tag = match f.get("type") {
                        None => None,
                        Some(t) => Some(
                            TypeTag::parse(t.trim())
                                .ok_or_else(|| Error::parse(ln, format!("unknown type tag {t:?}")))?,
                        ),
                    };
                    for (g, e) in parse_assoc(f.get("pi").unwrap_or("")).map_err(|e| e.at_line(ln))? {
                        spec.pi.push((g, e));
                    }
                    spec.vertices.push(VertexSpec {
                        name: name.clone(),
                        kind,
                        gens: split_list(f.require("gens").map_err(|e| e.at_line(ln))?),
                        per: split_list(f.get("per").unwrap_or("")),
                        tag,
                        rels: word_list(f.get("rels").unwrap_or("")),
                    });
                }
                Some("edge") => {
                    f.only(&["egens", "image", "pi"]).map_err(|e| e.at_line(ln))?;
                    let [_, name, from, to] = f.positional.as_slice() else {
                        return Err(Error::parse(ln, "expected `edge <name> <from> <to>`"));
                    };
                    if let Some(p) = f.get("pi") {
                        spec.pi.push((name.clone(), p.trim().to_string()));
                    }
                    let edge = EdgeSpec {
                        name: name.clone(),
                        from: from.clone(),
                        to: to.clone(),
                        egens: word_list(f.get("egens").unwrap_or("")),
                        image: word_list(f.get("image").unwrap_or("")),
                    };
                    if edge.egens.len() != edge.image.len() {
                        return Err(Error::parse(ln, "egens and image differ in length"));
                    }
                    spec.edges.push(edge);
                }
                _ => return Err(Error::parse(ln, "expected vertex, edge, tree:, constants: or base:")),
            }
        }
        if !saw_tree {
            return Err(Error::parse(
                text.lines().count().max(1),
                "missing `tree:` line",
            ));
        }
        Ok(spec)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let pi_of = |name: &str| self.pi.iter().find(|(g, _)| g == name).map(|(_, e)| e.as_str());
        for v in &self.vertices {
            let _ = write!(s, "vertex {} {} gens={}", v.name, v.kind.keyword(), v.gens.join(","));
            if !v.per.is_empty() {
                let _ = write!(s, " per={}", v.per.join(","));
            }
            if let Some(t) = v.tag {
                let _ = write!(s, " type={}", t.keyword());
            }
            if !v.rels.is_empty() {
                let _ = write!(s, " rels={}", v.rels.join(", "));
            }
            let pis: Vec<String> = v
                .gens
                .iter()
                .filter_map(|g| pi_of(g).map(|e| format!("{g}:{e}")))
                .collect();
            if !pis.is_empty() {
                let _ = write!(s, " pi={}", pis.join(","));
            }
            s.push('\n');
        }
        for e in &self.edges {
            let _ = write!(
                s,
                "edge {} {} {} egens={} image={}",
                e.name,
                e.from,
                e.to,
                e.egens.join(", "),
                e.image.join(", ")
            );
            if let Some(p) = pi_of(&e.name) {
                let _ = write!(s, " pi={p}");
            }
            s.push('\n');
        }
        let _ = writeln!(s, "tree: {}", self.tree.join(","));
        if !self.constants.is_empty() {
            let _ = writeln!(s, "constants: {}", self.constants.join(","));
        }
        if let Some(b) = &self.base {
            let _ = writeln!(s, "base: {b}");
        }
        s
    }
}
