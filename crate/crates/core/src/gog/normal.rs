//! Bass-Serre loop normal forms and the word problem.

use super::graph::{Dir, GraphOfGroups};
use super::spec::VertexKind;
use crate::words::Word;
use crate::{Error, Result};

/// `g₀ t_{e₀} g₁ ⋯ t_{e_{m−1}} g_m` along a closed path at the base vertex.
/// Vertex elements are local words of the vertex they sit at; tree edges
/// appear in the path with trivial letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LoopForm {
    pub vertices: Vec<usize>,
    pub elements: Vec<Word>,
    pub edges: Vec<Dir>,
}

impl LoopForm {
    pub fn is_identity(&self) -> bool {
        self.edges.is_empty() && self.elements[0].is_identity()
    }

    pub fn path_length(&self) -> usize {
        self.edges.len()
    }

    /// Number of Bass-Serre letters (non-tree edges) on the path.
    pub fn bass_serre_count(&self, g: &GraphOfGroups) -> usize {
        self.edges.iter().filter(|d| !g.in_tree(d.edge)).count()
    }

    /// The represented element as a word over the combined alphabet.
    pub fn to_word(&self, g: &GraphOfGroups) -> Word {
        let mut out = g.to_global(self.vertices[0], &self.elements[0]);
        for (i, d) in self.edges.iter().enumerate() {
            out = out
                .mul(&g.t_word(*d))
                .mul(&g.to_global(self.vertices[i + 1], &self.elements[i + 1]));
        }
        out
    }

    /// `g0 | e0 | g1 | ...` with `~e` for reversed edges.
    pub fn render(&self, g: &GraphOfGroups) -> String {
        let mut parts = vec![g.alphabet().format_word(&g.to_global(self.vertices[0], &self.elements[0]))];
        for (i, d) in self.edges.iter().enumerate() {
            parts.push(g.dir_name(*d));
            parts.push(
                g.alphabet()
                    .format_word(&g.to_global(self.vertices[i + 1], &self.elements[i + 1])),
            );
        }
        parts.join(" | ")
    }
}

struct Builder<'a> {
    g: &'a GraphOfGroups,
    form: LoopForm,
}

impl Builder<'_> {
    fn admit(&self, v: usize) -> Result<()> {
        match self.g.kind(v) {
            VertexKind::Free | VertexKind::Abelian => Ok(()),
            k => Err(Error::Unsupported(format!(
                "normal form through {} vertex {}",
                k.keyword(),
                self.g.vertex_name(v)
            ))),
        }
    }

    fn current(&self) -> usize {
        *self.form.vertices.last().unwrap()
    }

    fn mul_last(&mut self, w: &Word) {
        let v = self.current();
        let last = self.form.elements.last_mut().unwrap();
        *last = self.g.normalize_local(v, &last.mul(w));
    }

    fn push_edge(&mut self, d: Dir) -> Result<()> {
        let g = self.g;
        if self.form.edges.last() == Some(&d.reverse()) {
            let here = self.current();
            let top = self.form.elements.last().unwrap();
            if let Some(sym) = g.side(d).express(top, g.rank(here))? {
                let pushed = sym.substitute(g.words_at_terminus(d));
                self.form.elements.pop();
                self.form.edges.pop();
                self.form.vertices.pop();
                let v = self.current();
                let last = self.form.elements.last_mut().unwrap();
                *last = g.normalize_local(v, &last.mul(&pushed));
                return Ok(());
            }
        }
        let t = g.terminus(d);
        self.admit(t)?;
        self.form.edges.push(d);
        self.form.vertices.push(t);
        self.form.elements.push(Word::identity());
        Ok(())
    }

    fn travel(&mut self, to: usize) -> Result<()> {
        for d in self.g.tree_path(self.current(), to) {
            self.push_edge(d)?;
        }
        Ok(())
    }

    fn canonicalize(&mut self) -> Result<()> {
        let g = self.g;
        let f = &mut self.form;
        for i in 0..f.edges.len() {
            let d = f.edges[i];
            let (rep, sym) = g.side(d).left_split(&f.elements[i], g.rank(f.vertices[i]))?;
            f.elements[i] = g.normalize_local(f.vertices[i], &rep);
            let pushed = sym.substitute(g.words_at_terminus(d));
            f.elements[i + 1] = g.normalize_local(f.vertices[i + 1], &pushed.mul(&f.elements[i + 1]));
        }
        Ok(())
    }
}

/// The reduced, transversal-canonical loop form of `w`.
pub fn normal_form(g: &GraphOfGroups, w: &Word) -> Result<LoopForm> {
    let mut b = Builder {
        g,
        form: LoopForm {
            vertices: vec![g.base()],
            elements: vec![Word::identity()],
            edges: vec![],
        },
    };
    b.admit(g.base())?;
    for &l in w.letters() {
        if l.gen() >= g.alphabet().rank() {
            return Err(Error::input("letter outside the combined alphabet"));
        }
        match g.vertex_of(l.gen()) {
            Some(v) => {
                b.travel(v)?;
                let local = g.to_local(v, &Word::letter(l)).unwrap();
                b.mul_last(&local);
            }
            None => {
                let e = g.edge_of_letter(l.gen()).unwrap();
                let d = if l.is_inverse() {
                    Dir::forward(e).reverse()
                } else {
                    Dir::forward(e)
                };
                b.travel(g.origin(d))?;
                b.push_edge(d)?;
            }
        }
    }
    b.travel(g.base())?;
    b.canonicalize()?;
    Ok(b.form)
}

/// Word problem: `u = v` in the fundamental group.
pub fn equal(g: &GraphOfGroups, u: &Word, v: &Word) -> Result<bool> {
    Ok(normal_form(g, &u.mul(&v.inverse()))?.is_identity())
}

/// True when `w` represents the identity.
pub fn is_trivial(g: &GraphOfGroups, w: &Word) -> Result<bool> {
    Ok(normal_form(g, w)?.is_identity())
}
