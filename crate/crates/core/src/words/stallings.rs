use std::collections::{BTreeMap, VecDeque};

use super::word::{Letter, Word};
use crate::{Error, Result};

#[derive(Debug, Clone)]
struct Edge {
    from: usize,
    to: usize,
    /// Always a positive letter; the reverse traversal reads its inverse.
    label: Letter,
    /// Word over the basis symbols read along the edge.
    tag: Word,
    alive: bool,
}

/// Deterministic labelled graph of a finitely generated subgroup of a free
/// group, with base vertex 0. Each directed traversal also carries a word in
/// the abstract basis symbols so that accepted words can be rewritten in the
/// generators.
#[derive(Debug, Clone)]
struct FoldedGraph {
    /// `adj[v][letter] = (target, tag)` for every outgoing signed letter.
    adj: Vec<BTreeMap<Letter, (usize, Word)>>,
    /// Shortlex-least label of a path from the base to each vertex.
    geodesic: Vec<Word>,
    edge_count: usize,
}

/// A finite generating tuple of a subgroup, with its folded graph.
#[derive(Debug, Clone)]
pub struct SubgroupBasis {
    generators: Vec<Word>,
    graph: FoldedGraph,
}

fn outgoing(e: &Edge, v: usize) -> Vec<(Letter, usize, Word)> {
    let mut out = Vec::new();
    if e.from == v {
        out.push((e.label, e.to, e.tag.clone()));
    }
    if e.to == v {
        out.push((e.label.inverse(), e.from, e.tag.inverse()));
    }
    out
}

fn fold(generators: &[Word]) -> FoldedGraph {
    let mut edges: Vec<Edge> = Vec::new();
    let mut vertex_count = 1;
    for (i, g) in generators.iter().enumerate() {
        let n = g.len();
        if n == 0 {
            continue;
        }
        let mut prev = 0;
        for (k, &l) in g.letters().iter().enumerate() {
            let next = if k + 1 == n {
                0
            } else {
                vertex_count += 1;
                vertex_count - 1
            };
            let tag = if k == 0 {
                Word::generator(i)
            } else {
                Word::identity()
            };
            let (from, to, label, tag) = if l.is_inverse() {
                (next, prev, l.inverse(), tag.inverse())
            } else {
                (prev, next, l, tag)
            };
            edges.push(Edge {
                from,
                to,
                label,
                tag,
                alive: true,
            });
            prev = next;
        }
    }

    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
    for (id, e) in edges.iter().enumerate() {
        incident[e.from].push(id);
        if e.to != e.from {
            incident[e.to].push(id);
        }
    }
    let mut alive_vertex = vec![true; vertex_count];
    let mut queue: VecDeque<usize> = (0..vertex_count).collect();
    while let Some(u) = queue.pop_front() {
        if !alive_vertex[u] {
            continue;
        }
        // Find two live edges leaving u with the same signed label.
        let mut seen: BTreeMap<Letter, (usize, usize, Word)> = BTreeMap::new();
        let mut conflict = None;
        'scan: for &id in &incident[u] {
            if !edges[id].alive {
                continue;
            }
            for (label, target, tag) in outgoing(&edges[id], u) {
                if let Some((id1, t1, tag1)) = seen.get(&label) {
                    if *id1 != id {
                        conflict = Some(((*id1, *t1, tag1.clone()), (id, target, tag)));
                        break 'scan;
                    }
                } else {
                    seen.insert(label, (id, target, tag));
                }
            }
        }
        let Some(((e1, mut v1, mut b1), (e2, mut v2, mut b2))) = conflict else {
            continue;
        };
        let mut dead = e2;
        if v1 != v2 {
            // Never merge the base vertex away.
            if v2 == 0 {
                std::mem::swap(&mut v1, &mut v2);
                std::mem::swap(&mut b1, &mut b2);
                dead = e1;
            }
            let delta = b1.inverse().mul(&b2);
            edges[dead].alive = false;
            let moved = std::mem::take(&mut incident[v2]);
            for id in moved {
                if !edges[id].alive {
                    continue;
                }
                let e = &mut edges[id];
                if e.from == v2 {
                    e.tag = delta.mul(&e.tag);
                    e.from = v1;
                }
                if e.to == v2 {
                    e.tag = e.tag.mul(&delta.inverse());
                    e.to = v1;
                }
                if !incident[v1].contains(&id) {
                    incident[v1].push(id);
                }
            }
            alive_vertex[v2] = false;
            queue.push_back(v1);
        } else {
            edges[dead].alive = false;
        }
        queue.push_back(u);
    }

    // Compact live vertices, base first.
    let mut remap = vec![usize::MAX; vertex_count];
    let mut n = 0;
    for v in 0..vertex_count {
        if alive_vertex[v] {
            remap[v] = n;
            n += 1;
        }
    }
    let mut adj: Vec<BTreeMap<Letter, (usize, Word)>> = vec![BTreeMap::new(); n];
    let mut edge_count = 0;
    for e in edges.iter().filter(|e| e.alive) {
        let (f, t) = (remap[e.from], remap[e.to]);
        adj[f].insert(e.label, (t, e.tag.clone()));
        adj[t].insert(e.label.inverse(), (f, e.tag.inverse()));
        edge_count += 1;
    }
    // Breadth-first search in letter order gives shortlex-least labels.
    let mut geodesic: Vec<Option<Word>> = vec![None; n];
    geodesic[0] = Some(Word::identity());
    let mut bfs = VecDeque::from([0usize]);
    while let Some(v) = bfs.pop_front() {
        let here = geodesic[v].clone().unwrap();
        for (&l, &(t, _)) in &adj[v] {
            if geodesic[t].is_none() {
                geodesic[t] = Some(here.mul(&Word::letter(l)));
                bfs.push_back(t);
            }
        }
    }
    FoldedGraph {
        adj,
        geodesic: geodesic.into_iter().map(|g| g.unwrap_or_default()).collect(),
        edge_count,
    }
}

impl SubgroupBasis {
    pub fn new(generators: Vec<Word>) -> Self {
        let graph = fold(&generators);
        SubgroupBasis { generators, graph }
    }

    /// Like [`SubgroupBasis::new`] but rejects trivial generators.
    pub fn checked(generators: Vec<Word>) -> Result<Self> {
        if let Some(i) = generators.iter().position(Word::is_identity) {
            return Err(Error::input(format!("basis generator {} is trivial", i + 1)));
        }
        Ok(Self::new(generators))
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    /// Rank of the subgroup (first Betti number of the folded graph).
    pub fn rank(&self) -> usize {
        self.graph.edge_count + 1 - self.graph.adj.len()
    }

    /// True when the generators freely generate the subgroup.
    pub fn is_free_basis(&self) -> bool {
        self.generators.iter().all(|g| !g.is_identity()) && self.rank() == self.generators.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.adj.len()
    }

    /// Reads `w` from the base as far as possible: (vertex reached, letters
    /// consumed, basis word read so far).
    fn read(&self, w: &Word) -> (usize, usize, Word) {
        let mut v = 0;
        let mut tag = Word::identity();
        for (k, l) in w.letters().iter().enumerate() {
            match self.graph.adj[v].get(l) {
                Some((t, tg)) => {
                    tag = tag.mul(tg);
                    v = *t;
                }
                None => return (v, k, tag),
            }
        }
        (v, w.len(), tag)
    }

    pub fn contains(&self, w: &Word) -> bool {
        let (v, k, _) = self.read(w);
        v == 0 && k == w.len()
    }

    /// A word in the basis symbols (generator `i` is symbol `i`) evaluating
    /// to `w`, when `w` lies in the subgroup.
    pub fn express(&self, w: &Word) -> Option<Word> {
        let (v, k, tag) = self.read(w);
        (v == 0 && k == w.len()).then_some(tag)
    }

    /// Shortlex-canonical representative of the right coset `H·w`.
    pub fn right_coset_rep(&self, w: &Word) -> Word {
        let (v, k, _) = self.read(w);
        self.graph.geodesic[v].mul(&w.suffix_from(k))
    }

    /// Canonical representative `r` of the left coset `w·H`, together with
    /// `h = r⁻¹ w ∈ H` expressed in the basis symbols.
    pub fn left_coset_split(&self, w: &Word) -> (Word, Word) {
        let rep = self.right_coset_rep(&w.inverse()).inverse();
        let h = rep.inverse().mul(w);
        let expr = self
            .express(&h)
            .expect("coset quotient must lie in the subgroup");
        (rep, expr)
    }
}

/// Membership with an explicit expression; `None` when `w ∉ ⟨basis⟩`.
pub fn subgroup_membership(basis: &SubgroupBasis, w: &Word) -> Option<Word> {
    basis.express(w)
}
