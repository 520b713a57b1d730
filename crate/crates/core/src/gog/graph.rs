//! Validated graphs of groups with cached edge-subgroup data.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use super::spec::{GogSpec, TypeTag, VertexKind};
use crate::lattice::Lattice;
use crate::picore::PiMap;
use crate::words::{Alphabet, Letter, SubgroupBasis, Word};
use crate::{Error, Result};

/// An edge with an orientation; `rev` selects `~edge`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dir {
    pub edge: usize,
    pub rev: bool,
}

impl Dir {
    pub fn forward(edge: usize) -> Self {
        Dir { edge, rev: false }
    }

    pub fn reverse(self) -> Self {
        Dir {
            edge: self.edge,
            rev: !self.rev,
        }
    }
}

/// The edge group seen inside one of its endpoint vertex groups.
#[derive(Debug, Clone)]
pub(crate) enum Side {
    Free(SubgroupBasis),
    Abelian(Lattice),
    Opaque,
}

pub(crate) fn shift(w: &Word, delta: isize) -> Word {
    w.letters()
        .iter()
        .map(|l| Letter::new((l.gen() as isize + delta) as usize, l.is_inverse()))
        .collect()
}

pub(crate) fn abelian_word(exps: &[i64]) -> Word {
    let parts: Vec<Word> = exps
        .iter()
        .enumerate()
        .map(|(g, &e)| Word::power_of_generator(g, e))
        .collect();
    Word::product(&parts)
}

impl Side {
    fn build(kind: VertexKind, rank: usize, words: &[Word]) -> std::result::Result<Side, String> {
        match kind {
            VertexKind::Free => {
                let b = SubgroupBasis::new(words.to_vec());
                if b.is_free_basis() {
                    Ok(Side::Free(b))
                } else {
                    Err("edge-group generators are not a free basis of their image".into())
                }
            }
            VertexKind::Abelian => {
                let vecs = words.iter().map(|w| w.exponent_sums(rank)).collect();
                let l = Lattice::new(rank, vecs).map_err(|e| e.to_string())?;
                if l.is_basis() {
                    Ok(Side::Abelian(l))
                } else {
                    Err("edge-group generators are not independent in an abelian vertex".into())
                }
            }
            VertexKind::Surface | VertexKind::Presented => Ok(Side::Opaque),
        }
    }

    /// Expression over the edge-group symbols when `g` lies in this side.
    pub(crate) fn express(&self, g: &Word, rank: usize) -> Result<Option<Word>> {
        match self {
            Side::Free(b) => Ok(b.express(g)),
            Side::Abelian(l) => Ok(l.express(&g.exponent_sums(rank))?.map(|c| abelian_word(&c))),
            Side::Opaque => Err(Error::Unsupported(
                "edge-group membership in a surface or presented vertex".into(),
            )),
        }
    }

    /// `g = rep · h` with `rep` the canonical left-coset representative and
    /// `h` returned over the edge-group symbols.
    pub(crate) fn left_split(&self, g: &Word, rank: usize) -> Result<(Word, Word)> {
        match self {
            Side::Free(b) => Ok(b.left_coset_split(g)),
            Side::Abelian(l) => {
                let (r, c) = l.coset_split(&g.exponent_sums(rank))?;
                Ok((abelian_word(&r), abelian_word(&c)))
            }
            Side::Opaque => Err(Error::Unsupported(
                "coset representatives in a surface or presented vertex".into(),
            )),
        }
    }
}

/// Generators and relators of the fundamental group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub relators: Vec<Word>,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.alphabet.format_word(r)).collect();
        write!(f, "< {} | {} >", self.alphabet.names().join(", "), rels.join(", "))
    }
}

/// A validated graph of groups with a chosen maximal tree.
#[derive(Debug, Clone)]
pub struct GraphOfGroups {
    spec: GogSpec,
    alphabet: Alphabet,
    offsets: Vec<usize>,
    ranks: Vec<usize>,
    kinds: Vec<VertexKind>,
    vertex_of_gen: Vec<usize>,
    letter_of_edge: Vec<Option<usize>>,
    ends: Vec<[usize; 2]>,
    /// Per edge: generators in the origin group, images in the terminus group.
    words: Vec<[Vec<Word>; 2]>,
    sides: Vec<[Side; 2]>,
    rels: Vec<Vec<Word>>,
    per: Vec<Vec<usize>>,
    base: usize,
    parent: Vec<Option<Dir>>,
    depth: Vec<usize>,
    pi: Option<PiMap>,
    constants: Vec<usize>,
}

/// Checks every structural invariant; `Err` carries the first violated one.
pub fn validate(spec: &GogSpec) -> std::result::Result<(), String> {
    GraphOfGroups::build(spec.clone()).map(|_| ()).map_err(|e| match e {
        Error::Input(m) | Error::Unsupported(m) => m,
        other => other.to_string(),
    })
}

impl GraphOfGroups {
    pub fn parse(text: &str, q: Option<std::sync::Arc<crate::picore::FiniteGroup>>) -> Result<Self> {
        let mut spec = GogSpec::parse(text)?;
        spec.q = q;
        GraphOfGroups::build(spec)
    }

    pub fn build(spec: GogSpec) -> Result<Self> {
        let bad = |m: String| Error::Input(m);
        let nv = spec.vertices.len();
        if nv == 0 {
            return Err(bad("graph has no vertices".into()));
        }
        let mut vindex = HashMap::new();
        for (i, v) in spec.vertices.iter().enumerate() {
            if !crate::words::is_identifier(&v.name) {
                return Err(bad(format!("invalid vertex name {:?}", v.name)));
            }
            if vindex.insert(v.name.clone(), i).is_some() {
                return Err(bad(format!("duplicate vertex {:?}", v.name)));
            }
        }
        let mut gen_alpha = Alphabet::new(Vec::<String>::new())?;
        let (mut offsets, mut ranks, mut vertex_of_gen) = (vec![], vec![], vec![]);
        for (i, v) in spec.vertices.iter().enumerate() {
            offsets.push(gen_alpha.rank());
            ranks.push(v.gens.len());
            for g in &v.gens {
                gen_alpha
                    .push(g)
                    .map_err(|_| bad(format!("generator {g:?} is invalid or repeated")))?;
                vertex_of_gen.push(i);
            }
        }
        let ngens = gen_alpha.rank();
        let mut eindex = HashMap::new();
        for (i, e) in spec.edges.iter().enumerate() {
            if !crate::words::is_identifier(&e.name) || gen_alpha.lookup(&e.name).is_some() {
                return Err(bad(format!("edge name {:?} is invalid or clashes with a generator", e.name)));
            }
            if eindex.insert(e.name.clone(), i).is_some() {
                return Err(bad(format!("duplicate edge {:?}", e.name)));
            }
        }
        let mut ends = Vec::new();
        for e in &spec.edges {
            let end = |n: &String| {
                vindex
                    .get(n)
                    .copied()
                    .ok_or_else(|| bad(format!("edge {} names unknown vertex {n:?}", e.name)))
            };
            ends.push([end(&e.from)?, end(&e.to)?]);
        }

        // Vertex-local words.
        let local = |v: usize, text: &str| -> Result<Word> {
            let w = gen_alpha.parse_word(text)?;
            let lo = offsets[v];
            if w.letters().iter().any(|l| vertex_of_gen[l.gen()] != v) {
                return Err(bad("embedding escapes vertex group".into()));
            }
            Ok(shift(&w, -(lo as isize)))
        };
        let mut rels = Vec::new();
        let mut per = Vec::new();
        for (i, v) in spec.vertices.iter().enumerate() {
            if !v.rels.is_empty() && !matches!(v.kind, VertexKind::Presented | VertexKind::Surface) {
                return Err(bad(format!("vertex {} of kind {} takes no relators", v.name, v.kind.keyword())));
            }
            rels.push(
                v.rels
                    .iter()
                    .map(|r| local(i, r).map_err(|_| bad(format!("relator {r:?} leaves vertex {}", v.name))))
                    .collect::<Result<Vec<_>>>()?,
            );
            let mut p = Vec::new();
            for g in &v.per {
                match v.gens.iter().position(|x| x == g) {
                    Some(k) => p.push(k),
                    None => return Err(bad(format!("peripheral generator {g:?} not in vertex {}", v.name))),
                }
            }
            if v.tag == Some(TypeTag::AbelianType) && v.kind != VertexKind::Abelian {
                return Err(bad(format!("abelian-type vertex {} is not abelian", v.name)));
            }
            per.push(p);
        }
        let mut words = Vec::new();
        for (i, e) in spec.edges.iter().enumerate() {
            let [a, b] = ends[i];
            let eg = e.egens.iter().map(|w| local(a, w)).collect::<Result<Vec<_>>>()?;
            let im = e.image.iter().map(|w| local(b, w)).collect::<Result<Vec<_>>>()?;
            if eg.len() != im.len() {
                return Err(bad(format!("edge {} has unequal egens and image", e.name)));
            }
            words.push([eg, im]);
        }

        // Connectivity.
        let mut seen = vec![false; nv];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for [a, b] in &ends {
                for (p, q) in [(*a, *b), (*b, *a)] {
                    if p == x && !seen[q] {
                        seen[q] = true;
                        queue.push_back(q);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(bad("disconnected graph".into()));
        }

        // Maximal tree.
        let mut in_tree = vec![false; spec.edges.len()];
        for t in &spec.tree {
            let i = *eindex
                .get(t)
                .ok_or_else(|| bad(format!("tree names unknown edge {t:?}")))?;
            if in_tree[i] {
                return Err(bad(format!("tree lists edge {t} twice")));
            }
            in_tree[i] = true;
        }
        let mut uf: Vec<usize> = (0..nv).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            uf[x] = r;
            r
        }
        for (i, [a, b]) in ends.iter().enumerate() {
            if in_tree[i] {
                let (ra, rb) = (find(&mut uf, *a), find(&mut uf, *b));
                if ra == rb {
                    return Err(bad("maximal tree contains a cycle".into()));
                }
                uf[ra] = rb;
            }
        }
        if spec.tree.len() + 1 != nv {
            return Err(bad("maximal tree does not span the graph".into()));
        }

        // Edge groups.
        let kinds: Vec<VertexKind> = spec.vertices.iter().map(|v| v.kind).collect();
        let mut sides = Vec::new();
        for (i, e) in spec.edges.iter().enumerate() {
            let [a, b] = ends[i];
            let k = words[i][0].len();
            let opaque = |v: usize| matches!(kinds[v], VertexKind::Surface | VertexKind::Presented);
            if kinds[a] != kinds[b] && !opaque(a) && !opaque(b) && k > 1 {
                return Err(bad(format!(
                    "edge {} embeds a rank-{k} group into both a free and an abelian vertex",
                    e.name
                )));
            }
            let sa = Side::build(kinds[a], ranks[a], &words[i][0]).map_err(|m| bad(format!("edge {}: {m}", e.name)))?;
            let sb = Side::build(kinds[b], ranks[b], &words[i][1]).map_err(|m| bad(format!("edge {}: {m}", e.name)))?;
            sides.push([sa, sb]);
        }

        // Combined alphabet.
        let mut alphabet = gen_alpha.clone();
        let mut letter_of_edge = vec![None; spec.edges.len()];
        for (i, e) in spec.edges.iter().enumerate() {
            if !in_tree[i] {
                letter_of_edge[i] = Some(alphabet.push(&e.name)?);
            }
        }

        let base = match &spec.base {
            Some(b) => *vindex
                .get(b)
                .ok_or_else(|| bad(format!("unknown base vertex {b:?}")))?,
            None => (0..nv).min_by(|&x, &y| spec.vertices[x].name.cmp(&spec.vertices[y].name)).unwrap(),
        };
        let mut parent = vec![None; nv];
        let mut depth = vec![0; nv];
        let mut visited = vec![false; nv];
        visited[base] = true;
        let mut queue = VecDeque::from([base]);
        while let Some(x) = queue.pop_front() {
            for (i, [a, b]) in ends.iter().enumerate() {
                if !in_tree[i] {
                    continue;
                }
                for (d, p, q) in [(Dir::forward(i), *a, *b), (Dir::forward(i).reverse(), *b, *a)] {
                    if p == x && !visited[q] {
                        visited[q] = true;
                        parent[q] = Some(d);
                        depth[q] = depth[x] + 1;
                        queue.push_back(q);
                    }
                }
            }
        }

        let mut constants = Vec::new();
        for c in &spec.constants {
            match gen_alpha.lookup(c) {
                Some(i) => constants.push(i),
                None => return Err(bad(format!("constant {c:?} is not a vertex generator"))),
            }
        }

        let mut g = GraphOfGroups {
            alphabet,
            offsets,
            ranks,
            kinds,
            vertex_of_gen,
            letter_of_edge,
            ends,
            words,
            sides,
            rels,
            per,
            base,
            parent,
            depth,
            pi: None,
            constants,
            spec,
        };
        if !g.spec.pi.is_empty() || g.spec.q.is_some() {
            let q = g
                .spec
                .q
                .clone()
                .ok_or_else(|| bad("pi data given without a finite group".into()))?;
            let mut images = vec![0; g.alphabet.rank()];
            for (name, el) in &g.spec.pi {
                let i = g
                    .alphabet
                    .lookup(name)
                    .ok_or_else(|| bad(format!("pi names {name:?}, which is neither a generator nor a non-tree edge")))?;
                images[i] = q.parse_element(el)?;
            }
            let pi = PiMap::new(q, images)?;
            for r in g.presentation().relators {
                if pi.evaluate(&r)? != 0 {
                    return Err(bad(format!("pi does not respect relator {}", g.alphabet.format_word(&r))));
                }
            }
            g.pi = Some(pi);
        }
        let _ = ngens;
        Ok(g)
    }

    pub fn spec(&self) -> &GogSpec {
        &self.spec
    }

    pub fn to_text(&self) -> String {
        self.spec.to_text()
    }

    /// Vertex generators followed by one Bass-Serre letter per non-tree edge.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.ranks.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.spec.vertices[v].name
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.spec.edges[e].name
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.spec.vertices.iter().position(|v| v.name == name)
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.spec.edges.iter().position(|e| e.name == name)
    }

    /// Parses `e` or `~e`.
    pub fn parse_dir(&self, s: &str) -> Result<Dir> {
        let s = s.trim();
        let (name, rev) = match s.strip_prefix('~') {
            Some(n) => (n, true),
            None => (s, false),
        };
        let edge = self
            .edge_index(name)
            .ok_or_else(|| Error::input(format!("unknown edge {name:?}")))?;
        Ok(Dir { edge, rev })
    }

    pub fn dir_name(&self, d: Dir) -> String {
        format!("{}{}", if d.rev { "~" } else { "" }, self.edge_name(d.edge))
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.kinds[v]
    }

    pub fn tag(&self, v: usize) -> Option<TypeTag> {
        self.spec.vertices[v].tag
    }

    pub fn rank(&self, v: usize) -> usize {
        self.ranks[v]
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn in_tree(&self, e: usize) -> bool {
        self.letter_of_edge[e].is_none()
    }

    pub fn origin(&self, d: Dir) -> usize {
        self.ends[d.edge][d.rev as usize]
    }

    pub fn terminus(&self, d: Dir) -> usize {
        self.ends[d.edge][!d.rev as usize]
    }

    /// Edge-group generators as local words at the origin of `d`.
    pub fn words_at_origin(&self, d: Dir) -> &[Word] {
        &self.words[d.edge][d.rev as usize]
    }

    /// The matching generators as local words at the terminus of `d`.
    pub fn words_at_terminus(&self, d: Dir) -> &[Word] {
        &self.words[d.edge][!d.rev as usize]
    }

    pub(crate) fn side(&self, d: Dir) -> &Side {
        &self.sides[d.edge][d.rev as usize]
    }

    pub fn edge_group_rank(&self, e: usize) -> usize {
        self.words[e][0].len()
    }

    /// Global index of the Bass-Serre letter of a non-tree edge.
    pub fn letter(&self, e: usize) -> Option<usize> {
        self.letter_of_edge[e]
    }

    /// `t_d` as a word: empty for tree edges.
    pub fn t_word(&self, d: Dir) -> Word {
        match self.letter_of_edge[d.edge] {
            None => Word::identity(),
            Some(t) => Word::letter(Letter::new(t, d.rev)),
        }
    }

    pub fn gen_count(&self) -> usize {
        self.vertex_of_gen.len()
    }

    /// Vertex owning a global generator; `None` for Bass-Serre letters.
    pub fn vertex_of(&self, gen: usize) -> Option<usize> {
        self.vertex_of_gen.get(gen).copied()
    }

    /// The edge whose Bass-Serre letter is `gen`.
    pub fn edge_of_letter(&self, gen: usize) -> Option<usize> {
        self.letter_of_edge.iter().position(|&l| l == Some(gen))
    }

    pub fn to_global(&self, v: usize, w: &Word) -> Word {
        shift(w, self.offsets[v] as isize)
    }

    /// Converts a word using only `v`'s generators to local indices.
    pub fn to_local(&self, v: usize, w: &Word) -> Option<Word> {
        w.letters()
            .iter()
            .all(|l| self.vertex_of(l.gen()) == Some(v))
            .then(|| shift(w, -(self.offsets[v] as isize)))
    }

    pub fn vertex_relators(&self, v: usize) -> &[Word] {
        &self.rels[v]
    }

    /// Peripheral sub-basis as local generator indices.
    pub fn peripheral(&self, v: usize) -> &[usize] {
        &self.per[v]
    }

    pub fn pi(&self) -> Option<&PiMap> {
        self.pi.as_ref()
    }

    /// Designated constants as global generator indices.
    pub fn constants(&self) -> &[usize] {
        &self.constants
    }

    /// Canonical local form of a vertex element (sorted powers when abelian).
    pub fn normalize_local(&self, v: usize, w: &Word) -> Word {
        match self.kinds[v] {
            VertexKind::Abelian => abelian_word(&w.exponent_sums(self.ranks[v])),
            _ => w.clone(),
        }
    }

    /// Directed tree edges from `a` to `b` along `Z`.
    pub fn tree_path(&self, a: usize, b: usize) -> Vec<Dir> {
        let (mut x, mut y) = (a, b);
        let (mut up, mut down) = (Vec::new(), Vec::new());
        while self.depth[x] > self.depth[y] {
            let d = self.parent[x].unwrap();
            up.push(d.reverse());
            x = self.origin(d);
        }
        while self.depth[y] > self.depth[x] {
            let d = self.parent[y].unwrap();
            down.push(d);
            y = self.origin(d);
        }
        while x != y {
            let dx = self.parent[x].unwrap();
            up.push(dx.reverse());
            x = self.origin(dx);
            let dy = self.parent[y].unwrap();
            down.push(dy);
            y = self.origin(dy);
        }
        down.reverse();
        up.extend(down);
        up
    }

    /// Vertices on the far side of tree edge `d` (those reached from its
    /// terminus without crossing it).
    pub fn tree_side(&self, d: Dir) -> BTreeSet<usize> {
        let mut out = BTreeSet::from([self.terminus(d)]);
        let mut stack = vec![self.terminus(d)];
        while let Some(x) = stack.pop() {
            for e in 0..self.edge_count() {
                if !self.in_tree(e) || e == d.edge {
                    continue;
                }
                let [a, b] = self.ends[e];
                for (p, q) in [(a, b), (b, a)] {
                    if p == x && out.insert(q) {
                        stack.push(q);
                    }
                }
            }
        }
        out
    }

    pub fn presentation(&self) -> Presentation {
        let mut relators = Vec::new();
        for v in 0..self.vertex_count() {
            if self.kinds[v] == VertexKind::Abelian {
                for i in 0..self.ranks[v] {
                    for j in i + 1..self.ranks[v] {
                        let (a, b) = (Word::generator(i), Word::generator(j));
                        relators.push(self.to_global(v, &a.commutator(&b)));
                    }
                }
            }
            relators.extend(self.rels[v].iter().map(|r| self.to_global(v, r)));
        }
        for e in 0..self.edge_count() {
            let d = Dir::forward(e);
            let t = self.t_word(d);
            for (g, ig) in self.words_at_origin(d).iter().zip(self.words_at_terminus(d)) {
                let g = self.to_global(self.origin(d), g);
                let ig = self.to_global(self.terminus(d), ig);
                relators.push(ig.inverse().mul(&g.conjugate_by(&t)));
            }
        }
        relators.retain(|r| !r.is_identity());
        Presentation {
            alphabet: self.alphabet.clone(),
            relators,
        }
    }

    /// Cycle rank of the underlying graph.
    pub fn betti_number(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }
}
