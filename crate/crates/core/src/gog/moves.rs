//! Collapse, blow-up, fold and slide at quotient level.

use std::collections::BTreeSet;

use super::graph::{Dir, GraphOfGroups, Side};
use super::spec::{EdgeSpec, GogSpec, VertexKind, VertexSpec};
use crate::words::{conjugacy, Alphabet, Word};
use crate::{Error, Result};

/// A move's output together with the generator correspondences between the
/// combined alphabets of the input and output.
#[derive(Debug, Clone)]
pub struct Moved {
    pub gog: GraphOfGroups,
    /// Image of each input generator as a word over the output alphabet.
    pub forward: Vec<Word>,
    /// Image of each output generator as a word over the input alphabet.
    pub backward: Vec<Word>,
}

fn by_name(from: &Alphabet, to: &Alphabet) -> Result<Vec<Word>> {
    from.names()
        .iter()
        .map(|n| {
            to.lookup(n)
                .map(Word::generator)
                .ok_or_else(|| Error::input(format!("generator {n} has no counterpart")))
        })
        .collect()
}

fn finish(old: &GraphOfGroups, spec: GogSpec) -> Result<Moved> {
    let gog = GraphOfGroups::build(spec)?;
    Ok(Moved {
        forward: by_name(old.alphabet(), gog.alphabet())?,
        backward: by_name(gog.alphabet(), old.alphabet())?,
        gog,
    })
}

fn fmt_local(g: &GraphOfGroups, v: usize, w: &Word) -> String {
    g.alphabet().format_word(&g.to_global(v, w))
}

/// True iff `r` is a cyclic conjugate of `[x, y]^{±1}`.
fn is_commutator_of(r: &Word, x: usize, y: usize) -> bool {
    let c = Word::generator(x).commutator(&Word::generator(y));
    conjugacy(r, &c).is_some() || conjugacy(r, &c.inverse()).is_some()
}

/// Merges each connected component of the edge set `f` into one vertex.
pub fn collapse(g: &GraphOfGroups, f: &[String]) -> Result<Moved> {
    let mut chosen = BTreeSet::new();
    for name in f {
        chosen.insert(g.parse_dir(name)?.edge);
    }
    let nv = g.vertex_count();
    let mut comp: Vec<usize> = (0..nv).collect();
    fn root(c: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while c[r] != r {
            r = c[r];
        }
        c[x] = r;
        r
    }
    for &e in &chosen {
        let (a, b) = (g.origin(Dir::forward(e)), g.terminus(Dir::forward(e)));
        let (ra, rb) = (root(&mut comp, a), root(&mut comp, b));
        if ra != rb {
            comp[ra.max(rb)] = ra.min(rb);
        }
    }
    let rep: Vec<usize> = (0..nv).map(|v| root(&mut comp, v)).collect();
    let old = g.spec();
    let mut spec = GogSpec {
        pi: old.pi.clone(),
        q: old.q.clone(),
        constants: old.constants.clone(),
        ..GogSpec::default()
    };
    for r in 0..nv {
        if rep[r] != r {
            continue;
        }
        let members: Vec<usize> = (0..nv).filter(|&v| rep[v] == r).collect();
        let inner: Vec<usize> = chosen
            .iter()
            .copied()
            .filter(|&e| rep[g.origin(Dir::forward(e))] == r)
            .collect();
        if members.len() == 1 && inner.is_empty() {
            spec.vertices.push(old.vertices[r].clone());
            continue;
        }
        let mut gens: Vec<String> = members
            .iter()
            .flat_map(|&v| old.vertices[v].gens.iter().cloned())
            .collect();
        gens.extend(inner.iter().filter(|&&e| !g.in_tree(e)).map(|&e| g.edge_name(e).to_string()));
        let mut kept = Vec::new();
        for v in &members {
            let k = g.kind(*v);
            if k == VertexKind::Abelian {
                for i in 0..g.rank(*v) {
                    for j in i + 1..g.rank(*v) {
                        kept.push(g.to_global(*v, &Word::generator(i).commutator(&Word::generator(j))));
                    }
                }
            }
            kept.extend(g.vertex_relators(*v).iter().map(|w| g.to_global(*v, w)));
        }
        for &e in &inner {
            let d = Dir::forward(e);
            let t = g.t_word(d);
            for (a, b) in g.words_at_origin(d).iter().zip(g.words_at_terminus(d)) {
                let a = g.to_global(g.origin(d), a);
                let b = g.to_global(g.terminus(d), b);
                let rel = b.inverse().mul(&a.conjugate_by(&t));
                if !rel.is_identity() {
                    kept.push(rel);
                }
            }
        }
        let opaque = members
            .iter()
            .any(|&v| matches!(g.kind(v), VertexKind::Surface | VertexKind::Presented));
        let local: Vec<usize> = gens.iter().map(|n| g.alphabet().lookup(n).unwrap()).collect();
        let kind = if opaque {
            VertexKind::Presented
        } else if kept.is_empty() {
            VertexKind::Free
        } else {
            let sums_zero = kept.iter().all(|w| {
                w.exponent_sums(g.alphabet().rank()).iter().all(|&s| s == 0)
            });
            let all_pairs = (0..local.len()).all(|i| {
                (i + 1..local.len())
                    .all(|j| kept.iter().any(|w| is_commutator_of(w, local[i], local[j])))
            });
            if sums_zero && all_pairs {
                VertexKind::Abelian
            } else {
                VertexKind::Presented
            }
        };
        let rels = if kind == VertexKind::Presented {
            kept.iter().map(|w| g.alphabet().format_word(w)).collect()
        } else {
            vec![]
        };
        spec.vertices.push(VertexSpec {
            name: old.vertices[r].name.clone(),
            kind,
            gens,
            per: vec![],
            tag: None,
            rels,
        });
    }
    for (e, edge) in old.edges.iter().enumerate() {
        if chosen.contains(&e) {
            continue;
        }
        let mut edge = edge.clone();
        edge.from = old.vertices[rep[g.origin(Dir::forward(e))]].name.clone();
        edge.to = old.vertices[rep[g.terminus(Dir::forward(e))]].name.clone();
        spec.edges.push(edge);
    }
    spec.tree = old
        .tree
        .iter()
        .filter(|t| !chosen.contains(&g.edge_index(t).unwrap()))
        .cloned()
        .collect();
    if spec.tree.len() + 1 != spec.vertices.len() {
        return Err(Error::input(
            "collapsing these edges leaves the remaining tree edges with a cycle",
        ));
    }
    spec.base = old
        .base
        .as_ref()
        .map(|b| old.vertices[rep[g.vertex_index(b).unwrap()]].name.clone());
    finish(g, spec)
}

/// Replaces vertex `v` by the graph of groups `s`; `attach` assigns each
/// edge incident to `v` a vertex of `s`.
pub fn blow_up(g: &GraphOfGroups, v: &str, s: &GraphOfGroups, attach: &[(String, String)]) -> Result<Moved> {
    let vi = g
        .vertex_index(v)
        .ok_or_else(|| Error::input(format!("unknown vertex {v:?}")))?;
    let old = g.spec();
    let vgens: BTreeSet<&str> = old.vertices[vi].gens.iter().map(String::as_str).collect();
    let sgens: BTreeSet<&str> = s.alphabet().names().iter().map(String::as_str).collect();
    if vgens != sgens {
        return Err(Error::input(
            "the blow-up must be presented on exactly the generators of the vertex group",
        ));
    }
    // Relators of S must hold in the vertex group.
    let to_v: Vec<Word> = s
        .alphabet()
        .names()
        .iter()
        .map(|n| Word::generator(old.vertices[vi].gens.iter().position(|x| x == n).unwrap()))
        .collect();
    let rank = g.rank(vi);
    for r in s.presentation().relators {
        let w = r.substitute(&to_v);
        let trivial = match g.kind(vi) {
            VertexKind::Free => w.is_identity(),
            VertexKind::Abelian => w.exponent_sums(rank).iter().all(|&x| x == 0),
            _ => return Err(Error::Unsupported("blow-up of a surface or presented vertex".into())),
        };
        if !trivial {
            return Err(Error::input(format!(
                "relator {} of the blow-up fails in vertex {v}",
                s.alphabet().format_word(&r)
            )));
        }
    }
    let sspec = s.spec();
    for sv in &sspec.vertices {
        if sv.name != v && g.vertex_index(&sv.name).is_some() {
            return Err(Error::input(format!("vertex name {:?} already in use", sv.name)));
        }
    }
    for se in &sspec.edges {
        if g.edge_index(&se.name).is_some() {
            return Err(Error::input(format!("edge name {:?} already in use", se.name)));
        }
    }
    let mut spec = GogSpec {
        pi: old.pi.clone(),
        q: old.q.clone(),
        constants: old.constants.clone(),
        base: old.base.clone(),
        ..GogSpec::default()
    };
    for (i, vs) in old.vertices.iter().enumerate() {
        if i == vi {
            spec.vertices.extend(sspec.vertices.iter().cloned());
        } else {
            spec.vertices.push(vs.clone());
        }
    }
    let attach_of = |e: &str| -> Result<usize> {
        let (_, target) = attach
            .iter()
            .find(|(x, _)| x == e)
            .ok_or_else(|| Error::input(format!("no attach point for edge {e}")))?;
        s.vertex_index(target)
            .ok_or_else(|| Error::input(format!("attach point {target:?} is not a vertex of the blow-up")))
    };
    for (e, edge) in old.edges.iter().enumerate() {
        let mut edge = edge.clone();
        for (rev, d) in [(false, Dir::forward(e)), (true, Dir::forward(e).reverse())] {
            if g.origin(d) != vi {
                continue;
            }
            let sv = attach_of(&edge.name)?;
            let allowed: BTreeSet<&str> = sspec.vertices[sv].gens.iter().map(String::as_str).collect();
            for w in g.words_at_origin(d) {
                for l in w.letters() {
                    let name = old.vertices[vi].gens[l.gen()].as_str();
                    if !allowed.contains(name) {
                        return Err(Error::input(format!(
                            "edge {} is not elliptic at {}: it needs generator {name}",
                            edge.name, sspec.vertices[sv].name
                        )));
                    }
                }
            }
            let name = sspec.vertices[sv].name.clone();
            if rev {
                edge.to = name;
            } else {
                edge.from = name;
            }
        }
        spec.edges.push(edge);
    }
    spec.edges.extend(sspec.edges.iter().cloned());
    spec.tree = old.tree.iter().chain(&sspec.tree).cloned().collect();
    finish(g, spec)
}

fn fresh_name(edge: &str, k: usize) -> String {
    format!("{edge}_{}", k + 1)
}

/// Folds each `(d_j, H_j)`: the edge group of `d_j` grows to `H_j`, given
/// as words in the terminus vertex group, and the origin vertex group
/// becomes the amalgam with the `H_j`.
pub fn fold(g: &GraphOfGroups, v: &str, folds: &[(String, Vec<String>)]) -> Result<Moved> {
    let vi = g
        .vertex_index(v)
        .ok_or_else(|| Error::input(format!("unknown vertex {v:?}")))?;
    if matches!(g.kind(vi), VertexKind::Surface) {
        return Err(Error::Unsupported("fold at a surface vertex".into()));
    }
    let old = g.spec();
    let nold = g.rank(vi);
    // Generators of the new vertex group: old ones then fresh ones.
    let mut gen_names = old.vertices[vi].gens.clone();
    let mut relators: Vec<Word> = Vec::new();
    if g.kind(vi) == VertexKind::Abelian {
        for i in 0..nold {
            for j in i + 1..nold {
                relators.push(Word::generator(i).commutator(&Word::generator(j)));
            }
        }
    }
    relators.extend(g.vertex_relators(vi).iter().cloned());
    let base_rels = relators.clone();
    struct Planned {
        dir: Dir,
        fresh: Vec<usize>,
        h_words: Vec<String>,
        h_global: Vec<Word>,
    }
    let mut plans = Vec::new();
    for (dname, hs) in folds {
        let d = g.parse_dir(dname)?;
        if g.origin(d) != vi {
            return Err(Error::input(format!("edge {dname} does not originate at {v}")));
        }
        let w = g.terminus(d);
        if w == vi {
            return Err(Error::input(format!("edge {dname} is a loop at {v}")));
        }
        let talpha = Alphabet::new(&old.vertices[w].gens)?;
        let h: Vec<Word> = hs
            .iter()
            .map(|s| {
                talpha.parse_word(s).map_err(|_| {
                    Error::input(format!("{s:?} escapes the terminus group of {dname}"))
                })
            })
            .collect::<Result<_>>()?;
        let side = match g.kind(w) {
            VertexKind::Free => Side::Free(crate::words::SubgroupBasis::new(h.clone())),
            VertexKind::Abelian => Side::Abelian(crate::lattice::Lattice::new(
                g.rank(w),
                h.iter().map(|x| x.exponent_sums(g.rank(w))).collect(),
            )?),
            _ => return Err(Error::Unsupported("fold into a surface or presented vertex".into())),
        };
        let mut fresh = Vec::new();
        for k in 0..h.len() {
            let name = fresh_name(g.edge_name(d.edge), k);
            if g.alphabet().lookup(&name).is_some() || gen_names.contains(&name) {
                return Err(Error::input(format!("fresh generator {name} clashes")));
            }
            fresh.push(gen_names.len());
            gen_names.push(name);
        }
        for (a, b) in g.words_at_origin(d).iter().zip(g.words_at_terminus(d)) {
            let sym = side.express(b, g.rank(w))?.ok_or_else(|| {
                Error::input(format!("H for {dname} does not contain the edge group"))
            })?;
            let in_fresh = sym.substitute(&fresh.iter().map(|&i| Word::generator(i)).collect::<Vec<_>>());
            relators.push(a.inverse().mul(&in_fresh));
        }
        let h_global = h.iter().map(|x| g.to_global(w, x)).collect();
        plans.push(Planned {
            dir: d,
            fresh,
            h_words: hs.iter().map(|s| s.trim().to_string()).collect(),
            h_global,
        });
    }
    // Tietze: eliminate fresh generators occurring exactly once in a relator.
    let n = gen_names.len();
    let mut value: Vec<Word> = (0..n).map(Word::generator).collect();
    let mut alive: Vec<bool> = vec![true; n];
    loop {
        relators.retain(|r| !r.is_identity());
        let mut hit = None;
        'search: for (ri, r) in relators.iter().enumerate() {
            for x in nold..n {
                if !alive[x] {
                    continue;
                }
                let pos: Vec<usize> = (0..r.len()).filter(|&p| r.letters()[p].gen() == x).collect();
                if pos.len() == 1 {
                    hit = Some((ri, x, pos[0]));
                    break 'search;
                }
            }
        }
        let Some((ri, x, p)) = hit else { break };
        let r = relators.remove(ri);
        let letters = r.letters();
        let before: Word = letters[..p].iter().copied().collect();
        let after: Word = letters[p + 1..].iter().copied().collect();
        let solved = before.inverse().mul(&after.inverse());
        let sol = if letters[p].is_inverse() { solved.inverse() } else { solved };
        let subst: Vec<Word> = (0..n).map(|i| if i == x { sol.clone() } else { Word::generator(i) }).collect();
        relators = relators.iter().map(|w| w.substitute(&subst)).collect();
        value = value.iter().map(|w| w.substitute(&subst)).collect();
        alive[x] = false;
    }
    // Renumber surviving generators.
    let survivors: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    let renum: Vec<Word> = (0..n)
        .map(|i| match survivors.iter().position(|&s| s == i) {
            Some(k) => Word::generator(k),
            None => Word::identity(),
        })
        .collect();
    let new_names: Vec<String> = survivors.iter().map(|&i| gen_names[i].clone()).collect();
    let nalpha = Alphabet::new(&new_names)?;
    let fmt = |w: &Word| nalpha.format_word(&w.substitute(&renum));
    let new_rels: Vec<String> = relators.iter().map(fmt).collect();
    let added = survivors.len() > nold;
    let extra = relators.iter().any(|r| !base_rels.contains(r));
    let kind = if !added && !extra {
        g.kind(vi)
    } else if g.kind(vi) == VertexKind::Free && relators.is_empty() {
        VertexKind::Free
    } else {
        VertexKind::Presented
    };
    let mut spec = old.clone();
    let vs = &mut spec.vertices[vi];
    vs.gens = new_names.clone();
    vs.kind = kind;
    vs.rels = if kind == VertexKind::Presented { new_rels } else { vec![] };
    if kind != old.vertices[vi].kind {
        vs.tag = None;
    }
    for p in &plans {
        let origin_side: Vec<String> = p.fresh.iter().map(|&x| fmt(&value[x])).collect();
        let e = &mut spec.edges[p.dir.edge];
        if p.dir.rev {
            e.image = origin_side;
            e.egens = p.h_words.clone();
        } else {
            e.egens = origin_side;
            e.image = p.h_words.clone();
        }
    }
    // Markings and back-images of surviving fresh generators.
    let mut fresh_back: Vec<(String, Word)> = Vec::new();
    for p in &plans {
        let t = g.t_word(p.dir);
        for (k, &x) in p.fresh.iter().enumerate() {
            if alive[x] {
                fresh_back.push((gen_names[x].clone(), p.h_global[k].conjugate_by(&t.inverse())));
            }
        }
    }
    if let Some(pi) = g.pi() {
        for (name, w) in &fresh_back {
            let el = pi.evaluate(w)?;
            spec.pi.push((name.clone(), pi.q().element_name(el).to_string()));
        }
    }
    let gog = GraphOfGroups::build(spec)?;
    let forward = by_name(g.alphabet(), gog.alphabet())?;
    let backward = gog
        .alphabet()
        .names()
        .iter()
        .map(|nm| match fresh_back.iter().find(|(x, _)| x == nm) {
            Some((_, w)) => Ok(w.clone()),
            None => g
                .alphabet()
                .lookup(nm)
                .map(Word::generator)
                .ok_or_else(|| Error::input(format!("generator {nm} has no counterpart"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Moved { gog, forward, backward })
}

/// Slides the origin of `e` along `f` (both leave the same vertex).
pub fn slide(g: &GraphOfGroups, e: &str, f: &str) -> Result<Moved> {
    let de = g.parse_dir(e)?;
    let df = g.parse_dir(f)?;
    if de.edge == df.edge {
        return Err(Error::input("cannot slide an edge along itself"));
    }
    let v = g.origin(de);
    if g.origin(df) != v {
        return Err(Error::input(format!("{e} and {f} do not share their origin")));
    }
    if g.in_tree(de.edge) && !g.in_tree(df.edge) {
        return Err(Error::input("sliding a tree edge along a non-tree edge would break the maximal tree"));
    }
    let w = g.terminus(df);
    let mut moved_words = Vec::new();
    for a in g.words_at_origin(de) {
        let sym = g.side(df).express(a, g.rank(v))?.ok_or_else(|| {
            Error::input(format!("edge group of {e} is not contained in that of {f}"))
        })?;
        moved_words.push(fmt_local(g, w, &sym.substitute(g.words_at_terminus(df))));
    }
    let mut spec = g.spec().clone();
    let wname = spec.vertices[w].name.clone();
    let edge: &mut EdgeSpec = &mut spec.edges[de.edge];
    if de.rev {
        edge.to = wname;
        edge.image = moved_words;
    } else {
        edge.from = wname;
        edge.egens = moved_words;
    }
    let mut out = finish(g, spec)?;
    if let (Some(te_old), Some(te_new)) = (g.letter(de.edge), out.gog.letter(de.edge)) {
        let tf_new = out.gog.t_word(df);
        let tf_old = g.t_word(df);
        let t_new = Word::generator(te_new);
        let t_old = Word::generator(te_old);
        // t_{de} = t_{df} · t'_{de} read through the stored orientations.
        if de.rev {
            out.forward[te_old] = t_new.mul(&tf_new.inverse());
            out.backward[te_new] = t_old.mul(&tf_old);
        } else {
            out.forward[te_old] = tf_new.mul(&t_new);
            out.backward[te_new] = tf_old.inverse().mul(&t_old);
        }
    }
    Ok(out)
}
