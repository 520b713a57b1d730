use std::collections::BTreeMap;
use std::sync::Arc;

use crate::gog::{Dir, GraphOfGroups, TypeTag, VertexKind};
use crate::words::Word;
use crate::{Error, Result};

/// Defining data of an elementary automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elementary {
    /// Twist over a directed edge by a word of the terminus vertex group.
    DehnTwist { edge: Dir, twister: Word },
    /// Extension of an automorphism of one vertex group; images, inverse
    /// images and twisters are global words.
    VertexExtension {
        vertex: usize,
        sigma: Vec<Word>,
        sigma_inv: Vec<Word>,
        twisters: BTreeMap<Dir, Word>,
    },
    /// `g ↦ c⁻¹ g c`.
    Inner { c: Word },
}

/// An elementary automorphism with its generator images and those of its
/// inverse, both over the host's combined alphabet.
#[derive(Debug, Clone)]
pub struct ElementaryAutomorphism {
    host: Arc<GraphOfGroups>,
    kind: Elementary,
    images: Vec<Word>,
    inverse_images: Vec<Word>,
}

impl ElementaryAutomorphism {
    pub fn host(&self) -> &Arc<GraphOfGroups> {
        &self.host
    }

    pub fn kind(&self) -> &Elementary {
        &self.kind
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[Word] {
        &self.inverse_images
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    /// The inverse automorphism, rebuilt from the defining data.
    pub fn inverse(&self) -> Result<ElementaryAutomorphism> {
        let h = &self.host;
        match &self.kind {
            Elementary::DehnTwist { edge, twister } => dehn_twist(h, *edge, &twister.inverse()),
            Elementary::Inner { c } => Ok(inner(h, &c.inverse())),
            Elementary::VertexExtension {
                vertex,
                sigma,
                sigma_inv,
                twisters,
            } => {
                let inv_local = |w: &Word| {
                    let local = h.to_local(*vertex, w).unwrap();
                    let imgs: Vec<Word> = sigma_inv.iter().map(|s| h.to_local(*vertex, s).unwrap()).collect();
                    h.to_global(*vertex, &local.substitute(&imgs))
                };
                let tw = twisters
                    .iter()
                    .map(|(d, c)| (*d, inv_local(c).inverse()))
                    .collect();
                vertex_extension_parts(h, *vertex, sigma_inv.clone(), sigma.clone(), tw)
            }
        }
    }

    /// Renders in the automorphism text format.
    pub fn render(&self) -> String {
        let h = &self.host;
        let a = h.alphabet();
        match &self.kind {
            Elementary::DehnTwist { edge, twister } => {
                format!("twist {} by {}", h.dir_name(*edge), a.format_word(twister))
            }
            Elementary::Inner { c } => format!("inner {}", a.format_word(c)),
            Elementary::VertexExtension {
                vertex,
                sigma,
                sigma_inv,
                twisters,
            } => {
                let assoc = |ws: &[Word]| {
                    ws.iter()
                        .enumerate()
                        .map(|(i, w)| {
                            let g = h.to_global(*vertex, &Word::generator(i));
                            format!("{}:{}", a.format_word(&g), a.format_word(w))
                        })
                        .collect::<Vec<_>>()
                        .join(",")
                };
                let tw = twisters
                    .iter()
                    .filter(|(_, c)| !c.is_identity())
                    .map(|(d, c)| format!("{}:{}", h.dir_name(*d), a.format_word(c)))
                    .collect::<Vec<_>>()
                    .join(",");
                format!(
                    "vext {} sigma={} inv={} twisters={}",
                    h.vertex_name(*vertex),
                    assoc(sigma),
                    assoc(sigma_inv),
                    tw
                )
            }
        }
    }
}

pub fn apply(aut: &ElementaryAutomorphism, w: &Word) -> Word {
    aut.apply(w)
}

/// Equality inside one vertex group, given local words.
pub(crate) fn vertex_equal(g: &GraphOfGroups, v: usize, a: &Word, b: &Word) -> Result<bool> {
    match g.kind(v) {
        VertexKind::Free => Ok(a == b),
        VertexKind::Abelian => Ok(a.exponent_sums(g.rank(v)) == b.exponent_sums(g.rank(v))),
        k => Err(Error::Unsupported(format!(
            "word problem in {} vertex {}",
            k.keyword(),
            g.vertex_name(v)
        ))),
    }
}

fn conj(g: &Word, c: &Word) -> Word {
    g.conjugate_by(c)
}

/// Builds generator images from per-vertex conjugators and per-letter maps.
fn assemble(
    h: &GraphOfGroups,
    vertex_image: &dyn Fn(usize, usize) -> Word,
    letter_image: &dyn Fn(usize) -> Word,
) -> Vec<Word> {
    (0..h.alphabet().rank())
        .map(|gen| match h.vertex_of(gen) {
            Some(v) => vertex_image(v, gen),
            None => letter_image(h.edge_of_letter(gen).unwrap()),
        })
        .collect()
}

fn letter(h: &GraphOfGroups, e: usize) -> Word {
    Word::generator(h.letter(e).unwrap())
}

/// The Dehn twist over `d` by `c`, a word in the terminus vertex group that
/// lies in the edge group and commutes with it.
pub fn dehn_twist(host: &Arc<GraphOfGroups>, d: Dir, c: &Word) -> Result<ElementaryAutomorphism> {
    let h = host.as_ref();
    let y = h.terminus(d);
    let local = h
        .to_local(y, c)
        .ok_or_else(|| Error::input("twister is not a word in the terminus vertex group"))?;
    let at_y = d.reverse();
    if h.side(at_y).express(&local, h.rank(y))?.is_none() {
        return Err(Error::input("twister is not in the edge group"));
    }
    for a in h.words_at_terminus(d) {
        if !vertex_equal(h, y, &local.mul(a), &a.mul(&local))? {
            return Err(Error::input("twister does not commute with the edge group"));
        }
    }
    let images = twist_images(h, d, c);
    let inverse_images = twist_images(h, d, &c.inverse());
    Ok(ElementaryAutomorphism {
        host: host.clone(),
        kind: Elementary::DehnTwist {
            edge: d,
            twister: c.clone(),
        },
        images,
        inverse_images,
    })
}

fn twist_images(h: &GraphOfGroups, d: Dir, c: &Word) -> Vec<Word> {
    if h.in_tree(d.edge) {
        let far = h.tree_side(d);
        let cv = |v: usize| if far.contains(&v) { c.clone() } else { Word::identity() };
        assemble(
            h,
            &|v, gen| conj(&Word::generator(gen), &cv(v)),
            &|e| {
                let f = Dir::forward(e);
                cv(h.origin(f)).inverse().mul(&letter(h, e)).mul(&cv(h.terminus(f)))
            },
        )
    } else {
        assemble(h, &|_, gen| Word::generator(gen), &|e| {
            let t = letter(h, e);
            match (e == d.edge, d.rev) {
                (false, _) => t,
                (true, false) => t.mul(c),
                (true, true) => c.inverse().mul(&t),
            }
        })
    }
}

/// `g ↦ c⁻¹ g c`.
pub fn inner(host: &Arc<GraphOfGroups>, c: &Word) -> ElementaryAutomorphism {
    let n = host.alphabet().rank();
    let images = (0..n).map(|g| conj(&Word::generator(g), c)).collect();
    let inverse_images = (0..n).map(|g| conj(&Word::generator(g), &c.inverse())).collect();
    ElementaryAutomorphism {
        host: host.clone(),
        kind: Elementary::Inner { c: c.clone() },
        images,
        inverse_images,
    }
}

/// Parses assoc-style data for [`vertex_extension`]: `sigma` and `inv` map
/// generator names of `v` to words (unlisted generators are fixed),
/// `twisters` map `e`/`~e` leaving `v` to words of `v`.
pub fn vertex_extension(
    host: &Arc<GraphOfGroups>,
    v: &str,
    sigma: &[(String, String)],
    inv: &[(String, String)],
    twisters: &[(String, String)],
) -> Result<ElementaryAutomorphism> {
    let h = host.as_ref();
    let vi = h
        .vertex_index(v)
        .ok_or_else(|| Error::input(format!("unknown vertex {v:?}")))?;
    let a = h.alphabet();
    let table = |pairs: &[(String, String)]| -> Result<Vec<Word>> {
        let mut out: Vec<Word> = (0..h.rank(vi)).map(|i| h.to_global(vi, &Word::generator(i))).collect();
        for (g, w) in pairs {
            let gi = a
                .lookup(g)
                .and_then(|x| h.to_local(vi, &Word::generator(x)))
                .ok_or_else(|| Error::input(format!("{g:?} is not a generator of vertex {v}")))?;
            out[gi.letters()[0].gen()] = a.parse_word(w)?;
        }
        Ok(out)
    };
    let mut tw = BTreeMap::new();
    for (d, w) in twisters {
        let dir = h.parse_dir(d)?;
        if tw.insert(dir, a.parse_word(w)?).is_some() {
            return Err(Error::input(format!("twister for {d} given twice")));
        }
    }
    vertex_extension_parts(host, vi, table(sigma)?, table(inv)?, tw)
}

/// Natural extension of `σ` on vertex `vi`, verified clause by clause.
pub fn vertex_extension_parts(
    host: &Arc<GraphOfGroups>,
    vi: usize,
    sigma: Vec<Word>,
    sigma_inv: Vec<Word>,
    mut twisters: BTreeMap<Dir, Word>,
) -> Result<ElementaryAutomorphism> {
    let h = host.as_ref();
    let n = h.rank(vi);
    if sigma.len() != n || sigma_inv.len() != n {
        return Err(Error::input("sigma: wrong number of images"));
    }
    let to_local = |w: &Word, what: &str| {
        h.to_local(vi, w)
            .ok_or_else(|| Error::input(format!("{what}: word leaves the vertex group")))
    };
    let s: Vec<Word> = sigma.iter().map(|w| to_local(w, "sigma")).collect::<Result<_>>()?;
    let si: Vec<Word> = sigma_inv.iter().map(|w| to_local(w, "sigma")).collect::<Result<_>>()?;
    for i in 0..n {
        let g = Word::generator(i);
        if !vertex_equal(h, vi, &g.substitute(&s).substitute(&si), &g)?
            || !vertex_equal(h, vi, &g.substitute(&si).substitute(&s), &g)?
        {
            return Err(Error::input("sigma: supplied inverse does not invert sigma"));
        }
    }
    if h.tag(vi) == Some(TypeTag::AbelianType) {
        for &p in h.peripheral(vi) {
            if !vertex_equal(h, vi, &s[p], &Word::generator(p))? {
                return Err(Error::input("peripheral: sigma does not fix Per*(v)"));
            }
        }
    }
    for d in twisters.keys() {
        if h.origin(*d) != vi {
            return Err(Error::input(format!("twisters: {} does not leave the vertex", h.dir_name(*d))));
        }
    }
    let mut local_tw = BTreeMap::new();
    for e in 0..h.edge_count() {
        for d in [Dir::forward(e), Dir::forward(e).reverse()] {
            if h.origin(d) != vi {
                continue;
            }
            let c = twisters.entry(d).or_insert_with(Word::identity).clone();
            let cl = to_local(&c, "twisters")?;
            for a in h.words_at_origin(d) {
                if !vertex_equal(h, vi, &a.substitute(&s), &conj(a, &cl))? {
                    return Err(Error::input(format!(
                        "incidence: sigma is not conjugation by the twister on the edge group of {}",
                        h.dir_name(d)
                    )));
                }
            }
            local_tw.insert(d, c);
        }
    }
    // Vertex constants: the twister of the first edge on the tree path.
    let cv: Vec<Word> = (0..h.vertex_count())
        .map(|w| match h.tree_path(vi, w).first() {
            Some(d) => local_tw[d].clone(),
            None => Word::identity(),
        })
        .collect();
    let images = assemble(
        h,
        &|v, gen| {
            if v == vi {
                sigma[local_index(h, vi, gen)].clone()
            } else {
                conj(&Word::generator(gen), &cv[v])
            }
        },
        &|e| {
            let f = Dir::forward(e);
            let (x, y) = (h.origin(f), h.terminus(f));
            let a = if x != vi { cv[x].clone() } else { local_tw[&f].clone() };
            let b = if y != vi { cv[y].clone() } else { local_tw[&f.reverse()].clone() };
            a.inverse().mul(&letter(h, e)).mul(&b)
        },
    );
    let kind = Elementary::VertexExtension {
        vertex: vi,
        sigma: sigma.clone(),
        sigma_inv: sigma_inv.clone(),
        twisters: local_tw.clone(),
    };
    let mut aut = ElementaryAutomorphism {
        host: host.clone(),
        kind,
        images,
        inverse_images: vec![],
    };
    aut.inverse_images = inverse_extension_images(h, vi, &si, &local_tw, &sigma_inv)?;
    Ok(aut)
}

fn inverse_extension_images(
    h: &GraphOfGroups,
    vi: usize,
    si: &[Word],
    tw: &BTreeMap<Dir, Word>,
    sigma_inv: &[Word],
) -> Result<Vec<Word>> {
    let inv_tw: BTreeMap<Dir, Word> = tw
        .iter()
        .map(|(d, c)| {
            let local = h.to_local(vi, c).unwrap();
            (*d, h.to_global(vi, &local.substitute(si)).inverse())
        })
        .collect();
    let cv: Vec<Word> = (0..h.vertex_count())
        .map(|w| match h.tree_path(vi, w).first() {
            Some(d) => inv_tw[d].clone(),
            None => Word::identity(),
        })
        .collect();
    Ok(assemble(
        h,
        &|v, gen| {
            if v == vi {
                sigma_inv[local_index(h, vi, gen)].clone()
            } else {
                conj(&Word::generator(gen), &cv[v])
            }
        },
        &|e| {
            let f = Dir::forward(e);
            let (x, y) = (h.origin(f), h.terminus(f));
            let a = if x != vi { cv[x].clone() } else { inv_tw[&f].clone() };
            let b = if y != vi { cv[y].clone() } else { inv_tw[&f.reverse()].clone() };
            a.inverse().mul(&letter(h, e)).mul(&b)
        },
    ))
}

fn local_index(h: &GraphOfGroups, v: usize, gen: usize) -> usize {
    h.to_local(v, &Word::generator(gen)).unwrap().letters()[0].gen()
}
