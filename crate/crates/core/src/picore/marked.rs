use std::sync::Arc;

use super::finite::{cyclic_image_check, FiniteGroup};
use crate::text::{parse_assoc, split_list, Fields};
use crate::words::{Alphabet, Word};
use crate::{Error, Result};

/// A marking `π: G → Q` given by generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiMap {
    q: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl PiMap {
    pub fn new(q: Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = images.iter().find(|&&x| x >= q.order()) {
            return Err(Error::input(format!("pi image {bad} outside Q")));
        }
        Ok(PiMap { q, images })
    }

    /// The marking sending every generator to the identity.
    pub fn trivial(q: Arc<FiniteGroup>, rank: usize) -> Self {
        PiMap {
            q,
            images: vec![0; rank],
        }
    }

    pub fn q(&self) -> &Arc<FiniteGroup> {
        &self.q
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, gen: usize) -> usize {
        self.images[gen]
    }

    pub fn evaluate(&self, w: &Word) -> Result<usize> {
        let q = &self.q;
        w.letters().iter().try_fold(q.identity(), |acc, l| {
            let x = *self.images.get(l.gen()).ok_or_else(|| {
                Error::input(format!("generator {} is outside the marked alphabet", l.gen()))
            })?;
            Ok(q.mul(acc, if l.is_inverse() { q.inv(x) } else { x }))
        })
    }

    pub(crate) fn same_q(&self, other: &PiMap) -> bool {
        Arc::ptr_eq(&self.q, &other.q) || self.q == other.q
    }
}

/// Product of generator images along `w`.
pub fn evaluate_pi(pi: &PiMap, w: &Word) -> Result<usize> {
    pi.evaluate(w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Free,
    FreeAbelian,
    /// Given by generators and relators with no word-problem solver attached.
    Presented,
}

/// A finitely generated group together with a marking by `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedGroup {
    alphabet: Alphabet,
    kind: GroupKind,
    extra_relators: Vec<Word>,
    pi: PiMap,
}

impl MarkedGroup {
    pub fn new(alphabet: Alphabet, kind: GroupKind, extra_relators: Vec<Word>, pi: PiMap) -> Result<Self> {
        if pi.images.len() != alphabet.rank() {
            return Err(Error::input(format!(
                "pi gives {} images for {} generators",
                pi.images.len(),
                alphabet.rank()
            )));
        }
        if kind != GroupKind::Presented && !extra_relators.is_empty() {
            return Err(Error::input("free and free abelian groups take no extra relators"));
        }
        let g = MarkedGroup {
            alphabet,
            kind,
            extra_relators,
            pi,
        };
        for r in g.relators() {
            if r.max_generator().is_some_and(|m| m >= g.alphabet.rank()) {
                return Err(Error::input("relator uses a foreign generator"));
            }
            if g.pi.evaluate(&r)? != 0 {
                return Err(Error::input(format!(
                    "pi does not respect relator {}",
                    g.alphabet.format_word(&r)
                )));
            }
        }
        Ok(g)
    }

    pub fn free(names: &[&str], q: Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self> {
        let alphabet = Alphabet::new(names)?;
        MarkedGroup::new(alphabet, GroupKind::Free, vec![], PiMap::new(q, images)?)
    }

    pub fn free_abelian(names: &[&str], q: Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self> {
        let alphabet = Alphabet::new(names)?;
        MarkedGroup::new(alphabet, GroupKind::FreeAbelian, vec![], PiMap::new(q, images)?)
    }

    /// Parses `free|abelian gens=<names> [pi=<gen:element,...>]`; unlisted
    /// generators map to the identity.
    pub fn parse(line: &str, q: Arc<FiniteGroup>) -> Result<Self> {
        let f = Fields::parse(line)?;
        f.only(&["gens", "pi"])?;
        let kind = match f.positional.as_slice() {
            [k] if k == "free" => GroupKind::Free,
            [k] if k == "abelian" => GroupKind::FreeAbelian,
            _ => return Err(Error::input("expected `free` or `abelian` followed by gens=")),
        };
        let alphabet = Alphabet::new(split_list(f.require("gens")?))?;
        let mut images = vec![0; alphabet.rank()];
        for (g, e) in parse_assoc(f.get("pi").unwrap_or(""))? {
            let i = alphabet
                .lookup(&g)
                .ok_or_else(|| Error::input(format!("pi names unknown generator {g:?}")))?;
            images[i] = q.parse_element(&e)?;
        }
        MarkedGroup::new(alphabet, kind, vec![], PiMap::new(q, images)?)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn pi(&self) -> &PiMap {
        &self.pi
    }

    pub fn q(&self) -> &Arc<FiniteGroup> {
        &self.pi.q
    }

    /// Defining relators; commutators of generator pairs for abelian groups.
    pub fn relators(&self) -> Vec<Word> {
        let mut out = Vec::new();
        if self.kind == GroupKind::FreeAbelian {
            for i in 0..self.rank() {
                for j in i + 1..self.rank() {
                    out.push(Word::generator(i).commutator(&Word::generator(j)));
                }
            }
        }
        out.extend(self.extra_relators.iter().cloned());
        out
    }

    /// Word problem for free and free abelian groups.
    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        match self.kind {
            GroupKind::Free => Ok(w.is_identity()),
            GroupKind::FreeAbelian => Ok(w.exponent_sums(self.rank()).iter().all(|&e| e == 0)),
            GroupKind::Presented => Err(Error::Unsupported(
                "word problem for a presented group without a solver".into(),
            )),
        }
    }

    /// Canonical representative: reduced word, or sorted powers when abelian.
    pub fn normalize(&self, w: &Word) -> Word {
        match self.kind {
            GroupKind::FreeAbelian => {
                let sums = w.exponent_sums(self.rank());
                Word::product(
                    &sums
                        .iter()
                        .enumerate()
                        .map(|(g, &e)| Word::power_of_generator(g, e))
                        .collect::<Vec<_>>(),
                )
            }
            _ => w.clone(),
        }
    }
}

/// A homomorphism between marked groups given by generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    source: MarkedGroup,
    target: MarkedGroup,
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(source: MarkedGroup, target: MarkedGroup, images: Vec<Word>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::input(format!(
                "{} images given for {} source generators",
                images.len(),
                source.rank()
            )));
        }
        if images
            .iter()
            .any(|w| w.max_generator().is_some_and(|m| m >= target.rank()))
        {
            return Err(Error::input("image uses a generator outside the target"));
        }
        let images = images.iter().map(|w| target.normalize(w)).collect();
        Ok(Morphism {
            source,
            target,
            images,
        })
    }

    /// The identity morphism of `g`.
    pub fn identity(g: MarkedGroup) -> Self {
        let images = (0..g.rank()).map(Word::generator).collect();
        Morphism {
            source: g.clone(),
            target: g,
            images,
        }
    }

    /// Parses `gen:word, ...` with unlisted generators mapped to themselves
    /// by name when the target has that name, otherwise an error.
    pub fn parse_images(source: MarkedGroup, target: MarkedGroup, assoc: &str) -> Result<Self> {
        let mut images: Vec<Option<Word>> = vec![None; source.rank()];
        for (g, w) in parse_assoc(assoc)? {
            let i = source
                .alphabet()
                .lookup(&g)
                .ok_or_else(|| Error::input(format!("unknown source generator {g:?}")))?;
            images[i] = Some(target.alphabet().parse_word(&w)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, w)| match w {
                Some(w) => Ok(w),
                None => {
                    let name = source.alphabet().name(i);
                    target
                        .alphabet()
                        .lookup(name)
                        .map(Word::generator)
                        .ok_or_else(|| Error::input(format!("no image given for {name}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(source, target, images)
    }

    pub fn source(&self) -> &MarkedGroup {
        &self.source
    }

    pub fn target(&self) -> &MarkedGroup {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Word {
        self.target.normalize(&w.substitute(&self.images))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Morphism) -> Result<Morphism> {
        if self.target.alphabet() != next.source.alphabet() {
            return Err(Error::input("morphisms are not composable"));
        }
        let images = self.images.iter().map(|w| next.apply(w)).collect();
        Morphism::new(self.source.clone(), next.target.clone(), images)
    }
}

/// π-compatibility plus relator preservation, using `is_trivial` as the
/// target's word problem.
pub fn check_morphism_with(f: &Morphism, is_trivial: &dyn Fn(&Word) -> Result<bool>) -> Result<bool> {
    if !f.source.pi.same_q(&f.target.pi) {
        return Err(Error::input("source and target are marked by different groups"));
    }
    for (i, w) in f.images.iter().enumerate() {
        if f.target.pi.evaluate(w)? != f.source.pi.image(i) {
            return Ok(false);
        }
    }
    for r in f.source.relators() {
        if !is_trivial(&f.apply(&r))? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn check_morphism(f: &Morphism) -> Result<bool> {
    check_morphism_with(f, &|w| f.target.is_trivial(w))
}

/// Free product on the disjoint union of the alphabets.
pub fn pi_free_product(g: &MarkedGroup, h: &MarkedGroup) -> Result<MarkedGroup> {
    if !g.pi.same_q(&h.pi) {
        return Err(Error::input("factors are marked by different groups"));
    }
    let mut alphabet = g.alphabet.clone();
    for name in h.alphabet.names() {
        if g.alphabet.lookup(name).is_some() {
            return Err(Error::input(format!("generator name {name:?} occurs in both factors")));
        }
        alphabet.push(name)?;
    }
    let shift = g.rank();
    let mut relators = g.relators();
    relators.extend(h.relators().iter().map(|r| {
        r.letters()
            .iter()
            .map(|l| crate::words::Letter::new(l.gen() + shift, l.is_inverse()))
            .collect::<Word>()
    }));
    let kind = if relators.is_empty() {
        GroupKind::Free
    } else {
        GroupKind::Presented
    };
    let mut images = g.pi.images.clone();
    images.extend_from_slice(&h.pi.images);
    MarkedGroup::new(alphabet, kind, relators, PiMap::new(g.pi.q.clone(), images)?)
}

/// π-admissibility of a free abelian marked group: the image is cyclic.
pub fn abelian_pi_admissible(m: &MarkedGroup) -> Result<bool> {
    if m.kind != GroupKind::FreeAbelian {
        return Err(Error::input("abelian admissibility needs a free abelian group"));
    }
    Ok(cyclic_image_check(&m.pi.q, &m.pi.images))
}
