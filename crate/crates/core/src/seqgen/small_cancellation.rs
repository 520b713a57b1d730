use std::collections::BTreeMap;

use super::family::{check_index, MorphismFamily};
use crate::picore::{GroupKind, MarkedGroup, Morphism, PiMap};
use crate::words::{check_small_cancellation, Letter, Word};
use crate::{Error, Result};

/// Shortlex-least word of each element of `π(F)`, keyed by element.
pub fn shortlex_transversal(pi: &PiMap) -> BTreeMap<usize, Word> {
    let q = pi.q();
    let rank = pi.images().len();
    let mut out = BTreeMap::from([(q.identity(), Word::identity())]);
    let mut frontier = vec![(Word::identity(), q.identity())];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (w, x) in &frontier {
            for gen in 0..rank {
                for inv in [false, true] {
                    let l = Letter::new(gen, inv);
                    if w.last() == Some(l.inverse()) {
                        continue;
                    }
                    let p = pi.image(gen);
                    let y = q.mul(*x, if inv { q.inv(p) } else { p });
                    if let std::collections::btree_map::Entry::Vacant(e) = out.entry(y) {
                        let v = w.mul(&Word::letter(l));
                        e.insert(v.clone());
                        next.push((v, y));
                    }
                }
            }
        }
        frontier = next;
    }
    out
}

/// Checks the four properties of a balanced small-cancellation tuple at
/// level `m`; returns the first failing property, if any.
pub fn small_cancellation_bullets(ys: &[Word], m: u32) -> Result<Option<&'static str>> {
    if ys.iter().any(Word::is_identity) {
        return Ok(Some("nontrivial images"));
    }
    let zs: Vec<Word> = ys.iter().map(|y| y.cyclic_decomposition().core).collect();
    if !check_small_cancellation(&zs, m)? {
        return Ok(Some("C'(m) on cyclic cores"));
    }
    let m = m as usize;
    if ys.iter().any(|y| y.len() <= m) {
        return Ok(Some("|y_i| > m"));
    }
    let max = ys.iter().map(Word::len).max().unwrap_or(0);
    let min = ys.iter().map(Word::len).min().unwrap_or(0);
    // max/min < 1 + 1/m
    if max * m >= min * (m + 1) {
        return Ok(Some("length ratio < 1 + 1/m"));
    }
    if zs.iter().zip(ys).any(|(z, y)| z.len() * m < (m - 1) * y.len()) {
        return Ok(Some("|z_i| >= (m-1)/m |y_i|"));
    }
    Ok(None)
}

/// Seed tuple: `n` words of `k` blocks `x y^e`, each exponent used once,
/// paired as `(s, nk + 1 - s)` so all words have equal length.
fn seed(n: usize, k: usize) -> Vec<Word> {
    let total = n * k;
    (0..n)
        .map(|i| {
            let mut w = Word::identity();
            for p in 0..k / 2 {
                let s = (i * k / 2 + p + 1) as i64;
                for e in [s, total as i64 + 1 - s] {
                    w = w.mul(&Word::generator(0)).mul(&Word::power_of_generator(1, e));
                }
            }
            w
        })
        .collect()
}

const MAX_BLOCKS: usize = 4096;

/// The level-`m` member of the balanced small-cancellation family from `f1`
/// to `f2`, π-corrected by shortlex transversal elements.
pub fn small_cancellation_family(f1: &MarkedGroup, f2: &MarkedGroup, m: u32) -> Result<Morphism> {
    if f1.kind() != GroupKind::Free {
        return Err(Error::input("source must be a free marked group"));
    }
    if f2.kind() != GroupKind::Free || f2.rank() < 2 {
        return Err(Error::input("target must be a non-abelian free marked group"));
    }
    if !f1.pi().same_q(f2.pi()) {
        return Err(Error::input("source and target are marked by different groups"));
    }
    if m < 2 {
        return Err(Error::input("level must be at least 2"));
    }
    let n = f1.rank();
    let q = f2.q();
    let transversal = shortlex_transversal(f2.pi());
    let mut k = 4 * m as usize + 4;
    while k <= MAX_BLOCKS {
        let mut ys = Vec::with_capacity(n);
        for (i, y) in seed(n, k).into_iter().enumerate() {
            let want = q.mul(q.inv(f2.pi().evaluate(&y)?), f1.pi().image(i));
            let r = transversal.get(&want).ok_or_else(|| {
                Error::input(format!(
                    "pi of source generator {} is outside the image of the target marking",
                    f1.alphabet().name(i)
                ))
            })?;
            ys.push(y.mul(r));
        }
        if small_cancellation_bullets(&ys, m)?.is_none() {
            return Morphism::new(f1.clone(), f2.clone(), ys);
        }
        k += 2;
    }
    Err(Error::input("no balanced small-cancellation tuple within the block limit"))
}

/// `m ↦ small_cancellation_family(f1, f2, m)`, starting at level 2.
#[derive(Debug, Clone)]
pub struct SmallCancellationFamily {
    source: MarkedGroup,
    target: MarkedGroup,
}

impl SmallCancellationFamily {
    pub fn new(source: MarkedGroup, target: MarkedGroup) -> Result<Self> {
        small_cancellation_family(&source, &target, 2)?;
        Ok(SmallCancellationFamily { source, target })
    }
}

impl MorphismFamily for SmallCancellationFamily {
    fn source(&self) -> &MarkedGroup {
        &self.source
    }
    fn target(&self) -> &MarkedGroup {
        &self.target
    }
    fn first_index(&self) -> usize {
        2
    }
    fn member(&self, n: usize) -> Result<Morphism> {
        check_index(self, n)?;
        let m = u32::try_from(n).map_err(|_| Error::input("level too large"))?;
        small_cancellation_family(&self.source, &self.target, m)
    }
}
