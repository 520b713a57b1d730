use std::sync::Arc;

use num_bigint::BigInt;

use super::family::{check_index, MorphismFamily};
use crate::picore::{pi_free_product, MarkedGroup, Morphism};
use crate::words::Word;
use crate::{Error, Result};

/// Indices checked when a combination is built, to reject families whose
/// growth cannot keep up.
const PROBE: usize = 4;

/// A family on the free product `G_1 ∗ … ∗ G_k` whose member `n` restricts
/// to member `k_i(n)` of family `i`, with the witness of each factor growing
/// more than `n` times faster than the witnesses of earlier factors.
#[derive(Debug, Clone)]
pub struct Combined {
    families: Vec<Arc<dyn MorphismFamily>>,
    witnesses: Vec<Word>,
    source: MarkedGroup,
    target: MarkedGroup,
    /// Generator offsets of each factor in the source and target.
    source_offsets: Vec<usize>,
    target_offsets: Vec<usize>,
    index_cap: usize,
}

fn shifted(w: &Word, offset: usize, rank: usize) -> Word {
    let map: Vec<Word> = (0..rank).map(|g| Word::generator(g + offset)).collect();
    w.substitute(&map)
}

/// Combines families on disjoint alphabets. `witnesses[i]` is a word in the
/// source of family `i`; member `n` satisfies
/// `|f_i(w_i)| / |f_j(w_j)| < 1/n` for `i < j`.
pub fn asymmetric_combine(
    families: Vec<Arc<dyn MorphismFamily>>,
    witnesses: Vec<Word>,
    index_cap: usize,
) -> Result<Arc<dyn MorphismFamily>> {
    if families.is_empty() {
        return Err(Error::input("nothing to combine"));
    }
    if witnesses.len() != families.len() {
        return Err(Error::input("one witness per family is required"));
    }
    for (i, (f, w)) in families.iter().zip(&witnesses).enumerate() {
        if w.is_identity() {
            return Err(Error::input(format!("witness of family {} is trivial", i + 1)));
        }
        if w.max_generator().is_some_and(|g| g >= f.source().rank()) {
            return Err(Error::input(format!("witness of family {} is not in its source", i + 1)));
        }
    }
    if families.len() == 1 {
        return Ok(families.into_iter().next().unwrap());
    }
    let mut source = families[0].source().clone();
    let mut source_offsets = vec![0];
    for f in &families[1..] {
        source_offsets.push(source.rank());
        source = pi_free_product(&source, f.source())?;
    }
    let shared = families
        .iter()
        .all(|f| f.target().alphabet() == families[0].target().alphabet());
    let mut target = families[0].target().clone();
    let mut target_offsets = vec![0];
    for f in &families[1..] {
        if shared {
            target_offsets.push(0);
        } else {
            target_offsets.push(target.rank());
            target = pi_free_product(&target, f.target())?;
        }
    }
    let c = Combined {
        families,
        witnesses,
        source,
        target,
        source_offsets,
        target_offsets,
        index_cap,
    };
    c.indices(PROBE)?;
    Ok(Arc::new(c))
}

impl Combined {
    /// `k_i(n)` for each factor.
    pub fn indices(&self, n: usize) -> Result<Vec<usize>> {
        let k = self.families.len();
        let mut prev: Vec<Option<usize>> = vec![None; k];
        let mut current = Vec::new();
        for step in 1..=n.max(1) {
            current.clear();
            let mut lengths: Vec<BigInt> = Vec::with_capacity(k);
            for (j, f) in self.families.iter().enumerate() {
                let lo = prev[j].map_or(f.first_index(), |p| p + 1).max(f.first_index());
                let idx = if j == 0 {
                    lo.max(step)
                } else {
                    let need = lengths.iter().max().cloned().unwrap_or_default() * step;
                    let mut found = None;
                    for idx in lo..=self.index_cap.max(lo) {
                        if f.image_length(idx, &self.witnesses[j])? > need {
                            found = Some(idx);
                            break;
                        }
                    }
                    found.ok_or_else(|| {
                        Error::input(format!(
                            "family {} does not outgrow earlier factors within index {}",
                            j + 1,
                            self.index_cap
                        ))
                    })?
                };
                lengths.push(f.image_length(idx, &self.witnesses[j])?);
                current.push(idx);
                prev[j] = Some(idx);
            }
        }
        Ok(current)
    }

    fn factor_of(&self, w: &Word) -> Option<usize> {
        let (lo, hi) = (w.letters().iter().map(|l| l.gen()).min()?, w.max_generator()?);
        let i = self.source_offsets.iter().rposition(|&o| o <= lo)?;
        (hi < self.source_offsets[i] + self.families[i].source().rank()).then_some(i)
    }
}

impl MorphismFamily for Combined {
    fn source(&self) -> &MarkedGroup {
        &self.source
    }
    fn target(&self) -> &MarkedGroup {
        &self.target
    }
    fn member(&self, n: usize) -> Result<Morphism> {
        check_index(self, n)?;
        let idx = self.indices(n)?;
        let mut images = Vec::new();
        for (i, f) in self.families.iter().enumerate() {
            let m = f.member(idx[i])?;
            let rank = f.target().rank();
            images.extend(m.images().iter().map(|w| shifted(w, self.target_offsets[i], rank)));
        }
        Morphism::new(self.source.clone(), self.target.clone(), images)
    }
    fn image_length(&self, n: usize, w: &Word) -> Result<BigInt> {
        check_index(self, n)?;
        match self.factor_of(w) {
            Some(i) => {
                let local = shifted_down(w, self.source_offsets[i], self.families[i].source().rank());
                self.families[i].image_length(self.indices(n)?[i], &local)
            }
            None if w.is_identity() => Ok(BigInt::default()),
            None => {
                let f = self.member(n)?;
                super::family::core_length(f.target(), &f.apply(w))
            }
        }
    }
}

fn shifted_down(w: &Word, offset: usize, rank: usize) -> Word {
    let map: Vec<Word> = (0..offset + rank)
        .map(|g| if g < offset { Word::identity() } else { Word::generator(g - offset) })
        .collect();
    w.substitute(&map)
}
