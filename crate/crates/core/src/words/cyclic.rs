use super::word::{Letter, Word};
use crate::{Error, Result};

/// `w = prefix · core · prefix⁻¹` with no cancellation, `core` cyclically
/// reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicDecomposition {
    pub prefix: Word,
    pub core: Word,
}

impl Word {
    pub fn cyclic_decomposition(&self) -> CyclicDecomposition {
        let l = self.letters();
        let mut k = 0;
        while 2 * k + 1 < l.len() && l[k] == l[l.len() - 1 - k].inverse() {
            k += 1;
        }
        CyclicDecomposition {
            prefix: Word::from_letters(l[..k].iter().copied()),
            core: Word::from_letters(l[k..l.len() - k].iter().copied()),
        }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(a), Some(b)) => self.len() == 1 || a != b.inverse(),
            _ => true,
        }
    }

    /// Translation length on the Cayley graph: the length of the cyclic core.
    pub fn translation_length(&self) -> usize {
        self.cyclic_decomposition().core.len()
    }

    /// Smallest `p` such that rotating the word by `p` fixes it.
    pub(crate) fn primitive_period(&self) -> usize {
        let l = self.letters();
        let n = l.len();
        (1..=n)
            .find(|&p| n % p == 0 && (0..n).all(|i| l[i] == l[(i + p) % n]))
            .unwrap_or(0)
    }
}

/// Longest common subword of cyclic rotations of `x` and `y` (both taken
/// as cyclic words). With `self_pair`, `x` and `y` must be the same word and
/// alignments that differ by a multiple of the primitive period (offset
/// conjugators inside the cyclic centralizer) are skipped.
pub fn piece_length(x: &[Letter], y: &[Letter], self_pair: bool) -> usize {
    let (n, m) = (x.len(), y.len());
    if n == 0 || m == 0 {
        return 0;
    }
    let period = if self_pair {
        debug_assert_eq!(x, y);
        Word::from_letters(x.iter().copied()).primitive_period()
    } else {
        0
    };
    let cap = n.min(m);
    // lcp over the doubled words, rows indexed by i descending.
    let (xn, ym) = (2 * n, 2 * m);
    let mut next = vec![0usize; ym + 1];
    let mut cur = vec![0usize; ym + 1];
    let mut best = 0;
    for i in (0..xn).rev() {
        let xi = x[i % n];
        for j in (0..ym).rev() {
            cur[j] = if xi == y[j % m] {
                (1 + next[j + 1]).min(cap)
            } else {
                0
            };
        }
        if i < n {
            for j in 0..m {
                if self_pair && (j + n - i) % period == 0 {
                    continue;
                }
                best = best.max(cur[j]);
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    best
}

/// Length of the longest common piece of the cyclic cores of `x` and `y`.
/// When `x == y` the self-piece convention applies.
pub fn max_common_piece(x: &Word, y: &Word) -> Result<usize> {
    if x.is_identity() || y.is_identity() {
        return Err(Error::input("pieces are only defined for nontrivial words"));
    }
    let (cx, cy) = (x.cyclic_decomposition().core, y.cyclic_decomposition().core);
    Ok(piece_length(cx.letters(), cy.letters(), x == y))
}

/// `C'(m)`: every piece between `z_i` and `z_j^{±1}` (self pieces included)
/// is strictly shorter than `min(|z_i|, |z_j|) / m`.
pub fn check_small_cancellation(tuple: &[Word], m: u32) -> Result<bool> {
    if m < 2 {
        return Err(Error::input("small cancellation parameter must be at least 2"));
    }
    for (i, z) in tuple.iter().enumerate() {
        if z.is_identity() || !z.is_cyclically_reduced() {
            return Err(Error::input(format!(
                "tuple entry {} is not a nontrivial cyclically reduced word",
                i + 1
            )));
        }
    }
    let m = m as usize;
    for (i, zi) in tuple.iter().enumerate() {
        for (j, zj) in tuple.iter().enumerate().skip(i) {
            let bound = zi.len().min(zj.len());
            let inv = zj.inverse();
            let same = piece_length(zi.letters(), zj.letters(), i == j);
            let opposite = piece_length(zi.letters(), inv.letters(), false);
            if same.max(opposite) * m >= bound {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Returns `g` with `g⁻¹ u g = v` when `u` and `v` are conjugate.
pub fn conjugacy(u: &Word, v: &Word) -> Option<Word> {
    let du = u.cyclic_decomposition();
    let dv = v.cyclic_decomposition();
    if du.core.len() != dv.core.len() {
        return None;
    }
    let n = du.core.len();
    if n == 0 {
        return Some(Word::identity());
    }
    // core_v = s⁻¹ core_u s with s the first k letters of core_u.
    let k = (0..n).find(|&k| du.core.rotate(k) == dv.core)?;
    let s = du.core.prefix(k);
    Some(du.prefix.mul(&s).mul(&dv.prefix.inverse()))
}
