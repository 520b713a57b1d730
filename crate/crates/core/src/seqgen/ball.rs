use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::family::MorphismFamily;
use crate::config::Caps;
use crate::picore::{GroupKind, MarkedGroup};
use crate::words::{Letter, Word};
use crate::{Error, Result};

/// Outcome of [`discriminate_ball`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallResult {
    /// Least index whose member kills no nontrivial word of the ball.
    Found(usize),
    /// Every index up to the cap kills some word of the ball.
    CapExhausted(usize),
}

/// Nontrivial elements of length at most `radius`, shortest first: reduced
/// words for free groups, exponent vectors for free abelian groups.
pub fn ball_words(g: &MarkedGroup, radius: usize) -> Result<Vec<Word>> {
    let rank = g.rank();
    let mut out = Vec::new();
    match g.kind() {
        GroupKind::Free => {
            let mut layer = vec![Word::identity()];
            for _ in 0..radius {
                let mut next = Vec::new();
                for w in &layer {
                    for gen in 0..rank {
                        for inv in [false, true] {
                            let l = Letter::new(gen, inv);
                            if w.last() != Some(l.inverse()) {
                                next.push(w.mul(&Word::letter(l)));
                            }
                        }
                    }
                }
                out.extend(next.iter().cloned());
                layer = next;
            }
        }
        GroupKind::FreeAbelian => {
            for len in 1..=radius {
                let mut v = vec![0i64; rank];
                exponent_vectors(&mut v, 0, len as i64, &mut out);
            }
        }
        GroupKind::Presented => {
            return Err(Error::Unsupported("balls in presented groups".into()));
        }
    }
    Ok(out)
}

/// Appends every vector with `ℓ¹` norm exactly `left` in the tail from `i`.
fn exponent_vectors(v: &mut Vec<i64>, i: usize, left: i64, out: &mut Vec<Word>) {
    if i == v.len() {
        if left == 0 {
            let w = v
                .iter()
                .enumerate()
                .fold(Word::identity(), |acc, (g, &e)| acc.mul(&Word::power_of_generator(g, e)));
            out.push(w);
        }
        return;
    }
    for e in -left..=left {
        v[i] = e;
        exponent_vectors(v, i + 1, left - e.abs(), out);
    }
    v[i] = 0;
}

/// Least index `N` in `[first_index, index_cap]` whose member kills no
/// nontrivial source element of length at most `radius`.
pub fn discriminate_ball(fam: &dyn MorphismFamily, radius: usize, caps: &Caps) -> Result<BallResult> {
    if radius > caps.ball_radius {
        return Err(Error::input(format!(
            "radius {radius} exceeds the configured bound {}",
            caps.ball_radius
        )));
    }
    let ball = ball_words(fam.source(), radius)?;
    let cap = usize::try_from(caps.index_cap).unwrap_or(usize::MAX);
    for n in fam.first_index()..=cap.max(fam.first_index()) {
        let mut injective = true;
        for w in &ball {
            if fam.kills(n, w)? {
                injective = false;
                break;
            }
        }
        if injective {
            return Ok(BallResult::Found(n));
        }
    }
    Ok(BallResult::CapExhausted(cap))
}

/// `|core(f1_{n1}(g1))| / |core(f2_{n2}(g2))|`.
pub fn growth_ratio(
    f1: &dyn MorphismFamily,
    n1: usize,
    g1: &Word,
    f2: &dyn MorphismFamily,
    n2: usize,
    g2: &Word,
) -> Result<BigRational> {
    let num: BigInt = f1.image_length(n1, g1)?;
    let den: BigInt = f2.image_length(n2, g2)?;
    if den.is_zero() {
        return Err(Error::input("denominator image is trivial"));
    }
    Ok(BigRational::new(num, den))
}
