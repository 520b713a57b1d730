use std::collections::HashMap;

use super::word::{Letter, Word};
use crate::{Error, Result};

/// Length of the intersection of two axes in the Cayley tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Overlap {
    Finite(usize),
    Infinite,
}

const MODULUS: u64 = (1 << 61) - 1;
const BASE: u64 = 1_000_003;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

/// A vertex of the Cayley tree kept as a reduced word with a positional
/// hash updated in constant time per letter.
struct Walker {
    stack: Vec<Letter>,
    hash: u64,
    powers: Vec<u64>,
}

impl Walker {
    fn new(start: &Word) -> Self {
        let mut w = Walker {
            stack: Vec::new(),
            hash: 0,
            powers: vec![1],
        };
        for &l in start.letters() {
            w.step(l);
        }
        w
    }

    fn code(l: Letter) -> u64 {
        2 * l.gen() as u64 + l.is_inverse() as u64 + 1
    }

    fn step(&mut self, l: Letter) {
        if self.stack.last() == Some(&l.inverse()) {
            self.stack.pop();
            let n = self.stack.len();
            self.hash = (self.hash + MODULUS - mul_mod(Self::code(l.inverse()), self.powers[n])) % MODULUS;
        } else {
            let n = self.stack.len();
            if self.powers.len() <= n + 1 {
                let next = mul_mod(self.powers[n], BASE);
                self.powers.push(next);
            }
            self.hash = (self.hash + mul_mod(Self::code(l), self.powers[n])) % MODULUS;
            self.stack.push(l);
        }
    }

    fn key(&self) -> (u64, usize) {
        (self.hash, self.stack.len())
    }
}

/// Vertices of the axis of `p · c · p⁻¹` (with `c` cyclically reduced)
/// between `p c^{-reps}` and `p c^{reps}`, as hash keys in path order.
fn axis_window(prefix: &Word, core: &Word, reps: usize) -> (Word, Vec<(u64, usize)>) {
    let start = prefix.mul(&core.pow(-(reps as i64)));
    let mut w = Walker::new(&start);
    let mut out = vec![w.key()];
    for _ in 0..2 * reps {
        for &l in core.letters() {
            w.step(l);
            out.push(w.key());
        }
    }
    (start, out)
}

/// The `i`-th vertex of a window.
fn window_vertex(start: &Word, core: &Word, i: usize) -> Word {
    let steps = core.letters().iter().cycle().take(i).copied();
    start.mul(&Word::from_letters(steps))
}

/// Edge length of `Ax(u) ∩ g·Ax(v)`. Infinite exactly when `g v g⁻¹`
/// commutes with `u`, i.e. both are powers of a common element.
pub fn axis_overlap(u: &Word, v: &Word, g: &Word) -> Result<Overlap> {
    if u.is_identity() || v.is_identity() {
        return Err(Error::input("axes are only defined for nontrivial words"));
    }
    let w = g.mul(v).mul(&g.inverse());
    if u.commutator(&w).is_identity() {
        return Ok(Overlap::Infinite);
    }
    let du = u.cyclic_decomposition();
    let dw = w.cyclic_decomposition();
    // A finite overlap has length below tl(u) + tl(w) and lies within
    // |prefix| + tl(u) + tl(w) of the nearest point of either axis.
    let reach = du.prefix.len() + dw.prefix.len() + 2 * (du.core.len() + dw.core.len());
    let reps_u = reach / du.core.len() + 2;
    let reps_w = reach / dw.core.len() + 2;
    let (sa, a) = axis_window(&du.prefix, &du.core, reps_u);
    let (sb, b) = axis_window(&dw.prefix, &dw.core, reps_w);
    let mut index: HashMap<(u64, usize), Vec<usize>> = HashMap::new();
    for (i, k) in a.iter().enumerate() {
        index.entry(*k).or_default().push(i);
    }
    let mut common = 0usize;
    for (j, k) in b.iter().enumerate() {
        if let Some(is) = index.get(k) {
            let v = window_vertex(&sb, &dw.core, j);
            if is.iter().any(|&i| window_vertex(&sa, &du.core, i) == v) {
                common += 1;
            }
        }
    }
    Ok(Overlap::Finite(common.saturating_sub(1)))
}
