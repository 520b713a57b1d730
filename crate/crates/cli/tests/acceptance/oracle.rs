//! Independent reference implementations. Letters are nonzero integers:
//! `g + 1` for generator `g`, negated for its inverse.

use std::cmp::Ordering;
use std::collections::HashSet;

use gogkit::words::{Letter, Word};
use rand::Rng;

pub type Raw = Vec<i32>;

pub fn from_word(w: &Word) -> Raw {
    w.letters()
        .iter()
        .map(|l| {
            let g = l.gen() as i32 + 1;
            if l.is_inverse() {
                -g
            } else {
                g
            }
        })
        .collect()
}

pub fn to_letters(r: &[i32]) -> Vec<Letter> {
    r.iter().map(|&x| Letter::new(x.unsigned_abs() as usize - 1, x < 0)).collect()
}

pub fn free_reduce(r: &[i32]) -> Raw {
    let mut out: Raw = Vec::with_capacity(r.len());
    for &x in r {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn inverse(r: &[i32]) -> Raw {
    r.iter().rev().map(|x| -x).collect()
}

pub fn concat(parts: &[&[i32]]) -> Raw {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// Strips matching inverse ends of the reduced word until stable.
pub fn cyclic_core(r: &[i32]) -> Raw {
    let mut w = free_reduce(r);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.remove(0);
        w.pop();
    }
    w
}

/// True iff the reduced words are conjugate: their cores are rotations of
/// each other.
pub fn conjugate(u: &[i32], v: &[i32]) -> bool {
    let (cu, cv) = (cyclic_core(u), cyclic_core(v));
    if cu.len() != cv.len() {
        return false;
    }
    if cu.is_empty() {
        return true;
    }
    let doubled = concat(&[&cu, &cu]);
    doubled.windows(cv.len()).any(|w| w == cv.as_slice())
}

pub fn random_letter<R: Rng>(rng: &mut R, rank: usize) -> i32 {
    let g = rng.gen_range(1..=rank as i32);
    if rng.gen_bool(0.5) {
        g
    } else {
        -g
    }
}

/// A random letter sequence that cancels often.
pub fn random_raw<R: Rng>(rng: &mut R, rank: usize, len: usize) -> Raw {
    let mut out: Raw = Vec::with_capacity(len);
    for _ in 0..len {
        match out.last() {
            Some(&l) if rng.gen_bool(0.3) => out.push(-l),
            _ => out.push(random_letter(rng, rank)),
        }
    }
    out
}

pub fn random_reduced<R: Rng>(rng: &mut R, rank: usize, len: usize) -> Raw {
    let mut out: Raw = Vec::with_capacity(len);
    while out.len() < len {
        let l = random_letter(rng, rank);
        if out.last() != Some(&-l) {
            out.push(l);
        }
    }
    out
}

pub fn random_cyclically_reduced<R: Rng>(rng: &mut R, rank: usize, len: usize) -> Raw {
    loop {
        let w = random_reduced(rng, rank, len);
        if len < 2 || w[0] != -w[len - 1] {
            return w;
        }
    }
}

/// Every reduced word of length at most `radius`.
pub fn ball(rank: usize, radius: usize) -> Vec<Raw> {
    let mut out = vec![vec![]];
    let mut layer: Vec<Raw> = vec![vec![]];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &layer {
            for g in 1..=rank as i32 {
                for l in [g, -g] {
                    if w.last() != Some(&-l) {
                        let mut x = w.clone();
                        x.push(l);
                        next.push(x);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn substitute(w: &[i32], images: &[Raw]) -> Raw {
    let mut out = Vec::new();
    for &x in w {
        let img = &images[x.unsigned_abs() as usize - 1];
        if x > 0 {
            out.extend_from_slice(img);
        } else {
            out.extend(inverse(img));
        }
    }
    free_reduce(&out)
}

/// True iff the images separate every pair of elements of the ball.
pub fn injective_on_ball(images: &[Raw], radius: usize) -> bool {
    let words = ball(images.len(), radius);
    let distinct: HashSet<Raw> = words.iter().map(|w| substitute(w, images)).collect();
    distinct.len() == words.len()
}

/// One rotation of a cyclic word, read forward indefinitely.
struct Rotation<'a> {
    word: &'a [i32],
    start: usize,
}

impl Rotation<'_> {
    fn at(&self, k: usize) -> i32 {
        self.word[(self.start + k) % self.word.len()]
    }
}

fn compare(a: &Rotation, b: &Rotation, cap: usize) -> Ordering {
    (0..cap).map(|k| a.at(k).cmp(&b.at(k))).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

fn lcp(a: &Rotation, b: &Rotation, cap: usize) -> usize {
    (0..cap).take_while(|&k| a.at(k) == b.at(k)).count()
}

fn primitive_period(w: &[i32]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&p| n % p == 0 && (0..n).all(|i| w[i] == w[(i + p) % n]))
        .unwrap_or(n)
}

/// `C'(m)` for cyclically reduced nontrivial words: every common piece of
/// `z_i` and `z_j^{±1}` is shorter than `min(|z_i|, |z_j|) / m`. Pieces are
/// longest common prefixes of sorted rotations; rotations of one word that
/// coincide are kept once, so a word only meets itself at offsets outside
/// its centralizer.
pub fn small_cancellation(tuple: &[Raw], m: usize) -> bool {
    let words: Vec<Raw> = tuple.iter().flat_map(|z| [z.clone(), inverse(z)]).collect();
    let cap = words.iter().map(Vec::len).max().unwrap_or(0) + 1;
    let min_all = words.iter().map(Vec::len).min().unwrap_or(0);
    let mut rots: Vec<Rotation> = Vec::new();
    for w in &words {
        for start in 0..primitive_period(w) {
            rots.push(Rotation { word: w, start });
        }
    }
    rots.sort_by(|a, b| compare(a, b, cap));
    for i in 0..rots.len() {
        let mut run = usize::MAX;
        for j in i + 1..rots.len() {
            run = run.min(lcp(&rots[j - 1], &rots[j], cap));
            if run * m < min_all {
                break;
            }
            if run * m >= rots[i].word.len().min(rots[j].word.len()) {
                return false;
            }
        }
    }
    true
}

/// Permutations in one-line notation composed right to left.
pub fn perm_from_name(name: &str) -> Vec<usize> {
    name.trim_start_matches('p').bytes().map(|b| (b - b'0') as usize).collect()
}

pub fn perm_mul(a: &[usize], b: &[usize]) -> Vec<usize> {
    (0..a.len()).map(|i| a[b[i]]).collect()
}

pub fn perm_inv(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
    out
}

pub fn perm_name(p: &[usize]) -> String {
    format!("p{}", p.iter().map(|d| d.to_string()).collect::<String>())
}

pub fn all_perms(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for x in 0..k {
            if !prefix.contains(&x) {
                prefix.push(x);
                go(prefix, k, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), k, &mut out);
    out
}

/// Product of the permutation images of the letters, left to right.
pub fn perm_eval(w: &[i32], images: &[Vec<usize>]) -> Vec<usize> {
    let k = images.first().map_or(0, Vec::len);
    w.iter().fold((0..k).collect(), |acc: Vec<usize>, &x| {
        let p = &images[x.unsigned_abs() as usize - 1];
        perm_mul(&acc, &if x > 0 { p.clone() } else { perm_inv(p) })
    })
}

