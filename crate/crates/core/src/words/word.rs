use std::cmp::Ordering;

use crate::{Error, Result};

/// A generator or its formal inverse.
///
/// Letters order by generator index, with a generator before its inverse;
/// this is the order used for every shortlex comparison in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    gen: u32,
    inv: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter {
            gen: gen as u32,
            inv: inverse,
        }
    }

    pub fn gen(self) -> usize {
        self.gen as usize
    }

    pub fn is_inverse(self) -> bool {
        self.inv
    }

    pub fn sign(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex order.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Reduces a raw sequence of `(generator, sign)` pairs, checking that every
/// generator index is below `rank`.
pub fn reduce(raw: &[(usize, i8)], rank: usize) -> Result<Word> {
    let mut letters = Vec::with_capacity(raw.len());
    for &(gen, sign) in raw {
        if gen >= rank {
            return Err(Error::input(format!(
                "generator index {gen} outside alphabet of rank {rank}"
            )));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::input(format!("letter sign must be +1 or -1, got {sign}")));
        }
        letters.push(Letter::new(gen, sign < 0));
    }
    Ok(Word::from_letters(letters))
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn generator(gen: usize) -> Self {
        Word(vec![Letter::new(gen, false)])
    }

    /// Builds the reduced form of an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// `gen^exp` as a word.
    pub fn power_of_generator(gen: usize, exp: i64) -> Self {
        let l = Letter::new(gen, exp < 0);
        Word(vec![l; exp.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut k = 0;
        let (a, b) = (&self.0, &other.0);
        while k < a.len() && k < b.len() && a[a.len() - 1 - k] == b[k].inverse() {
            k += 1;
        }
        let mut out = Vec::with_capacity(a.len() + b.len() - 2 * k);
        out.extend_from_slice(&a[..a.len() - k]);
        out.extend_from_slice(&b[k..]);
        Word(out)
    }

    /// Number of letters cancelled when forming `self · other`.
    pub fn cancellation_with(&self, other: &Word) -> usize {
        let (a, b) = (&self.0, &other.0);
        let mut k = 0;
        while k < a.len() && k < b.len() && a[a.len() - 1 - k] == b[k].inverse() {
            k += 1;
        }
        k
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.inverse().mul(self).mul(g)
    }

    /// `[self, other] = self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    pub fn product<'a>(words: impl IntoIterator<Item = &'a Word>) -> Word {
        words
            .into_iter()
            .fold(Word::identity(), |acc, w| acc.mul(w))
    }

    /// Replaces every generator `i` by `images[i]` and reduces.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for l in &self.0 {
            let img = &images[l.gen()];
            out = if l.is_inverse() {
                out.mul(&img.inverse())
            } else {
                out.mul(img)
            };
        }
        out
    }

    /// Like [`Word::substitute`] but letters without an image are kept.
    pub fn substitute_partial(&self, images: &dyn Fn(usize) -> Option<Word>) -> Word {
        let mut out = Word::identity();
        for &l in &self.0 {
            let img = images(l.gen()).unwrap_or_else(|| Word::generator(l.gen()));
            out = if l.is_inverse() {
                out.mul(&img.inverse())
            } else {
                out.mul(&img)
            };
        }
        out
    }

    /// Exponent sum of every generator below `rank`.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0; rank];
        for l in &self.0 {
            if l.gen() < rank {
                sums[l.gen()] += l.sign();
            }
        }
        sums
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen()).max()
    }

    pub fn uses_only(&self, allowed: impl Fn(usize) -> bool) -> bool {
        self.0.iter().all(|l| allowed(l.gen()))
    }

    /// Cyclic rotation: letters `k..` followed by `..k` (not reduced again;
    /// callers rotate cyclically reduced words).
    pub(crate) fn rotate(&self, k: usize) -> Word {
        let n = self.0.len();
        if n == 0 {
            return Word::identity();
        }
        let k = k % n;
        let mut v = Vec::with_capacity(n);
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub(crate) fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].to_vec())
    }

    pub(crate) fn suffix_from(&self, k: usize) -> Word {
        Word(self.0[k..].to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::from_letters(iter)
    }
}
