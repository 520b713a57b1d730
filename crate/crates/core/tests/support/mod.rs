//! Oracles shared by the integration tests.
#![allow(dead_code)]

pub mod burau;

use gogkit::words::{Letter, Word};

/// Every letter sequence (not necessarily reduced) of length ≤ `max_len`
/// over `rank` generators, as raw signed letters.
pub fn all_raw_words(rank: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let letters: Vec<Letter> = (0..rank)
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .collect();
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                let mut x: Vec<Letter> = w.clone();
                x.push(l);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Reduced words of length ≤ `max_len`.
pub fn reduced_words(rank: usize, max_len: usize) -> Vec<Word> {
    let mut out: Vec<Word> = all_raw_words(rank, max_len)
        .into_iter()
        .map(Word::from_letters)
        .collect();
    out.sort();
    out.dedup();
    out
}
