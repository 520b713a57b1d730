use std::sync::Arc;

use gogkit::picore::{FiniteGroup, MarkedGroup};
use gogkit::seqgen::{discriminate_box, AbelianSequence};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn err(e: gogkit::Error) -> String {
    e.to_string()
}

fn sequence(k: u64, residues: &[u64], z2: bool) -> Result<AbelianSequence, String> {
    let q = Arc::new(FiniteGroup::cyclic(if z2 { 2 } else { 1 }));
    let names: Vec<String> = std::iter::once("x".to_string())
        .chain((1..=residues.len()).map(|i| format!("y{i}")))
        .collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let pi = std::iter::once(z2 as usize)
        .chain(residues.iter().map(|r| if z2 { (r % 2) as usize } else { 0 }))
        .collect();
    let m = MarkedGroup::free_abelian(&names, q, pi).map_err(err)?;
    AbelianSequence::new(m, k, residues.to_vec()).map_err(err)
}

/// `K·(n+i)! + r_i`, with the factorial taken from scratch for each `i`.
fn formula(k: u64, residues: &[u64], n: usize) -> Vec<BigInt> {
    residues
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let f: BigInt = (2..=(n + i + 1) as u64).map(BigInt::from).product();
            f * k + r
        })
        .collect()
}

/// A nonzero `(c_0, .., c_m)` in the box with `c_0 + Σ c_i e_i = 0`.
fn killed(es: &[BigInt], bound: i64) -> bool {
    let m = es.len();
    let mut c = vec![-bound; m];
    loop {
        let s: BigInt = es.iter().zip(&c).map(|(e, &ci)| e * ci).sum();
        if c.iter().any(|&x| x != 0) && s >= BigInt::from(-bound) && s <= BigInt::from(bound) {
            return true;
        }
        let mut i = 0;
        while i < m && c[i] == bound {
            c[i] = -bound;
            i += 1;
        }
        if i == m {
            return false;
        }
        c[i] += 1;
    }
}

/// Residue tuples: the smallest, the largest and one random choice.
fn residue_tuples(k: u64, m: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let all: Vec<u64> = (0..k).collect();
    let mut out = vec![all[..m].to_vec(), all[all.len() - m..].to_vec()];
    let mut pick: Vec<u64> = all.choose_multiple(rng, m).copied().collect();
    pick.shuffle(rng);
    out.push(pick);
    out.dedup();
    out
}

pub fn abelian() -> Result<String, String> {
    let spot = sequence(2, &[1], false)?.exponents(1);
    ensure!(spot == vec![BigInt::from(5)], "e_(1,1) for K = 2, r = 1 is {spot:?}");

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut boxes, mut witnessed, mut killers) = (0u64, 0u64, 0u64);
    for k in 1..=6u64 {
        for m in 1..=3usize.min(k as usize) {
            for residues in residue_tuples(k, m, &mut rng) {
                for z2 in [false, true] {
                    if z2 && k % 2 != 0 {
                        continue;
                    }
                    let seq = sequence(k, &residues, z2)?;
                    for n in 0..4 {
                        ensure!(seq.exponents(n) == formula(k, &residues, n), "K {k} r {residues:?}: e at n = {n}");
                        for b in 1..=3u64 {
                            let lib = discriminate_box(&seq, b, n).map_err(err)?;
                            let brute = !killed(&formula(k, &residues, n), b as i64);
                            ensure!(lib == brute, "K {k} r {residues:?} B {b} n {n}: library {lib}, brute force {brute}");
                            killers += (!brute) as u64;
                        }
                    }
                    for b in 1..=10u64 {
                        let start = (m as u64 + 2) * b * k;
                        for n in start..=start + 20 {
                            let n = n as usize;
                            let es = seq.exponents(n);
                            ensure!(es == formula(k, &residues, n), "K {k} r {residues:?}: e at n = {n}");
                            ensure!(
                                discriminate_box(&seq, b, n).map_err(err)?,
                                "K {k} r {residues:?} B {b}: a box vector dies at n = {n}"
                            );
                            if b <= 2 {
                                ensure!(!killed(&es, b as i64), "brute force finds a kernel vector at K {k} B {b} n {n}");
                                witnessed += 1;
                            }
                            boxes += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{boxes} boxes discriminated ({witnessed} rechecked by brute force), {killers} small-n kills matched, e_(1,1) = 5"
    ))
}
