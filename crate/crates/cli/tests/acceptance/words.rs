use std::sync::Arc;

use gogkit::picore::{check_morphism, FiniteGroup, MarkedGroup};
use gogkit::seqgen::small_cancellation_family;
use gogkit::words::{axis_overlap, check_small_cancellation, conjugacy, reduce, Overlap, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::{self, Raw};

fn word(r: &[i32]) -> Word {
    Word::from_letters(oracle::to_letters(r))
}

fn signed(r: &[i32]) -> Vec<(usize, i8)> {
    r.iter().map(|&x| (x.unsigned_abs() as usize - 1, x.signum() as i8)).collect()
}

pub fn word_algebra() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rank = 3;
    let trials = 10_000;
    for _ in 0..trials {
        let len = rng.gen_range(0..40);
        let raw = oracle::random_raw(&mut rng, rank, len);
        let w = reduce(&signed(&raw), rank).map_err(|e| e.to_string())?;
        let lw = oracle::from_word(&w);
        ensure!(lw == oracle::free_reduce(&raw), "reduce({raw:?}) = {lw:?}");
        let again = reduce(&signed(&lw), rank).map_err(|e| e.to_string())?;
        ensure!(again == w, "reduce is not idempotent on {lw:?}");

        let raw2 = { let n = rng.gen_range(0..20); oracle::random_raw(&mut rng, rank, n) };
        let joined = reduce(&signed(&oracle::concat(&[&raw, &raw2])), rank).map_err(|e| e.to_string())?;
        let split = w.mul(&word(&oracle::free_reduce(&raw2)));
        ensure!(joined == split, "reduction order changes the result for {raw:?} {raw2:?}");

        let d = w.cyclic_decomposition();
        let (p, c) = (oracle::from_word(&d.prefix), oracle::from_word(&d.core));
        let rebuilt = oracle::concat(&[&p, &c, &oracle::inverse(&p)]);
        ensure!(rebuilt == lw, "prefix core prefix^-1 of {lw:?} is {rebuilt:?}");
        ensure!(c == oracle::cyclic_core(&lw), "core of {lw:?} is {c:?}");
        ensure!(
            c.len() < 2 || c[0] != -c[c.len() - 1],
            "core {c:?} is not cyclically reduced"
        );

        let g = { let n = rng.gen_range(0..8); oracle::random_reduced(&mut rng, rank, n) };
        let v = oracle::free_reduce(&oracle::concat(&[&oracle::inverse(&g), &lw, &g]));
        let cert = conjugacy(&w, &word(&v)).ok_or_else(|| format!("{lw:?} and {v:?} reported not conjugate"))?;
        let cert = oracle::from_word(&cert);
        let check = oracle::free_reduce(&oracle::concat(&[&oracle::inverse(&cert), &lw, &cert]));
        ensure!(check == v, "certificate {cert:?} fails for {lw:?} ~ {v:?}");

        let other = oracle::free_reduce(&oracle::random_raw(&mut rng, rank, lw.len()));
        let lib = conjugacy(&w, &word(&other));
        ensure!(
            lib.is_some() == oracle::conjugate(&lw, &other),
            "conjugacy decision differs on {lw:?}, {other:?}"
        );
        if let Some(c) = lib {
            let c = oracle::from_word(&c);
            let check = oracle::free_reduce(&oracle::concat(&[&oracle::inverse(&c), &lw, &c]));
            ensure!(check == other, "certificate {c:?} fails for {lw:?} ~ {other:?}");
        }
    }
    Ok(format!("{trials} random words, 5 properties each"))
}

struct Marking {
    q: Arc<FiniteGroup>,
    target: Vec<&'static str>,
    source: Vec<&'static str>,
}

fn markings() -> Vec<Marking> {
    vec![
        Marking {
            q: Arc::new(FiniteGroup::cyclic(1)),
            target: vec!["0", "0"],
            source: vec!["0", "0", "0"],
        },
        Marking {
            q: Arc::new(FiniteGroup::cyclic(2)),
            target: vec!["1", "0"],
            source: vec!["1", "0", "1"],
        },
        Marking {
            q: Arc::new(FiniteGroup::symmetric(3)),
            target: vec!["p102", "p021"],
            source: vec!["p120", "p102", "p012"],
        },
    ]
}

fn marked(q: &Arc<FiniteGroup>, names: &[&str], elems: &[&str]) -> MarkedGroup {
    let images = elems.iter().map(|e| q.element(e).unwrap()).collect();
    MarkedGroup::free(names, q.clone(), images).unwrap()
}

/// π of a target word from the element names, computed without the group
/// table: integers mod `n` or permutations.
fn pi_name(q: &FiniteGroup, target: &[&str], w: &[i32]) -> String {
    if target[0].starts_with('p') {
        let images: Vec<Vec<usize>> = target.iter().map(|n| oracle::perm_from_name(n)).collect();
        return oracle::perm_name(&oracle::perm_eval(w, &images));
    }
    let n = q.order() as i64;
    let vals: Vec<i64> = target.iter().map(|s| s.parse().unwrap()).collect();
    let sum: i64 = w.iter().map(|&x| x.signum() as i64 * vals[x.unsigned_abs() as usize - 1]).sum();
    sum.rem_euclid(n).to_string()
}

pub fn small_cancellation() -> Result<String, String> {
    let names = ["a", "b", "c"];
    let mut families = 0;
    for mk in markings() {
        let target = marked(&mk.q, &["s", "t"], &mk.target);
        for n in 1..=3 {
            let source = marked(&mk.q, &names[..n], &mk.source[..n]);
            for m in 3..=8u32 {
                let f = small_cancellation_family(&source, &target, m).map_err(|e| e.to_string())?;
                let ys: Vec<Raw> = f.images().iter().map(oracle::from_word).collect();
                let zs: Vec<Raw> = ys.iter().map(|y| oracle::cyclic_core(y)).collect();
                let m = m as usize;
                let tag = format!("{} rank {n} m {m}", mk.q.name());
                ensure!(ys.iter().all(|y| !y.is_empty()), "{tag}: trivial image");
                ensure!(oracle::small_cancellation(&zs, m), "{tag}: cores fail C'(m)");
                ensure!(ys.iter().all(|y| y.len() > m), "{tag}: image of length <= m");
                let max = ys.iter().map(Vec::len).max().unwrap();
                let min = ys.iter().map(Vec::len).min().unwrap();
                ensure!(max * m < min * (m + 1), "{tag}: length ratio {max}/{min}");
                ensure!(
                    zs.iter().zip(&ys).all(|(z, y)| m * z.len() >= (m - 1) * y.len()),
                    "{tag}: core too short"
                );
                ensure!(check_morphism(&f).map_err(|e| e.to_string())?, "{tag}: check_morphism fails");
                for (i, y) in ys.iter().enumerate() {
                    ensure!(pi_name(&mk.q, &mk.target, y) == mk.source[i], "{tag}: pi of image {i}");
                }
                ensure!(oracle::injective_on_ball(&ys, 3), "{tag}: not injective on the 3-ball");
                families += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut accepted, mut tried) = (0, 0);
    while accepted < 200 {
        tried += 1;
        let n = rng.gen_range(1..=3);
        let zs: Vec<Raw> = (0..n)
            .map(|_| {
                let len = rng.gen_range(6..=24);
                oracle::random_cyclically_reduced(&mut rng, 2, len)
            })
            .collect();
        let ours = oracle::small_cancellation(&zs, 3);
        let words: Vec<Word> = zs.iter().map(|z| word(z)).collect();
        let lib = check_small_cancellation(&words, 3).map_err(|e| e.to_string())?;
        ensure!(ours == lib, "C'(3) decision differs on {zs:?}");
        if ours {
            ensure!(oracle::injective_on_ball(&zs, 3), "C'(3) tuple {zs:?} not injective on the 3-ball");
            accepted += 1;
        }
    }
    Ok(format!("{families} family members, {accepted} random C'(3) tuples of {tried}"))
}

pub fn axis() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rank = 3;
    let conjugators = oracle::ball(rank, 3);
    let (mut pairs, mut checks, mut worst) = (0, 0, 0.0f64);
    while pairs < 200 {
        let zs: Vec<Raw> = (0..2)
            .map(|_| {
                let len = rng.gen_range(30..=60);
                oracle::random_cyclically_reduced(&mut rng, rank, len)
            })
            .collect();
        if !oracle::small_cancellation(&zs, 5) {
            continue;
        }
        pairs += 1;
        let min = zs[0].len().min(zs[1].len());
        let (u, v) = (word(&zs[0]), word(&zs[1]));
        for (x, y) in [(&u, &v), (&v, &u), (&u, &v.inverse()), (&v, &u.inverse())] {
            for g in &conjugators {
                let o = axis_overlap(x, y, &word(g)).map_err(|e| e.to_string())?;
                checks += 1;
                let Overlap::Finite(k) = o else {
                    return Err(format!("infinite overlap for {zs:?}"));
                };
                ensure!(5 * k < min, "overlap {k} with min core {min} for {zs:?}, g = {g:?}");
                worst = worst.max(k as f64 / min as f64);
            }
        }
    }
    Ok(format!("{pairs} C'(5) pairs, {checks} overlaps, largest ratio {worst:.3} < 0.2"))
}
