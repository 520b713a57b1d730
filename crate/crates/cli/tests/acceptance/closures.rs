use std::fs;
use std::sync::Arc;

use gogkit::closures::{
    complement, extension_exists, intersect, search_formal_solution, verify_merzlyakov_witness, verify_scp_witness,
    Atom, CongruenceCondition, DataPoint, FormalSolutionProblem, PeggedAbelianPair, Shape,
};
use gogkit::config::Caps;
use gogkit::picore::FiniteGroup;
use gogkit::words::{Alphabet, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::common::fixtures;
use crate::oracle::{self, Raw};

fn err(e: gogkit::Error) -> String {
    e.to_string()
}

/// A small group known both to the library and by explicit arithmetic.
enum Toy {
    Cyclic(usize),
    S3,
}

impl Toy {
    fn group(&self) -> FiniteGroup {
        match self {
            Toy::Cyclic(n) => FiniteGroup::cyclic(*n),
            Toy::S3 => FiniteGroup::symmetric(3),
        }
    }

    fn names(&self) -> Vec<String> {
        match self {
            Toy::Cyclic(n) => (0..*n).map(|i| i.to_string()).collect(),
            Toy::S3 => oracle::all_perms(3).iter().map(|p| oracle::perm_name(p)).collect(),
        }
    }

    fn pow(&self, name: &str, t: i64) -> String {
        match self {
            Toy::Cyclic(n) => {
                let x: i64 = name.parse().unwrap();
                (x * t).rem_euclid(*n as i64).to_string()
            }
            Toy::S3 => {
                let p = oracle::perm_from_name(name);
                let base = if t < 0 { oracle::perm_inv(&p) } else { p };
                let mut acc: Vec<usize> = (0..3).collect();
                for _ in 0..t.unsigned_abs() {
                    acc = oracle::perm_mul(&acc, &base);
                }
                oracle::perm_name(&acc)
            }
        }
    }
}

/// Every `t` in range with `k t = e` and `peg^t = bar` for each coordinate.
fn brute_roots(toy: &Toy, peg: &str, roots: &[(u64, String)], exps: &[i64]) -> Option<Vec<i64>> {
    roots
        .iter()
        .zip(exps)
        .map(|((k, bar), &e)| (-50..=50).find(|&t| *k as i64 * t == e && toy.pow(peg, t) == *bar))
        .collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn random_condition<R: Rng>(rng: &mut R, shape: &Shape, modulus: u64) -> Result<CongruenceCondition, String> {
    let coords: usize = shape.bases.iter().sum();
    let count = rng.gen_range(0..=6);
    let atoms: Vec<Atom> = (0..count)
        .map(|_| Atom {
            q: (0..shape.hanging).map(|_| rng.gen_range(0..shape.q.order())).collect(),
            residues: (0..coords).map(|_| rng.gen_range(0..modulus)).collect(),
        })
        .collect();
    CongruenceCondition::new(shape.clone(), modulus, atoms).map_err(err)
}

/// Every point with exponents in `[0, modulus)`.
fn residue_box(shape: &Shape, modulus: u64) -> Vec<DataPoint> {
    let coords: usize = shape.bases.iter().sum();
    let mut out = vec![DataPoint { q: vec![], exps: vec![] }];
    for _ in 0..shape.hanging {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..shape.q.order()).map(move |x| {
                    let mut p = p.clone();
                    p.q.push(x);
                    p
                })
            })
            .collect();
    }
    for _ in 0..coords {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..modulus as i64).map(move |e| {
                    let mut p = p.clone();
                    p.exps.push(e);
                    p
                })
            })
            .collect();
    }
    out
}

pub fn congruences() -> Result<String, String> {
    let mut roots_checked = 0;
    let toys: Vec<Toy> = (1..=6).map(Toy::Cyclic).chain([Toy::S3]).collect();
    for toy in &toys {
        let q = Arc::new(toy.group());
        let names = toy.names();
        for peg in &names {
            for bar in &names {
                for k in 1..=12u64 {
                    let pair = PeggedAbelianPair::new(q.clone(), q.element(peg).unwrap(), vec![(k, q.element(bar).unwrap())])
                        .map_err(err)?;
                    for e in -50..=50i64 {
                        let lib = extension_exists(&pair, &[e]).map_err(err)?;
                        let brute = brute_roots(toy, peg, &[(k, bar.clone())], &[e]);
                        ensure!(lib == brute, "peg {peg} bar {bar} k {k} e {e}: library {lib:?}, brute force {brute:?}");
                        roots_checked += 1;
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..2000 {
        let toy = toys.choose(&mut rng).unwrap();
        let q = Arc::new(toy.group());
        let names = toy.names();
        let peg = names.choose(&mut rng).unwrap().clone();
        let roots: Vec<(u64, String)> =
            (0..2).map(|_| (rng.gen_range(1..=12), names.choose(&mut rng).unwrap().clone())).collect();
        let pair = PeggedAbelianPair::new(
            q.clone(),
            q.element(&peg).unwrap(),
            roots.iter().map(|(k, b)| (*k, q.element(b).unwrap())).collect(),
        )
        .map_err(err)?;
        let exps: Vec<i64> = roots
            .iter()
            .map(|(k, _)| if rng.gen_bool(0.5) { *k as i64 * rng.gen_range(-4..=4) } else { rng.gen_range(-50..=50) })
            .collect();
        let lib = extension_exists(&pair, &exps).map_err(err)?;
        ensure!(lib == brute_roots(toy, &peg, &roots, &exps), "rank-2 pair {peg} {roots:?} at {exps:?}");
        roots_checked += 1;
    }

    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let shapes = [
        Shape { q: z2.clone(), hanging: 0, bases: vec![1], pi_orders: vec![1] },
        Shape { q: z2.clone(), hanging: 0, bases: vec![2], pi_orders: vec![1] },
        Shape { q: z2.clone(), hanging: 1, bases: vec![1, 1], pi_orders: vec![1, 1] },
        Shape { q: z2.clone(), hanging: 1, bases: vec![1], pi_orders: vec![2] },
    ];
    let (mut samples, mut empties) = (0, 0);
    while samples < 1000 {
        let shape = shapes.choose(&mut rng).unwrap();
        let pick = |rng: &mut ChaCha8Rng| loop {
            let k = rng.gen_range(1..=6u64);
            if shape.pi_orders.iter().all(|o| k % o == 0) {
                return k;
            }
        };
        let (k1, k2) = (pick(&mut rng), pick(&mut rng));
        let c1 = random_condition(&mut rng, shape, k1)?;
        let c2 = random_condition(&mut rng, shape, k2)?;
        let both = intersect(&c1, &c2).map_err(err)?;
        let lcm = k1 / gcd(k1, k2) * k2;
        ensure!(both.modulus() == lcm, "intersection modulus {} for {k1}, {k2}", both.modulus());
        let not1 = complement(&c1).map_err(err)?;
        let not_not1 = complement(&not1).map_err(err)?;
        ensure!(not1.modulus() == k1, "complement changed the modulus");
        let universe = residue_box(shape, lcm);
        let meets = universe.iter().any(|p| c1.contains(p) && c2.contains(p));
        ensure!(both.is_empty() != meets, "emptiness of the intersection at modulus {lcm}");
        empties += both.is_empty() as usize;
        for _ in 0..20 {
            let p = DataPoint {
                q: (0..shape.hanging).map(|_| rng.gen_range(0..2)).collect(),
                exps: (0..shape.bases.iter().sum::<usize>()).map(|_| rng.gen_range(-30..=30)).collect(),
            };
            let (a, b) = (c1.contains(&p), c2.contains(&p));
            ensure!(both.contains(&p) == (a && b), "intersection at {p:?}");
            ensure!(not1.contains(&p) == !a, "complement at {p:?}");
            ensure!(not_not1.contains(&p) == a, "double complement at {p:?}");
            let lifted = c1.lift(k1 * 2).map_err(err)?;
            ensure!(lifted.contains(&p) == a, "lift at {p:?}");
            let d = intersect(&both, &not1).map_err(err)?;
            ensure!(!d.contains(&p), "c1 and c2 meet the complement of c1 at {p:?}");
        }
        samples += 1;
    }
    Ok(format!(
        "{roots_checked} root searches, {samples} condition pairs x 20 points ({empties} empty intersections)"
    ))
}

/// Independent search: every assignment of reduced words of length at most
/// `len` over each block's scope (constants and universal variables so far),
/// checked by direct substitution.
struct Enumerator {
    rank: usize,
    blocks: Vec<(Vec<usize>, Vec<usize>)>,
    equations: Vec<Raw>,
}

impl Enumerator {
    fn new(p: &FormalSolutionProblem, constants: &[&str]) -> Enumerator {
        let a = p.alphabet();
        let mut seen: Vec<usize> = constants.iter().map(|c| a.lookup(c).unwrap()).collect();
        let mut blocks = Vec::new();
        for b in p.blocks() {
            seen.extend(&b.forall);
            blocks.push((seen.clone(), b.exists.clone()));
        }
        Enumerator {
            rank: a.rank(),
            blocks,
            equations: p.equations().iter().map(oracle::from_word).collect(),
        }
    }

    fn words(scope: &[usize], len: usize) -> Vec<Raw> {
        fn go(scope: &[usize], left: usize, w: &mut Raw, out: &mut Vec<Raw>) {
            out.push(w.clone());
            if left == 0 {
                return;
            }
            for &g in scope {
                for l in [g as i32 + 1, -(g as i32 + 1)] {
                    if w.last() != Some(&-l) {
                        w.push(l);
                        go(scope, left - 1, w, out);
                        w.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        go(scope, len, &mut vec![], &mut out);
        out
    }

    fn solves(&self, images: &[Raw]) -> bool {
        self.equations.iter().all(|e| oracle::substitute(e, images).is_empty())
    }

    fn assign(&self, slot: usize, images: &mut Vec<Raw>, pool: &[(usize, Vec<Raw>)]) -> bool {
        if slot == pool.len() {
            return self.solves(images);
        }
        let (y, words) = &pool[slot];
        for w in words {
            images[*y] = w.clone();
            if self.assign(slot + 1, images, pool) {
                return true;
            }
        }
        images[*y] = vec![*y as i32 + 1];
        false
    }

    fn solvable(&self, len: usize) -> bool {
        let mut pool = Vec::new();
        for (scope, ys) in &self.blocks {
            let words = Self::words(scope, len);
            for &y in ys {
                pool.push((y, words.clone()));
            }
        }
        let mut images: Vec<Raw> = (0..self.rank as i32).map(|g| vec![g + 1]).collect();
        self.assign(0, &mut images, &pool)
    }

    fn accepts(&self, witness: &[Vec<Word>]) -> bool {
        let mut images: Vec<Raw> = (0..self.rank as i32).map(|g| vec![g + 1]).collect();
        for ((scope, ys), ws) in self.blocks.iter().zip(witness) {
            for (&y, w) in ys.iter().zip(ws) {
                let raw = oracle::from_word(w);
                if raw.iter().any(|l| !scope.contains(&(l.unsigned_abs() as usize - 1))) {
                    return false;
                }
                images[y] = raw;
            }
        }
        self.solves(&images)
    }
}

const CONJUGACY_ONLY: &str = "constants: a1, a2\nforall x\nexists y\neq: y^-1 a1 y a2^-1\n";
const SOLVABLE: &str = "constants: a\nforall x\nexists y\neq: y x^-1 a^-1\n";
const TWO_WITNESSES: &str = "constants: a\nforall x\nexists y, z\neq: y z^-1\neq: z x a^-1 x^-1\n";

pub fn formal() -> Result<String, String> {
    let a = Alphabet::new(["x", "y"]).map_err(err)?;
    let sigma = [a.parse_word("x^-1 y^-1 x y").map_err(err)?];
    let x = a.parse_word("x").map_err(err)?;
    ensure!(verify_merzlyakov_witness(&sigma, &[1], &[x]).map_err(err)?, "y := x is rejected for [x, y]");

    let read = |f: &str| fs::read_to_string(fixtures().join("inputs").join(f)).unwrap();
    let systems: Vec<(&str, String, Vec<&str>, bool)> = vec![
        ("counterexample", read("counterexample.txt"), vec!["a1", "a2"], false),
        ("conjugacy only", CONJUGACY_ONLY.to_string(), vec!["a1", "a2"], false),
        ("commutator", read("commutator.txt"), vec!["a"], true),
        ("y = a x", SOLVABLE.to_string(), vec!["a"], true),
        ("two witnesses", TWO_WITNESSES.to_string(), vec!["a"], true),
    ];
    let caps = Caps { search_length: 6, ..Caps::default() };
    let mut agreed = 0;
    for (name, text, constants, solvable) in &systems {
        let p = FormalSolutionProblem::parse(text, None).map_err(err)?;
        let e = Enumerator::new(&p, constants);
        for len in 0..=3 {
            let lib = search_formal_solution(&p, len, &caps).map_err(err)?;
            ensure!(lib.is_some() == e.solvable(len), "{name} at length {len}: library and enumerator disagree");
            if let Some(w) = &lib {
                ensure!(e.accepts(w), "{name}: library witness fails direct substitution");
                ensure!(verify_scp_witness(&p, w).map_err(err)?.is_valid(), "{name}: witness not valid");
            }
            agreed += 1;
        }
        let found = search_formal_solution(&p, if *solvable { 3 } else { 6 }, &caps).map_err(err)?;
        ensure!(found.is_some() == *solvable, "{name}: expected solvable = {solvable}");
    }
    Ok(format!(
        "Merzlyakov witness accepted, no solution up to length 6 for the counterexample, {agreed} enumerator agreements"
    ))
}
