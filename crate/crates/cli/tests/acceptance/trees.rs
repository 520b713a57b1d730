use gogkit::config::Caps;
use gogkit::treeord::{descending_chain, tr_less, BaseOrder, Label, LabeledRootedTree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn err(e: gogkit::Error) -> String {
    e.to_string()
}

fn label(i: usize) -> Label {
    Label::Name(format!("c{i}"))
}

fn build(parents: &[usize], labels: &[usize]) -> LabeledRootedTree {
    let mut t = LabeledRootedTree::root("n0", label(labels[0]));
    for (i, &p) in parents.iter().enumerate() {
        t.add_child(p, &format!("n{}", i + 1), label(labels[i + 1])).unwrap();
    }
    t
}

/// Every valid tree with at most `max` nodes over the chain `c0 < .. < c{k-1}`.
fn all_trees(max: usize, k: usize, base: &BaseOrder) -> Vec<LabeledRootedTree> {
    let mut out = Vec::new();
    for n in 1..=max {
        let mut parents = vec![0usize; n - 1];
        loop {
            let mut labels = vec![0usize; n];
            loop {
                let t = build(&parents, &labels);
                if t.validate(base).is_ok() {
                    out.push(t);
                }
                if !odometer(&mut labels, |_| k) {
                    break;
                }
            }
            if !odometer(&mut parents, |i| i + 1) {
                break;
            }
        }
    }
    out
}

/// Advances digit `i` through `0..radix(i)`; false after the last value.
fn odometer(v: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for i in 0..v.len() {
        v[i] += 1;
        if v[i] < radix(i) {
            return true;
        }
        v[i] = 0;
    }
    false
}

fn random_tree<R: Rng>(rng: &mut R, k: usize, base: &BaseOrder) -> LabeledRootedTree {
    loop {
        let n = rng.gen_range(1..=6);
        let parents: Vec<usize> = (1..n).map(|i| rng.gen_range(0..i)).collect();
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
        let t = build(&parents, &labels);
        if t.validate(base).is_ok() {
            return t;
        }
    }
}

pub fn preorder() -> Result<String, String> {
    let base = BaseOrder::chain(3);
    let caps = Caps::default();
    let trees = all_trees(4, 3, &base);
    let n = trees.len();
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            rel[i][j] = tr_less(&trees[i], &trees[j], &base, &caps).map_err(err)?;
        }
    }
    let mut pairs = 0;
    for i in 0..n {
        ensure!(!rel[i][i], "{} is related to itself", trees[i]);
        for j in (0..n).filter(|&j| rel[i][j]) {
            pairs += 1;
            for k in (0..n).filter(|&k| rel[j][k]) {
                ensure!(rel[i][k], "transitivity fails on {}, {}, {}", trees[i], trees[j], trees[k]);
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let base4 = BaseOrder::chain(4);
    let mut longest = 0;
    for _ in 0..100 {
        let start = random_tree(&mut rng, 4, &base4);
        let (chain, done) = descending_chain(&start, &base4, &caps, 1000, &mut rng).map_err(err)?;
        ensure!(done, "chain from {start} did not stop within 1000 steps");
        for w in chain.windows(2) {
            ensure!(tr_less(&w[0], &w[1], &base4, &caps).map_err(err)?, "step {} to {} does not descend", w[0], w[1]);
        }
        let distinct: std::collections::HashSet<String> = chain.iter().map(|t| t.to_string()).collect();
        ensure!(distinct.len() == chain.len(), "chain from {start} repeats a tree");
        longest = longest.max(chain.len() - 1);
    }
    Ok(format!(
        "{n} trees, {pairs} related pairs, irreflexive and transitive; 100 chains stopped, longest {longest} steps"
    ))
}
