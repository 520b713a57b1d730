use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::text::content_lines;
use crate::{Error, Result};

/// Largest order for which associativity is checked on every triple.
const FULL_ASSOCIATIVITY_LIMIT: usize = 24;
const SAMPLED_TRIPLES: usize = 10_000;

/// A finite group given extensionally. Element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    names: Vec<String>,
    index: HashMap<String, usize>,
    table: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Builds and verifies a group law; element 0 must be the identity.
    pub fn from_table(name: &str, names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::input("a group needs at least one element"));
        }
        let mut index = HashMap::new();
        for (i, s) in names.iter().enumerate() {
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == ',' || c == ':') {
                return Err(Error::input(format!("invalid element name {s:?}")));
            }
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::input(format!("duplicate element name {s:?}")));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::input("closure fails: table is not order x order"));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::input("closure fails: table entry outside the element set"));
        }
        for x in 0..n {
            if table[0][x] != x || table[x][0] != x {
                return Err(Error::input(format!(
                    "identity fails: {} is not neutral for {}",
                    names[0], names[x]
                )));
            }
        }
        let mut inv = vec![0; n];
        for x in 0..n {
            match (0..n).find(|&y| table[x][y] == 0 && table[y][x] == 0) {
                Some(y) => inv[x] = y,
                None => {
                    return Err(Error::input(format!("inverses fail: {} has no inverse", names[x])))
                }
            }
        }
        let g = FiniteGroup {
            name: name.to_string(),
            names,
            index,
            table,
            inv,
        };
        g.check_associativity()?;
        Ok(g)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order();
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::input(format!(
                    "associativity fails: ({0}*{1})*{2} != {0}*({1}*{2})",
                    self.names[a], self.names[b], self.names[c]
                )));
            }
            Ok(())
        };
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_TRIPLES {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    /// Parses the `group <name> order <n>` / `elements:` / `row x:` format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hl, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty group description"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        let order: usize = match h.as_slice() {
            ["group", _, "order", n] => n
                .parse()
                .map_err(|_| Error::parse(hl, "order must be a positive integer"))?,
            _ => return Err(Error::parse(hl, "expected `group <name> order <n>`")),
        };
        let name = h[1];
        let (el, elems) = lines
            .next()
            .ok_or_else(|| Error::parse(hl + 1, "missing `elements:` line"))?;
        let names: Vec<String> = match elems.strip_prefix("elements:") {
            Some(rest) => rest.split_whitespace().map(String::from).collect(),
            None => return Err(Error::parse(el, "expected `elements:`")),
        };
        if names.len() != order {
            return Err(Error::parse(
                el,
                format!("{} elements listed for order {order}", names.len()),
            ));
        }
        let lookup = |line: usize, s: &str| -> Result<usize> {
            names
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| Error::parse(line, format!("unknown element {s:?}")))
        };
        let mut table: Vec<Option<Vec<usize>>> = vec![None; order];
        let mut last = el;
        for (ln, line) in lines {
            last = ln;
            let rest = line
                .strip_prefix("row ")
                .ok_or_else(|| Error::parse(ln, "expected `row <element>: ...`"))?;
            let (head, body) = rest
                .split_once(':')
                .ok_or_else(|| Error::parse(ln, "missing ':' after row element"))?;
            let r = lookup(ln, head.trim())?;
            if table[r].is_some() {
                return Err(Error::parse(ln, format!("row {} given twice", head.trim())));
            }
            let row = body
                .split_whitespace()
                .map(|s| lookup(ln, s))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != order {
                return Err(Error::parse(ln, format!("row has {} entries, expected {order}", row.len())));
            }
            table[r] = Some(row);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or_else(|| Error::parse(last, format!("missing row {}", names[i]))))
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::from_table(name, names, table)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("group {} order {}\nelements: {}\n", self.name, self.order(), self.names.join(" "));
        for (i, row) in self.table.iter().enumerate() {
            let entries: Vec<&str> = row.iter().map(|&x| self.names[x].as_str()).collect();
            let _ = writeln!(s, "row {}: {}", self.names[i], entries.join(" "));
        }
        s
    }

    /// The cyclic group `Z/n` with elements named `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(&format!("Z{n}"), names, table).expect("cyclic group law")
    }

    /// Direct product with elements named `a.b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let (n, m) = (self.order(), other.order());
        let names = (0..n * m)
            .map(|k| format!("{}.{}", self.names[k / m], other.names[k % m]))
            .collect();
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&format!("{}x{}", self.name, other.name), names, table)
            .expect("product of group laws")
    }

    /// The symmetric group on `k ≤ 5` points; permutations in one-line
    /// notation, composed right to left, named `p` followed by the images.
    pub fn symmetric(k: usize) -> Self {
        assert!((1..=5).contains(&k), "symmetric group size out of range");
        let mut perms: Vec<Vec<usize>> = vec![(0..k).collect()];
        let mut cur: Vec<usize> = (0..k).collect();
        while next_permutation(&mut cur) {
            perms.push(cur.clone());
        }
        let pos: HashMap<Vec<usize>, usize> =
            perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let names = perms
            .iter()
            .map(|p| format!("p{}", p.iter().map(|d| d.to_string()).collect::<String>()))
            .collect();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| pos[&(0..k).map(|i| a[b[i]]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&format!("S{k}"), names, table).expect("symmetric group law")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn parse_element(&self, name: &str) -> Result<usize> {
        self.element(name.trim())
            .ok_or_else(|| Error::input(format!("{:?} is not an element of {}", name.trim(), self.name)))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let n = self.element_order(a) as u64;
        let mut e = k.unsigned_abs() % n;
        let (mut acc, mut sq) = (0, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_central(&self, a: usize) -> bool {
        (0..self.order()).all(|x| self.mul(a, x) == self.mul(x, a))
    }

    /// Elements of `Z(Q)` in index order.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order()).filter(|&a| self.is_central(a)).collect()
    }

    /// Sorted element set of the subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// True iff the subgroup of `q` generated by `s` is cyclic.
pub fn cyclic_image_check(q: &FiniteGroup, s: &[usize]) -> bool {
    let h = q.generated_subgroup(s);
    h.iter().any(|&g| q.element_order(g) == h.len())
}
