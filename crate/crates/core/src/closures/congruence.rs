use std::collections::BTreeSet;
use std::sync::Arc;

use num_integer::Integer;

use crate::picore::FiniteGroup;
use crate::text::{content_lines, split_list, Fields};
use crate::{Error, Result};

/// Largest universe enumerated by [`complement`].
const MAX_UNIVERSE: u128 = 1 << 20;

/// Index sets shared by all conditions on one tower: the number of
/// free-hanging slots and, for each abelian subgroup `M`, its basis size
/// and the order of `π(M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub q: Arc<FiniteGroup>,
    pub hanging: usize,
    pub bases: Vec<usize>,
    pub pi_orders: Vec<u64>,
}

impl Shape {
    fn coordinates(&self) -> usize {
        self.bases.iter().sum()
    }
}

/// An atomic condition: a free-hanging `q`-tuple and one residue per basis
/// element of every `M`, flattened in order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub q: Vec<usize>,
    pub residues: Vec<u64>,
}

/// A morphism's data: the free-hanging `π`-choices and the exponents `e`
/// with `f(m) = f(pg_M)^e`, flattened like [`Atom::residues`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataPoint {
    pub q: Vec<usize>,
    pub exps: Vec<i64>,
}

/// A union of atomic `K`-congruence conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceCondition {
    shape: Shape,
    modulus: u64,
    atoms: BTreeSet<Atom>,
}

fn residue(e: i64, k: u64) -> u64 {
    e.rem_euclid(k as i64) as u64
}

/// True iff the point matches the atom's `q`-tuple and every exponent is
/// congruent to its residue modulo `k`.
pub fn satisfies_atom(point: &DataPoint, atom: &Atom, k: u64) -> bool {
    point.q == atom.q
        && point.exps.len() == atom.residues.len()
        && point.exps.iter().zip(&atom.residues).all(|(&e, &r)| residue(e, k) == r % k)
}

impl CongruenceCondition {
    pub fn new(shape: Shape, modulus: u64, atoms: impl IntoIterator<Item = Atom>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::input("modulus must be positive"));
        }
        if shape.bases.len() != shape.pi_orders.len() {
            return Err(Error::input("one pi order per abelian subgroup is required"));
        }
        if let Some(o) = shape.pi_orders.iter().find(|&&o| o == 0 || modulus % o != 0) {
            return Err(Error::input(format!("modulus {modulus} is not divisible by |pi(M)| = {o}")));
        }
        let n = shape.coordinates();
        let mut set = BTreeSet::new();
        for a in atoms {
            if a.q.len() != shape.hanging || a.q.iter().any(|&x| x >= shape.q.order()) {
                return Err(Error::input("atom q-tuple does not fit the free-hanging slots"));
            }
            if a.residues.len() != n {
                return Err(Error::input(format!("atom has {} residues, expected {n}", a.residues.len())));
            }
            set.insert(Atom {
                q: a.q,
                residues: a.residues.iter().map(|r| r % modulus).collect(),
            });
        }
        Ok(CongruenceCondition {
            shape,
            modulus,
            atoms: set,
        })
    }

    pub fn empty(shape: Shape, modulus: u64) -> Result<Self> {
        Self::new(shape, modulus, [])
    }

    /// Every point satisfies it.
    pub fn full(shape: Shape, modulus: u64) -> Result<Self> {
        let empty = Self::empty(shape, modulus)?;
        complement(&empty)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.atoms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn contains(&self, point: &DataPoint) -> bool {
        let key = Atom {
            q: point.q.clone(),
            residues: point.exps.iter().map(|&e| residue(e, self.modulus)).collect(),
        };
        self.atoms.contains(&key)
    }

    /// The same set of points described modulo a multiple of the modulus.
    pub fn lift(&self, modulus: u64) -> Result<Self> {
        if modulus == 0 || modulus % self.modulus != 0 {
            return Err(Error::input("new modulus must be a multiple of the old one"));
        }
        let steps = modulus / self.modulus;
        let mut atoms = Vec::new();
        for a in &self.atoms {
            let mut acc: Vec<Vec<u64>> = vec![vec![]];
            for &r in &a.residues {
                acc = acc
                    .into_iter()
                    .flat_map(|p| {
                        (0..steps).map(move |s| {
                            let mut p = p.clone();
                            p.push(r + s * self.modulus);
                            p
                        })
                    })
                    .collect();
            }
            atoms.extend(acc.into_iter().map(|residues| Atom { q: a.q.clone(), residues }));
        }
        Self::new(self.shape.clone(), modulus, atoms)
    }

    /// Parses `modulus <K>`, `shape hanging=<n> bases=<list> orders=<list>`
    /// and `atom [q=<elements>] res=<residues>` lines; residues of different
    /// subgroups are separated by `;` or spaces.
    pub fn parse(text: &str, q: Arc<FiniteGroup>) -> Result<Self> {
        let mut modulus = None;
        let mut shape = None;
        let mut atoms = Vec::new();
        for (ln, line) in content_lines(text) {
            let at = |e: Error| e.at_line(ln);
            let f = Fields::parse(line).map_err(at)?;
            match f.positional.first().map(String::as_str) {
                Some("modulus") if modulus.is_none() => {
                    let k = f.positional.get(1).and_then(|k| k.parse::<u64>().ok());
                    modulus = Some(k.ok_or_else(|| Error::parse(ln, "modulus needs a positive integer"))?);
                }
                Some("shape") if shape.is_none() => {
                    f.only(&["hanging", "bases", "orders"]).map_err(at)?;
                    let num = |s: &str| s.parse::<u64>().map_err(|_| Error::parse(ln, format!("bad integer {s:?}")));
                    let list = |k: &str| -> Result<Vec<u64>> {
                        split_list(f.get(k).unwrap_or("")).iter().map(|s| num(s)).collect()
                    };
                    shape = Some(Shape {
                        q: q.clone(),
                        hanging: num(f.get("hanging").unwrap_or("0"))? as usize,
                        bases: list("bases")?.into_iter().map(|b| b as usize).collect(),
                        pi_orders: list("orders")?,
                    });
                }
                Some("atom") => {
                    f.only(&["q", "res"]).map_err(at)?;
                    let qs = f
                        .get("q")
                        .unwrap_or("")
                        .split_whitespace()
                        .map(|e| q.parse_element(e))
                        .collect::<Result<Vec<_>>>()
                        .map_err(at)?;
                    let residues = f
                        .get("res")
                        .unwrap_or("")
                        .split(|c: char| c == ';' || c.is_whitespace())
                        .filter(|s| !s.is_empty())
                        .map(|s| s.parse::<u64>().map_err(|_| Error::parse(ln, format!("bad residue {s:?}"))))
                        .collect::<Result<Vec<_>>>()?;
                    atoms.push(Atom { q: qs, residues });
                }
                _ => return Err(Error::parse(ln, "expected `modulus`, `shape` or `atom`")),
            }
        }
        let modulus = modulus.ok_or_else(|| Error::input("missing modulus line"))?;
        let shape = shape.ok_or_else(|| Error::input("missing shape line"))?;
        Self::new(shape, modulus, atoms)
    }

    pub fn to_text(&self) -> String {
        let s = &self.shape;
        let join = |v: Vec<String>, sep: &str| v.join(sep);
        let mut out = format!(
            "modulus {}\nshape hanging={} bases={} orders={}\n",
            self.modulus,
            s.hanging,
            join(s.bases.iter().map(|b| b.to_string()).collect(), ","),
            join(s.pi_orders.iter().map(|b| b.to_string()).collect(), ",")
        );
        for a in &self.atoms {
            out.push_str("atom");
            if !a.q.is_empty() {
                let names: Vec<String> = a.q.iter().map(|&x| s.q.element_name(x).to_string()).collect();
                out.push_str(&format!(" q={}", names.join(" ")));
            }
            let mut groups = Vec::new();
            let mut i = 0;
            for &b in &s.bases {
                groups.push(join(a.residues[i..i + b].iter().map(|r| r.to_string()).collect(), " "));
                i += b;
            }
            out.push_str(&format!(" res={}\n", groups.join("; ")));
        }
        out
    }
}

/// Chinese remaindering of `r mod a` and `s mod b`.
fn crt(r: u64, a: u64, s: u64, b: u64) -> Option<u64> {
    let g = a.gcd(&b);
    if (r as i128 - s as i128) % g as i128 != 0 {
        return None;
    }
    let l = a.lcm(&b);
    (0..l / a).map(|t| r + t * a).find(|x| x % b == s % b)
}

/// Intersection modulo `lcm(K1, K2)`: CRT-compatible pairs of atoms.
pub fn intersect(c1: &CongruenceCondition, c2: &CongruenceCondition) -> Result<CongruenceCondition> {
    if c1.shape != c2.shape {
        return Err(Error::input("conditions are on different index sets"));
    }
    let (k1, k2) = (c1.modulus, c2.modulus);
    let l = k1.lcm(&k2);
    let mut atoms = Vec::new();
    for a in &c1.atoms {
        for b in c2.atoms.iter().filter(|b| b.q == a.q) {
            let merged: Option<Vec<u64>> = a
                .residues
                .iter()
                .zip(&b.residues)
                .map(|(&r, &s)| crt(r, k1, s, k2))
                .collect();
            if let Some(residues) = merged {
                atoms.push(Atom { q: a.q.clone(), residues });
            }
        }
    }
    CongruenceCondition::new(c1.shape.clone(), l, atoms)
}

/// All atoms of the finite universe not in `c`, at the same modulus.
pub fn complement(c: &CongruenceCondition) -> Result<CongruenceCondition> {
    let s = &c.shape;
    let n = s.coordinates();
    let size = (s.q.order() as u128).pow(s.hanging as u32) * (c.modulus as u128).pow(n as u32);
    if size > MAX_UNIVERSE {
        return Err(Error::Unsupported(format!("complement over {size} atoms")));
    }
    let mut atoms = Vec::new();
    let mut q = vec![0usize; s.hanging];
    loop {
        let mut res = vec![0u64; n];
        loop {
            let a = Atom {
                q: q.clone(),
                residues: res.clone(),
            };
            if !c.atoms.contains(&a) {
                atoms.push(a);
            }
            if !odometer(&mut res, c.modulus) {
                break;
            }
        }
        if !odometer_usize(&mut q, s.q.order()) {
            break;
        }
    }
    CongruenceCondition::new(s.clone(), c.modulus, atoms)
}

fn odometer(v: &mut [u64], base: u64) -> bool {
    for x in v.iter_mut() {
        *x += 1;
        if *x < base {
            return true;
        }
        *x = 0;
    }
    false
}

fn odometer_usize(v: &mut [usize], base: usize) -> bool {
    for x in v.iter_mut() {
        *x += 1;
        if *x < base {
            return true;
        }
        *x = 0;
    }
    false
}
