//! Reduced Burau representation of the 3-strand braid group, faithful, used
//! as a word-problem oracle for `<a, b | a² = b³>` via a = σ1σ2σ1, b = σ1σ2.

use std::collections::BTreeMap;

use gogkit::words::Word;

/// Laurent polynomial in t with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent(BTreeMap<i32, i64>);

impl Laurent {
    fn mono(c: i64, e: i32) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(e, c);
        }
        Laurent(m)
    }

    fn add(&self, o: &Laurent) -> Laurent {
        let mut m = self.0.clone();
        for (&e, &c) in &o.0 {
            let v = m.entry(e).or_insert(0);
            *v += c;
            if *v == 0 {
                m.remove(&e);
            }
        }
        Laurent(m)
    }

    fn mul(&self, o: &Laurent) -> Laurent {
        let mut out = Laurent::default();
        for (&e1, &c1) in &self.0 {
            for (&e2, &c2) in &o.0 {
                out = out.add(&Laurent::mono(c1 * c2, e1 + e2));
            }
        }
        out
    }
}

pub type Mat = [[Laurent; 2]; 2];

fn mat(a: Laurent, b: Laurent, c: Laurent, d: Laurent) -> Mat {
    [[a, b], [c, d]]
}

fn mmul(x: &Mat, y: &Mat) -> Mat {
    let e = |i: usize, j: usize| x[i][0].mul(&y[0][j]).add(&x[i][1].mul(&y[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn ident() -> Mat {
    mat(Laurent::mono(1, 0), Laurent::default(), Laurent::default(), Laurent::mono(1, 0))
}

fn s1(inv: bool) -> Mat {
    if inv {
        mat(Laurent::mono(-1, -1), Laurent::mono(1, -1), Laurent::default(), Laurent::mono(1, 0))
    } else {
        mat(Laurent::mono(-1, 1), Laurent::mono(1, 0), Laurent::default(), Laurent::mono(1, 0))
    }
}

fn s2(inv: bool) -> Mat {
    if inv {
        mat(Laurent::mono(1, 0), Laurent::default(), Laurent::mono(1, 0), Laurent::mono(-1, -1))
    } else {
        mat(Laurent::mono(1, 0), Laurent::default(), Laurent::mono(1, 1), Laurent::mono(-1, 1))
    }
}

/// Matrix of a word over generators 0 = a, 1 = b.
pub fn image(w: &Word) -> Mat {
    let a = mmul(&mmul(&s1(false), &s2(false)), &s1(false));
    let ai = mmul(&mmul(&s1(true), &s2(true)), &s1(true));
    let b = mmul(&s1(false), &s2(false));
    let bi = mmul(&s2(true), &s1(true));
    let mut m = ident();
    for l in w.letters() {
        let x = match (l.gen(), l.is_inverse()) {
            (0, false) => &a,
            (0, true) => &ai,
            (1, false) => &b,
            _ => &bi,
        };
        m = mmul(&m, x);
    }
    m
}

pub fn is_trivial(w: &Word) -> bool {
    image(w) == ident()
}
