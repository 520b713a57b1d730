use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::family::{check_index, MorphismFamily};
use crate::picore::{abelian_pi_admissible, GroupKind, MarkedGroup, Morphism, PiMap};
use crate::words::{Alphabet, Word};
use crate::{Error, Result};

/// Largest exponent materialized as a word by [`AbelianSequence::member`].
const MAX_MATERIALIZED: u64 = 1 << 20;

/// Retractions of a free abelian group with basis `x, y_1..y_m` onto `⟨x⟩`
/// sending `y_i ↦ x^{K·(n+i)! + r_i}`.
#[derive(Debug, Clone)]
pub struct AbelianSequence {
    source: MarkedGroup,
    target: MarkedGroup,
    k: u64,
    residues: Vec<u64>,
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

impl AbelianSequence {
    pub fn new(source: MarkedGroup, k: u64, residues: Vec<u64>) -> Result<Self> {
        if source.kind() != GroupKind::FreeAbelian || source.rank() == 0 {
            return Err(Error::input("source must be a free abelian group with basis x, y_1..y_m"));
        }
        if residues.len() + 1 != source.rank() {
            return Err(Error::input(format!(
                "{} residues given for {} generators y_i",
                residues.len(),
                source.rank() - 1
            )));
        }
        if !abelian_pi_admissible(&source)? {
            return Err(Error::input("pi image of the source is not cyclic"));
        }
        let q = source.q().clone();
        let px = source.pi().image(0);
        if k == 0 || k % q.element_order(px) as u64 != 0 {
            return Err(Error::input("K must be a positive multiple of the order of pi(x)"));
        }
        for (i, &r) in residues.iter().enumerate() {
            if r >= k {
                return Err(Error::input(format!("residue r_{} = {r} is not below K", i + 1)));
            }
            if residues[..i].contains(&r) {
                return Err(Error::input(format!("residue {r} repeats")));
            }
            if source.pi().image(i + 1) != q.pow(px, r as i64) {
                return Err(Error::input(format!(
                    "pi(y_{}) is not pi(x)^{r}",
                    i + 1
                )));
            }
        }
        let alphabet = Alphabet::new([source.alphabet().name(0)])?;
        let target = MarkedGroup::new(alphabet, GroupKind::FreeAbelian, vec![], PiMap::new(q, vec![px])?)?;
        Ok(AbelianSequence {
            source,
            target,
            k,
            residues,
        })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    /// `e_{i,n} = K·(n+i)! + r_i` for `i = 1..m`.
    pub fn exponents(&self, n: usize) -> Vec<BigInt> {
        let mut f = factorial(n as u64);
        let mut out = Vec::with_capacity(self.residues.len());
        for (i, &r) in self.residues.iter().enumerate() {
            f *= (n + i + 1) as u64;
            out.push(&f * self.k + r);
        }
        out
    }

    /// Image exponent of a source element given by its exponent vector.
    pub fn image_exponent(&self, n: usize, w: &Word) -> BigInt {
        let sums = w.exponent_sums(self.source.rank());
        let mut total = BigInt::from(sums[0]);
        for (e, s) in self.exponents(n).iter().zip(&sums[1..]) {
            total += e * *s;
        }
        total
    }
}

impl MorphismFamily for AbelianSequence {
    fn source(&self) -> &MarkedGroup {
        &self.source
    }
    fn target(&self) -> &MarkedGroup {
        &self.target
    }
    fn first_index(&self) -> usize {
        0
    }
    fn member(&self, n: usize) -> Result<Morphism> {
        check_index(self, n)?;
        let mut images = vec![Word::generator(0)];
        for e in self.exponents(n) {
            let e = e
                .to_u64()
                .filter(|e| *e <= MAX_MATERIALIZED)
                .ok_or_else(|| Error::Unsupported(format!("exponent {e} is too large to write out")))?;
            images.push(Word::power_of_generator(0, e as i64));
        }
        Morphism::new(self.source.clone(), self.target.clone(), images)
    }
    fn image_length(&self, n: usize, w: &Word) -> Result<BigInt> {
        Ok(self.image_exponent(n, w).abs())
    }
}

/// True iff `c_0 + Σ c_i·e_{i,n} ≠ 0` for every nonzero integer vector with
/// entries bounded by `bound` in absolute value.
pub fn discriminate_box(seq: &AbelianSequence, bound: u64, n: usize) -> Result<bool> {
    if bound == 0 {
        return Err(Error::input("box bound must be at least 1"));
    }
    let es = seq.exponents(n);
    let m = es.len();
    let b = bound as i64;
    // Odometer over (c_1..c_m) with the running sum updated incrementally;
    // c_0 can cancel any sum of absolute value at most `bound`.
    let mut c = vec![-b; m];
    let mut sum: BigInt = es.iter().map(|e| e * -b).sum();
    let limit = BigInt::from(bound);
    loop {
        if c.iter().any(|&x| x != 0) && sum.abs() <= limit {
            return Ok(false);
        }
        let mut i = 0;
        loop {
            if i == m {
                return Ok(true);
            }
            if c[i] < b {
                c[i] += 1;
                sum += &es[i];
                break;
            }
            sum -= &es[i] * (2 * b);
            c[i] = -b;
            i += 1;
        }
    }
}
