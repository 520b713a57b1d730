//! Integer lattices in `Z^n`: row-style Hermite reduction, membership with
//! coefficients, and canonical coset residues.

use crate::{Error, Result};

/// A sublattice of `Z^dim` spanned by the given rows, kept alongside its
/// Hermite-reduced basis and the unimodular transform producing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    generators: Vec<Vec<i64>>,
    /// Nonzero Hermite rows: strictly increasing pivot columns, positive
    /// pivots, entries above each pivot reduced into `[0, pivot)`.
    hermite: Vec<Vec<i64>>,
    pivots: Vec<usize>,
    /// `hermite[k] = Σ_i transform[k][i] · generators[i]`.
    transform: Vec<Vec<i64>>,
}

fn checked(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::input("lattice arithmetic overflow"))
}

fn axpy(dst: &mut [i64], k: i64, src: &[i64]) -> Result<()> {
    for (d, s) in dst.iter_mut().zip(src) {
        *d = checked(*d as i128 + k as i128 * *s as i128)?;
    }
    Ok(())
}

impl Lattice {
    pub fn new(dim: usize, generators: Vec<Vec<i64>>) -> Result<Self> {
        if generators.iter().any(|g| g.len() != dim) {
            return Err(Error::input("lattice generator has the wrong dimension"));
        }
        let m = generators.len();
        let mut rows = generators.clone();
        let mut trans: Vec<Vec<i64>> = (0..m)
            .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut hermite = Vec::new();
        let mut transform = Vec::new();
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..dim {
            // Euclid on column `col` among rows top.. until one nonzero remains.
            loop {
                let nonzero: Vec<usize> = (top..m).filter(|&r| rows[r][col] != 0).collect();
                if nonzero.len() <= 1 {
                    break;
                }
                let &piv = nonzero
                    .iter()
                    .min_by_key(|&&r| rows[r][col].unsigned_abs())
                    .unwrap();
                for &r in &nonzero {
                    if r == piv {
                        continue;
                    }
                    let q = rows[r][col] / rows[piv][col];
                    let (pr, pt) = (rows[piv].clone(), trans[piv].clone());
                    axpy(&mut rows[r], -q, &pr)?;
                    axpy(&mut trans[r], -q, &pt)?;
                }
            }
            let Some(r) = (top..m).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(top, r);
            trans.swap(top, r);
            if rows[top][col] < 0 {
                rows[top].iter_mut().for_each(|x| *x = -*x);
                trans[top].iter_mut().for_each(|x| *x = -*x);
            }
            pivots.push(col);
            top += 1;
        }
        for k in 0..top {
            hermite.push(rows[k].clone());
            transform.push(trans[k].clone());
        }
        // Reduce entries above pivots.
        for k in 0..hermite.len() {
            let (col, p) = (pivots[k], hermite[k][pivots[k]]);
            for above in 0..k {
                let q = hermite[above][col].div_euclid(p);
                if q != 0 {
                    let (hr, tr) = (hermite[k].clone(), transform[k].clone());
                    axpy(&mut hermite[above], -q, &hr)?;
                    axpy(&mut transform[above], -q, &tr)?;
                }
            }
        }
        Ok(Lattice {
            dim,
            generators,
            hermite,
            pivots,
            transform,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.hermite.len()
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn hermite_rows(&self) -> &[Vec<i64>] {
        &self.hermite
    }

    /// True when the generators are linearly independent.
    pub fn is_basis(&self) -> bool {
        self.rank() == self.generators.len()
    }

    /// Splits `v = residue + Σ c_k hermite[k]` with each pivot coordinate of
    /// the residue in `[0, pivot)`.
    fn split(&self, v: &[i64]) -> Result<(Vec<i64>, Vec<i64>)> {
        let mut r = v.to_vec();
        let mut coeffs = vec![0i64; self.hermite.len()];
        for (k, row) in self.hermite.iter().enumerate() {
            let col = self.pivots[k];
            let q = r[col].div_euclid(row[col]);
            coeffs[k] = q;
            axpy(&mut r, -q, row)?;
        }
        Ok((r, coeffs))
    }

    fn to_generator_coeffs(&self, hermite_coeffs: &[i64]) -> Result<Vec<i64>> {
        let mut out = vec![0i64; self.generators.len()];
        for (k, &c) in hermite_coeffs.iter().enumerate() {
            axpy(&mut out, c, &self.transform[k])?;
        }
        Ok(out)
    }

    /// Coefficients over the original generators when `v` lies in the lattice.
    pub fn express(&self, v: &[i64]) -> Result<Option<Vec<i64>>> {
        let (r, c) = self.split(v)?;
        if r.iter().any(|&x| x != 0) {
            return Ok(None);
        }
        self.to_generator_coeffs(&c).map(Some)
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        Ok(self.split(v)?.0.iter().all(|&x| x == 0))
    }

    /// Canonical residue of `v` modulo the lattice together with the
    /// generator coefficients of `v − residue`.
    pub fn coset_split(&self, v: &[i64]) -> Result<(Vec<i64>, Vec<i64>)> {
        let (r, c) = self.split(v)?;
        Ok((r, self.to_generator_coeffs(&c)?))
    }
}
