use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::autos::{dehn_twist, ModularWord};
use crate::gog::{Dir, GraphOfGroups};
use crate::words::Word;
use crate::{Error, Result};

/// One designated edge of a twist schedule, oriented away from the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleEntry {
    pub edge: Dir,
    pub alpha: BigRational,
    pub tl: u64,
    /// Word of the terminus vertex group of `edge`.
    pub twister: Word,
}

#[derive(Debug, Clone)]
pub struct TwistSchedule {
    host: Arc<GraphOfGroups>,
    entries: Vec<ScheduleEntry>,
}

/// Closest integer to `x`, rounding halves down.
fn round_half_down(x: &BigRational) -> BigInt {
    let half = BigRational::new(1.into(), 2.into());
    (x - half).ceil().to_integer()
}

impl TwistSchedule {
    /// `designated` lists `(edge name, α_e, twister)`; `base_images` gives a
    /// free-group image for every host generator and determines `tl_e`.
    pub fn new(
        host: &Arc<GraphOfGroups>,
        designated: &[(String, BigRational, Word)],
        base_images: &[Word],
    ) -> Result<Self> {
        let h = host.as_ref();
        if base_images.len() != h.alphabet().rank() {
            return Err(Error::input("base morphism needs one image per generator"));
        }
        let mut entries = Vec::new();
        for (name, alpha, c) in designated {
            if !alpha.is_positive() {
                return Err(Error::input(format!("weight of {name} must be positive")));
            }
            let d = h.parse_dir(name)?;
            if !h.in_tree(d.edge) {
                return Err(Error::input(format!("{name} is not an edge of the maximal tree")));
            }
            let away = if h.tree_path(h.base(), h.terminus(d)).contains(&d) { d } else { d.reverse() };
            let twister = transport(h, away, c)
                .ok_or_else(|| Error::input(format!("twister of {name} is not in its edge group")))?;
            let tl = twister.substitute(base_images).translation_length() as u64;
            if tl == 0 {
                return Err(Error::input(format!(
                    "twister of {name} has trivial cyclic core under the base morphism"
                )));
            }
            entries.push(ScheduleEntry {
                edge: away,
                alpha: alpha.clone(),
                tl,
                twister,
            });
        }
        Ok(TwistSchedule {
            host: host.clone(),
            entries,
        })
    }

    pub fn entries(&self) -> &[ScheduleEntry] {
        &self.entries
    }

    /// Integer closest to `n·α/tl`, ties rounded down.
    pub fn exponent(&self, i: usize, n: u64) -> BigInt {
        let e = &self.entries[i];
        round_half_down(&(e.alpha.clone() * BigInt::from(n) / BigInt::from(e.tl)))
    }

    /// `∏ τ_{e, c_e^{exp_e(n)}}` over the designated edges.
    pub fn modular_word(&self, n: u64) -> Result<ModularWord> {
        let mut factors = Vec::new();
        for (i, e) in self.entries.iter().enumerate() {
            let k = self
                .exponent(i, n)
                .to_i64()
                .ok_or_else(|| Error::input("twist exponent out of range"))?;
            if k != 0 {
                factors.push(dehn_twist(&self.host, e.edge, &e.twister.pow(k))?);
            }
        }
        ModularWord::new(self.host.clone(), factors)
    }
}

/// Moves `c` into the terminus vertex group of `d` when it is given in the
/// origin group.
fn transport(h: &GraphOfGroups, d: Dir, c: &Word) -> Option<Word> {
    let y = h.terminus(d);
    if h.to_local(y, c).is_some() {
        return Some(c.clone());
    }
    let x = h.origin(d);
    let local = h.to_local(x, c)?;
    let side = h.side(d);
    let expr = side.express(&local, h.rank(x)).ok()??;
    Some(h.to_global(y, &expr.substitute(h.words_at_terminus(d))))
}

pub fn twist_schedule(
    host: &Arc<GraphOfGroups>,
    designated: &[(String, BigRational, Word)],
    base_images: &[Word],
    n: u64,
) -> Result<ModularWord> {
    TwistSchedule::new(host, designated, base_images)?.modular_word(n)
}
