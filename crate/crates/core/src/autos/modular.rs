use std::sync::Arc;

use super::elementary::{dehn_twist, inner, vertex_extension, ElementaryAutomorphism};
use crate::gog::{equal, Dir, GraphOfGroups, VertexKind};
use crate::text::{parse_assoc, Fields};
use crate::words::Word;
use crate::{Error, Result};

/// A product of elementary automorphisms over one host. The automorphism
/// listed first is applied last, so `[f, g]` acts as `f ∘ g`.
#[derive(Debug, Clone)]
pub struct ModularWord {
    host: Arc<GraphOfGroups>,
    factors: Vec<ElementaryAutomorphism>,
}

impl ModularWord {
    pub fn new(host: Arc<GraphOfGroups>, factors: Vec<ElementaryAutomorphism>) -> Result<Self> {
        if factors.iter().any(|f| !Arc::ptr_eq(f.host(), &host)) {
            return Err(Error::input("factors do not share the host graph of groups"));
        }
        Ok(ModularWord { host, factors })
    }

    pub fn identity(host: Arc<GraphOfGroups>) -> Self {
        ModularWord { host, factors: Vec::new() }
    }

    pub fn host(&self) -> &Arc<GraphOfGroups> {
        &self.host
    }

    pub fn factors(&self) -> &[ElementaryAutomorphism] {
        &self.factors
    }

    /// Parses `;`-separated factors: `twist <edge> by <word>`,
    /// `inner <word>` or `vext <vertex> sigma=.. inv=.. twisters=..`.
    pub fn parse(host: &Arc<GraphOfGroups>, text: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            factors.push(parse_factor(host, part)?);
        }
        Ok(ModularWord {
            host: host.clone(),
            factors,
        })
    }

    pub fn render(&self) -> String {
        self.factors.iter().map(|f| f.render()).collect::<Vec<_>>().join("; ")
    }

    pub fn apply(&self, w: &Word) -> Word {
        self.factors.iter().rev().fold(w.clone(), |acc, f| f.apply(&acc))
    }

    /// Generator images of the product.
    pub fn images(&self) -> Vec<Word> {
        (0..self.host.alphabet().rank())
            .map(|g| self.apply(&Word::generator(g)))
            .collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        let factors = self
            .factors
            .iter()
            .rev()
            .map(|f| f.inverse())
            .collect::<Result<Vec<_>>>()?;
        Ok(ModularWord {
            host: self.host.clone(),
            factors,
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModularWord) -> Result<Self> {
        if !Arc::ptr_eq(&self.host, &other.host) {
            return Err(Error::input("factors do not share the host graph of groups"));
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(ModularWord {
            host: self.host.clone(),
            factors,
        })
    }

    /// True when the product fixes every generator up to equality in the
    /// fundamental group.
    pub fn is_identity(&self) -> Result<bool> {
        for g in 0..self.host.alphabet().rank() {
            let x = Word::generator(g);
            if !equal(&self.host, &self.apply(&x), &x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn parse_factor(host: &Arc<GraphOfGroups>, part: &str) -> Result<ElementaryAutomorphism> {
    let a = host.alphabet();
    let (head, rest) = part.split_once(char::is_whitespace).unwrap_or((part, ""));
    let rest = rest.trim();
    match head {
        "twist" => {
            let (edge, word) = rest
                .split_once(" by ")
                .ok_or_else(|| Error::input(format!("expected `twist <edge> by <word>`: {part:?}")))?;
            dehn_twist(host, host.parse_dir(edge.trim())?, &a.parse_word(word)?)
        }
        "inner" => Ok(inner(host, &a.parse_word(rest)?)),
        "vext" => {
            let f = Fields::parse(rest)?;
            f.only(&["sigma", "inv", "twisters"])?;
            let v = f
                .positional
                .first()
                .ok_or_else(|| Error::input("vext needs a vertex name"))?;
            let assoc = |k: &str| f.get(k).map(parse_assoc).transpose().map(Option::unwrap_or_default);
            vertex_extension(host, v, &assoc("sigma")?, &assoc("inv")?, &assoc("twisters")?)
        }
        _ => Err(Error::input(format!("unknown automorphism {head:?}"))),
    }
}

fn preserves_constants(aut: &ElementaryAutomorphism) -> Result<bool> {
    let h = aut.host();
    for &c in h.constants() {
        let x = Word::generator(c);
        if !equal(h, &aut.apply(&x), &x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn factor_is_pi_modular(aut: &ElementaryAutomorphism) -> Result<bool> {
    use super::elementary::Elementary;
    let h = aut.host();
    let pi = h
        .pi()
        .ok_or_else(|| Error::input("graph of groups carries no pi data"))?;
    let q = pi.q();
    let central = |w: &Word| -> Result<bool> { Ok(q.is_central(pi.evaluate(w)?)) };
    let ok = match aut.kind() {
        Elementary::DehnTwist { twister, .. } => central(twister)?,
        Elementary::Inner { c } => central(c)?,
        Elementary::VertexExtension {
            vertex,
            sigma,
            twisters,
            ..
        } => {
            let mut ok = true;
            for c in twisters.values() {
                ok &= central(c)?;
            }
            for (i, s) in sigma.iter().enumerate() {
                let g = h.to_global(*vertex, &Word::generator(i));
                ok &= pi.evaluate(s)? == pi.evaluate(&g)?;
            }
            ok
        }
    };
    Ok(ok && preserves_constants(aut)?)
}

/// Every factor has central twisters under π, vertex automorphisms commute
/// with π, and designated constants are fixed.
pub fn is_pi_modular(m: &ModularWord) -> Result<bool> {
    for f in m.factors() {
        if !factor_is_pi_modular(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compares the twist over `e` by `c` (terminus abelian) with the product of
/// twists by `c` over `edges`, each leaving the terminus of `e`, generator
/// by generator.
pub fn twist_factorization_check(
    host: &Arc<GraphOfGroups>,
    e: Dir,
    c: &Word,
    edges: &[Dir],
) -> Result<bool> {
    let h = host.as_ref();
    let v = h.terminus(e);
    if h.kind(v) != VertexKind::Abelian {
        return Err(Error::input("terminus of the twisted edge is not abelian"));
    }
    let lhs = ModularWord::new(host.clone(), vec![dehn_twist(host, e, c)?])?;
    let local = h
        .to_local(v, c)
        .ok_or_else(|| Error::input("twister is not a word in the terminus vertex group"))?;
    let mut factors = Vec::new();
    for &d in edges {
        let d = if h.origin(d) == v {
            d
        } else if h.terminus(d) == v {
            d.reverse()
        } else {
            return Err(Error::input(format!("edge {} is not incident to the vertex", h.dir_name(d))));
        };
        let expr = h
            .side(d)
            .express(&local, h.rank(v))?
            .ok_or_else(|| Error::input(format!("twister is not in the edge group of {}", h.dir_name(d))))?;
        let far = expr.substitute(h.words_at_terminus(d));
        factors.push(dehn_twist(host, d, &h.to_global(h.terminus(d), &far))?);
    }
    let rhs = ModularWord::new(host.clone(), factors)?;
    for g in 0..h.alphabet().rank() {
        let x = Word::generator(g);
        if !equal(h, &lhs.apply(&x), &rhs.apply(&x))? {
            return Ok(false);
        }
    }
    Ok(true)
}
