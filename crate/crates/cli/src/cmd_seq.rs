//! Test-sequence generators, discrimination and twist schedules.

use std::sync::Arc;

use gogkit::config::Caps;
use gogkit::gog::GraphOfGroups;
use gogkit::picore::{FiniteGroup, MarkedGroup};
use gogkit::seqgen::{
    discriminate_ball, discriminate_box, growth_ratio, small_cancellation_family, AbelianSequence, BallResult,
    IdentityFamily, MorphismFamily, SmallCancellationFamily, TwistSchedule,
};
use gogkit::text::{content_lines, parse_assoc};
use gogkit::words::{Alphabet, Word};
use gogkit::{Error, Result};
use num_rational::BigRational;

use crate::io::{alphabet_for, int_list, load_group, load_text, Report};

fn morphism_lines(source: &Alphabet, target: &Alphabet, images: &[Word]) -> String {
    images
        .iter()
        .enumerate()
        .map(|(i, w)| format!("{}:{}", source.name(i), target.format_word(w)))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn gen_sc(group: Option<&str>, source: &str, target: &str, m: u32) -> Result<Report> {
    let q = load_group(group)?;
    let (s, t) = (MarkedGroup::parse(source, q.clone())?, MarkedGroup::parse(target, q)?);
    let f = small_cancellation_family(&s, &t, m)?;
    Ok(Report::new().field("images", morphism_lines(s.alphabet(), t.alphabet(), f.images())))
}

fn abelian(q: Arc<FiniteGroup>, source: &str, k: u64, residues: &str) -> Result<AbelianSequence> {
    AbelianSequence::new(MarkedGroup::parse(source, q)?, k, int_list(residues)?)
}

pub fn gen_abelian(group: Option<&str>, source: &str, k: u64, residues: &str, n: usize) -> Result<Report> {
    let seq = abelian(load_group(group)?, source, k, residues)?;
    let a = seq.source().alphabet();
    let x = a.name(0);
    let images: Vec<String> = std::iter::once(format!("{x}:{x}"))
        .chain(seq.exponents(n).iter().enumerate().map(|(i, e)| format!("{}:{x}^{e}", a.name(i + 1))))
        .collect();
    Ok(Report::new().field("images", images.join(", ")))
}

/// Reads a family block: `kind: abelian|sc|identity`, `source:`, and for
/// the respective kinds `target:`, `k:` and `residues:`.
pub fn load_family(arg: &str, group: Option<&str>) -> Result<Arc<dyn MorphismFamily>> {
    let q = load_group(group)?;
    let text = load_text(arg)?;
    let mut keys: Vec<(String, String)> = Vec::new();
    for (ln, line) in content_lines(&text) {
        let (k, v) = line.split_once(':').ok_or_else(|| Error::parse(ln, "expected <key>: <value>"))?;
        let k = k.trim().to_string();
        if !["kind", "source", "target", "k", "residues"].contains(&k.as_str()) {
            return Err(Error::parse(ln, format!("unknown key {k:?}")));
        }
        keys.push((k, v.trim().to_string()));
    }
    let get = |k: &str| {
        keys.iter()
            .find(|(x, _)| x == k)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::input(format!("family block needs `{k}:`")))
    };
    let source = MarkedGroup::parse(get("source")?, q.clone())?;
    Ok(match get("kind")? {
        "abelian" => {
            let k = get("k")?.parse().map_err(|_| Error::input("k must be a positive integer"))?;
            Arc::new(AbelianSequence::new(source, k, int_list(get("residues")?)?)?)
        }
        "sc" => Arc::new(SmallCancellationFamily::new(source, MarkedGroup::parse(get("target")?, q)?)?),
        "identity" => Arc::new(IdentityFamily::new(source)),
        other => return Err(Error::input(format!("unknown family kind {other:?}"))),
    })
}

pub fn discriminate_radius(fam: &dyn MorphismFamily, radius: usize, caps: &Caps) -> Result<Report> {
    Ok(match discriminate_ball(fam, radius, caps)? {
        BallResult::Found(n) => Report::new().field("index", n),
        BallResult::CapExhausted(cap) => Report::new()
            .field("verdict", format!("no discriminating index up to {cap}"))
            .negative(),
    })
}

pub fn discriminate_boxed(
    group: Option<&str>,
    source: &str,
    k: u64,
    residues: &str,
    bound: u64,
    n: usize,
) -> Result<Report> {
    let seq = abelian(load_group(group)?, source, k, residues)?;
    let ok = discriminate_box(&seq, bound, n)?;
    let v = if ok { "kills no nonzero box vector" } else { "kills a nonzero box vector" };
    Ok(Report::new().field("verdict", v).verdict(ok))
}

pub fn growth(
    f1: &dyn MorphismFamily,
    n1: usize,
    w1: &str,
    f2: &dyn MorphismFamily,
    n2: usize,
    w2: &str,
) -> Result<Report> {
    let g1 = f1.source().alphabet().parse_word(w1)?;
    let g2 = f2.source().alphabet().parse_word(w2)?;
    Ok(Report::new().field("ratio", growth_ratio(f1, n1, &g1, f2, n2, &g2)?))
}

/// Each entry is `<edge>:<weight>:<word>`; `base` maps every host generator
/// to a free-group word.
pub fn schedule(host: &Arc<GraphOfGroups>, entries: &[String], base: &str, n: u64) -> Result<Report> {
    let a = host.alphabet();
    let mut designated = Vec::new();
    for e in entries {
        let mut parts = e.splitn(3, ':');
        let (Some(edge), Some(alpha), Some(word)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::input(format!("schedule entry {e:?} is not <edge>:<weight>:<word>")));
        };
        let alpha: BigRational =
            alpha.trim().parse().map_err(|_| Error::input(format!("bad weight {alpha:?}")))?;
        designated.push((edge.trim().to_string(), alpha, a.parse_word(word)?));
    }
    let pairs = parse_assoc(base)?;
    let texts: Vec<&str> = pairs.iter().map(|(_, w)| w.as_str()).collect();
    let target = alphabet_for(None, &texts)?;
    let mut images = vec![None; a.rank()];
    for (g, w) in &pairs {
        let i = a.lookup(g).ok_or_else(|| Error::input(format!("unknown generator {g:?}")))?;
        images[i] = Some(target.parse_word(w)?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.ok_or_else(|| Error::input(format!("no base image for {}", a.name(i)))))
        .collect::<Result<Vec<_>>>()?;
    let s = TwistSchedule::new(host, &designated, &images)?;
    let mut r = Report::new();
    for (i, e) in s.entries().iter().enumerate() {
        r = r.field(
            "exponent",
            format!("{} tl={} exp={}", host.dir_name(e.edge), e.tl, s.exponent(i, n)),
        );
    }
    Ok(r.field("modular-word", s.modular_word(n)?.render()))
}
