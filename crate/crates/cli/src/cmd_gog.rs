//! Graph-of-groups commands and automorphisms.

use std::sync::Arc;

use gogkit::autos::{dehn_twist, is_pi_modular, vertex_extension, ModularWord};
use gogkit::gog::{blow_up, collapse, equal, fold, normal_form, slide, validate, GogSpec, GraphOfGroups, Moved};
use gogkit::text::split_list;
use gogkit::{Error, Result};

use crate::io::{assoc, load_group, load_text, Report};

pub fn load_gog(arg: &str, group: Option<&str>) -> Result<Arc<GraphOfGroups>> {
    let q = group.map(|g| load_group(Some(g))).transpose()?;
    Ok(Arc::new(GraphOfGroups::parse(&load_text(arg)?, q)?))
}

pub fn gog_validate(arg: &str, group: Option<&str>) -> Result<Report> {
    let mut spec = GogSpec::parse(&load_text(arg)?)?;
    spec.q = group.map(|g| load_group(Some(g))).transpose()?;
    Ok(match validate(&spec) {
        Ok(()) => Report::new().field("verdict", "valid"),
        Err(m) => Report::new().field("verdict", format!("invalid: {m}")).negative(),
    })
}

pub fn present(g: &GraphOfGroups) -> Report {
    let p = g.presentation();
    Report::new()
        .field("presentation", &p)
        .field("generators", p.alphabet.rank())
        .field("relators", p.relators.len())
}

pub fn nf(g: &GraphOfGroups, word: &str) -> Result<Report> {
    let w = g.alphabet().parse_word(word)?;
    let f = normal_form(g, &w)?;
    Ok(Report::new()
        .field("normal-form", f.render(g))
        .field("path-length", f.path_length())
        .field("trivial", f.is_identity()))
}

pub fn equal_words(g: &GraphOfGroups, u: &str, v: &str) -> Result<Report> {
    let (u, v) = (g.alphabet().parse_word(u)?, g.alphabet().parse_word(v)?);
    let ok = equal(g, &u, &v)?;
    Ok(Report::new().field("verdict", if ok { "equal" } else { "not equal" }).verdict(ok))
}

fn moved(m: Moved, old: &GraphOfGroups) -> Report {
    let (oa, na) = (old.alphabet(), m.gog.alphabet());
    let map = |from: &gogkit::words::Alphabet, to: &gogkit::words::Alphabet, ws: &[gogkit::words::Word]| {
        ws.iter()
            .enumerate()
            .map(|(i, w)| format!("{}:{}", from.name(i), to.format_word(w)))
            .collect::<Vec<_>>()
            .join(", ")
    };
    Report::new()
        .block("gog", m.gog.to_text())
        .field("forward", map(oa, na, &m.forward))
        .field("backward", map(na, oa, &m.backward))
}

pub fn collapse_cmd(g: &GraphOfGroups, edges: &str) -> Result<Report> {
    Ok(moved(collapse(g, &split_list(edges))?, g))
}

pub fn blowup_cmd(g: &GraphOfGroups, vertex: &str, with: &GraphOfGroups, attach: Option<&str>) -> Result<Report> {
    Ok(moved(blow_up(g, vertex, with, &assoc(attach)?)?, g))
}

/// Each `--fold` is `<edge>:<word>,<word>,...`.
pub fn fold_cmd(g: &GraphOfGroups, vertex: &str, folds: &[String]) -> Result<Report> {
    let parsed = folds
        .iter()
        .map(|f| {
            let (e, ws) = f
                .split_once(':')
                .ok_or_else(|| Error::input(format!("fold {f:?} is not <edge>:<words>")))?;
            Ok((e.trim().to_string(), split_list(ws)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(moved(fold(g, vertex, &parsed)?, g))
}

pub fn slide_cmd(g: &GraphOfGroups, edge: &str, along: &str) -> Result<Report> {
    Ok(moved(slide(g, edge, along)?, g))
}

fn with_image(r: Report, host: &GraphOfGroups, m: &ModularWord, word: Option<&str>) -> Result<Report> {
    Ok(match word {
        Some(w) => {
            let w = host.alphabet().parse_word(w)?;
            let img = normal_form(host, &m.apply(&w))?.to_word(host);
            r.field("image", host.alphabet().format_word(&img))
        }
        None => r,
    })
}

fn generator_images(host: &GraphOfGroups, m: &ModularWord) -> Result<String> {
    let a = host.alphabet();
    m.images()
        .iter()
        .enumerate()
        .map(|(i, w)| Ok(format!("{}:{}", a.name(i), a.format_word(&normal_form(host, w)?.to_word(host)))))
        .collect::<Result<Vec<_>>>()
        .map(|v| v.join(", "))
}

pub fn twist(host: &Arc<GraphOfGroups>, edge: &str, by: &str, word: Option<&str>) -> Result<Report> {
    let d = host.parse_dir(edge)?;
    let c = host.alphabet().parse_word(by)?;
    let m = ModularWord::new(host.clone(), vec![dehn_twist(host, d, &c)?])?;
    let r = Report::new().field("automorphism", m.render()).field("images", generator_images(host, &m)?);
    with_image(r, host, &m, word)
}

pub fn vext(
    host: &Arc<GraphOfGroups>,
    vertex: &str,
    sigma: Option<&str>,
    inv: Option<&str>,
    twisters: Option<&str>,
    word: Option<&str>,
) -> Result<Report> {
    let aut = vertex_extension(host, vertex, &assoc(sigma)?, &assoc(inv)?, &assoc(twisters)?)?;
    let m = ModularWord::new(host.clone(), vec![aut])?;
    let r = Report::new().field("automorphism", m.render()).field("images", generator_images(host, &m)?);
    with_image(r, host, &m, word)
}

pub fn apply(host: &Arc<GraphOfGroups>, auto: &str, inverse: bool, word: &str) -> Result<Report> {
    let mut m = ModularWord::parse(host, &load_text(auto)?)?;
    if inverse {
        m = m.inverse()?;
    }
    with_image(Report::new(), host, &m, Some(word))
}

pub fn pi_modular(host: &Arc<GraphOfGroups>, auto: &str) -> Result<Report> {
    let m = ModularWord::parse(host, &load_text(auto)?)?;
    let ok = is_pi_modular(&m)?;
    Ok(Report::new()
        .field("verdict", if ok { "pi-modular" } else { "not pi-modular" })
        .verdict(ok))
}
