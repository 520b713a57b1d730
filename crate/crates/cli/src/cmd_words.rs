//! Free-group word commands and π-markings.

use gogkit::picore::{check_morphism, evaluate_pi, MarkedGroup, Morphism};
use gogkit::words::{
    axis_overlap, check_small_cancellation, conjugacy, max_common_piece, subgroup_membership, Alphabet,
    Overlap, SubgroupBasis,
};
use gogkit::Result;

use crate::io::{alphabet_for, load_group, word_list, words, Report};

pub fn reduce(gens: Option<&str>, word: &str) -> Result<Report> {
    let a = alphabet_for(gens, &[word])?;
    let w = a.parse_word(word)?;
    Ok(Report::new().field("reduced", a.format_word(&w)).field("length", w.len()))
}

pub fn cyc(gens: Option<&str>, word: &str) -> Result<Report> {
    let a = alphabet_for(gens, &[word])?;
    let d = a.parse_word(word)?.cyclic_decomposition();
    Ok(Report::new()
        .field("prefix", a.format_word(&d.prefix))
        .field("core", a.format_word(&d.core))
        .field("translation-length", d.core.len()))
}

pub fn piece(gens: Option<&str>, x: &str, y: &str) -> Result<Report> {
    let a = alphabet_for(gens, &[x, y])?;
    let ws = words(&a, &[x, y])?;
    Ok(Report::new().field("piece", max_common_piece(&ws[0], &ws[1])?))
}

pub fn sc_check(gens: Option<&str>, m: u32, tuple: &[String]) -> Result<Report> {
    let texts: Vec<&str> = tuple.iter().map(String::as_str).collect();
    let a = alphabet_for(gens, &texts)?;
    let ws = words(&a, &texts)?;
    let ok = check_small_cancellation(&ws, m)?;
    let mut worst = 0;
    for (i, x) in ws.iter().enumerate() {
        for y in &ws[i..] {
            worst = worst.max(max_common_piece(x, y)?);
        }
    }
    let verdict = if ok { format!("C'({m}) holds") } else { format!("C'({m}) fails") };
    Ok(Report::new().field("verdict", verdict).field("max-piece", worst).verdict(ok))
}

pub fn axis(gens: Option<&str>, u: &str, v: &str, g: &str) -> Result<Report> {
    let a = alphabet_for(gens, &[u, v, g])?;
    let ws = words(&a, &[u, v, g])?;
    let o = match axis_overlap(&ws[0], &ws[1], &ws[2])? {
        Overlap::Finite(n) => n.to_string(),
        Overlap::Infinite => "infinite".to_string(),
    };
    Ok(Report::new().field("overlap", o))
}

pub fn conj(gens: Option<&str>, u: &str, v: &str) -> Result<Report> {
    let a = alphabet_for(gens, &[u, v])?;
    let ws = words(&a, &[u, v])?;
    Ok(match conjugacy(&ws[0], &ws[1]) {
        Some(c) => Report::new().field("conjugator", a.format_word(&c)),
        None => Report::new().field("verdict", "not conjugate").negative(),
    })
}

pub fn member(gens: Option<&str>, basis: &str, word: &str) -> Result<Report> {
    let items = gogkit::text::split_list(basis);
    let mut texts: Vec<&str> = items.iter().map(String::as_str).collect();
    texts.push(word);
    let a = alphabet_for(gens, &texts)?;
    let b = SubgroupBasis::checked(word_list(&a, basis)?)?;
    let w = a.parse_word(word)?;
    let symbols = Alphabet::new((1..=b.generators().len()).map(|i| format!("h{i}")))?;
    Ok(match subgroup_membership(&b, &w) {
        Some(e) => Report::new().field("expression", symbols.format_word(&e)),
        None => Report::new().field("verdict", "not a member").negative(),
    })
}

pub fn pi_eval(group: Option<&str>, source: &str, word: &str) -> Result<Report> {
    let q = load_group(group)?;
    let g = MarkedGroup::parse(source, q.clone())?;
    let w = g.alphabet().parse_word(word)?;
    let x = evaluate_pi(g.pi(), &w)?;
    Ok(Report::new().field("image", q.element_name(x)))
}

pub fn pi_check(group: Option<&str>, source: &str, target: &str, images: &str) -> Result<Report> {
    let q = load_group(group)?;
    let s = MarkedGroup::parse(source, q.clone())?;
    let t = MarkedGroup::parse(target, q)?;
    let f = Morphism::parse_images(s, t, images)?;
    let ok = check_morphism(&f)?;
    let v = if ok { "pi-morphism" } else { "not a pi-morphism" };
    Ok(Report::new().field("verdict", v).verdict(ok))
}
