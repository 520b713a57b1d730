//! Congruence conditions, root extensions, formal solutions and trees.

use gogkit::closures::{
    complement, extension_exists, intersect, search_formal_solution, verify_scp_witness, CongruenceCondition,
    DataPoint, FormalSolutionProblem, PeggedAbelianPair,
};
use gogkit::config::Caps;
use gogkit::text::Fields;
use gogkit::treeord::{descending_chain, tr_less, BaseOrder, LabeledRootedTree};
use gogkit::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::io::{int_list, load_group, load_text, Report};

pub fn ext_check(group: Option<&str>, pair: &str, exps: &str) -> Result<Report> {
    let p = PeggedAbelianPair::parse(&load_text(pair)?, load_group(group)?)?;
    Ok(match extension_exists(&p, &int_list(exps)?)? {
        Some(v) => Report::new().field(
            "extension",
            v.iter().map(i64::to_string).collect::<Vec<_>>().join(", "),
        ),
        None => Report::new().field("verdict", "no extension").negative(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CongOp {
    Show,
    Contains,
    Intersect,
    Complement,
}

/// A point is `q=<elements> exps=<ints>`.
fn parse_point(text: &str, q: &gogkit::picore::FiniteGroup) -> Result<DataPoint> {
    let f = Fields::parse(text)?;
    f.only(&["q", "exps"])?;
    if !f.positional.is_empty() {
        return Err(Error::input("a point is `q=<elements> exps=<integers>`"));
    }
    Ok(DataPoint {
        q: f.get("q").unwrap_or("").split_whitespace().map(|e| q.parse_element(e)).collect::<Result<_>>()?,
        exps: int_list(f.get("exps").unwrap_or(""))?,
    })
}

pub fn cong(group: Option<&str>, op: CongOp, first: &str, other: Option<&str>, point: Option<&str>) -> Result<Report> {
    let q = load_group(group)?;
    let c = CongruenceCondition::parse(&load_text(first)?, q.clone())?;
    Ok(match op {
        CongOp::Show => Report::new().block("condition", c.to_text()),
        CongOp::Contains => {
            let p = parse_point(point.ok_or_else(|| Error::input("contains needs --point"))?, &q)?;
            let ok = c.contains(&p);
            Report::new().field("verdict", if ok { "satisfied" } else { "not satisfied" }).verdict(ok)
        }
        CongOp::Intersect => {
            let d = CongruenceCondition::parse(&load_text(other.ok_or_else(|| Error::input("intersect needs --other"))?)?, q)?;
            let r = intersect(&c, &d)?;
            let empty = r.is_empty();
            Report::new().block("condition", r.to_text()).verdict(!empty)
        }
        CongOp::Complement => {
            let r = complement(&c)?;
            let empty = r.is_empty();
            Report::new().block("condition", r.to_text()).verdict(!empty)
        }
    })
}

fn problem(group: Option<&str>, arg: &str) -> Result<FormalSolutionProblem> {
    let q = group.map(|g| load_group(Some(g))).transpose()?;
    FormalSolutionProblem::parse(&load_text(arg)?, q)
}

pub fn verify_formal(group: Option<&str>, arg: &str, witness: &str) -> Result<Report> {
    let p = problem(group, arg)?;
    let w = p.parse_witness(witness)?;
    let v = verify_scp_witness(&p, &w)?;
    let ok = v.is_valid();
    Ok(Report::new().field("verdict", v).verdict(ok))
}

pub fn search_formal(group: Option<&str>, arg: &str, bound: usize, caps: &Caps) -> Result<Report> {
    let p = problem(group, arg)?;
    Ok(match search_formal_solution(&p, bound, caps)? {
        Some(w) => Report::new().field("witness", p.format_witness(&w)),
        None => Report::new().field("verdict", format!("no witness up to length {bound}")).negative(),
    })
}

pub fn tr_compare(t1: &str, t2: &str, order: &str, caps: &Caps) -> Result<Report> {
    let base = BaseOrder::parse(&load_text(order)?)?;
    let (a, b) = (LabeledRootedTree::parse(t1)?, LabeledRootedTree::parse(t2)?);
    let ok = tr_less(&a, &b, &base, caps)?;
    let back = tr_less(&b, &a, &base, caps)?;
    Ok(Report::new()
        .field("verdict", if ok { "less" } else { "not less" })
        .field("converse", if back { "less" } else { "not less" })
        .verdict(ok))
}

pub fn tr_chain(t: &str, order: &str, steps: usize, seed: u64, caps: &Caps) -> Result<Report> {
    let base = BaseOrder::parse(&load_text(order)?)?;
    let start = LabeledRootedTree::parse(t)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (chain, done) = descending_chain(&start, &base, caps, steps, &mut rng)?;
    let mut r = Report::new();
    for t in &chain {
        r = r.field("tree", t);
    }
    let v = if done { "terminated" } else { "step cap reached" };
    Ok(r.field("verdict", format!("{v} after {} steps", chain.len() - 1)).verdict(done))
}

