//! `gogkit`: command-line front end for the gogkit library.
//!
//! Exit status is 0 for an affirmative result, 1 for a negative one and 2
//! for malformed input. Structured inputs are read from `@path`, or taken
//! inline with `|` separating lines.

mod cmd_closures;
mod cmd_gog;
mod cmd_seq;
mod cmd_words;
mod io;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gogkit::Result;

use crate::cmd_closures::CongOp;
use crate::io::{resolve_caps, Ctx, Format, Report, Status, CAPS_ENV};

#[derive(Parser, Debug)]
#[command(name = "gogkit", version, about = "Free groups, graphs of groups and test sequences")]
struct Cli {
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0x5EED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Compact)]
    format: Format,
    /// Flat `key = value` file of search caps.
    #[arg(long, global = true)]
    config: Option<String>,
    /// Cap override `key=value`; repeatable, applied last.
    #[arg(long = "cap", global = true)]
    caps: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Gens {
    /// Generator names in order; inferred and sorted when omitted.
    #[arg(long)]
    gens: Option<String>,
}

#[derive(Args, Debug)]
struct Group {
    /// Finite group Q: `cyclic:N`, `symmetric:K` or a group table.
    #[arg(long)]
    group: Option<String>,
}

#[derive(Args, Debug)]
struct Host {
    /// Graph of groups text.
    gog: String,
    #[command(flatten)]
    group: Group,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Freely reduce a word.
    Reduce { word: String, #[command(flatten)] gens: Gens },
    /// Cyclic decomposition prefix · core · prefix⁻¹.
    Cyc { word: String, #[command(flatten)] gens: Gens },
    /// Longest common piece of two words.
    Piece { x: String, y: String, #[command(flatten)] gens: Gens },
    /// Small-cancellation condition C'(m) for a tuple.
    ScCheck {
        #[arg(long)]
        m: u32,
        #[arg(required = true)]
        words: Vec<String>,
        #[command(flatten)]
        gens: Gens,
    },
    /// Overlap of the axes of u and g v g⁻¹.
    Axis { u: String, v: String, g: String, #[command(flatten)] gens: Gens },
    /// Conjugator taking u to v.
    Conj { u: String, v: String, #[command(flatten)] gens: Gens },
    /// Subgroup membership with an expression in the basis h1, h2, ...
    Member {
        #[arg(long)]
        basis: String,
        word: String,
        #[command(flatten)]
        gens: Gens,
    },
    /// Evaluate π on a word of a marked group.
    PiEval {
        #[arg(long)]
        source: String,
        word: String,
        #[command(flatten)]
        group: Group,
    },
    /// Check that generator images define a π-morphism.
    PiCheck {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        images: String,
        #[command(flatten)]
        group: Group,
    },
    /// Validate a graph of groups.
    GogValidate {
        #[command(flatten)]
        host: Host,
    },
    /// Fundamental-group presentation.
    Present {
        #[command(flatten)]
        host: Host,
    },
    /// Loop normal form of a word.
    Nf {
        #[command(flatten)]
        host: Host,
        word: String,
    },
    /// Word problem in the fundamental group.
    Equal {
        #[command(flatten)]
        host: Host,
        u: String,
        v: String,
    },
    /// Collapse a set of edges.
    Collapse {
        #[command(flatten)]
        host: Host,
        #[arg(long)]
        edges: String,
    },
    /// Blow a vertex up into a graph of groups.
    Blowup {
        #[command(flatten)]
        host: Host,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        with: String,
        /// `edge:vertex` pairs.
        #[arg(long)]
        attach: Option<String>,
    },
    /// Fold edge groups into a vertex group.
    Fold {
        #[command(flatten)]
        host: Host,
        #[arg(long)]
        vertex: String,
        /// `<edge>:<word>,<word>,...`; repeatable.
        #[arg(long = "fold", required = true)]
        folds: Vec<String>,
    },
    /// Slide an edge along another.
    Slide {
        #[command(flatten)]
        host: Host,
        #[arg(long)]
        edge: String,
        #[arg(long)]
        along: String,
    },
    /// Dehn twist over a directed edge.
    Twist {
        #[command(flatten)]
        host: Host,
        #[arg(long)]
        edge: String,
        #[arg(long)]
        by: String,
        /// Word to map.
        #[arg(long)]
        word: Option<String>,
    },
    /// Natural extension of a vertex automorphism.
    Vext {
        #[command(flatten)]
        host: Host,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long)]
        inv: Option<String>,
        #[arg(long)]
        twisters: Option<String>,
        #[arg(long)]
        word: Option<String>,
    },
    /// Apply a `;`-separated automorphism word.
    Apply {
        #[command(flatten)]
        host: Host,
        #[arg(long)]
        auto: String,
        #[arg(long)]
        inverse: bool,
        word: String,
    },
    /// π-modularity of an automorphism word.
    PiModular {
        #[command(flatten)]
        host: Host,
        #[arg(long)]
        auto: String,
    },
    /// A member of the small-cancellation family.
    GenSc {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        group: Group,
    },
    /// A member of the factorial abelian sequence.
    GenAbelian {
        #[arg(long)]
        source: String,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        residues: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        group: Group,
    },
    /// Ball discrimination of a family, or box discrimination of an abelian sequence.
    Discriminate {
        /// Family block (ball mode).
        #[arg(long, conflicts_with_all = ["source", "bound"])]
        family: Option<String>,
        #[arg(long, requires = "family")]
        radius: Option<usize>,
        /// Abelian source group (box mode).
        #[arg(long, requires_all = ["k", "residues", "bound", "n"])]
        source: Option<String>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        residues: Option<String>,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        group: Group,
    },
    /// Ratio of image core lengths of two family members.
    Growth {
        #[arg(long)]
        family1: String,
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        word1: String,
        #[arg(long)]
        family2: String,
        #[arg(long)]
        n2: usize,
        #[arg(long)]
        word2: String,
        #[command(flatten)]
        group: Group,
    },
    /// Dehn-twist exponent schedule.
    Schedule {
        #[command(flatten)]
        host: Host,
        /// `<edge>:<weight>:<word>`; repeatable.
        #[arg(long = "edge", required = true)]
        edges: Vec<String>,
        /// Base morphism `gen:word, ...` into a free group.
        #[arg(long)]
        base: String,
        #[arg(long)]
        n: u64,
    },
    /// Root extension for a pegged abelian pair.
    ExtCheck {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        exps: String,
        #[command(flatten)]
        group: Group,
    },
    /// Congruence-condition operations.
    Cong {
        #[arg(value_enum)]
        op: CongOp,
        condition: String,
        #[arg(long)]
        other: Option<String>,
        /// `q=<elements> exps=<integers>`.
        #[arg(long)]
        point: Option<String>,
        #[command(flatten)]
        group: Group,
    },
    /// Verify a formal-solution witness.
    VerifyFormal {
        problem: String,
        /// `var:word, ...`.
        #[arg(long)]
        witness: String,
        #[command(flatten)]
        group: Group,
    },
    /// Search formal-solution witnesses up to a length bound.
    SearchFormal {
        problem: String,
        #[arg(long)]
        bound: usize,
        #[command(flatten)]
        group: Group,
    },
    /// Compare labeled rooted trees, or walk a random descending chain.
    TrCompare {
        t1: String,
        /// Second tree; omit with --chain.
        t2: Option<String>,
        /// `int`, `chainN`, products `A*B`, or an order table.
        #[arg(long, default_value = "int")]
        order: String,
        /// Walk a random descending chain of at most this many steps.
        #[arg(long, conflicts_with = "t2")]
        chain: Option<usize>,
    },
}

fn host(h: &Host) -> Result<std::sync::Arc<gogkit::gog::GraphOfGroups>> {
    cmd_gog::load_gog(&h.gog, h.group.group.as_deref())
}

fn run(cmd: &Command, ctx: &Ctx) -> Result<Report> {
    use Command::*;
    let g = |x: &Gens| x.gens.clone();
    match cmd {
        Reduce { word, gens } => cmd_words::reduce(g(gens).as_deref(), word),
        Cyc { word, gens } => cmd_words::cyc(g(gens).as_deref(), word),
        Piece { x, y, gens } => cmd_words::piece(g(gens).as_deref(), x, y),
        ScCheck { m, words, gens } => cmd_words::sc_check(g(gens).as_deref(), *m, words),
        Axis { u, v, g: w, gens } => cmd_words::axis(g(gens).as_deref(), u, v, w),
        Conj { u, v, gens } => cmd_words::conj(g(gens).as_deref(), u, v),
        Member { basis, word, gens } => cmd_words::member(g(gens).as_deref(), basis, word),
        PiEval { source, word, group } => cmd_words::pi_eval(group.group.as_deref(), source, word),
        PiCheck { source, target, images, group } => {
            cmd_words::pi_check(group.group.as_deref(), source, target, images)
        }
        GogValidate { host: h } => cmd_gog::gog_validate(&h.gog, h.group.group.as_deref()),
        Present { host: h } => Ok(cmd_gog::present(&*host(h)?)),
        Nf { host: h, word } => cmd_gog::nf(&*host(h)?, word),
        Equal { host: h, u, v } => cmd_gog::equal_words(&*host(h)?, u, v),
        Collapse { host: h, edges } => cmd_gog::collapse_cmd(&*host(h)?, edges),
        Blowup { host: h, vertex, with, attach } => {
            let s = cmd_gog::load_gog(with, h.group.group.as_deref())?;
            cmd_gog::blowup_cmd(&*host(h)?, vertex, &s, attach.as_deref())
        }
        Fold { host: h, vertex, folds } => cmd_gog::fold_cmd(&*host(h)?, vertex, folds),
        Slide { host: h, edge, along } => cmd_gog::slide_cmd(&*host(h)?, edge, along),
        Twist { host: h, edge, by, word } => cmd_gog::twist(&host(h)?, edge, by, word.as_deref()),
        Vext { host: h, vertex, sigma, inv, twisters, word } => cmd_gog::vext(
            &host(h)?,
            vertex,
            sigma.as_deref(),
            inv.as_deref(),
            twisters.as_deref(),
            word.as_deref(),
        ),
        Apply { host: h, auto, inverse, word } => cmd_gog::apply(&host(h)?, auto, *inverse, word),
        PiModular { host: h, auto } => cmd_gog::pi_modular(&host(h)?, auto),
        GenSc { source, target, m, group } => cmd_seq::gen_sc(group.group.as_deref(), source, target, *m),
        GenAbelian { source, k, residues, n, group } => {
            cmd_seq::gen_abelian(group.group.as_deref(), source, *k, residues, *n)
        }
        Discriminate { family, radius, source, k, residues, bound, n, group } => {
            let q = group.group.as_deref();
            match (family, source) {
                (Some(f), None) => {
                    let fam = cmd_seq::load_family(f, q)?;
                    cmd_seq::discriminate_radius(fam.as_ref(), radius.unwrap_or(ctx.caps.ball_radius), &ctx.caps)
                }
                (None, Some(s)) => cmd_seq::discriminate_boxed(
                    q,
                    s,
                    k.expect("required by clap"),
                    residues.as_deref().expect("required by clap"),
                    bound.expect("required by clap"),
                    n.expect("required by clap"),
                ),
                _ => Err(gogkit::Error::input("give either --family or --source")),
            }
        }
        Growth { family1, n1, word1, family2, n2, word2, group } => {
            let q = group.group.as_deref();
            let (f1, f2) = (cmd_seq::load_family(family1, q)?, cmd_seq::load_family(family2, q)?);
            cmd_seq::growth(f1.as_ref(), *n1, word1, f2.as_ref(), *n2, word2)
        }
        Schedule { host: h, edges, base, n } => cmd_seq::schedule(&host(h)?, edges, base, *n),
        ExtCheck { pair, exps, group } => cmd_closures::ext_check(group.group.as_deref(), pair, exps),
        Cong { op, condition, other, point, group } => {
            cmd_closures::cong(group.group.as_deref(), *op, condition, other.as_deref(), point.as_deref())
        }
        VerifyFormal { problem, witness, group } => {
            cmd_closures::verify_formal(group.group.as_deref(), problem, witness)
        }
        SearchFormal { problem, bound, group } => {
            cmd_closures::search_formal(group.group.as_deref(), problem, *bound, &ctx.caps)
        }
        TrCompare { t1, t2, order, chain } => match (t2, chain) {
            (Some(t2), None) => cmd_closures::tr_compare(t1, t2, order, &ctx.caps),
            (None, Some(steps)) => cmd_closures::tr_chain(t1, order, *steps, ctx.seed, &ctx.caps),
            _ => Err(gogkit::Error::input("give a second tree or --chain")),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let env = std::env::var(CAPS_ENV).ok();
    let outcome = resolve_caps(cli.config.as_deref(), env.as_deref(), &cli.caps).and_then(|caps| {
        let ctx = Ctx { caps, format: cli.format, seed: cli.seed };
        run(&cli.command, &ctx).map(|r| (r, ctx))
    });
    match outcome {
        Ok((report, ctx)) => {
            print!("{}", report.render(ctx.format));
            match report.status {
                Status::Affirmative => ExitCode::SUCCESS,
                Status::Negative => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
