//! CLI cases shared by the golden and exit-code suites.
//!
//! Each name ends in `.pos`, `.neg` or `.mal`, which fixes the expected exit
//! status: 0, 1 and 2 respectively.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub env: &'static [(&'static str, &'static str)],
}

const fn c(name: &'static str, args: &'static [&'static str]) -> Case {
    Case { name, args, env: &[] }
}

pub const CASES: &[Case] = &[
    // words
    c("reduce.pos", &["reduce", "a b b^-1"]),
    c("reduce-verbose.pos", &["--format", "verbose", "reduce", "a b^2 b^-1 a^-1 c"]),
    c("reduce.mal", &["reduce", "a^0"]),
    c("cyc.pos", &["cyc", "b a c a^-1 b^-1"]),
    c("cyc.mal", &["cyc", "a^x"]),
    c("piece.pos", &["piece", "a^5 b", "a b^5"]),
    c("piece.mal", &["piece", "a", "b^"]),
    c("sc-check.pos", &["sc-check", "--m", "3", "a b a^2 b^3 a^4 b^5 a^6 b^7"]),
    c("sc-check.neg", &["sc-check", "--m", "3", "a^5 b", "a b^5"]),
    c("sc-check.mal", &["sc-check", "--m", "1", "a b"]),
    c("axis.pos", &["axis", "a b", "a b", "a"]),
    c("axis.mal", &["axis", "a", "b"]),
    c("conj.pos", &["conj", "a b", "b a"]),
    c("conj.neg", &["conj", "a", "b"]),
    c("conj.mal", &["conj", "a b", "a^"]),
    c("member.pos", &["member", "--basis", "a b, b", "a b b b"]),
    c("member.neg", &["member", "--basis", "a^2", "a"]),
    c("member.mal", &["member", "--basis", "1", "a"]),
    // marked groups
    c("pi-eval.pos", &["pi-eval", "--group", "cyclic:2", "--source", "free gens=a,b pi=a:1,b:0", "a b a"]),
    c("pi-eval.mal", &["pi-eval", "--group", "cyclic:0", "--source", "free gens=a", "a"]),
    c(
        "pi-check.pos",
        &["pi-check", "--group", "cyclic:2", "--source", "free gens=a pi=a:1", "--target", "free gens=s pi=s:1", "--images", "a:s^3"],
    ),
    c(
        "pi-check.neg",
        &["pi-check", "--group", "cyclic:2", "--source", "free gens=a pi=a:1", "--target", "free gens=s pi=s:1", "--images", "a:s^2"],
    ),
    c(
        "pi-check.mal",
        &["pi-check", "--group", "@bad.grp", "--source", "free gens=a", "--target", "free gens=s", "--images", "a:s"],
    ),
    // graphs of groups
    c("gog-validate.pos", &["gog-validate", "@amalgam.gog"]),
    c("gog-validate-table.pos", &["gog-validate", "--group", "@z4.grp", "@z2.gog"]),
    c("gog-validate.neg", &["gog-validate", "@bad_tree.gog"]),
    c("gog-validate.mal", &["gog-validate", "@malformed.gog"]),
    c("present.pos", &["present", "@a2b3.gog"]),
    c("present.mal", &["present", "@missing.gog"]),
    c("nf.pos", &["nf", "@amalgam.gog", "a c d^-1 b"]),
    c("nf.mal", &["nf", "@amalgam.gog", "a z"]),
    c("equal.pos", &["equal", "@z2_hnn.gog", "t a t^-1", "a"]),
    c("equal.neg", &["equal", "@z2_hnn.gog", "t b t^-1", "b"]),
    c("equal.mal", &["equal", "@z2_hnn.gog", "t q", "a"]),
    c("collapse.pos", &["collapse", "@amalgam.gog", "--edges", "e"]),
    c("collapse.mal", &["collapse", "@amalgam.gog", "--edges", "q"]),
    c("blowup.pos", &["blowup", "@split.gog", "--vertex", "p", "--with", "vertex p1 free gens=s|tree:", "--attach", "h:p1"]),
    c("blowup.mal", &["blowup", "@split.gog", "--vertex", "p", "--with", "vertex p1 free gens=s|tree:"]),
    c("fold.pos", &["fold", "@amalgam.gog", "--vertex", "u", "--fold", "e:d,b"]),
    c("fold.mal", &["fold", "@amalgam.gog", "--vertex", "u", "--fold", "e:a"]),
    c("slide.pos", &["slide", "@star_slide.gog", "--edge", "f", "--along", "e"]),
    c("slide.mal", &["slide", "@star.gog", "--edge", "f", "--along", "e"]),
    // automorphisms
    c("twist.pos", &["twist", "@amalgam.gog", "--edge", "e", "--by", "d", "--word", "a b"]),
    c("twist.mal", &["twist", "@amalgam.gog", "--edge", "e", "--by", "a"]),
    c(
        "vext.pos",
        &["vext", "@z2_hnn.gog", "--vertex", "v", "--sigma", "a:a,b:b a", "--inv", "a:a,b:b a^-1", "--word", "t b"],
    ),
    c("vext.mal", &["vext", "@z2_hnn.gog", "--vertex", "v", "--sigma", "a:b", "--inv", "a:b"]),
    c("apply.pos", &["apply", "@amalgam.gog", "--auto", "twist e by d", "a b"]),
    c("apply-inverse.pos", &["apply", "@amalgam.gog", "--inverse", "--auto", "twist e by d", "a d^-1 b c"]),
    c("apply.mal", &["apply", "@amalgam.gog", "--auto", "spin e", "a"]),
    c("pi-modular.pos", &["pi-modular", "--group", "symmetric:3", "@s3_hnn.gog", "--auto", "twist t by a^2"]),
    c("pi-modular.neg", &["pi-modular", "--group", "symmetric:3", "@s3_hnn.gog", "--auto", "twist t by a"]),
    c("pi-modular.mal", &["pi-modular", "@s3_hnn.gog", "--auto", "twist t by a"]),
    // sequences
    c("gen-sc.pos", &["gen-sc", "--source", "free gens=a,b", "--target", "free gens=s,t", "--m", "6"]),
    c("gen-sc.mal", &["gen-sc", "--source", "free gens=a", "--target", "abelian gens=s,t", "--m", "3"]),
    c("gen-abelian.pos", &["gen-abelian", "--source", "abelian gens=x,y1", "--k", "2", "--residues", "1", "--n", "1"]),
    c("gen-abelian.mal", &["gen-abelian", "--source", "abelian gens=x,y", "--k", "2", "--residues", "2", "--n", "1"]),
    c("discriminate-ball.pos", &["discriminate", "--family", "@abelian.fam", "--radius", "2"]),
    c("discriminate-box.pos", &["discriminate", "--source", "abelian gens=x,y pi=x:1,y:1", "--group", "cyclic:2", "--k", "2", "--residues", "1", "--bound", "3", "--n", "30"]),
    c("discriminate-box.neg", &["discriminate", "--source", "abelian gens=x,y pi=x:1,y:1", "--group", "cyclic:2", "--k", "2", "--residues", "1", "--bound", "3", "--n", "0"]),
    c("discriminate.mal", &["discriminate", "--family", "@abelian.fam", "--radius", "9"]),
    c("growth.pos", &["growth", "--family1", "@abelian.fam", "--n1", "2", "--word1", "y1", "--family2", "@abelian.fam", "--n2", "2", "--word2", "x"]),
    c("growth-free.pos", &["growth", "--family1", "@sc.fam", "--n1", "3", "--word1", "a", "--family2", "@identity.fam", "--n2", "1", "--word2", "s t"]),
    c("growth.mal", &["growth", "--family1", "@abelian.fam", "--n1", "2", "--word1", "y1", "--family2", "@abelian.fam", "--n2", "2", "--word2", "1"]),
    c("schedule.pos", &["schedule", "@star.gog", "--edge", "e:1:x", "--base", "x:s t,y:s,a:s,s:t,b:t", "--n", "5"]),
    c("schedule.mal", &["schedule", "@star.gog", "--edge", "f:1:y", "--base", "x:s", "--n", "3"]),
    // closures and formal solutions
    c("ext-check.pos", &["ext-check", "--pair", "@pair.txt", "--exps", "4,9"]),
    c("ext-check.neg", &["ext-check", "--pair", "@pair.txt", "--exps", "4,8"]),
    c("ext-check.mal", &["ext-check", "--pair", "@pair.txt", "--exps", "4"]),
    c("cong-show.pos", &["cong", "show", "@cond1.txt"]),
    c("cong-contains.pos", &["cong", "contains", "@cond1.txt", "--point", "exps=2,1"]),
    c("cong-contains.neg", &["cong", "contains", "@cond1.txt", "--point", "exps=1,2"]),
    c("cong-intersect.pos", &["cong", "intersect", "@cond1.txt", "--other", "@cond2.txt"]),
    c("cong-complement.pos", &["cong", "complement", "@cond1.txt"]),
    c("cong-intersect.neg", &["cong", "intersect", "@cond1.txt", "--other", "modulus 2|shape hanging=0 bases=2 orders=1|atom res=0 0"]),
    c("cong-complement.neg", &["cong", "complement", "modulus 1|shape hanging=0 bases=1 orders=1|atom res=0"]),
    c("cong.mal", &["cong", "show", "modulus 0"]),
    c("verify-formal.pos", &["verify-formal", "@commutator.txt", "--witness", "y:x^2"]),
    c("verify-formal.neg", &["verify-formal", "@counterexample.txt", "--witness", "y:1"]),
    c("verify-formal.mal", &["verify-formal", "@counterexample.txt", "--witness", "z:1"]),
    c("search-formal.pos", &["search-formal", "@commutator.txt", "--bound", "2"]),
    c("search-formal.neg", &["search-formal", "@counterexample.txt", "--bound", "6"]),
    c("search-formal-config.mal", &["search-formal", "@counterexample.txt", "--bound", "5", "--config", "caps.conf"]),
    Case {
        name: "search-formal-env.neg",
        args: &["search-formal", "@counterexample.txt", "--bound", "5", "--config", "caps.conf"],
        env: &[("GOGKIT_CAPS", "search_length=6")],
    },
    c("search-formal-flag.mal", &["search-formal", "@counterexample.txt", "--bound", "5", "--cap", "search_length=3"]),
    // trees
    c("tr-compare.pos", &["tr-compare", "r=3(a=2)", "r=3(a=1)"]),
    c("tr-compare.neg", &["tr-compare", "r=3(a=1)", "r=3(a=2)"]),
    c("tr-compare.mal", &["tr-compare", "r=3(a=", "r=1"]),
    c("tr-chain.pos", &["tr-compare", "r=hi(a=mid)", "--order", "@order.txt", "--chain", "20"]),
    c("tr-chain-seeded.pos", &["--seed", "7", "tr-compare", "r=c2(a=c2(b=c1), d=c1)", "--order", "chain3", "--chain", "50"]),
    c("tr-chain.mal", &["tr-compare", "r=3", "--order", "int", "--chain", "5"]),
    // global
    c("unknown.mal", &["frobnicate"]),
    c("no-args.mal", &[]),
];

pub fn expected_exit(name: &str) -> i32 {
    match name.rsplit('.').next() {
        Some("pos") => 0,
        Some("neg") => 1,
        Some("mal") => 2,
        _ => panic!("case {name} has no outcome suffix"),
    }
}

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    /// The golden-file rendering.
    pub fn transcript(&self) -> String {
        format!("exit: {}\n--- stdout\n{}--- stderr\n{}", self.code, self.stdout, self.stderr)
    }
}

pub fn run(case: &Case) -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_gogkit"))
        .args(case.args)
        .current_dir(fixtures().join("inputs"))
        .env_remove("GOGKIT_CAPS")
        .envs(case.env.iter().copied())
        .output()
        .expect("binary runs");
    Outcome {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}
