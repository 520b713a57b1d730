//! Acceptance run: one line per criterion, nonzero exit if any fails.

/// Fails the enclosing criterion with a formatted message.
macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

mod closures;
mod oracle;
mod sequences;
mod trees;
mod ui;
mod words;

#[path = "../../../core/tests/support/burau.rs"]
mod burau;

#[path = "../common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

/// A criterion returns a short summary or the reason it failed.
type Check = fn() -> Result<String, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: Check,
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, title: "word algebra", limit: secs(5), run: words::word_algebra },
    Criterion { id: 2, title: "small cancellation", limit: secs(60), run: words::small_cancellation },
    Criterion { id: 3, title: "axis overlap", limit: None, run: words::axis },
    Criterion { id: 4, title: "Bass-Serre normal forms and moves", limit: None, run: gog::bass_serre },
    Criterion { id: 5, title: "elementary automorphisms", limit: None, run: gog::automorphisms },
    Criterion { id: 6, title: "abelian sequences", limit: secs(30), run: sequences::abelian },
    Criterion { id: 7, title: "extensions and congruences", limit: None, run: closures::congruences },
    Criterion { id: 8, title: "formal solutions", limit: secs(60), run: closures::formal },
    Criterion { id: 9, title: "tree preorder", limit: None, run: trees::preorder },
    Criterion { id: 10, title: "command line", limit: None, run: ui::cli },
];

fn main() -> ExitCode {
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in CRITERIA.iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if took > limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(summary) => println!("PASS [{}] {}: {summary} ({took:.2?})", c.id, c.title),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {}: {why} ({took:.2?})", c.id, c.title);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
