use std::collections::{BTreeMap, BTreeSet};
use std::fs;

use crate::common::{expected_exit, fixtures, run, CASES};

/// Commands that answer yes or no.
const DECISION: &[&str] = &[
    "sc-check", "conj", "member", "pi-check", "gog-validate", "equal", "pi-modular", "discriminate", "ext-check",
    "cong", "verify-formal", "search-formal", "tr-compare",
];

/// Commands that print a value and have no negative outcome.
const VALUE_ONLY: &[&str] = &[
    "reduce", "cyc", "piece", "axis", "pi-eval", "present", "nf", "collapse", "blowup", "fold", "slide", "twist",
    "vext", "apply", "gen-sc", "gen-abelian", "growth", "schedule",
];

pub fn cli() -> Result<String, String> {
    ensure!(CASES.len() >= 30, "only {} golden cases", CASES.len());
    let golden = fixtures().join("golden");
    let mut outcomes: BTreeMap<&str, BTreeSet<i32>> = BTreeMap::new();
    for case in CASES {
        let first = run(case);
        let second = run(case);
        ensure!(first.transcript() == second.transcript(), "{}: two runs differ", case.name);
        let want = fs::read_to_string(golden.join(format!("{}.out", case.name)))
            .map_err(|e| format!("{}: golden file: {e}", case.name))?;
        ensure!(first.transcript() == want, "{}: transcript differs from the golden file", case.name);
        let code = expected_exit(case.name);
        ensure!(first.code == code, "{}: exit {} instead of {code}", case.name, first.code);
        if code == 2 {
            ensure!(!first.stderr.is_empty(), "{}: malformed input without a message", case.name);
        }
        if let Some(cmd) = case.args.iter().copied().find(|a| DECISION.contains(a) || VALUE_ONLY.contains(a)) {
            outcomes.entry(cmd).or_default().insert(code);
        }
    }
    for (cmds, need) in [(DECISION, &[0, 1, 2][..]), (VALUE_ONLY, &[0, 2][..])] {
        for cmd in cmds {
            let seen = outcomes.get(cmd).ok_or_else(|| format!("{cmd} has no case"))?;
            for c in need {
                ensure!(seen.contains(c), "{cmd} has no case with exit {c}");
            }
        }
    }
    Ok(format!("{} golden transcripts stable across two runs, {} commands cover their exit codes", CASES.len(), outcomes.len()))
}
