//! Closures of abelian pieces: root extensions, congruence conditions and
//! formal solutions of positive sentences.

mod congruence;
mod formal;
mod pegged;

pub use congruence::{complement, intersect, satisfies_atom, Atom, CongruenceCondition, DataPoint, Shape};
pub use formal::{
    search_formal_solution, verify_merzlyakov_witness, verify_scp_witness, Block, FormalSolutionProblem, Verdict,
};
pub use pegged::{extension_exists, PeggedAbelianPair};
