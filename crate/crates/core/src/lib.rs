//! Computational core for free groups, finite-quotient markings, graphs of
//! groups and their automorphisms, explicit test-sequence generators,
//! congruence conditions and formal-solution checking.
//!
//! Every value is immutable after construction and every operation is a pure
//! function, so everything here is `Send + Sync` and can be shared freely
//! across threads.

pub mod autos;
pub mod closures;
pub mod config;
mod error;
pub mod gog;
pub mod lattice;
pub mod picore;
pub mod seqgen;
pub mod text;
pub mod treeord;
pub mod words;

pub use error::{Error, Result};
