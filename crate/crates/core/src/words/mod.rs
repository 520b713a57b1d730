//! Exact combinatorics of finitely generated free groups.
//!
//! Words are always freely reduced; reduction happens at construction.

mod alphabet;
mod axis;
mod cyclic;
mod stallings;
mod word;

pub use alphabet::Alphabet;
pub(crate) use alphabet::is_identifier;
pub use axis::{axis_overlap, Overlap};
pub use cyclic::{
    check_small_cancellation, conjugacy, max_common_piece, piece_length, CyclicDecomposition,
};
pub use stallings::{subgroup_membership, SubgroupBasis};
pub use word::{reduce, Letter, Word};
