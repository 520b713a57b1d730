//! Labeled finite rooted trees over a well-founded base preorder and the
//! tree comparator built from root-preserving partial isomorphisms.

mod order;
mod tree;

pub use order::{product_order, BaseOrder, Label};
pub use tree::{descending_chain, successors, tr_less, LabeledRootedTree};
