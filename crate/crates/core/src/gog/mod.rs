//! Graphs of groups over free and free abelian vertex groups: validation,
//! presentations, loop normal forms and the quotient-level tree moves.

mod graph;
mod moves;
mod normal;
mod spec;

pub use graph::{validate, Dir, GraphOfGroups, Presentation};
pub use moves::{blow_up, collapse, fold, slide, Moved};
pub use normal::{equal, is_trivial, normal_form, LoopForm};
pub use spec::{EdgeSpec, GogSpec, TypeTag, VertexKind, VertexSpec};

/// The fundamental-group presentation of a validated graph of groups.
pub fn fundamental_presentation(g: &GraphOfGroups) -> Presentation {
    g.presentation()
}
