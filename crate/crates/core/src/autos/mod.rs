//! Elementary automorphisms of graph-of-groups fundamental groups: Dehn
//! twists, natural extensions of vertex automorphisms and inner
//! automorphisms, with composition, inversion and π-modularity.

mod elementary;
mod modular;

pub use elementary::{
    apply, dehn_twist, inner, vertex_extension, vertex_extension_parts, Elementary,
    ElementaryAutomorphism,
};
pub use modular::{is_pi_modular, twist_factorization_check, ModularWord};
