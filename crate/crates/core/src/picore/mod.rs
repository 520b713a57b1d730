//! Finite quotients: groups given by multiplication tables, π-markings of
//! free and free abelian groups, and π-compatible morphisms.

mod finite;
mod marked;

pub use finite::{cyclic_image_check, FiniteGroup};
pub use marked::{
    abelian_pi_admissible, check_morphism, check_morphism_with, evaluate_pi, pi_free_product,
    GroupKind, MarkedGroup, Morphism, PiMap,
};
