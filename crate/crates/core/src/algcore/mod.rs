//! Algebras, modules, morphisms and their structure theory.

pub mod algebra;
pub mod hom;
pub mod io;
pub mod module;
pub mod presets;
pub mod structure;

pub use algebra::{Algebra, Elem, Structure};
pub use hom::{hom_space, iso_class, iso_class_with_budget, HomSpace, IsoOutcome};
pub use module::{cokernel_of, direct_sum, image_of, kernel_of, DirectSum, Module, Morphism};
pub use structure::{
    indec_injectives, indec_projectives, indecomposables, injective_envelope, is_injective,
    is_projective, projective_cover, radical, simples, socle, top,
};
