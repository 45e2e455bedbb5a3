//! Complete cohomology: colimits of stable Homs, their Ext¹ and satellite
//! presentations, the Hom-complex route and the long exact sequences.

pub mod les;
pub mod periodic;
pub mod system;
pub mod text;

pub use les::{les_text, TextLes, TextSide};
pub use periodic::{
    bounded_cohomology, periodic_coresolution, periodic_resolution, stable_complex_cohomology, stable_les, ModuleComplex,
    PeriodicComplex, StableCohomology, StableLes, Tail,
};
pub use system::{ColimitResult, DirectSystem, EndoColimit, Status};
pub use text::{
    cext_d, cext_via_satellites, completion_value, delta_map, delta_map_d, double_colimit, psi_map, satellite_grid,
    text_c, text_via_ext1, text_via_satellites, ColimitParams, DoubleColimit, SatelliteGrid, SequenceKind,
};
