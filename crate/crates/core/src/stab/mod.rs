//! Stable functors and left satellites.

pub mod satellite;
pub mod stable;

pub use satellite::{
    five_term_sequence, mixed_satellite, satellite, satellite_connecting, satellite_connecting_from, satellite_literal, FunctorDescriptor,
    MixedSatellite, SatelliteMap, SatelliteValue, Shape, Variance,
};
pub use stable::{
    factoring_subspace, omega_map_d, sigma_map, six_term_sequence, stable_hom, stable_hom_via_cokernel,
    CokernelComparison, StableHom, StableSide,
};
