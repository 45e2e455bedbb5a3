//! Subcategory providers, proper (co)resolutions, absolute and relative Ext,
//! relative dimensions and long exact sequences.

pub mod coresolution;
pub mod ext;
pub mod les;
pub mod lift;
pub mod provider;
pub mod relext;

pub use coresolution::{
    certify_ses, cosyzygy, horseshoe_coresolution, horseshoe_resolution, projective_resolution, proper_coresolution,
    proper_resolution, syzygy, Coresolution, Resolution,
};
pub use ext::{co_connecting, contra_connecting, ext, ext_co_map, ext_contra_map, ext_dim, ExtSpace};
pub use les::{les_relative, relative_long_sequence, Side};
pub use provider::{
    provider, CustomProvider, Membership, PaddedProvider, Provider, ProviderKind, ShortExact,
    SubcategoryProvider,
};
pub use relext::{c_injective_dim, d_projective_dim, relative_ext_c, relative_ext_d, DimOutcome, RelExt};
