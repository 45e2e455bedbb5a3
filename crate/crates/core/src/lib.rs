//! Exact relative homological algebra over finite-dimensional algebras over a
//! prime field: stable Hom, satellites, complete and Tate cohomology with
//! respect to the injective and projective subcategories.

pub mod algcore;
pub mod cochain;
pub mod complete;
pub mod error;
pub mod linalg;
pub mod resolve;
pub mod stab;
pub mod tate;

pub use error::{Error, Result};
