//! Exact combinatorics and rank-one numerics behind amplified sup-norm
//! bounds on locally symmetric spaces: root data and the norm ‖μ‖*,
//! spherical Hecke double-coset counts, H-largeness of symmetric pairs,
//! amplifier bookkeeping, and checks of the archimedean estimates on
//! hyperbolic 2- and 3-space.

pub mod affine_hecke;
pub mod amplifier;
pub mod archgeom;
pub mod error;
pub mod linalg;
pub mod rootdata;
pub mod sympair;

pub use error::{Error, Result};
pub use linalg::Q;
pub use rootdata::{build_root_datum, Coweight, RootDatum, Weight, WeylElement, WeylGroup};
