//! Root data, finite Weyl groups and the cocharacter norm ‖μ‖*.
//!
//! A datum is stored on a single lattice ℤⁿ that plays the role of both
//! X*(T) and X_*(T); the pairing is the coordinate dot product.

mod datum;
mod doc;
mod named;
mod norm;
mod weyl;

pub use datum::RootDatum;
pub use doc::RootDatumDoc;
pub use named::{build_root_datum, cartan_matrix, CartanType};
pub use norm::{norm_star, norm_star_adjoint, norm_star_weyl_max, rho};
pub use weyl::{inversions, weyl_group, weyl_group_capped, WeylElement, WeylGroup, DEFAULT_WEYL_CAP};

use crate::linalg::{q, Q};
use serde::{Deserialize, Serialize};

/// A rational cocharacter μ ∈ X_*(T) ⊗ ℚ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coweight(pub Vec<Q>);

/// A rational character χ ∈ X*(T) ⊗ ℚ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight(pub Vec<Q>);

macro_rules! lattice_vector {
    ($t:ident) => {
        impl $t {
            pub fn from_ints(v: &[i64]) -> Self {
                $t(v.iter().map(|&x| q(x)).collect())
            }
            pub fn zero(n: usize) -> Self {
                $t(vec![q(0); n])
            }
            pub fn dim(&self) -> usize {
                self.0.len()
            }
            pub fn is_integral(&self) -> bool {
                self.0.iter().all(|x| x.is_integer())
            }
            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|x| *x == q(0))
            }
            /// Integer coordinates, if integral.
            pub fn to_ints(&self) -> Option<Vec<i64>> {
                self.is_integral()
                    .then(|| self.0.iter().map(|x| x.to_integer()).collect())
            }
            pub fn neg(&self) -> Self {
                $t(self.0.iter().map(|x| -x).collect())
            }
            pub fn add(&self, other: &Self) -> Self {
                $t(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
            }
            pub fn scale(&self, s: Q) -> Self {
                $t(self.0.iter().map(|x| x * s).collect())
            }
        }
    };
}

lattice_vector!(Coweight);
lattice_vector!(Weight);
