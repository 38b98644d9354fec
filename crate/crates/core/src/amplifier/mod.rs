//! Hecke amplifiers built from an H-large coweight: place selection, the
//! normalized test functions τ(v, ν), the sup and period bounds, and the
//! exponent budget.

mod budget;
mod places;
mod plan;
mod power;

use num_rational::BigRational;
use serde::Serializer;

use crate::linalg::Q;

pub use budget::{exponent_budget, symbolic_check, ExponentBudget, GridCertificate, GridPoint, DEFAULT_EPSILON};
pub use places::{choose_places, sieve, Congruence, Place, PlaceSelection};
pub use plan::{
    build_amplifier, period_lower_bound, support_exponent, tau_l2_squared, tau_normalization,
    AmplifierPlan, PeriodBound, SupBound,
};
pub use power::{ScaledPower, SymbolicPower};

/// Rationals go out as "p/q" strings so nothing is rounded.
pub(crate) fn ser_q<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub(crate) fn ser_big<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}
