//! Extended affine Weyl group lengths and spherical double-coset counts.

mod count;
mod lattice_oracle;
mod length;
mod poly;
mod quotient;

pub use count::{
    coset_growth_ratio, double_coset_count, double_coset_count_unreduced, double_coset_elements,
    sandwich_constant, twice_norm, CosetElement, HeckeCountPolynomial,
};
pub use lattice_oracle::{lattice_oracle_count, OracleGroup};
pub use length::{affine_length, ExtendedAffineElement};
pub use poly::IntPoly;
pub use quotient::{quotient_by_central_torus, CentralQuotient};

