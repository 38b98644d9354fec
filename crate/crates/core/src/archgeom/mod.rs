//! Rank-one archimedean checks on H² = SL2(ℝ)/SO(2) and H³ = SL2(ℂ)/SU(2),
//! with the normalization ⟨α, ξ⟩ = ‖ξ‖ and the metric of curvature −1.

mod beta;
mod discriminant;
mod displacement;
mod kxi;
mod polar;
pub mod quad;
mod report;
mod spherical;
mod tube;

use serde::{Deserialize, Serialize};

pub use beta::{beta, PlancherelBeta, SpectralParameter};
pub use discriminant::{discriminant_by_determinant, elliptic_element, weyl_discriminant_elliptic, EllipticElement};
pub use displacement::{
    displacement, displacement_lower_bound_fit, displacement_matrix, displacement_oracle_check,
    radial_projection_check, DisplacementOracleCheck, LowerBoundFit, RadialProjectionCheck,
};
pub use kxi::{
    build_kxi_h3, build_kxi_h3_with, bump, decay_scan, floor_check, floor_delta_threshold,
    forward_transform, h0, h0_quadrature, h_xi, h_xi0, kxi_h3, origin_ratio_fit, spectral_cutoff,
    DecayScan, FloorCheck, RatioFit, TestFunctionKxi, DEFAULT_KXI_SAMPLES,
};
pub use polar::{metric_at, polar_metric_check, MetricSample, PolarReport, POLAR_TOLERANCE};
pub use report::{frozen, verify_arch, ArchReport, CheckOutcome, Suite};
pub use spherical::{spherical_decay_scan, spherical_envelope, spherical_h3, spherical_h3_integral, SphericalScan};
pub use tube::{
    fit_tube_constants, monte_carlo_tube_volume, orbital_tube_volume, tube_constants, tube_grid_check,
    tube_radius, tube_radius_bisect, tube_radius_bound, volume_shape_fit, volume_slope, SlopeFit,
    TubeConstants, TubeFit, TubeGridCheck, TubeVolume, VolumeShapeFit, R_MAX,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    H2,
    H3,
}

impl Model {
    /// m(α) for the single positive restricted root.
    pub fn root_multiplicity(self) -> u32 {
        match self {
            Model::H2 => 1,
            Model::H3 => 2,
        }
    }

    pub fn dimension(self) -> usize {
        self.root_multiplicity() as usize + 1
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Model::H2 => "h2",
            Model::H3 => "h3",
        })
    }
}

impl std::str::FromStr for Model {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "h2" => Ok(Model::H2),
            "h3" => Ok(Model::H3),
            _ => crate::error::invalid(format!("unknown model '{s}' (expected h2 or h3)")),
        }
    }
}
