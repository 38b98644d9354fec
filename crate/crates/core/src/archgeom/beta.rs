use serde::Serialize;

use super::Model;
use crate::error::{invalid, Result};

/// ξ ∈ 𝔞*; in the rank-one models ⟨α, ξ⟩ = ‖ξ‖ for the positive root α.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralParameter {
    pub xi: Vec<f64>,
    pub norm: f64,
}

impl SpectralParameter {
    pub fn new(xi: Vec<f64>) -> Result<Self> {
        if xi.iter().any(|x| !x.is_finite()) {
            return invalid("ξ has non-finite entries");
        }
        let norm = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
        Ok(SpectralParameter { xi, norm })
    }

    pub fn rank_one(x: f64) -> Result<Self> {
        Self::new(vec![x])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlancherelBeta {
    pub value: f64,
    /// (⟨α, ξ⟩, m(α)) for each positive restricted root.
    pub factors: Vec<(f64, u32)>,
}

/// β(ξ) = Π_{α>0} (1 + |⟨α, ξ⟩|)^{m(α)}.
pub fn beta(model: Model, xi: &SpectralParameter) -> PlancherelBeta {
    let factors = vec![(xi.norm, model.root_multiplicity())];
    let value = factors.iter().map(|&(a, m)| (1.0 + a.abs()).powi(m as i32)).product();
    PlancherelBeta { value, factors }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let x = |v| SpectralParameter::rank_one(v).unwrap();
        assert_eq!(beta(Model::H3, &x(0.0)).value, 1.0);
        assert_eq!(beta(Model::H3, &x(3.0)).value, 16.0);
        assert_eq!(beta(Model::H2, &x(3.0)).value, 4.0);
        assert_eq!(beta(Model::H3, &x(-3.0)).value, 16.0);
        assert!(SpectralParameter::rank_one(f64::INFINITY).is_err());
    }
}
