use num_traits::Signed;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::linalg::{dot, dot_iq};
use crate::rootdata::{Coweight, RootDatum, WeylElement};

/// t(λ)·w in X_*(T) ⋊ W.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ExtendedAffineElement {
    pub translation: Vec<i64>,
    pub finite_part: WeylElement,
}

impl ExtendedAffineElement {
    pub fn new(translation: Vec<i64>, finite_part: WeylElement) -> Self {
        ExtendedAffineElement { translation, finite_part }
    }

    /// (λ₁, w₁)(λ₂, w₂) = (λ₁ + w₁λ₂, w₁w₂); the product matrix is looked
    /// up in the enumerated group to recover its reduced word.
    pub fn compose(&self, other: &Self, w: &crate::rootdata::WeylGroup) -> Self {
        let moved = self.finite_part.act(&other.translation);
        let translation = self.translation.iter().zip(&moved).map(|(a, b)| a + b).collect();
        let finite_part = w.compose(&self.finite_part, &other.finite_part).clone();
        ExtendedAffineElement { translation, finite_part }
    }
}

/// Positive roots split by whether they lie in wΔ⁺.
pub(crate) fn in_w_positive(rd: &RootDatum, w: &WeylElement) -> Vec<bool> {
    // α ∈ wΔ⁺ ⟺ w⁻¹α > 0 ⟺ ⟨α, w x₀⟩ > 0
    let wx0 = w.act_q(rd.height_functional());
    rd.positive_roots()
        .iter()
        .map(|a| dot_iq(a, &wx0).is_positive())
        .collect()
}

pub(crate) fn length_int(rd: &RootDatum, lambda: &[i64], signs: &[bool]) -> u64 {
    rd.positive_roots()
        .iter()
        .zip(signs)
        .map(|(a, &pos)| {
            let p = dot(a, lambda);
            if pos { p.unsigned_abs() } else { (p - 1).unsigned_abs() }
        })
        .sum()
}

/// l(t(λ)w) = Σ_{α∈Δ⁺∩wΔ⁺} |⟨α,λ⟩| + Σ_{α∈Δ⁺∩wΔ⁻} |⟨α,λ⟩ − 1|.
pub fn affine_length(rd: &RootDatum, lambda: &Coweight, w: &WeylElement) -> Result<u64> {
    let Some(l) = lambda.to_ints() else {
        return invalid(format!("translation {:?} is not integral", lambda.0));
    };
    if l.len() != rd.lattice_rank() {
        return invalid("translation has the wrong dimension");
    }
    Ok(length_int(rd, &l, &in_w_positive(rd, w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::rootdata::{build_root_datum, weyl_group};

    #[test]
    fn a1_examples() {
        let rd = build_root_datum("A1").unwrap();
        let w = weyl_group(&rd).unwrap();
        let id = &w.elements[0];
        let s = &w.elements[1];
        let len = |l: i64, e: &WeylElement| affine_length(&rd, &Coweight::from_ints(&[l]), e).unwrap();
        assert_eq!(len(1, id), 2);
        assert_eq!(len(0, id), 0);
        assert_eq!(len(0, s), 1);
        assert_eq!(len(1, s), 1);
        assert_eq!(len(-1, s), 3);
    }

    #[test]
    fn rejects_fractional_translation() {
        let rd = build_root_datum("A1").unwrap();
        let w = weyl_group(&rd).unwrap();
        let half = Coweight(vec![q(1) / 2]);
        assert!(affine_length(&rd, &half, &w.elements[0]).is_err());
    }
}
