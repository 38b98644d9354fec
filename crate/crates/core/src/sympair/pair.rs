use std::collections::BTreeSet;

use crate::error::{invalid, Result};
use crate::linalg::{identity, mat_mul, mat_vec, mat_vec_q, rank_i, transpose, IMat};
use crate::rootdata::{norm_star, Coweight, RootDatum, Weight};

/// (G, H) with T_H ⊂ T given by `embed`, and optionally the involution θ on
/// X_*(T).
#[derive(Debug, Clone)]
pub struct SymmetricPair {
    pub label: String,
    pub g: RootDatum,
    pub h: RootDatum,
    /// n_G × n_H; column j is the image of the j-th basis vector of X_*(T_H).
    pub embed: IMat,
    pub theta: Option<IMat>,
    /// Weights of a faithful representation of G, used for support bounds.
    pub rep_weights: Vec<Weight>,
    /// How θ and the tori are positioned for this entry.
    pub note: String,
}

impl SymmetricPair {
    pub fn new(
        label: impl Into<String>,
        g: RootDatum,
        h: RootDatum,
        embed: IMat,
        theta: Option<IMat>,
    ) -> Result<Self> {
        let pair = SymmetricPair {
            label: label.into(),
            g,
            h,
            embed,
            theta,
            rep_weights: Vec::new(),
            note: String::new(),
        };
        pair.validate()?;
        Ok(pair)
    }

    pub fn with_rep_weights(mut self, w: Vec<Weight>) -> Self {
        self.rep_weights = w;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    fn validate(&self) -> Result<()> {
        let (ng, nh) = (self.g.lattice_rank(), self.h.lattice_rank());
        if self.embed.len() != ng || self.embed.iter().any(|r| r.len() != nh) {
            return invalid(format!("embed must be a {ng}×{nh} matrix"));
        }
        if rank_i(&self.embed) != nh {
            return invalid(format!("embed of pair '{}' is not injective", self.label));
        }
        if let Some(t) = &self.theta {
            if t.len() != ng || t.iter().any(|r| r.len() != ng) {
                return invalid(format!("theta must be a {ng}×{ng} matrix"));
            }
            if mat_mul(t, t) != identity(ng) {
                return invalid(format!("theta of pair '{}' is not an involution", self.label));
            }
            let roots: BTreeSet<Vec<i64>> = self.g.roots().into_iter().collect();
            // θ acts on characters through (θ⁻¹)ᵀ = θᵀ
            let tt = transpose(t, ng);
            if roots.iter().any(|a| !roots.contains(&mat_vec(&tt, a))) {
                return invalid(format!("theta of pair '{}' does not permute the roots", self.label));
            }
            let coroots: BTreeSet<Vec<i64>> = self
                .g
                .positive_coroots()
                .iter()
                .flat_map(|c| [c.clone(), c.iter().map(|x| -x).collect()])
                .collect();
            if coroots.iter().any(|c| !coroots.contains(&mat_vec(t, c))) {
                return invalid(format!("theta of pair '{}' does not permute the coroots", self.label));
            }
        }
        Ok(())
    }

    /// ι(μ) ∈ X_*(T) ⊗ ℚ.
    pub fn embed_coweight(&self, mu: &Coweight) -> Coweight {
        Coweight(mat_vec_q(&self.embed, &mu.0))
    }

    /// Whether ι(X_*(T_H)) sits inside the (+1)-eigenlattice of θ. Catalog
    /// entries whose θ is written on a different torus report `false`.
    pub fn embed_is_theta_fixed(&self) -> Option<bool> {
        let t = self.theta.as_ref()?;
        Some(mat_mul(t, &self.embed) == self.embed)
    }

    /// 2‖μ‖*_H − ‖ι(μ)‖*.
    pub fn margin(&self, mu: &Coweight) -> crate::Q {
        norm_star_h(self, mu) * 2 - norm_star(&self.g, &self.embed_coweight(mu))
    }
}

/// ‖μ‖*_H = max_{w∈W_H} ⟨wμ, ρ_H⟩.
pub fn norm_star_h(pair: &SymmetricPair, mu: &Coweight) -> crate::Q {
    norm_star(&pair.h, mu)
}

/// Rank of X_*(T)/ι(X_*(T_H)) after saturation.
pub fn dual_torus_rank(pair: &SymmetricPair) -> usize {
    pair.g.lattice_rank() - rank_i(&pair.embed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::rootdata::build_root_datum;

    #[test]
    fn rejects_bad_theta_and_embed() {
        let g = build_root_datum("A1×A1").unwrap();
        let h = build_root_datum("A1").unwrap();
        assert!(SymmetricPair::new("x", g.clone(), h.clone(), vec![vec![0], vec![0]], None).is_err());
        let not_inv = vec![vec![0, 1], vec![0, 1]];
        assert!(SymmetricPair::new("x", g.clone(), h.clone(), vec![vec![1], vec![1]], Some(not_inv)).is_err());
        // involution that does not preserve the roots
        let shear = vec![vec![1, 0], vec![1, -1]];
        assert!(SymmetricPair::new("x", g, h, vec![vec![1], vec![1]], Some(shear)).is_err());
    }

    #[test]
    fn h_norm_examples() {
        let g = build_root_datum("A1×A1").unwrap();
        let h = build_root_datum("A1").unwrap();
        let p = SymmetricPair::new("mr", g, h, vec![vec![1], vec![1]], None).unwrap();
        assert_eq!(norm_star_h(&p, &Coweight::from_ints(&[1])), q(1));
        assert_eq!(dual_torus_rank(&p), 1);
        let t = SymmetricPair::new(
            "split",
            build_root_datum("A1").unwrap(),
            build_root_datum("T1").unwrap(),
            vec![vec![1]],
            None,
        )
        .unwrap();
        assert_eq!(norm_star_h(&t, &Coweight::from_ints(&[3])), q(0));
        assert_eq!(dual_torus_rank(&t), 0);
    }

    #[test]
    fn levi_norm_vanishes_on_centre() {
        // s(gl2 ⊕ gl1) inside sl3, written on the sl3 coroot lattice
        let g = build_root_datum("A2").unwrap();
        let h = g.levi(&[0], "GL2-Levi").unwrap();
        let p = SymmetricPair::new("su21", g, h, identity(2), None).unwrap();
        // the centre of the Levi is spanned by the cocharacter killed by α1, i.e. (1, 2)
        assert_eq!(norm_star_h(&p, &Coweight::from_ints(&[1, 2])), q(0));
        // first fundamental coweight of the gl2 factor: ρ_H = α1/2
        assert_eq!(norm_star_h(&p, &Coweight::from_ints(&[1, 0])), q(1));
    }
}
