use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::affine_hecke::{coset_growth_ratio, double_coset_count, sandwich_constant};
use crate::error::{invalid, Error, Result};
use crate::linalg::{dot_q, Q};
use crate::rootdata::{norm_star, Coweight, RootDatum, Weight};
use crate::sympair::{norm_star_h, SymmetricPair};

use super::places::{choose_places, Congruence, Place};
use super::power::{ScaledPower, SymbolicPower};
use super::{ser_big, ser_q};

/// τ(v, μ) takes the value q^{−‖μ‖*} on K μ(ϖ) K.
pub fn tau_normalization(rd: &RootDatum, mu: &Coweight, q: u64) -> Result<SymbolicPower> {
    if q < 2 {
        return invalid(format!("q = {q} must be at least 2"));
    }
    Ok(SymbolicPower::new(q, -norm_star(rd, mu)))
}

/// ‖τ(v, μ)‖₂² = #KμK/K · q^{−2‖μ‖*}.
pub fn tau_l2_squared(rd: &RootDatum, mu: &Coweight, q: u64) -> Result<BigRational> {
    coset_growth_ratio(rd, mu, q)
}

#[derive(Debug, Clone, Serialize)]
pub struct PeriodBound {
    pub q: u64,
    /// q^{2‖ν‖*_H − ‖ι(ν)‖*}.
    pub bound: SymbolicPower,
    /// #K_H ν K_H/K_H · q^{−‖ι(ν)‖*}, the H-side value the bound comes from.
    pub h_side_value: ScaledPower,
    /// True where the H-side count is also checked by an independent
    /// lattice oracle (H = SL2).
    pub oracle_backed: bool,
    pub value_dominates_bound: bool,
}

fn h_is_sl2(pair: &SymmetricPair) -> bool {
    pair.h.rank() == 1 && pair.h.is_semisimple() && pair.h.cartan() == &vec![vec![2]]
        && pair.h.simple_coroots()[0] == vec![1]
}

pub fn period_lower_bound(pair: &SymmetricPair, nu: &Coweight, q: u64) -> Result<PeriodBound> {
    if nu.is_zero() {
        return invalid("ν must be nonzero");
    }
    if q < 2 {
        return invalid(format!("q = {q} must be at least 2"));
    }
    let margin = pair.margin(nu);
    let bound = SymbolicPower::new(q, margin);
    let count_h = double_coset_count(&pair.h, nu)?.eval(q);
    let g_norm = norm_star(&pair.g, &pair.embed_coweight(nu));
    let h_side_value = ScaledPower {
        coeff: BigRational::from_integer(count_h),
        power: SymbolicPower::new(q, -g_norm),
    };
    let value_dominates_bound = h_side_value.ge_power(&bound);
    if !value_dominates_bound {
        return Err(Error::Consistency(format!(
            "H-side value {} falls below the bound {bound} at q = {q}",
            h_side_value.to_f64()
        )));
    }
    Ok(PeriodBound { q, bound, h_side_value, oracle_backed: h_is_sl2(pair), value_dominates_bound })
}

#[derive(Debug, Clone, Serialize)]
pub struct SupBound {
    /// ‖k_S‖∞ ≤ k_S(1) ≤ constant · P.
    #[serde(serialize_with = "ser_big")]
    pub constant: BigRational,
    pub exponent: u32,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AmplifierPlan {
    pub pair: String,
    pub nu: Vec<i64>,
    pub nu_in_g: Vec<i64>,
    #[serde(rename = "P")]
    pub p: u64,
    #[serde(rename = "S")]
    pub places: Vec<Place>,
    pub degenerate: bool,
    pub warning: Option<String>,
    #[serde(serialize_with = "ser_q")]
    pub norm_nu: Q,
    #[serde(serialize_with = "ser_q")]
    pub norm_nu_h: Q,
    #[serde(serialize_with = "ser_q")]
    pub margin: Q,
    #[serde(serialize_with = "ser_q")]
    pub support_exponent_b: Q,
    #[serde(serialize_with = "ser_q")]
    pub coset_exponent_c: Q,
    /// k_S(1) = Σ_{v∈S} ‖τ(v,ν)‖₂².
    #[serde(serialize_with = "ser_big")]
    pub k_s_identity: BigRational,
    pub sup_bound: SupBound,
    pub period_bounds: Vec<PeriodBound>,
    /// Σ_{v≠w} bound_v·bound_w ≥ |S|(|S|−1), checked termwise and exactly.
    pub off_diagonal_period_ok: bool,
}

/// B = max over the representation's weights of |⟨ω, ι(ν)⟩|.
pub fn support_exponent(rep_weights: &[Weight], nu_g: &Coweight) -> Q {
    rep_weights
        .iter()
        .map(|w| dot_q(&w.0, &nu_g.0).abs())
        .max()
        .unwrap_or_else(Q::zero)
}

pub fn build_amplifier(
    pair: &SymmetricPair,
    nu: &Coweight,
    p: u64,
    rep_weights: &[Weight],
    cond: Option<Congruence>,
) -> Result<AmplifierPlan> {
    let Some(nu_int) = nu.to_ints() else {
        return invalid("ν must be integral");
    };
    if nu.is_zero() {
        return invalid("ν = 0 cannot drive an amplifier");
    }
    if nu.dim() != pair.h.lattice_rank() {
        return invalid(format!("ν needs {} coordinates", pair.h.lattice_rank()));
    }
    if rep_weights.is_empty() {
        return invalid(format!("pair '{}' has no representation weights", pair.label));
    }
    let margin = pair.margin(nu);
    if margin.is_negative() {
        return invalid(format!("ν = {nu_int:?} is not a largeness witness (margin {margin})"));
    }
    let nu_g = pair.embed_coweight(nu);
    let norm_nu = norm_star(&pair.g, &nu_g);
    let selection = choose_places(p, cond)?;
    let mut k_s = BigRational::zero();
    let mut period_bounds = Vec::new();
    for place in &selection.places {
        k_s += tau_l2_squared(&pair.g, &nu_g, place.q)?;
        period_bounds.push(period_lower_bound(pair, nu, place.q)?);
    }
    let c_rd = sandwich_constant(&pair.g, 2)?;
    let sup_constant = c_rd;
    let holds = k_s <= &sup_constant * BigRational::from_integer(BigInt::from(p));
    let off_diagonal_period_ok = period_bounds.iter().enumerate().all(|(i, a)| {
        period_bounds.iter().enumerate().all(|(j, b)| {
            i == j || a.bound.product_same_exponent(&b.bound).is_some_and(|x| x.ge_one())
        })
    });
    Ok(AmplifierPlan {
        pair: pair.label.clone(),
        nu: nu_int,
        nu_in_g: nu_g.to_ints().expect("embedding is integral"),
        p,
        degenerate: selection.places.is_empty(),
        warning: selection.warning,
        places: selection.places,
        norm_nu,
        norm_nu_h: norm_star_h(pair, nu),
        margin,
        support_exponent_b: support_exponent(rep_weights, &nu_g),
        coset_exponent_c: norm_nu * 4 + 2,
        k_s_identity: k_s,
        sup_bound: SupBound { constant: sup_constant, exponent: 1, holds },
        period_bounds,
        off_diagonal_period_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::rootdata::build_root_datum;
    use crate::sympair::{maclachlan_reid, split_control};

    fn br(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn tau_examples() {
        let sl2 = build_root_datum("A1").unwrap();
        let t = tau_normalization(&sl2, &Coweight::from_ints(&[1]), 3).unwrap();
        assert_eq!(t.to_rational().unwrap(), br(1, 3));
        assert_eq!(tau_l2_squared(&sl2, &Coweight::from_ints(&[1]), 3).unwrap(), br(12, 9));
        let t0 = tau_normalization(&sl2, &Coweight::zero(1), 5).unwrap();
        assert_eq!(t0.to_rational().unwrap(), br(1, 1));
    }

    #[test]
    fn maclachlan_reid_period() {
        let p = maclachlan_reid().unwrap();
        let b = period_lower_bound(&p, &Coweight::from_ints(&[1]), 3).unwrap();
        assert_eq!(b.bound.to_rational().unwrap(), br(1, 1));
        assert_eq!(b.h_side_value.coeff, br(12, 1));
        assert_eq!(b.h_side_value.power.exponent, q(-2));
        assert!(b.oracle_backed);
        assert!(period_lower_bound(&p, &Coweight::zero(1), 3).is_err());
    }

    #[test]
    fn split_control_bound_below_one() {
        let p = split_control().unwrap();
        let b = period_lower_bound(&p, &Coweight::from_ints(&[1]), 5).unwrap();
        assert!(!b.bound.ge_one());
        assert_eq!(b.bound.exponent, q(-1));
    }

    #[test]
    fn maclachlan_reid_plan_p10() {
        let p = maclachlan_reid().unwrap();
        let plan = build_amplifier(&p, &Coweight::from_ints(&[1]), 10, &p.rep_weights, None).unwrap();
        assert_eq!(plan.places.iter().map(|x| x.q).collect::<Vec<_>>(), vec![5, 7]);
        // (1 + 1/5)² + (1 + 1/7)², one growth ratio per SL2 factor
        assert_eq!(plan.k_s_identity, br(36, 25) + br(64, 49));
        assert_eq!(plan.support_exponent_b, q(1));
        assert_eq!(plan.norm_nu, q(2));
        assert!(plan.sup_bound.holds);
        assert!(plan.off_diagonal_period_ok);
        assert!(build_amplifier(&p, &Coweight::zero(1), 10, &p.rep_weights, None).is_err());
    }

    #[test]
    fn sl2_support_exponent() {
        let w = crate::sympair::sl_standard_weights(1);
        assert_eq!(support_exponent(&w, &Coweight::from_ints(&[1])), q(1));
    }
}
