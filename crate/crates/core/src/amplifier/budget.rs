//! Choosing the amplifier length P = X^c with X = (1 + ‖ξ‖)N.
//!
//! With error factor e = P^A X^{−δ₀}, the upper spectral side is ≍ P(1 + e)
//! and the lower one ≫ P^{2−ε}(1 − e). Taking c = δ₀/(2A) makes e = X^{−δ₀/2}
//! and the ratio lower/upper ≍ X^{c(1−ε)} = X^{2δ}.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::linalg::Q;

use super::ser_q;

pub const DEFAULT_EPSILON: (i64, i64) = (1, 8);

#[derive(Debug, Clone, Serialize)]
pub struct GridPoint {
    pub n: f64,
    pub xi_norm: f64,
    pub error_factor: f64,
    pub log_ratio_margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GridCertificate {
    pub points: usize,
    pub log10_x_range: (f64, f64),
    pub max_error_factor: f64,
    /// min over the grid of log(P^{1−ε}) − log(X^{2δ}); ≥ 0 up to rounding.
    pub min_log_ratio_margin: f64,
    /// min over the grid of log((lower/upper)·3 / X^{2δ}) including (1 ∓ e).
    pub min_effective_log_margin: f64,
    pub worst: GridPoint,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExponentBudget {
    #[serde(serialize_with = "ser_q")]
    pub a: Q,
    /// Recorded only: they do not enter c or δ in this model.
    #[serde(serialize_with = "ser_q")]
    pub b: Q,
    #[serde(serialize_with = "ser_q")]
    pub delta0: Q,
    #[serde(serialize_with = "ser_q")]
    pub eta: Q,
    #[serde(serialize_with = "ser_q")]
    pub epsilon: Q,
    #[serde(serialize_with = "ser_q")]
    pub c: Q,
    #[serde(serialize_with = "ser_q")]
    pub delta: Q,
    /// δ in the limit ε → 0, i.e. c/2.
    #[serde(serialize_with = "ser_q")]
    pub delta_limit: Q,
    pub symbolic_ok: bool,
    pub certificate: GridCertificate,
}

fn f(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// The two defining relations, checked in exact arithmetic.
pub fn symbolic_check(b: &ExponentBudget) -> bool {
    b.c * b.a <= b.delta0 / 2
        && b.delta == b.c * (Q::one() - b.epsilon) / 2
        && (b.delta.is_positive() == b.delta0.is_positive())
}

fn certificate(a: Q, delta0: Q, c: Q, delta: Q, epsilon: Q) -> GridCertificate {
    let (a, d0, c, d, eps) = (f(a), f(delta0), f(c), f(delta), f(epsilon));
    let mut max_e = 0.0f64;
    let mut min_margin = f64::INFINITY;
    let mut min_eff = f64::INFINITY;
    let mut worst = None;
    let mut points = 0;
    for i in 0..=60 {
        let lx = 3.0 + 0.1 * i as f64;
        for s in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let ln_x = lx * std::f64::consts::LN_10;
            let ln_n = s * ln_x;
            let ln_xi1 = ln_x - ln_n;
            let ln_p = c * ln_x;
            let e = (a * ln_p - d0 * ln_n - d0 * ln_xi1).exp();
            let margin = (1.0 - eps) * ln_p - 2.0 * d * ln_x;
            let eff = margin + ((1.0 - e) / (1.0 + e) * 3.0).ln();
            points += 1;
            if e > max_e {
                max_e = e;
                worst = Some(GridPoint {
                    n: ln_n.exp(),
                    xi_norm: ln_xi1.exp() - 1.0,
                    error_factor: e,
                    log_ratio_margin: margin,
                });
            }
            min_margin = min_margin.min(margin);
            min_eff = min_eff.min(eff);
        }
    }
    GridCertificate {
        points,
        log10_x_range: (3.0, 9.0),
        max_error_factor: max_e,
        min_log_ratio_margin: min_margin,
        min_effective_log_margin: min_eff,
        worst: worst.expect("grid is nonempty"),
        pass: max_e <= 0.5 && min_margin >= -1e-9 && min_eff >= -1e-9,
    }
}

pub fn exponent_budget(a: Q, b: Q, delta0: Q, eta: Q, epsilon: Q) -> Result<ExponentBudget> {
    if !delta0.is_positive() {
        return Err(Error::Infeasible(format!(
            "δ₀ = {delta0} leaves no room for a power saving"
        )));
    }
    if !a.is_positive() {
        return invalid(format!("A = {a} must be positive"));
    }
    if !epsilon.is_positive() || epsilon > Q::new(1, 4) {
        return invalid(format!("ε = {epsilon} must lie in (0, 1/4]"));
    }
    if b.is_negative() || eta.is_negative() {
        return invalid("B and η must be non-negative");
    }
    let c = delta0 / (a * 2);
    let delta = c * (Q::one() - epsilon) / 2;
    let mut out = ExponentBudget {
        a,
        b,
        delta0,
        eta,
        epsilon,
        c,
        delta,
        delta_limit: c / 2,
        symbolic_ok: false,
        certificate: certificate(a, delta0, c, delta, epsilon),
    };
    out.symbolic_ok = symbolic_check(&out);
    if !out.symbolic_ok || out.delta.is_zero() {
        return Err(Error::Consistency("budget violates its defining relations".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn examples() {
        let b = exponent_budget(q(10), q(1), q(1), q(1), Q::new(1, 8)).unwrap();
        assert_eq!(b.c, Q::new(1, 20));
        assert_eq!(b.delta_limit, Q::new(1, 40));
        assert_eq!(b.delta, Q::new(1, 40) * Q::new(7, 8));
        assert!(b.certificate.pass);
        let b = exponent_budget(q(1), q(1), q(1), q(1), Q::new(1, 4)).unwrap();
        assert_eq!((b.c, b.delta), (Q::new(1, 2), Q::new(3, 16)));
        assert!(matches!(
            exponent_budget(q(10), q(1), q(0), q(1), Q::new(1, 8)),
            Err(Error::Infeasible(_))
        ));
        assert!(exponent_budget(q(10), q(1), q(1), q(1), Q::new(1, 2)).is_err());
    }
}
