use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::quad::integrate;
use crate::error::{invalid, Result};

/// φ_λ(r) = sin(λr)/(λ sinh r) on H³, with φ_λ(0) = 1.
pub fn spherical_h3(lambda: f64, r: f64) -> f64 {
    if r == 0.0 {
        return 1.0;
    }
    let x = lambda * r;
    // sin(x)/x · r/sinh r, each factor evaluated stably
    let sinc = if x.abs() < 1e-4 { 1.0 - x * x / 6.0 } else { x.sin() / x };
    let rs = if r < 1e-4 { 1.0 - r * r / 6.0 } else { r / r.sinh() };
    sinc * rs
}

/// Envelope min(1, 1/(λ sinh r)) dominating |φ_λ(r)|; tolerances are taken
/// relative to it since φ itself has zeros.
pub fn spherical_envelope(lambda: f64, r: f64) -> f64 {
    if r == 0.0 {
        1.0
    } else {
        (1.0 / (lambda * r.sinh())).min(1.0)
    }
}

/// φ_λ(r) = ½ ∫_0^π Re (cosh r − sinh r cos t)^{−1−iλ} sin t dt, the average
/// over K of e^{(iλ−ρ)H(k a_r)}.
pub fn spherical_h3_integral(lambda: f64, r: f64) -> Result<f64> {
    if !(lambda > 0.0) || !(r >= 0.0) {
        return invalid(format!("need λ > 0 and r ≥ 0, got ({lambda}, {r})"));
    }
    let (ch, sh) = (r.cosh(), r.sinh());
    let f = |t: f64| {
        let u = ch - sh * t.cos();
        (-lambda * u.ln()).cos() / u * t.sin()
    };
    let tol = 1e-10 * spherical_envelope(lambda, r);
    Ok(0.5 * integrate(f, 0.0, PI, tol, 0.0)?.value)
}

#[derive(Debug, Clone, Serialize)]
pub struct SphericalScan {
    pub lambda_range: (f64, f64),
    pub r_range: (f64, f64),
    pub points: usize,
    /// sup |φ_λ(r)|·(1 + λr)^{1/2}
    pub sup: f64,
    pub argmax: (f64, f64),
}

/// Grid scan of the decay shape over λ ∈ [λ0, λ1], r ∈ (0, r1].
pub fn spherical_decay_scan(l0: f64, l1: f64, r1: f64, n: usize) -> SphericalScan {
    let (sup, argmax) = (0..n)
        .into_par_iter()
        .map(|i| {
            let lam = l0 + (l1 - l0) * i as f64 / (n - 1) as f64;
            let mut best = (0.0f64, (lam, 0.0));
            for j in 1..=n {
                let r = r1 * j as f64 / n as f64;
                let v = spherical_h3(lam, r).abs() * (1.0 + lam * r).sqrt();
                if v > best.0 {
                    best = (v, (lam, r));
                }
            }
            best
        })
        .reduce(|| (0.0, (0.0, 0.0)), |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a });
    SphericalScan { lambda_range: (l0, l1), r_range: (0.0, r1), points: n * n, sup, argmax }
}
