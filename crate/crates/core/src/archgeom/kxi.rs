//! The test function k_ξ on H³: h₀ is the Fourier transform of b = b₀ * b₀
//! with b₀ a cubic B-spline of radius δ/2, so h₀(ν) = sinc(νδ/8)⁸ and k_ξ is
//! supported in the ball of radius 2δ.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::beta::{beta, SpectralParameter};
use super::quad::integrate_panels;
use super::spherical::spherical_h3;
use super::Model;
use crate::error::{invalid, Error, Result};

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Cubic B-spline on [−2, 2], unit mass.
fn bspline3(t: f64) -> f64 {
    let t = t.abs();
    if t >= 2.0 {
        0.0
    } else if t >= 1.0 {
        (2.0 - t).powi(3) / 6.0
    } else {
        (4.0 - 6.0 * t * t + 3.0 * t * t * t) / 6.0
    }
}

/// b₀, supported in [−δ/2, δ/2].
pub fn bump(x: f64, delta: f64) -> f64 {
    let a = delta / 4.0;
    bspline3(x / a) / a
}

/// h₀(ν) = b̂₀(ν)², closed form.
pub fn h0(nu: f64, delta: f64) -> f64 {
    sinc(nu * delta / 8.0).powi(8)
}

/// h₀ through a numeric Fourier transform of the bump.
pub fn h0_quadrature(nu: f64, delta: f64) -> Result<f64> {
    let a = delta / 4.0;
    let f = |x: f64| 2.0 * bump(x, delta) * (nu * x).cos();
    // the spline is a polynomial on [0, a] and [a, 2a]
    let i1 = integrate_panels(f, 0.0, a, 1, 1e-14, 0.0)?.value;
    let i2 = integrate_panels(f, a, 2.0 * a, 1, 1e-14, 0.0)?.value;
    Ok((i1 + i2).powi(2))
}

/// h_ξ⁰(ν) = Σ_{w ∈ {±1}} h₀(wν − ξ).
pub fn h_xi0(nu: f64, xi: f64, delta: f64) -> f64 {
    h0(nu - xi, delta) + h0(nu + xi, delta)
}

/// h_ξ = (h_ξ⁰)².
pub fn h_xi(nu: f64, xi: f64, delta: f64) -> f64 {
    h_xi0(nu, xi, delta).powi(2)
}

/// Truncation point of the inversion integral; past it h_ξ < 10⁻²⁸.
pub fn spectral_cutoff(xi: f64, delta: f64) -> f64 {
    xi + 480.0 / delta
}

/// k_ξ(r) = (1/2π²) ∫_0^∞ h_ξ(λ) φ_λ(r) λ² dλ, the H³ inversion with
/// |c(λ)|⁻² ∝ λ².
pub fn kxi_h3(r: f64, xi: f64, delta: f64) -> Result<f64> {
    let top = spectral_cutoff(xi, delta);
    let scale = (1.0 + xi).powi(2);
    let res = integrate_panels(
        |l| h_xi(l, xi, delta) * l * l * spherical_h3(l, r),
        0.0,
        top,
        top.ceil() as usize,
        1e-11 * scale,
        0.0,
    )
    .map_err(|e| Error::Numeric(format!("k_ξ(r={r}, ξ={xi}, δ={delta}): {e}")))?;
    Ok(res.value / (2.0 * PI * PI))
}

/// Spherical transform ĥ(λ) = 4π ∫ k(r) φ_λ(r) sinh²r dr from samples of k
/// on a uniform grid (composite Simpson).
pub fn forward_transform(samples: &[(f64, f64)], lambda: f64) -> f64 {
    let n = samples.len();
    assert!(n >= 3 && n % 2 == 1, "Simpson needs an odd number of samples");
    let h = samples[1].0 - samples[0].0;
    let g = |i: usize| {
        let (r, k) = samples[i];
        k * spherical_h3(lambda, r) * r.sinh().powi(2)
    };
    let mut s = g(0) + g(n - 1);
    for i in 1..n - 1 {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * g(i);
    }
    4.0 * PI * s * h / 3.0
}

#[derive(Debug, Clone, Serialize)]
pub struct TestFunctionKxi {
    pub xi: SpectralParameter,
    pub h0_support_radius: f64,
    /// (r, k_ξ(r)) on [0, 2δ].
    pub samples: Vec<(f64, f64)>,
    pub h_at_xi: f64,
    pub k_at_origin: f64,
    pub beta: f64,
}

/// Largest δ with h₀(1) ≥ 1/4, which forces h_ξ ≥ 1/16 on |λ − ξ| ≤ 1.
pub fn floor_delta_threshold() -> f64 {
    let (mut lo, mut hi) = (0.0f64, 8.0 * PI);
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if h0(1.0, m) >= 0.25 {
            lo = m;
        } else {
            hi = m;
        }
    }
    lo
}

pub const DEFAULT_KXI_SAMPLES: usize = 1001;

pub fn build_kxi_h3(xi: &SpectralParameter, delta: f64) -> Result<TestFunctionKxi> {
    build_kxi_h3_with(xi, delta, DEFAULT_KXI_SAMPLES)
}

pub fn build_kxi_h3_with(xi: &SpectralParameter, delta: f64, samples: usize) -> Result<TestFunctionKxi> {
    if !(delta > 0.0 && delta <= 0.5) {
        return invalid(format!("δ = {delta} must lie in (0, 1/2]"));
    }
    if samples < 3 {
        return invalid("need at least 3 samples");
    }
    let x = xi.norm;
    let h_at_xi = h_xi(x, x, delta);
    if h_at_xi < 1.0 {
        return Err(Error::Consistency(format!("h_ξ(ξ) = {h_at_xi} < 1")));
    }
    let top = 2.0 * delta;
    let samples = (0..samples)
        .into_par_iter()
        .map(|i| {
            let r = top * i as f64 / (samples - 1) as f64;
            kxi_h3(r, x, delta).map(|k| (r, k))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TestFunctionKxi {
        xi: xi.clone(),
        h0_support_radius: delta,
        k_at_origin: samples[0].1,
        samples,
        h_at_xi,
        beta: beta(Model::H3, xi).value,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FloorCheck {
    pub xi: f64,
    pub delta: f64,
    pub min_h: f64,
    pub argmin: f64,
    /// max |h₀ by quadrature − closed form| along the window.
    pub quadrature_deviation: f64,
}

/// min of h_ξ over |λ − ξ| ≤ 1, with h₀ taken from the numeric transform.
pub fn floor_check(xi: f64, delta: f64, points: usize) -> Result<FloorCheck> {
    let vals = (0..points)
        .into_par_iter()
        .map(|i| {
            let lam = xi - 1.0 + 2.0 * i as f64 / (points - 1) as f64;
            let a = h0_quadrature(lam - xi, delta)?;
            let b = h0_quadrature(lam + xi, delta)?;
            let dev = (a - h0(lam - xi, delta)).abs().max((b - h0(lam + xi, delta)).abs());
            Ok((lam, (a + b).powi(2), dev))
        })
        .collect::<Result<Vec<_>>>()?;
    let (argmin, min_h, _) = vals.iter().copied().fold((0.0, f64::INFINITY, 0.0), |m, v| if v.1 < m.1 { v } else { m });
    let quadrature_deviation = vals.iter().map(|v| v.2).fold(0.0, f64::max);
    Ok(FloorCheck { xi, delta, min_h, argmin, quadrature_deviation })
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioFit {
    pub xi_range: (f64, f64),
    pub min_ratio: f64,
    pub max_ratio: f64,
    /// k_ξ(0)/β(ξ) ∈ [1/C, C].
    pub constant: f64,
}

/// k_ξ(0)/β(ξ) on `n` log-spaced ξ in [a, b].
pub fn origin_ratio_fit(a: f64, b: f64, n: usize, delta: f64) -> Result<RatioFit> {
    let rs = (0..n)
        .into_par_iter()
        .map(|i| {
            let x = a * (b / a).powf(i as f64 / (n - 1) as f64);
            Ok(kxi_h3(0.0, x, delta)? / (1.0 + x).powi(2))
        })
        .collect::<Result<Vec<f64>>>()?;
    let min_ratio = rs.iter().copied().fold(f64::INFINITY, f64::min);
    let max_ratio = rs.iter().copied().fold(0.0, f64::max);
    Ok(RatioFit { xi_range: (a, b), min_ratio, max_ratio, constant: max_ratio.max(1.0 / min_ratio) })
}

#[derive(Debug, Clone, Serialize)]
pub struct DecayScan {
    pub xis: Vec<f64>,
    pub r_points: usize,
    /// sup |k_ξ(r)|(1 + ‖ξ‖r)^{1/2}/β(ξ)
    pub sup: f64,
    pub argmax: (f64, f64),
}

pub fn decay_scan(xis: &[f64], r_max: f64, points: usize, delta: f64) -> Result<DecayScan> {
    let grid: Vec<(f64, f64)> = xis
        .iter()
        .flat_map(|&x| (0..points).map(move |j| (x, r_max * j as f64 / (points - 1) as f64)))
        .collect();
    let vals = grid
        .par_iter()
        .map(|&(x, r)| Ok((kxi_h3(r, x, delta)?.abs() * (1.0 + x * r).sqrt() / (1.0 + x).powi(2), (x, r))))
        .collect::<Result<Vec<_>>>()?;
    let (sup, argmax) = vals.into_iter().fold((0.0, (0.0, 0.0)), |m, v| if v.0 > m.0 { v } else { m });
    Ok(DecayScan { xis: xis.to_vec(), r_points: points, sup, argmax })
}
