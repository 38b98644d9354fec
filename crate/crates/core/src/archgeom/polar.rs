//! Pullback of the hyperbolic metric through polar coordinates
//! K/M × 𝔞 → 𝔭 → G/K, by finite differences on the hyperboloid.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::Model;
use crate::error::{invalid, Result};

const STEP: f64 = 1e-5;
pub const POLAR_TOLERANCE: f64 = 1e-6;

/// exp of t·u at the base point, u a unit vector in 𝔭 ≅ ℝⁿ.
fn point(t: f64, u: &[f64]) -> Vec<f64> {
    let mut p = vec![t.cosh()];
    p.extend(u.iter().map(|x| t.sinh() * x));
    p
}

fn minkowski(a: &[f64], b: &[f64]) -> f64 {
    -a[0] * b[0] + a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum::<f64>()
}

fn diff(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| (x - y) / (2.0 * STEP)).collect()
}

/// Great circle through u with unit initial velocity e ⊥ u.
fn rotate(u: &[f64], e: &[f64], s: f64) -> Vec<f64> {
    u.iter().zip(e).map(|(a, b)| s.cos() * a + s.sin() * b).collect()
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct MetricSample {
    pub t: f64,
    pub g_rr: f64,
    pub g_aa: f64,
    pub g_ra: f64,
}

/// Metric coefficients at (t, u) along the radial direction and the angular
/// direction e.
pub fn metric_at(t: f64, u: &[f64], e: &[f64]) -> MetricSample {
    let dr = diff(&point(t + STEP, u), &point(t - STEP, u));
    let da = diff(&point(t, &rotate(u, e, STEP)), &point(t, &rotate(u, e, -STEP)));
    MetricSample { t, g_rr: minkowski(&dr, &dr), g_aa: minkowski(&da, &da), g_ra: minkowski(&dr, &da) }
}

#[derive(Debug, Clone, Serialize)]
pub struct PolarReport {
    pub model: Model,
    pub samples: usize,
    /// max relative deviation from ds² = dt² + sinh²t dX²
    pub max_rel_error: f64,
    pub worst: MetricSample,
    pub radial_at_origin: f64,
    /// sinh(t)/finite-difference angular length, extremes over the sample
    pub angular_ratio_range: (f64, f64),
    pub angular_monotone: bool,
    /// largest c with √g_aa ≥ sinh(c·t) on the sample
    pub angular_lower_c: f64,
    pub pass: bool,
}

fn random_frame(model: Model, rng: &mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>) {
    let n = model.dimension();
    let gauss = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        (0..n)
            .map(|_| {
                let u1: f64 = 1.0 - rng.gen::<f64>();
                let u2: f64 = rng.gen();
                (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
            })
            .collect()
    };
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let u = gauss(rng);
    let u: Vec<f64> = u.iter().map(|x| x / norm(&u)).collect();
    let v = gauss(rng);
    let proj: f64 = v.iter().zip(&u).map(|(a, b)| a * b).sum();
    let e: Vec<f64> = v.iter().zip(&u).map(|(a, b)| a - proj * b).collect();
    let e: Vec<f64> = e.iter().map(|x| x / norm(&e)).collect();
    (u, e)
}

pub fn polar_metric_check(model: Model, samples: usize, seed: u64) -> Result<PolarReport> {
    if samples == 0 {
        return invalid("need at least one sample");
    }
    let metrics: Vec<MetricSample> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let t = rng.gen_range(0.01..3.0);
            let (u, e) = random_frame(model, &mut rng);
            metric_at(t, &u, &e)
        })
        .collect();
    let err = |m: &MetricSample| {
        let s2 = m.t.sinh().powi(2);
        (m.g_rr - 1.0).abs().max((m.g_aa / s2 - 1.0).abs()).max(m.g_ra.abs() / m.t.sinh())
    };
    let worst = *metrics.iter().max_by(|a, b| err(a).total_cmp(&err(b))).expect("nonempty");
    let max_rel_error = err(&worst);
    let ratios: Vec<f64> = metrics.iter().map(|m| m.t.sinh() / m.g_aa.sqrt()).collect();
    let angular_ratio_range = (
        ratios.iter().copied().fold(f64::INFINITY, f64::min),
        ratios.iter().copied().fold(0.0, f64::max),
    );
    let angular_lower_c = metrics.iter().map(|m| m.g_aa.sqrt().asinh() / m.t).fold(f64::INFINITY, f64::min);
    let (u, e) = random_frame(model, &mut ChaCha8Rng::seed_from_u64(seed));
    let radial_at_origin = metric_at(0.0, &u, &e).g_rr;
    let line: Vec<f64> = (1..=300).map(|k| metric_at(0.01 * k as f64, &u, &e).g_aa).collect();
    let angular_monotone = line.windows(2).all(|w| w[1] > w[0]);
    let pass = max_rel_error <= POLAR_TOLERANCE
        && (radial_at_origin - 1.0).abs() <= POLAR_TOLERANCE
        && angular_monotone
        && angular_lower_c > 0.0;
    Ok(PolarReport {
        model,
        samples,
        max_rel_error,
        worst,
        radial_at_origin,
        angular_ratio_range,
        angular_monotone,
        angular_lower_c,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_models_pass() {
        for m in [Model::H2, Model::H3] {
            let r = polar_metric_check(m, 500, 42).unwrap();
            assert!(r.pass, "{r:?}");
            assert!(r.angular_ratio_range.0 > 1.0 - 1e-6 && r.angular_ratio_range.1 < 1.0 + 1e-6);
        }
    }

    #[test]
    fn origin_is_flat() {
        let m = metric_at(0.0, &[1.0, 0.0], &[0.0, 1.0]);
        assert!((m.g_rr - 1.0).abs() < 1e-9);
        assert!(m.g_aa.abs() < 1e-12);
    }
}
