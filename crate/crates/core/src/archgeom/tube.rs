use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::discriminant::weyl_discriminant_elliptic;
use super::displacement::{displacement, displacement_matrix};
use super::quad::{compensated_sum, integrate};
use super::Model;
use crate::error::{invalid, Result};

/// Radius past which the tube is considered to exhaust the domain.
pub const R_MAX: f64 = 20.0;

/// Constants of the tube-radius bound, fitted on θ ∈ [0.05, π/2],
/// ε ∈ [0.01, 5] and frozen with a margin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TubeConstants {
    pub c1: f64,
    pub c2: f64,
}

pub const TUBE_CONSTANTS_H3: TubeConstants = TubeConstants { c1: 8.5, c2: 4.5 };
pub const TUBE_CONSTANTS_H2: TubeConstants = TubeConstants { c1: 2.5, c2: 4.5 };

pub fn tube_constants(model: Model) -> TubeConstants {
    match model {
        Model::H3 => TUBE_CONSTANTS_H3,
        Model::H2 => TUBE_CONSTANTS_H2,
    }
}

/// Exact radius of {d(p, γp) < ε}: sinh r* = sinh(ε/2)/sin θ.
pub fn tube_radius(theta: f64, eps: f64) -> f64 {
    ((eps / 2.0).sinh() / theta.sin()).asinh()
}

/// The same radius by bisection on the matrix-model displacement.
pub fn tube_radius_bisect(model: Model, theta: f64, eps: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, R_MAX);
    if displacement_matrix(model, hi, theta) < eps {
        return hi;
    }
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if displacement_matrix(model, m, theta) < eps {
            lo = m;
        } else {
            hi = m;
        }
        if hi - lo < 1e-15 * hi.max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// C₁·ε/D when ε/D ≤ 2, C₂·log(ε/D) beyond.
pub fn tube_radius_bound(model: Model, eps: f64, d: f64, t: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < t) || !(t >= 1.0) || !(d > 0.0) {
        return invalid(format!("need 0 < ε < T, T ≥ 1, D > 0; got ε={eps}, T={t}, D={d}"));
    }
    Ok(bound_with(tube_constants(model), eps / d))
}

fn bound_with(k: TubeConstants, x: f64) -> f64 {
    if x <= 2.0 {
        k.c1 * x
    } else {
        k.c2 * x.ln()
    }
}

fn linspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> + Clone {
    (0..n).map(move |i| if n == 1 { a } else { a + (b - a) * i as f64 / (n - 1) as f64 })
}

fn logspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> + Clone {
    linspace(a.ln(), b.ln(), n).map(f64::exp)
}

#[derive(Debug, Clone, Serialize)]
pub struct TubeFit {
    pub fitted: TubeConstants,
    pub frozen: TubeConstants,
    pub within_frozen: bool,
}

/// Smallest constants making r* ≤ bound on the grid.
pub fn fit_tube_constants(model: Model, n_theta: usize, n_eps: usize) -> TubeFit {
    let (c1, c2) = linspace(0.05, PI / 2.0, n_theta)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&t| {
            let d = weyl_discriminant_elliptic(model, t).unwrap_or(1.0);
            let mut m = (0.0f64, 0.0f64);
            for e in logspace(0.01, 5.0, n_eps) {
                let r = tube_radius(t, e).min(R_MAX);
                let x = e / d;
                if x <= 2.0 {
                    m.0 = m.0.max(r / x);
                } else {
                    m.1 = m.1.max(r / x.ln());
                }
            }
            m
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
    let fitted = TubeConstants { c1, c2 };
    let frozen = tube_constants(model);
    TubeFit { fitted, frozen, within_frozen: c1 <= frozen.c1 && c2 <= frozen.c2 }
}

#[derive(Debug, Clone, Serialize)]
pub struct TubeGridCheck {
    pub samples: usize,
    pub inside: usize,
    pub violations: usize,
    /// max of r/bound over samples inside the tube
    pub worst_ratio: f64,
    pub worst: (f64, f64, f64),
}

/// Every sampled (θ, r, ε) with displacement < ε must have r ≤ bound(ε, D(θ)).
pub fn tube_grid_check(model: Model, n_theta: usize, n_r: usize, n_eps: usize) -> TubeGridCheck {
    let k = tube_constants(model);
    let rows: Vec<(usize, usize, f64, (f64, f64, f64))> = linspace(0.05, PI / 2.0, n_theta)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&t| {
            let d = weyl_discriminant_elliptic(model, t).unwrap_or(1.0);
            let mut acc = (0usize, 0usize, 0.0f64, (0.0, 0.0, 0.0));
            for e in logspace(0.01, 5.0, n_eps) {
                let b = bound_with(k, e / d);
                for r in linspace(0.0, R_MAX, n_r) {
                    if displacement(model, r, t) < e {
                        acc.0 += 1;
                        if r > b {
                            acc.1 += 1;
                        }
                        if b > 0.0 && r / b > acc.2 {
                            acc.2 = r / b;
                            acc.3 = (t, r, e);
                        }
                    }
                }
            }
            acc
        })
        .collect();
    let inside = rows.iter().map(|x| x.0).sum();
    let violations = rows.iter().map(|x| x.1).sum();
    let w = rows.iter().fold((0.0, (0.0, 0.0, 0.0)), |m, x| if x.2 > m.0 { (x.2, x.3) } else { m });
    TubeGridCheck { samples: n_theta * n_r * n_eps, inside, violations, worst_ratio: w.0, worst: w.1 }
}

#[derive(Debug, Clone, Serialize)]
pub struct TubeVolume {
    pub model: Model,
    pub theta: f64,
    pub eps: f64,
    pub radius: f64,
    /// Per unit axis length on H³, total on H².
    pub value: f64,
    pub closed_form: f64,
    /// The tube reached R_MAX; the value is then a truncation.
    pub saturated: bool,
}

fn closed_volume(model: Model, r: f64) -> f64 {
    match model {
        Model::H3 => PI * r.sinh().powi(2),
        Model::H2 => 2.0 * PI * (r.cosh() - 1.0),
    }
}

/// Volume of {p : d(p, γp) < ε}: radius by bisection, then the radial
/// integral of the volume density.
pub fn orbital_tube_volume(model: Model, theta: f64, eps: f64) -> Result<TubeVolume> {
    if !(theta > 0.0 && theta <= PI) || !(eps > 0.0) {
        return invalid(format!("need θ ∈ (0, π] and ε > 0; got θ={theta}, ε={eps}"));
    }
    let radius = tube_radius_bisect(model, theta, eps);
    let saturated = radius >= R_MAX;
    let density = move |r: f64| match model {
        Model::H3 => 2.0 * PI * r.sinh() * r.cosh(),
        Model::H2 => 2.0 * PI * r.sinh(),
    };
    let value = integrate(density, 0.0, radius, 0.0, 1e-12)?.value;
    Ok(TubeVolume { model, theta, eps, radius, value, closed_form: closed_volume(model, radius), saturated })
}

/// Monte-Carlo estimate in the half-space model, using only the Euclidean
/// distance formula cosh d = 1 + |p − q|²/(2 z_p z_q). On H³ the slab
/// 1 ≤ z ≤ e has unit length along the axis.
pub fn monte_carlo_tube_volume(model: Model, theta: f64, eps: f64, samples: usize, seed: u64) -> f64 {
    let r_box = 1.5 * tube_radius_bisect(model, theta, eps) + 1e-3;
    let thresh = 2.0 * (eps.cosh() - 1.0);
    let (s2, c2) = (2.0 * theta).sin_cos();
    let chunks = 64usize;
    let per = samples.div_ceil(chunks);
    let (box_vol, sums): (f64, Vec<f64>) = match model {
        Model::H3 => {
            let e = std::f64::consts::E;
            let l = e * r_box.sinh();
            let sums = (0..chunks)
                .into_par_iter()
                .map(|k| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(k as u64);
                    let mut s = 0.0;
                    for _ in 0..per {
                        let x = rng.gen_range(-l..l);
                        let y = rng.gen_range(-l..l);
                        let z = rng.gen_range(1.0..e);
                        // rotation by 2θ about the vertical axis
                        let (xr, yr) = (c2 * x - s2 * y, s2 * x + c2 * y);
                        let dist2 = (x - xr).powi(2) + (y - yr).powi(2);
                        if dist2 / (z * z) < thresh {
                            s += 1.0 / (z * z * z);
                        }
                    }
                    s
                })
                .collect();
            (4.0 * l * l * (e - 1.0), sums)
        }
        Model::H2 => {
            let (xl, y0, y1) = (r_box.sinh(), (-r_box).exp(), r_box.exp());
            let (s, c) = theta.sin_cos();
            let sums = (0..chunks)
                .into_par_iter()
                .map(|k| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(k as u64);
                    let mut acc = 0.0;
                    for _ in 0..per {
                        let x = rng.gen_range(-xl..xl);
                        let y = rng.gen_range(y0..y1);
                        // z ↦ (cz − s)/(sz + c)
                        let (nr, ni) = (c * x - s, c * y);
                        let (dr, di) = (s * x + c, s * y);
                        let den = dr * dr + di * di;
                        let (wx, wy) = ((nr * dr + ni * di) / den, (ni * dr - nr * di) / den);
                        let dist2 = (x - wx).powi(2) + (y - wy).powi(2);
                        if dist2 / (y * wy) < thresh {
                            acc += 1.0 / (y * y);
                        }
                    }
                    acc
                })
                .collect();
            (2.0 * xl * (y1 - y0), sums)
        }
    };
    box_vol * compensated_sum(sums) / (per * chunks) as f64
}

#[derive(Debug, Clone, Serialize)]
pub struct SlopeFit {
    pub theta: f64,
    pub eps_range: (f64, f64),
    pub points: usize,
    pub slope: f64,
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Log-log slope of the volume in ε over [0.01, min(2D, 1)].
pub fn volume_slope(model: Model, theta: f64, points: usize) -> Result<Option<SlopeFit>> {
    let d = weyl_discriminant_elliptic(model, theta)?;
    let top = (2.0 * d).min(1.0);
    if top <= 0.02 {
        return Ok(None);
    }
    let eps: Vec<f64> = logspace(0.01, top, points).collect();
    let vols = eps.iter().map(|&e| orbital_tube_volume(model, theta, e).map(|v| v.value.ln())).collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = eps.iter().map(|e| e.ln()).collect();
    Ok(Some(SlopeFit { theta, eps_range: (0.01, top), points, slope: least_squares(&xs, &vols).0 }))
}

#[derive(Debug, Clone, Serialize)]
pub struct VolumeShapeFit {
    /// sup of vol·(D/ε)² over the grid points with ε ≤ 2D
    pub c_small: f64,
    /// vol ≤ C·(ε/D)^A fitted over ε > 2D
    pub c_large: f64,
    pub a_large: f64,
    pub small_points: usize,
    pub large_points: usize,
    pub saturated_points: usize,
}

pub fn volume_shape_fit(model: Model, n_theta: usize, n_eps: usize) -> Result<VolumeShapeFit> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut saturated_points = 0;
    for t in linspace(0.05, PI / 2.0, n_theta) {
        let d = weyl_discriminant_elliptic(model, t)?;
        for e in logspace(0.01, 5.0, n_eps) {
            let v = orbital_tube_volume(model, t, e)?;
            if v.saturated {
                saturated_points += 1;
                continue;
            }
            if e <= 2.0 * d {
                small.push(v.value * (d / e).powi(2));
            } else {
                large.push(((e / d).ln(), v.value.ln()));
            }
        }
    }
    let c_small = small.iter().copied().fold(0.0, f64::max);
    let (a_large, c_large) = if large.len() >= 2 {
        let xs: Vec<f64> = large.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = large.iter().map(|p| p.1).collect();
        let (a, _) = least_squares(&xs, &ys);
        // smallest C making the fitted power an upper bound
        let lc = large.iter().map(|(x, y)| y - a * x).fold(f64::NEG_INFINITY, f64::max);
        (a, lc.exp())
    } else {
        (f64::NAN, f64::NAN)
    };
    Ok(VolumeShapeFit {
        c_small,
        c_large,
        a_large,
        small_points: small.len(),
        large_points: large.len(),
        saturated_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_routes_agree() {
        for m in [Model::H2, Model::H3] {
            for &(t, e) in &[(0.1, 0.01), (1.0, 0.5), (PI / 2.0, 5.0), (0.05, 3.0)] {
                let a = tube_radius(t, e);
                let b = tube_radius_bisect(m, t, e);
                assert!((a - b).abs() < 1e-10, "{m:?} {t} {e}: {a} {b}");
            }
        }
    }

    #[test]
    fn volume_matches_closed_form() {
        let v = orbital_tube_volume(Model::H3, 0.7, 0.3).unwrap();
        assert!((v.value - v.closed_form).abs() < 1e-10 * v.closed_form);
        let w = orbital_tube_volume(Model::H2, 0.7, 0.3).unwrap();
        assert!((w.value - w.closed_form).abs() < 1e-10 * w.closed_form);
        let r = tube_radius(0.7, 0.3);
        assert!((v.closed_form - PI * (0.15f64).sinh().powi(2) / 0.7f64.sin().powi(2)).abs() < 1e-12);
        assert!((r - v.radius).abs() < 1e-10);
    }

    #[test]
    fn saturation_is_flagged() {
        let v = orbital_tube_volume(Model::H3, 1e-9, 5.0).unwrap();
        assert!(v.saturated);
    }

    #[test]
    fn bound_case_split() {
        let k = tube_constants(Model::H3);
        let at = tube_radius_bound(Model::H3, 2.0, 1.0, 10.0).unwrap();
        assert_eq!(at, k.c1 * 2.0);
        assert!(tube_radius_bound(Model::H3, 2.0, 1.0, 1.5).is_err());
        assert!(tube_radius_bound(Model::H3, 2.0, 0.0, 10.0).is_err());
        // logarithmic growth past the split
        let a = tube_radius_bound(Model::H3, 4.0, 1.0, 100.0).unwrap();
        let b = tube_radius_bound(Model::H3, 16.0, 1.0, 100.0).unwrap();
        assert!((b / a - 2.0).abs() < 1e-12);
    }

    #[test]
    fn monte_carlo_agrees() {
        for m in [Model::H3, Model::H2] {
            let v = orbital_tube_volume(m, PI / 2.0, 0.1).unwrap().value;
            let mc = monte_carlo_tube_volume(m, PI / 2.0, 0.1, 400_000, 42);
            assert!((mc / v - 1.0).abs() < 0.02, "{m:?}: {mc} vs {v}");
        }
    }
}
