use std::f64::consts::PI;

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::discriminant::representative;
use super::Model;

type M2 = [[C; 2]; 2];

fn mul(a: &M2, b: &M2) -> M2 {
    let mut r = [[C::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

/// Inverse of a determinant-one matrix.
fn inv1(a: &M2) -> M2 {
    [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]
}

/// d(o, g·o) for g ∈ SL2, from 4 sinh²(d/2) = ‖g‖² − 2 = |a − d̄|² + |b + c̄|².
pub fn distance_from_origin(g: &M2) -> f64 {
    let s = (g[0][0] - g[1][1].conj()).norm_sqr() + (g[0][1] + g[1][0].conj()).norm_sqr();
    2.0 * (0.5 * s.sqrt()).asinh()
}

/// Transvection by r along a geodesic through o perpendicular to the fixed
/// set of the elliptic representative.
pub fn transvection(r: f64) -> M2 {
    let (c, s) = ((r / 2.0).cosh(), (r / 2.0).sinh());
    [[C::new(c, 0.0), C::new(s, 0.0)], [C::new(s, 0.0), C::new(c, 0.0)]]
}

/// d(p, γp) for p at distance r from the fixed axis (H³) or point (H²):
/// sinh(d/2) = sin θ · sinh r, i.e. cosh d = 1 + 2 sin²θ sinh²r.
pub fn displacement(_model: Model, r: f64, theta: f64) -> f64 {
    2.0 * (theta.sin().abs() * r.sinh()).asinh()
}

/// The same quantity from the matrix model: d(o, h⁻¹γh·o).
pub fn displacement_matrix(model: Model, r: f64, theta: f64) -> f64 {
    let h = transvection(r);
    let g = mul(&mul(&inv1(&h), &representative(model, theta)), &h);
    distance_from_origin(&g)
}

#[derive(Debug, Clone, Serialize)]
pub struct DisplacementOracleCheck {
    pub points: usize,
    pub max_abs_error: f64,
    pub worst: (f64, f64),
}

pub fn displacement_oracle_check(model: Model, thetas: usize, rs: usize, r_max: f64) -> DisplacementOracleCheck {
    let (max_abs_error, worst) = (0..thetas)
        .into_par_iter()
        .flat_map_iter(|i| {
            let t = PI * (i + 1) as f64 / thetas as f64;
            (0..rs).map(move |j| (t, r_max * j as f64 / (rs - 1) as f64))
        })
        .map(|(t, r)| ((displacement(model, r, t) - displacement_matrix(model, r, t)).abs(), (t, r)))
        .reduce(|| (0.0, (0.0, 0.0)), |a, b| if b.0 > a.0 { b } else { a });
    DisplacementOracleCheck { points: thetas * rs, max_abs_error, worst }
}

#[derive(Debug, Clone, Serialize)]
pub struct LowerBoundFit {
    /// min over the grid of d(r, θ)/(sinh r · D(θ)), r > 0.
    pub c: f64,
    pub argmin: (f64, f64),
}

/// Fits the constant in displacement ≥ c·sinh(r)·D(θ) over θ ∈ [θ0, π/2],
/// r ∈ (0, r_max].
pub fn displacement_lower_bound_fit(model: Model, theta0: f64, r_max: f64, n: usize) -> LowerBoundFit {
    let (c, argmin) = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let t = theta0 + (PI / 2.0 - theta0) * i as f64 / (n - 1) as f64;
            (1..=n).map(move |j| (t, r_max * j as f64 / n as f64))
        })
        .map(|(t, r)| {
            let d = super::discriminant::weyl_discriminant_elliptic(model, t).unwrap_or(1.0);
            (displacement(model, r, t) / (r.sinh() * d), (t, r))
        })
        .reduce(|| (f64::INFINITY, (0.0, 0.0)), |a, b| if b.0 < a.0 { b } else { a });
    LowerBoundFit { c, argmin }
}

fn random_su2(rng: &mut ChaCha8Rng) -> M2 {
    // uniform on S³ via normalized Gaussians (Box–Muller)
    let mut g = [0.0f64; 4];
    for k in 0..2 {
        let u1: f64 = 1.0 - rng.gen::<f64>();
        let u2: f64 = rng.gen();
        let rad = (-2.0 * u1.ln()).sqrt();
        g[2 * k] = rad * (2.0 * PI * u2).cos();
        g[2 * k + 1] = rad * (2.0 * PI * u2).sin();
    }
    let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
    let a = C::new(g[0] / n, g[1] / n);
    let b = C::new(g[2] / n, g[3] / n);
    [[a, -b.conj()], [b, a.conj()]]
}

fn random_element(rng: &mut ChaCha8Rng, t_max: f64) -> M2 {
    let t = rng.gen::<f64>() * t_max;
    let a = [[C::new((t / 2.0).exp(), 0.0), C::new(0.0, 0.0)], [C::new(0.0, 0.0), C::new((-t / 2.0).exp(), 0.0)]];
    mul(&mul(&random_su2(rng), &a), &random_su2(rng))
}

#[derive(Debug, Clone, Serialize)]
pub struct RadialProjectionCheck {
    pub pairs: usize,
    /// min of d(g₁o, g₂o) − |X(g₁) − X(g₂)|
    pub min_slack: f64,
    pub pass: bool,
}

/// |X(g₁) − X(g₂)| ≤ d(g₁o, g₂o) on random pairs in SL2(ℂ), where X(g) is the
/// Cartan radial part, ‖X(g)‖ = d(o, g·o).
pub fn radial_projection_check(pairs: usize, seed: u64) -> RadialProjectionCheck {
    let slack = (0..pairs)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let g1 = random_element(&mut rng, 6.0);
            let g2 = random_element(&mut rng, 6.0);
            let d = distance_from_origin(&mul(&inv1(&g1), &g2));
            d - (distance_from_origin(&g1) - distance_from_origin(&g2)).abs()
        })
        .reduce(|| f64::INFINITY, f64::min);
    RadialProjectionCheck { pairs, min_slack: slack, pass: slack >= -1e-9 }
}
