use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64 as C;
use serde::Serialize;

use super::Model;
use crate::error::{invalid, Error, Result};

type M2 = [[C; 2]; 2];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EllipticElement {
    pub model: Model,
    pub angle: f64,
    pub discriminant: f64,
    /// Set for θ ∈ {0, π}, where D is reported as 1 by convention.
    pub central: bool,
    /// The 2×2 representative, entries as (re, im).
    pub matrix: [[(f64, f64); 2]; 2],
}

fn mul(a: &M2, b: &M2) -> M2 {
    let mut r = [[C::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

fn inv(a: &M2) -> M2 {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    [[a[1][1] / det, -a[0][1] / det], [-a[1][0] / det, a[0][0] / det]]
}

fn is_central(theta: f64) -> bool {
    theta.abs() < 1e-14 || (theta - PI).abs() < 1e-14
}

/// The representative: diag(e^{iθ}, e^{−iθ}) in SL2(ℂ), or the rotation by θ
/// in SO(2) ⊂ SL2(ℝ).
pub fn representative(model: Model, theta: f64) -> M2 {
    let z = C::new(0.0, 0.0);
    match model {
        Model::H3 => [[C::from_polar(1.0, theta), z], [z, C::from_polar(1.0, -theta)]],
        Model::H2 => {
            let (s, c) = theta.sin_cos();
            [[C::new(c, 0.0), C::new(-s, 0.0)], [C::new(s, 0.0), C::new(c, 0.0)]]
        }
    }
}

/// Closed form: 16 sin⁴θ on H³, 4 sin²θ on H².
pub fn weyl_discriminant_elliptic(model: Model, theta: f64) -> Result<f64> {
    Ok(elliptic_element(model, theta)?.discriminant)
}

pub fn elliptic_element(model: Model, theta: f64) -> Result<EllipticElement> {
    if !(0.0..=PI).contains(&theta) || !theta.is_finite() {
        return invalid(format!("θ = {theta} must lie in [0, π]"));
    }
    let central = is_central(theta);
    let s = theta.sin();
    let discriminant = if central {
        1.0
    } else {
        match model {
            Model::H3 => 16.0 * s.powi(4),
            Model::H2 => 4.0 * s * s,
        }
    };
    let m = representative(model, theta);
    let matrix = [[(m[0][0].re, m[0][0].im), (m[0][1].re, m[0][1].im)], [
        (m[1][0].re, m[1][0].im),
        (m[1][1].re, m[1][1].im),
    ]];
    Ok(EllipticElement { model, angle: theta, discriminant, central, matrix })
}

/// Real basis of 𝔤, centralizer of the representative first.
fn basis(model: Model) -> (Vec<M2>, usize) {
    let o = C::new(0.0, 0.0);
    let one = C::new(1.0, 0.0);
    let i = C::new(0.0, 1.0);
    let h = [[one, o], [o, -one]];
    let e = [[o, one], [o, o]];
    let f = [[o, o], [one, o]];
    let sc = |c: C, m: M2| [[c * m[0][0], c * m[0][1]], [c * m[1][0], c * m[1][1]]];
    match model {
        // sl2(ℂ) as a real 6-dimensional algebra
        Model::H3 => (vec![h, sc(i, h), e, sc(i, e), f, sc(i, f)], 2),
        // so(2) ⊕ 𝔭
        Model::H2 => (vec![[[o, -one], [one, o]], h, [[o, one], [one, o]]], 1),
    }
}

/// Real coordinates of X in the basis above.
fn coords(model: Model, x: &M2) -> Vec<f64> {
    match model {
        Model::H3 => vec![
            x[0][0].re, x[0][0].im, x[0][1].re, x[0][1].im, x[1][0].re, x[1][0].im,
        ],
        Model::H2 => {
            let (b, c) = (x[0][1].re, x[1][0].re);
            vec![(c - b) / 2.0, x[0][0].re, (b + c) / 2.0]
        }
    }
}

/// |det(1 − Ad γ)| on 𝔤/𝔤_γ, from the matrix of Ad γ in a real basis.
pub fn discriminant_by_determinant(model: Model, theta: f64) -> Result<f64> {
    let g = representative(model, theta);
    let gi = inv(&g);
    let (b, z) = basis(model);
    let n = b.len();
    let mut ad = DMatrix::<f64>::zeros(n, n);
    for (j, x) in b.iter().enumerate() {
        let y = mul(&mul(&g, x), &gi);
        for (i, v) in coords(model, &y).into_iter().enumerate() {
            ad[(i, j)] = v;
        }
    }
    let one_minus = DMatrix::<f64>::identity(n, n) - &ad;
    // Ad γ must fix the centralizer and preserve the complement.
    let leak = one_minus.view((0, 0), (n, z)).amax().max(one_minus.view((0, z), (z, n - z)).amax());
    if leak > 1e-12 {
        return Err(Error::Consistency(format!(
            "Ad(γ) does not respect the centralizer splitting (leak {leak:e})"
        )));
    }
    Ok(one_minus.view((z, z), (n - z, n - z)).determinant().abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!((weyl_discriminant_elliptic(Model::H3, PI / 2.0).unwrap() - 16.0).abs() < 1e-12);
        assert!((weyl_discriminant_elliptic(Model::H2, PI / 2.0).unwrap() - 4.0).abs() < 1e-12);
        let c = elliptic_element(Model::H3, PI).unwrap();
        assert!(c.central);
        assert_eq!(c.discriminant, 1.0);
        assert!(elliptic_element(Model::H3, 4.0).is_err());
    }

    #[test]
    fn small_angle_taylor() {
        let t = 1e-3;
        let d = weyl_discriminant_elliptic(Model::H3, t).unwrap();
        assert!((d / (16.0 * t.powi(4)) - 1.0).abs() < 1e-5);
    }

    #[test]
    fn determinant_matches_closed_form() {
        for model in [Model::H2, Model::H3] {
            for k in 1..40 {
                let t = PI * k as f64 / 40.0;
                let a = weyl_discriminant_elliptic(model, t).unwrap();
                let b = discriminant_by_determinant(model, t).unwrap();
                assert!((a - b).abs() < 1e-12 * a.max(1.0), "{model:?} θ={t}: {a} vs {b}");
            }
        }
    }
}
