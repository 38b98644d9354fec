//! Globally adaptive Gauss–Kronrod (7/15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

pub const ABS_FLOOR: f64 = 1e-12;
const MAX_INTERVALS: usize = 200_000;

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Piece {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    Piece { a, b, value: k * h, error: ((k - g) * h).abs() }
}

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for x in xs {
        let t = s + x;
        c += if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
        s = t;
    }
    s + c
}

/// ∫_a^b f to within max(abs_tol, rel_tol·|I|); `abs_tol` is clamped below
/// by [`ABS_FLOOR`].
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<QuadResult> {
    integrate_panels(f, a, b, 1, abs_tol, rel_tol)
}

/// As [`integrate`], but starting from `panels` equal pieces, which keeps
/// oscillatory integrands from fooling the first error estimate.
pub fn integrate_panels<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    panels: usize,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<QuadResult> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Numeric(format!("quadrature limits [{a}, {b}] are not finite")));
    }
    if a == b {
        return Ok(QuadResult { value: 0.0, error: 0.0, intervals: 0 });
    }
    let abs_tol = abs_tol.max(ABS_FLOOR);
    let n = panels.max(1);
    let w = (b - a) / n as f64;
    let mut heap: BinaryHeap<Piece> = (0..n)
        .map(|i| gk15(&f, a + w * i as f64, if i + 1 == n { b } else { a + w * (i + 1) as f64 }))
        .collect();
    loop {
        let value = compensated_sum(heap.iter().map(|p| p.value));
        let error: f64 = heap.iter().map(|p| p.error).sum();
        if !value.is_finite() {
            return Err(Error::Numeric(format!("non-finite integrand on [{a}, {b}]")));
        }
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(QuadResult { value, error, intervals: heap.len() });
        }
        if heap.len() >= MAX_INTERVALS {
            let worst = heap.peek().expect("nonempty");
            return Err(Error::Numeric(format!(
                "quadrature on [{a}, {b}] did not converge: estimate {value:e}, error {error:e} \
                 after {} intervals; worst piece [{}, {}]",
                heap.len(),
                worst.a,
                worst.b
            )));
        }
        let p = heap.pop().expect("nonempty");
        let m = 0.5 * (p.a + p.b);
        heap.push(gk15(&f, p.a, m));
        heap.push(gk15(&f, m, p.b));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomials_and_trig() {
        let r = integrate(|x| x.powi(5) - 3.0 * x, 0.0, 2.0, 1e-13, 0.0).unwrap();
        assert!((r.value - (64.0 / 6.0 - 6.0)).abs() < 1e-12);
        let s = integrate(f64::sin, 0.0, PI, 1e-13, 0.0).unwrap();
        assert!((s.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_with_panels() {
        // ∫_0^{100} cos(50x) dx = sin(5000)/50
        let r = integrate_panels(|x| (50.0 * x).cos(), 0.0, 100.0, 200, 1e-12, 0.0).unwrap();
        assert!((r.value - (5000.0f64).sin() / 50.0).abs() < 1e-11);
    }

    #[test]
    fn kink_converges() {
        let r = integrate(|x: f64| x.abs().sqrt(), -1.0, 1.0, 1e-10, 0.0).unwrap();
        assert!((r.value - 4.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn nan_is_reported() {
        assert!(integrate(|_| f64::NAN, 0.0, 1.0, 1e-10, 0.0).is_err());
    }

    #[test]
    fn compensated() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(compensated_sum(xs), 2.0);
    }
}
