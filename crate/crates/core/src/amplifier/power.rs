use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::linalg::Q;

/// q^e with rational e, kept symbolic so that half-integral norms never get
/// rounded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicPower {
    pub base: u64,
    #[serde(serialize_with = "crate::amplifier::ser_q")]
    pub exponent: Q,
}

fn big_pow(b: &BigRational, e: u64) -> BigRational {
    let mut r = BigRational::one();
    for _ in 0..e {
        r *= b;
    }
    r
}

impl SymbolicPower {
    pub fn new(base: u64, exponent: Q) -> Self {
        SymbolicPower { base, exponent }
    }

    pub fn to_f64(&self) -> f64 {
        (self.base as f64).powf(*self.exponent.numer() as f64 / *self.exponent.denom() as f64)
    }

    /// Exact value when the exponent is an integer.
    pub fn to_rational(&self) -> Option<BigRational> {
        if !self.exponent.is_integer() {
            return None;
        }
        let e = self.exponent.to_integer();
        let b = BigRational::from_integer(BigInt::from(self.base));
        let p = big_pow(&b, e.unsigned_abs());
        Some(if e < 0 { p.recip() } else { p })
    }

    /// Exact comparison of q^{p/r} against a rational x.
    pub fn cmp_rational(&self, x: &BigRational) -> Ordering {
        if !x.is_positive() {
            return Ordering::Greater;
        }
        let p = *self.exponent.numer();
        let r = *self.exponent.denom() as u64;
        // q^{p/r} ⋚ x  ⟺  q^p ⋚ x^r
        let lhs = {
            let b = BigRational::from_integer(BigInt::from(self.base));
            let v = big_pow(&b, p.unsigned_abs());
            if p < 0 { v.recip() } else { v }
        };
        lhs.cmp(&big_pow(x, r))
    }

    pub fn ge_one(&self) -> bool {
        self.base == 1 || !self.exponent.is_negative()
    }

    pub fn gt_one(&self) -> bool {
        self.base > 1 && self.exponent.is_positive()
    }

    /// q_v^m · q_w^m = (q_v q_w)^m.
    pub fn product_same_exponent(&self, other: &SymbolicPower) -> Option<SymbolicPower> {
        (self.exponent == other.exponent)
            .then(|| SymbolicPower::new(self.base * other.base, self.exponent))
    }
}

impl fmt::Display for SymbolicPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent.is_zero() {
            write!(f, "1")
        } else {
            write!(f, "{}^({})", self.base, self.exponent)
        }
    }
}

/// c · q^e, used for H-side values whose q-exponent may be half-integral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScaledPower {
    #[serde(serialize_with = "crate::amplifier::ser_big")]
    pub coeff: BigRational,
    pub power: SymbolicPower,
}

impl ScaledPower {
    pub fn to_f64(&self) -> f64 {
        let c = self.coeff.numer().to_string().parse::<f64>().unwrap_or(f64::NAN)
            / self.coeff.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
        c * self.power.to_f64()
    }

    /// c·q^a ≥ q^b ⟺ c ≥ q^{b−a}.
    pub fn ge_power(&self, other: &SymbolicPower) -> bool {
        assert_eq!(self.power.base, other.base);
        let diff = SymbolicPower::new(other.base, other.exponent - self.power.exponent);
        diff.cmp_rational(&self.coeff) != Ordering::Greater
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn br(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn compares_half_powers_exactly() {
        let s = SymbolicPower::new(2, q(1) / 2); // √2 ≈ 1.41421
        assert_eq!(s.cmp_rational(&br(141, 100)), Ordering::Greater);
        assert_eq!(s.cmp_rational(&br(142, 100)), Ordering::Less);
        let t = SymbolicPower::new(9, q(1) / 2);
        assert_eq!(t.cmp_rational(&br(3, 1)), Ordering::Equal);
        let u = SymbolicPower::new(3, q(-2));
        assert_eq!(u.to_rational().unwrap(), br(1, 9));
        assert_eq!(u.cmp_rational(&br(1, 9)), Ordering::Equal);
    }

    #[test]
    fn scaled_comparison() {
        // (4/3)·3^0 ≥ 3^0
        let sp = ScaledPower { coeff: br(4, 3), power: SymbolicPower::new(3, q(0)) };
        assert!(sp.ge_power(&SymbolicPower::new(3, q(0))));
        assert!(!sp.ge_power(&SymbolicPower::new(3, q(1) / 2)));
    }
}
