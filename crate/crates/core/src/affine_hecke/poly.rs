use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial in q with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPoly(pub Vec<i64>);

impl IntPoly {
    pub fn trimmed(mut v: Vec<i64>) -> Self {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        if v.is_empty() {
            v.push(0);
        }
        IntPoly(v)
    }

    pub fn one() -> Self {
        IntPoly(vec![1])
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn add_monomial(&mut self, deg: usize, c: i64) {
        if self.0.len() <= deg {
            self.0.resize(deg + 1, 0);
        }
        self.0[deg] += c;
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.0.len().max(other.0.len());
        IntPoly::trimmed(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = vec![0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::trimmed(out)
    }

    /// Exact division by a monic polynomial; a nonzero remainder is an error.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let d = divisor.degree();
        if *divisor.0.last().unwrap() != 1 {
            return Err(Error::Consistency("divisor is not monic".into()));
        }
        let mut rem = self.0.clone();
        if rem.len() <= d {
            return if rem.iter().all(|&c| c == 0) {
                Ok(IntPoly(vec![0]))
            } else {
                Err(Error::Consistency(format!("{self:?} is not divisible by {divisor:?}")))
            };
        }
        let mut quo = vec![0; rem.len() - d];
        for k in (0..quo.len()).rev() {
            let c = rem[k + d];
            quo[k] = c;
            for (j, dc) in divisor.0.iter().enumerate() {
                rem[k + j] -= c * dc;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return Err(Error::Consistency(format!(
                "inexact division: remainder {:?}",
                IntPoly::trimmed(rem).0
            )));
        }
        Ok(IntPoly::trimmed(quo))
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &c| acc * q + BigInt::from(c))
    }

    pub fn eval_u64(&self, q: u64) -> BigInt {
        self.eval(&BigInt::from(q))
    }

    /// Human-readable form such as `q^2 + q`.
    pub fn pretty(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{i}"),
            };
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(format!("{coef}{mono}"));
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

pub(crate) fn pow(q: u64, e: u32) -> BigInt {
    let mut r = BigInt::one();
    for _ in 0..e {
        r *= q;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        // q(q+1)^2 / (q+1) = q^2 + q
        let num = IntPoly(vec![0, 1, 2, 1]);
        let den = IntPoly(vec![1, 1]);
        assert_eq!(num.div_exact(&den).unwrap(), IntPoly(vec![0, 1, 1]));
        assert!(IntPoly(vec![1, 0, 1]).div_exact(&den).is_err());
    }

    #[test]
    fn eval_and_pretty() {
        let p = IntPoly(vec![0, 1, 1]);
        assert_eq!(p.eval_u64(3), BigInt::from(12));
        assert_eq!(p.pretty(), "q^2 + q");
        assert_eq!(IntPoly::one().mul(&p), p);
    }
}
