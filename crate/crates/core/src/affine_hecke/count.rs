use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::linalg::dot_q;
use crate::rootdata::{norm_star, rho, weyl_group, Coweight, RootDatum};

use super::length::{in_w_positive, length_int};
use super::poly::{pow, IntPoly};
use super::quotient::quotient_by_central_torus;

/// #K λ(ϖ) K / K as an exact polynomial in q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeckeCountPolynomial {
    pub coeffs: IntPoly,
    /// Σ_{γ∈W t(λ) W} q^{l(γ)} before division.
    pub numerator: IntPoly,
    /// Σ_{w∈W} q^{l(w)}.
    pub divisor: IntPoly,
}

impl HeckeCountPolynomial {
    pub fn eval(&self, q: u64) -> BigInt {
        self.coeffs.eval_u64(q)
    }
}

/// One element t(μ)u of W t(λ) W with its length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetElement {
    pub translation: Vec<i64>,
    pub weyl_index: usize,
    pub length: u64,
}

fn integral_dominant(rd: &RootDatum, lambda: &Coweight) -> Result<Vec<i64>> {
    if lambda.dim() != rd.lattice_rank() {
        return invalid(format!(
            "coweight has {} coordinates but the lattice rank is {}",
            lambda.dim(),
            rd.lattice_rank()
        ));
    }
    if !lambda.is_integral() {
        return invalid(format!("coweight {:?} is not integral", lambda.0));
    }
    let (dom, _) = rd.dominant(&lambda.0);
    Ok(dom.iter().map(|x| x.to_integer()).collect())
}

/// The set {t(w₁λ)·w₁w₂} = W t(λ) W, deduplicated, with lengths.
pub fn double_coset_elements(rd: &RootDatum, lambda: &Coweight) -> Result<Vec<CosetElement>> {
    let lam = integral_dominant(rd, lambda)?;
    let w = weyl_group(rd)?;
    let orbit: BTreeSet<Vec<i64>> = w.elements.iter().map(|e| e.act(&lam)).collect();
    let signs: Vec<Vec<bool>> = w.elements.iter().map(|e| in_w_positive(rd, e)).collect();
    let out: Vec<CosetElement> = orbit
        .into_par_iter()
        .flat_map_iter(|mu| {
            let signs = &signs;
            (0..signs.len()).map(move |u| CosetElement {
                length: length_int(rd, &mu, &signs[u]),
                translation: mu.clone(),
                weyl_index: u,
            })
        })
        .collect();
    Ok(out)
}

fn count_direct(rd: &RootDatum, lambda: &Coweight) -> Result<HeckeCountPolynomial> {
    let w = weyl_group(rd)?;
    let divisor = IntPoly::trimmed(w.poincare());
    let mut numerator = IntPoly(vec![0]);
    for e in double_coset_elements(rd, lambda)? {
        numerator.add_monomial(e.length as usize, 1);
    }
    let numerator = IntPoly::trimmed(numerator.0);
    let coeffs = numerator.div_exact(&divisor)?;
    if coeffs.0.iter().any(|&c| c < 0) {
        return Err(Error::Consistency(format!("negative coefficient in {:?}", coeffs.0)));
    }
    Ok(HeckeCountPolynomial { coeffs, numerator, divisor })
}

/// Σ_{γ∈W t(λ) W} q^{l(γ)} / Σ_W q^{l(w)}, computed on the semisimple
/// quotient when the datum has a central torus.
pub fn double_coset_count(rd: &RootDatum, lambda: &Coweight) -> Result<HeckeCountPolynomial> {
    integral_dominant(rd, lambda)?;
    if rd.rank() == 0 {
        // a torus: K t(λ) K = t(λ) K
        return Ok(HeckeCountPolynomial {
            coeffs: IntPoly::one(),
            numerator: IntPoly::one(),
            divisor: IntPoly::one(),
        });
    }
    if rd.is_semisimple() {
        return count_direct(rd, lambda);
    }
    let quotient = quotient_by_central_torus(rd)?;
    count_direct(&quotient.datum, &quotient.project(lambda))
}

/// The same count without passing to the semisimple quotient. Used to test
/// that the quotient does not change anything.
pub fn double_coset_count_unreduced(rd: &RootDatum, lambda: &Coweight) -> Result<HeckeCountPolynomial> {
    count_direct(rd, lambda)
}

/// 2‖λ‖* as an integer (it is ⟨2ρ, λ_dom⟩ with 2ρ a character).
pub fn twice_norm(rd: &RootDatum, lambda: &Coweight) -> Result<u32> {
    let two = norm_star(rd, lambda) * 2;
    if !two.is_integer() || two < num_rational::Rational64::from_integer(0) {
        return Err(Error::Consistency(format!("2‖λ‖* = {two} is not a non-negative integer")));
    }
    // independent route: ⟨2ρ, λ_dom⟩
    let (dom, _) = rd.dominant(&lambda.0);
    let check = dot_q(&dom, &rho(rd).0) * 2;
    if check != two {
        return Err(Error::Consistency("‖λ‖* disagrees with ⟨ρ, λ_dom⟩".into()));
    }
    u32::try_from(two.to_integer()).map_err(|_| Error::Resource("norm too large".into()))
}

/// count(q) / q^{2‖λ‖*}.
pub fn coset_growth_ratio(rd: &RootDatum, lambda: &Coweight, q: u64) -> Result<BigRational> {
    if q < 2 {
        return invalid(format!("q = {q} must be at least 2"));
    }
    let count = double_coset_count(rd, lambda)?.eval(q);
    let e = twice_norm(rd, lambda)?;
    Ok(BigRational::new(count, pow(q, e)))
}

/// Σ_{w∈W} q^{l(w) − |Δ⁺|} at q, the upper end of the growth sandwich.
pub fn sandwich_constant(rd: &RootDatum, q: u64) -> Result<BigRational> {
    let w = weyl_group(rd)?;
    let top = rd.num_positive_roots() as u32;
    let num = IntPoly::trimmed(w.poincare()).eval_u64(q);
    Ok(BigRational::new(num, pow(q, top)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_root_datum;

    fn count(name: &str, l: &[i64]) -> Vec<i64> {
        let rd = build_root_datum(name).unwrap();
        double_coset_count(&rd, &Coweight::from_ints(l)).unwrap().coeffs.0
    }

    #[test]
    fn sl2_and_gl2() {
        assert_eq!(count("A1", &[1]), vec![0, 1, 1]);
        assert_eq!(count("GL2", &[1, 0]), vec![1, 1]);
        assert_eq!(count("GL2", &[1, 1]), vec![1]);
        assert_eq!(count("A2", &[0, 0]), vec![1]);
    }

    #[test]
    fn sl2_coset_lengths() {
        let rd = build_root_datum("A1").unwrap();
        let mut ls: Vec<u64> = double_coset_elements(&rd, &Coweight::from_ints(&[1]))
            .unwrap()
            .iter()
            .map(|e| e.length)
            .collect();
        ls.sort();
        assert_eq!(ls, vec![1, 2, 2, 3]);
    }

    #[test]
    fn non_dominant_is_normalized() {
        assert_eq!(count("A1", &[-2]), count("A1", &[2]));
        assert_eq!(count("A2", &[-1, 0]), count("A2", &[1, 1]));
    }

    #[test]
    fn growth_ratio_examples() {
        let rd = build_root_datum("A1").unwrap();
        let r = coset_growth_ratio(&rd, &Coweight::from_ints(&[1]), 3).unwrap();
        assert_eq!(r, BigRational::new(4.into(), 3.into()));
        let r = coset_growth_ratio(&rd, &Coweight::from_ints(&[1]), 101).unwrap();
        assert_eq!(r, BigRational::new(102.into(), 101.into()));
        let r = coset_growth_ratio(&rd, &Coweight::zero(1), 7).unwrap();
        assert_eq!(r, BigRational::from_integer(1.into()));
        assert!(coset_growth_ratio(&rd, &Coweight::from_ints(&[1]), 1).is_err());
    }
}
