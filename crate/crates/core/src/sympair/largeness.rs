//! Deciding H-largeness: is there μ ≠ 0 in X_*(T_H) with
//! 2‖μ‖*_H ≥ ‖ι(μ)‖*?
//!
//! Both sides are piecewise linear and homogeneous. Writing each norm as a
//! half-sum of |⟨α, μ⟩| over positive roots, the margin is linear on every
//! region of the hyperplane arrangement with normals β ∈ Δ⁺_H and ιᵀα,
//! α ∈ Δ⁺_G. A linear function that is nonnegative somewhere on a pointed
//! cone is nonnegative on one of its extreme rays, so it is enough to test
//! the one-dimensional flats of the arrangement.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, kernel_q, rank_q, to_q, transpose, Q};
use crate::rootdata::{norm_star_weyl_max, Coweight};

use super::pair::SymmetricPair;

pub const DEFAULT_BRUTE_FORCE_HEIGHT: i64 = 6;
pub const DEFAULT_SUBSET_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LargenessWitness {
    pub mu: Vec<i64>,
    pub margin: Q,
}

#[derive(Debug, Clone, Copy)]
pub struct LargenessConfig {
    pub brute_force_height: i64,
    pub subset_cap: usize,
    /// Skip the cone refinement entirely.
    pub brute_force_only: bool,
}

impl Default for LargenessConfig {
    fn default() -> Self {
        LargenessConfig {
            brute_force_height: DEFAULT_BRUTE_FORCE_HEIGHT,
            subset_cap: DEFAULT_SUBSET_CAP,
            brute_force_only: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LargenessAnalysis {
    /// Exact decision from the cone refinement (None in brute-force-only mode).
    pub cone_decision: Option<bool>,
    /// Best ray found by the cone method, primitive integral.
    pub cone_ray: Option<LargenessWitness>,
    pub rays_examined: usize,
    pub brute_force_decision: bool,
    pub brute_force_height: i64,
    pub witness: Option<LargenessWitness>,
}

impl LargenessAnalysis {
    pub fn is_large(&self) -> bool {
        self.cone_decision.unwrap_or(self.brute_force_decision)
    }

    pub fn methods_agree(&self) -> bool {
        self.cone_decision.map_or(true, |c| c == self.brute_force_decision)
    }
}

fn primitive(v: &[Q]) -> Vec<i64> {
    let den = v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = v.iter().map(|x| (x * den).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
    if g == 0 {
        ints
    } else {
        ints.iter().map(|x| x / g).collect()
    }
}

/// Normals of the arrangement, one per line through the origin.
fn arrangement_normals(pair: &SymmetricPair) -> Vec<Vec<i64>> {
    let nh = pair.h.lattice_rank();
    let et = transpose(&pair.embed, nh);
    let mut set = BTreeSet::new();
    let pulled = pair
        .g
        .positive_roots()
        .iter()
        .map(|a| crate::linalg::mat_vec(&et, a));
    for v in pair.h.positive_roots().iter().cloned().chain(pulled) {
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let p = primitive(&to_q(&v));
        // fix the sign so that ±v collapse
        let first = p.iter().find(|&&x| x != 0).copied().unwrap_or(1);
        set.insert(p.iter().map(|x| x * first.signum()).collect::<Vec<_>>());
    }
    set.into_iter().collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn better(a: &LargenessWitness, b: &LargenessWitness) -> bool {
    let ha = crate::linalg::max_abs(&a.mu);
    let hb = crate::linalg::max_abs(&b.mu);
    (ha, std::cmp::Reverse(a.margin), &a.mu) < (hb, std::cmp::Reverse(b.margin), &b.mu)
}

/// Exact decision by evaluating the margin on every ray of the arrangement.
pub fn cone_search(pair: &SymmetricPair, cap: usize) -> Result<(bool, Option<LargenessWitness>, usize)> {
    let d = pair.h.lattice_rank();
    let normals = arrangement_normals(pair);
    let normals_q: Vec<Vec<Q>> = normals.iter().map(|v| to_q(v)).collect();
    let lineality = kernel_q(&normals_q, d);
    if !lineality.is_empty() {
        // the margin vanishes identically on the common kernel
        let mu = primitive(&lineality[0]);
        let margin = pair.margin(&Coweight::from_ints(&mu));
        return Ok((true, Some(LargenessWitness { mu, margin }), 0));
    }
    let count = binomial(normals.len(), d - 1);
    if count > cap as u128 {
        return Err(Error::Resource(format!(
            "cone refinement for '{}' needs {count} subsets (cap {cap}); use brute-force-only mode",
            pair.label
        )));
    }
    let rays: BTreeSet<Vec<i64>> = subsets(normals.len(), d - 1)
        .into_par_iter()
        .filter_map(|s| {
            let rows: Vec<Vec<Q>> = s.iter().map(|&i| normals_q[i].clone()).collect();
            if rank_q(&rows) != d - 1 {
                return None;
            }
            let k = kernel_q(&rows, d);
            Some(primitive(&k[0]))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flat_map(|r| [r.clone(), r.iter().map(|x| -x).collect()])
        .collect();
    let evaluated: Vec<LargenessWitness> = rays
        .iter()
        .map(|r| LargenessWitness {
            margin: pair.margin(&Coweight::from_ints(r)),
            mu: r.clone(),
        })
        .collect();
    let mut best: Option<LargenessWitness> = None;
    for w in evaluated.iter().filter(|w| !w.margin.is_negative()) {
        if best.as_ref().map_or(true, |b| better(w, b)) {
            best = Some(w.clone());
        }
    }
    Ok((best.is_some(), best, rays.len()))
}

/// Every H-dominant μ ≠ 0 with max|μ_i| ≤ height, margins taken with the
/// literal Weyl-group maxima.
pub fn brute_force_witnesses(pair: &SymmetricPair, height: i64) -> Result<Vec<LargenessWitness>> {
    let d = pair.h.lattice_rank() as u32;
    let side = 2 * height + 1;
    let total = side
        .checked_pow(d)
        .ok_or_else(|| Error::Resource("brute-force box too large".into()))?;
    // warm the Weyl group caches before going parallel
    crate::rootdata::weyl_group(&pair.h)?;
    crate::rootdata::weyl_group(&pair.g)?;
    let found: Result<Vec<Option<LargenessWitness>>> = (0..total)
        .into_par_iter()
        .map(|k| {
            let mu: Vec<i64> = (0..d)
                .map(|i| (k / side.pow(i)) % side - height)
                .collect();
            if mu.iter().all(|&x| x == 0) {
                return Ok(None);
            }
            if pair.h.simple_roots().iter().any(|b| dot(b, &mu) < 0) {
                return Ok(None);
            }
            let cw = Coweight::from_ints(&mu);
            let margin = norm_star_weyl_max(&pair.h, &cw)? * 2
                - norm_star_weyl_max(&pair.g, &pair.embed_coweight(&cw))?;
            Ok((!margin.is_negative()).then_some(LargenessWitness { mu, margin }))
        })
        .collect();
    Ok(found?.into_iter().flatten().collect())
}

pub fn largeness_analysis(pair: &SymmetricPair, cfg: &LargenessConfig) -> Result<LargenessAnalysis> {
    let (cone_decision, cone_ray, rays_examined) = if cfg.brute_force_only {
        (None, None, 0)
    } else {
        let (dec, ray, n) = cone_search(pair, cfg.subset_cap)?;
        (Some(dec), ray, n)
    };
    let brute = brute_force_witnesses(pair, cfg.brute_force_height)?;
    let mut witness: Option<LargenessWitness> = None;
    for w in &brute {
        if witness.as_ref().map_or(true, |b| better(w, b)) {
            witness = Some(w.clone());
        }
    }
    let brute_force_decision = witness.is_some();
    if witness.is_none() && cone_decision == Some(true) {
        witness = cone_ray.clone();
    }
    if let Some(w) = &witness {
        if w.margin.is_negative() || w.mu.iter().all(|&x| x == 0) {
            return Err(Error::Consistency("invalid witness".into()));
        }
    }
    Ok(LargenessAnalysis {
        cone_decision,
        cone_ray,
        rays_examined,
        brute_force_decision,
        brute_force_height: cfg.brute_force_height,
        witness,
    })
}

/// The witness (minimal height, then maximal margin, then lexicographic),
/// or `None` when the pair is not H-large.
pub fn is_h_large(pair: &SymmetricPair) -> Result<Option<LargenessWitness>> {
    let a = largeness_analysis(pair, &LargenessConfig::default())?;
    if !a.methods_agree() {
        return Err(Error::Consistency(format!(
            "cone method and brute force disagree on '{}'",
            pair.label
        )));
    }
    Ok(if a.is_large() { a.witness } else { None })
}
