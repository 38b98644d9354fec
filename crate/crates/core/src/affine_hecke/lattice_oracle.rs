//! Counts that do not go through the Weyl group at all: sublattices of ℤ_p²
//! in Hermite normal form, and vertices of the Bruhat–Tits tree.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleGroup {
    GL2,
    SL2,
}

impl std::str::FromStr for OracleGroup {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "GL2" => Ok(OracleGroup::GL2),
            "SL2" => Ok(OracleGroup::SL2),
            other => invalid(format!("lattice oracle supports GL2 and SL2, not '{other}'")),
        }
    }
}

const EXPLICIT_TREE_LIMIT: u64 = 2_000_000;

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Upper-triangular [[a, b], [0, d]] with ad = qⁿ, 0 ≤ b < d and
/// gcd(a, b, d) = 1, i.e. index-qⁿ sublattices with cyclic quotient.
fn hnf_count(n: u32, q: u64) -> u64 {
    let mut count = 0;
    for i in 0..=n {
        let a = q.pow(i);
        let d = q.pow(n - i);
        for b in 0..d {
            if a.gcd(&b).gcd(&d) == 1 {
                count += 1;
            }
        }
    }
    count
}

/// Vertices at distance `dist` from the root of the (q+1)-regular tree,
/// modelled as reduced words over q+1 involutive labels.
fn tree_count(dist: u32, q: u64) -> u64 {
    let labels = q + 1;
    if dist == 0 {
        return 1;
    }
    let expected_size = labels * q.pow(dist - 1);
    if expected_size <= EXPLICIT_TREE_LIMIT {
        let mut frontier: Vec<Vec<u64>> = vec![vec![]];
        for _ in 0..dist {
            let mut next = Vec::new();
            for w in &frontier {
                for l in 0..labels {
                    if w.last() != Some(&l) {
                        let mut v = w.clone();
                        v.push(l);
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        frontier.len() as u64
    } else {
        // walks aggregated by last label
        let mut by_last = vec![1u64; labels as usize];
        for _ in 1..dist {
            let total: u64 = by_last.iter().sum();
            by_last = by_last.iter().map(|c| total - c).collect();
        }
        by_last.iter().sum()
    }
}

/// GL2 with λ = (n, 0) via Hermite normal forms; SL2 with λ = nα∨ via the
/// tree at distance 2n.
pub fn lattice_oracle_count(group: OracleGroup, n: u32, q: u64) -> Result<u64> {
    if !is_prime(q) || q > 13 {
        return invalid(format!("q = {q} must be a prime ≤ 13"));
    }
    if n > 5 {
        return invalid(format!("n = {n} exceeds the oracle bound 5"));
    }
    Ok(match group {
        OracleGroup::GL2 => hnf_count(n, q),
        OracleGroup::SL2 => tree_count(2 * n, q),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(lattice_oracle_count(OracleGroup::GL2, 1, 5).unwrap(), 6);
        assert_eq!(lattice_oracle_count(OracleGroup::SL2, 1, 2).unwrap(), 6);
        assert_eq!(lattice_oracle_count(OracleGroup::GL2, 0, 7).unwrap(), 1);
        assert_eq!(lattice_oracle_count(OracleGroup::SL2, 0, 7).unwrap(), 1);
    }

    #[test]
    fn aggregated_tree_matches_explicit() {
        for q in [2u64, 3] {
            for d in 1..8 {
                let labels = q + 1;
                let mut by_last = vec![1u64; labels as usize];
                for _ in 1..d {
                    let total: u64 = by_last.iter().sum();
                    by_last = by_last.iter().map(|c| total - c).collect();
                }
                assert_eq!(by_last.iter().sum::<u64>(), tree_count(d, q));
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(lattice_oracle_count(OracleGroup::GL2, 1, 4).is_err());
        assert!(lattice_oracle_count(OracleGroup::GL2, 6, 2).is_err());
        assert!(lattice_oracle_count(OracleGroup::SL2, 1, 17).is_err());
        assert!("PGL2".parse::<OracleGroup>().is_err());
    }
}
