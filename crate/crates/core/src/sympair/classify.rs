use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot_iq, identity, kernel_q, to_q, IMat, Q};

use super::pair::{dual_torus_rank, SymmetricPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tag {
    /// θ-split: the split torus is a maximal torus.
    ST,
    /// the centralizer of the split torus is a torus.
    T,
    NT,
}

impl std::fmt::Display for Tag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Tag::ST => "ST",
            Tag::T => "T",
            Tag::NT => "NT",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub tag: Tag,
    pub theta_split_rank: usize,
    pub absolute_rank: usize,
    pub levi_is_torus: bool,
}

fn theta_of(pair: &SymmetricPair) -> Result<&IMat> {
    pair.theta
        .as_ref()
        .ok_or_else(|| Error::Unsupported(format!("pair '{}' carries no involution", pair.label)))
}

/// Basis of the (−1)-eigenspace of θ.
fn minus_eigenspace(theta: &IMat) -> Vec<Vec<Q>> {
    let n = theta.len();
    let id = identity(n);
    let rows: Vec<Vec<Q>> = (0..n)
        .map(|i| to_q(&(0..n).map(|j| theta[i][j] + id[i][j]).collect::<Vec<_>>()))
        .collect();
    kernel_q(&rows, n)
}

/// Rank of {x : θx = −x}.
pub fn theta_split_rank(pair: &SymmetricPair) -> Result<usize> {
    Ok(minus_eigenspace(theta_of(pair)?).len())
}

pub fn classify(pair: &SymmetricPair) -> Result<Classification> {
    let theta = theta_of(pair)?;
    let e = minus_eigenspace(theta);
    let absolute_rank = pair.g.lattice_rank();
    // L = Z_G(A⁻) is a torus iff no root vanishes on A⁻
    let levi_is_torus = pair
        .g
        .positive_roots()
        .iter()
        .all(|a| e.iter().any(|v| dot_iq(a, v) != Q::from_integer(0)));
    let theta_split_rank = e.len();
    let tag = if theta_split_rank == absolute_rank {
        Tag::ST
    } else if levi_is_torus {
        Tag::T
    } else {
        Tag::NT
    };
    Ok(Classification { tag, theta_split_rank, absolute_rank, levi_is_torus })
}

/// Both routes to rank A_X, and whether they agree.
#[derive(Debug, Clone, Serialize)]
pub struct RankReport {
    pub dual_torus_rank: usize,
    pub theta_split_rank: Option<usize>,
    pub agree: Option<bool>,
}

pub fn rank_report(pair: &SymmetricPair) -> RankReport {
    let d = dual_torus_rank(pair);
    let t = theta_split_rank(pair).ok();
    RankReport { dual_torus_rank: d, theta_split_rank: t, agree: t.map(|t| t == d) }
}
